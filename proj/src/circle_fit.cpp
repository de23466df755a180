#include "hodokit/circle_fit.hpp"

#include <cmath>
#include <stdexcept>

namespace hodokit {

CircleFit fit_circle(std::span<const Point2> points) {
    const std::size_t n = points.size();
    if (n < 3) {
        throw std::invalid_argument("circle fit needs at least 3 points");
    }

    // Work relative to the centroid: the Kasa normal equations then reduce to
    // a symmetric 2x2 system for the center offset.
    double mx = 0.0, my = 0.0;
    for (const Point2& p : points) {
        mx += p.x;
        my += p.y;
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double suu = 0.0, suv = 0.0, svv = 0.0, suuu = 0.0, svvv = 0.0, suvv = 0.0, svuu = 0.0;
    for (const Point2& p : points) {
        const double u = p.x - mx;
        const double v = p.y - my;
        suu += u * u;
        suv += u * v;
        svv += v * v;
        suuu += u * u * u;
        svvv += v * v * v;
        suvv += u * v * v;
        svuu += v * u * u;
    }

    // Conditioning of [[suu suv][suv svv]] via its eigenvalue ratio.
    const double tr = suu + svv;
    const double disc = std::sqrt((suu - svv) * (suu - svv) + 4.0 * suv * suv);
    const double lam_max = 0.5 * (tr + disc);
    const double lam_min = 0.5 * (tr - disc);
    if (!(lam_max > 0.0) || lam_min <= 1e-12 * lam_max) {
        throw DegenerateCollinear();
    }

    const double b1 = 0.5 * (suuu + suvv);
    const double b2 = 0.5 * (svvv + svuu);
    const double det = suu * svv - suv * suv;
    const double uc = (svv * b1 - suv * b2) / det;
    const double vc = (suu * b2 - suv * b1) / det;

    const double radius = std::sqrt(uc * uc + vc * vc + tr / static_cast<double>(n));
    const Point2 center{uc + mx, vc + my};

    double ss = 0.0;
    for (const Point2& p : points) {
        const double d = std::hypot(p.x - center.x, p.y - center.y) - radius;
        ss += d * d;
    }
    return {center, radius, std::sqrt(ss / static_cast<double>(n))};
}

CircleFit fit_circle(const std::vector<Point2>& points) {
    return fit_circle(std::span<const Point2>(points.data(), points.size()));
}

}  // namespace hodokit
