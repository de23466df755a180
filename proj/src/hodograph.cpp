#include "hodokit/hodograph.hpp"

#include <cmath>
#include <stdexcept>

namespace hodokit {

std::string to_string(ConicClass cls) {
    switch (cls) {
        case ConicClass::Circle:
            return "circle";
        case ConicClass::Ellipse:
            return "ellipse";
        case ConicClass::Parabola:
            return "parabola";
        case ConicClass::Hyperbola:
            return "hyperbola";
    }
    return "unknown";
}

HodographCircle velocity_circle(const State& s, const SystemParams& p) {
    const PlaneFrame frame = plane_frame(s, p);
    const double j = angular_momentum(s, p).norm();
    return {hodograph_center(s, p), p.k / j, frame};
}

double eccentricity(const HodographCircle& circle) {
    return circle.center.norm() / circle.radius;
}

ConicClass classify(double e) {
    if (e < 0.0) {
        throw std::invalid_argument("eccentricity must be >= 0");
    }
    if (e <= kDegenerateEccentricity) {
        return ConicClass::Circle;
    }
    if (e < 1.0 - kClassifyTolerance) {
        return ConicClass::Ellipse;
    }
    if (e <= 1.0 + kClassifyTolerance) {
        return ConicClass::Parabola;
    }
    return ConicClass::Hyperbola;
}

ConicOrbit conic_from_state(const State& s, const SystemParams& p) {
    const HodographCircle circle = velocity_circle(s, p);
    const Conserved cons = conserved(s, p);
    const double e = eccentricity(circle);
    const double latus_rectum = cons.j * cons.j / (p.m * p.k);
    return {e, latus_rectum, classify(e), circle.frame, p, cons.j, cons.h};
}

double theta_max(double e) {
    if (e < 1.0 - kClassifyTolerance) {
        throw std::invalid_argument("theta_max is defined only for e >= 1");
    }
    return std::acos(-1.0 / std::max(e, 1.0));
}

double radius_at(const ConicOrbit& orbit, double theta) {
    const double denom = 1.0 + orbit.e * std::cos(theta);
    if (denom <= 1e-12) {
        throw OutsideBranch("polar angle at or beyond the asymptote");
    }
    return orbit.latus_rectum / denom;
}

namespace {

void require_on_branch(const ConicOrbit& orbit, double theta) {
    if (orbit.e >= 1.0 - kClassifyTolerance && std::abs(theta) > theta_max(orbit.e) + 1e-12) {
        throw OutsideBranch();
    }
}

}  // namespace

Vec3 velocity_at(const HodographCircle& circle, const ConicOrbit& orbit, double theta) {
    require_on_branch(orbit, theta);
    const double R = circle.radius;
    return circle.frame.to_world({-R * std::sin(theta), R * (orbit.e + std::cos(theta)), 0.0});
}

State state_at(const HodographCircle& circle, const ConicOrbit& orbit, double theta) {
    const double r = radius_at(orbit, theta);
    const Vec3 x = orbit.frame.to_world({r * std::cos(theta), r * std::sin(theta), 0.0});
    return State(x, velocity_at(circle, orbit, theta));
}

State state_from_conserved(double h, double j, const SystemParams& p) {
    if (!(j > 0.0)) {
        throw DegenerateRadialMotion();
    }
    const double e2m1 = 2.0 * h * j * j / (p.m * p.k * p.k);
    if (e2m1 < -1.0) {
        throw std::invalid_argument("no orbit has this (h, j) pair");
    }
    const double e = std::sqrt(1.0 + e2m1);
    const double latus_rectum = j * j / (p.m * p.k);
    const double r_peri = latus_rectum / (1.0 + e);
    // At perihelion the velocity is purely transverse: v = j / (m r).
    return State({r_peri, 0.0, 0.0}, {0.0, j / (p.m * r_peri), 0.0});
}

std::vector<ThetaVelocity> sample_hodograph(const HodographCircle& circle,
                                            const ConicOrbit& orbit, std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("need at least 2 samples");
    }
    std::vector<ThetaVelocity> out;
    out.reserve(n);
    if (orbit.e < 1.0 - kClassifyTolerance) {
        for (std::size_t i = 0; i < n; ++i) {
            const double theta = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n);
            out.push_back({theta, velocity_at(circle, orbit, theta)});
        }
    } else {
        constexpr double kEndpointMargin = 1e-6;
        const double lim = theta_max(orbit.e) - kEndpointMargin;
        for (std::size_t i = 0; i < n; ++i) {
            const double u = static_cast<double>(i) / static_cast<double>(n - 1);
            const double theta = -lim + 2.0 * lim * u;
            out.push_back({theta, velocity_at(circle, orbit, theta)});
        }
    }
    return out;
}

}  // namespace hodokit
