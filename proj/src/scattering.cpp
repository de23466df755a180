#include "hodokit/scattering.hpp"

#include <cmath>

namespace hodokit {

namespace {

void require_hyperbolic(double e) {
    if (!(e > 1.0 + kClassifyTolerance)) {
        throw NotHyperbolic();
    }
}

}  // namespace

ThetaLimits theta_limits(double e) {
    require_hyperbolic(e);
    const double theta_star = std::acos(1.0 / e);
    return {theta_star, M_PI - theta_star};
}

ArcEndpoints arc_endpoints(const HodographCircle& circle, const ConicOrbit& orbit) {
    require_hyperbolic(orbit.e);
    const double theta_0 = theta_limits(orbit.e).theta_0;
    return {velocity_at(circle, orbit, -theta_0), velocity_at(circle, orbit, theta_0)};
}

AsymptoticDirections asymptotic_directions(const ConicOrbit& orbit) {
    const auto [theta_star, theta_0] = theta_limits(orbit.e);
    const double c = std::cos(theta_star);
    const double s = std::sin(theta_star);
    return {orbit.frame.to_world({-c, -s, 0.0}), orbit.frame.to_world({-c, s, 0.0})};
}

double arc_angle(double e) {
    require_hyperbolic(e);
    return 2.0 * (M_PI - std::acos(1.0 / e));
}

double scattering_angle_from_conserved(double h, double j, const SystemParams& p) {
    if (!(h > 0.0)) {
        throw NotHyperbolic("not hyperbolic (h <= 0)");
    }
    if (!(j > 0.0)) {
        throw DegenerateRadialMotion();
    }
    // tan(theta_star) = sqrt(e^2 - 1) = (j/k) sqrt(2h/m)
    return 2.0 * (M_PI - std::atan(j / p.k * std::sqrt(2.0 * h / p.m)));
}

double energy_circle_radius(double h, const SystemParams& p) {
    if (!(h > 0.0)) {
        throw NotHyperbolic("not hyperbolic (h <= 0)");
    }
    return std::sqrt(2.0 * h / p.m);
}

Vec3 hyperbola_center(const ConicOrbit& orbit) {
    require_hyperbolic(orbit.e);
    const double a = orbit.latus_rectum / (orbit.e * orbit.e - 1.0);
    return orbit.frame.to_world({a * orbit.e, 0.0, 0.0});
}

double ccw_angle_upper_branch(const Vec3& from, const Vec3& to, const Vec3& axis) {
    const double a = signed_angle(from, to, axis);
    return a <= 0.0 ? a + 2.0 * M_PI : a;
}

HyperbolicScattering analyze_scattering(const State& s, const SystemParams& p) {
    const HodographCircle circle = velocity_circle(s, p);
    const ConicOrbit orbit = conic_from_state(s, p);
    require_hyperbolic(orbit.e);

    const auto [theta_star, theta_0] = theta_limits(orbit.e);
    const double Theta = 2.0 * (M_PI - theta_star);
    const auto [v_in, v_out] = arc_endpoints(circle, orbit);
    const auto [d_in, d_out] = asymptotic_directions(orbit);

    HyperbolicScattering out;
    out.theta_star = theta_star;
    out.theta_0 = theta_0;
    out.Theta = Theta;
    out.Psi = Theta;
    out.deflection = Theta - M_PI;
    out.v_in = v_in;
    out.v_out = v_out;
    out.d_in = d_in;
    out.d_out = d_out;
    out.energy_radius = energy_circle_radius(orbit.h, p);
    out.hyperbola_center = hyperbola_center(orbit);
    return out;
}

}  // namespace hodokit
