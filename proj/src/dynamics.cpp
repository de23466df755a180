#include "hodokit/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace hodokit {

SystemParams::SystemParams(double mass, double force_constant) : m(mass), k(force_constant) {
    if (!(std::isfinite(m) && m > 0.0)) {
        throw std::invalid_argument("mass must be finite and > 0");
    }
    if (!(std::isfinite(k) && k > 0.0)) {
        throw std::invalid_argument("force constant must be finite and > 0");
    }
}

State::State(const Vec3& position, const Vec3& velocity, double time)
    : x(position), v(velocity), t(time) {
    if (!x.is_finite() || !v.is_finite() || !std::isfinite(t)) {
        throw std::invalid_argument("state components must be finite");
    }
    if (x.norm_squared() == 0.0) {
        throw SingularPosition();
    }
}

Vec3 angular_momentum(const State& s, const SystemParams& p) {
    return cross(s.x, s.v * p.m);
}

double energy(const State& s, const SystemParams& p) {
    return 0.5 * p.m * s.v.norm_squared() - p.k / s.x.norm();
}

Conserved conserved(const State& s, const SystemParams& p) {
    const Vec3 J = angular_momentum(s, p);
    return {J, J.norm(), energy(s, p)};
}

namespace {

// Throws if the state is radial; returns J otherwise.
Vec3 require_nonradial(const State& s, const SystemParams& p) {
    const Vec3 J = angular_momentum(s, p);
    const double scale = p.m * s.x.norm() * s.v.norm();
    if (J.norm() <= kRadialTolerance * scale) {
        throw DegenerateRadialMotion();
    }
    return J;
}

}  // namespace

Vec3 hodograph_center(const State& s, const SystemParams& p) {
    const Vec3 J = require_nonradial(s, p);
    const double j = J.norm();
    const Vec3 jhat = J / j;
    const Vec3 xhat = s.x.normalized();
    const double radius = p.k / j;
    return s.v - radius * cross(jhat, xhat);
}

PlaneFrame plane_frame(const State& s, const SystemParams& p) {
    const Vec3 J = require_nonradial(s, p);
    const double j = J.norm();
    const Vec3 e3 = J / j;
    const Vec3 c = hodograph_center(s, p);
    const double radius = p.k / j;

    Vec3 e1;
    if (c.norm() > kDegenerateEccentricity * radius) {
        e1 = cross(c.normalized(), e3);  // perihelion direction, puts c on +e2
    } else {
        e1 = s.x.normalized();  // circular orbit: no perihelion, use the state itself
    }
    const Vec3 e2 = cross(e3, e1);
    return {e1, e2, e3};
}

PlaneCoords to_plane_coords(const State& s, const PlaneFrame& f) {
    const double r = s.x.norm();
    if (std::abs(dot(s.x, f.e3)) > 1e-9 * r) {
        throw OutOfPlane();
    }
    double theta = std::atan2(dot(s.x, f.e2), dot(s.x, f.e1));
    if (theta == -M_PI) {
        theta = M_PI;  // principal range is (-pi, pi]
    }
    return {r, theta, dot(s.v, f.e1), dot(s.v, f.e2)};
}

}  // namespace hodokit
