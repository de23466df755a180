#pragma once

#include <random>

#include "hodokit/dynamics.hpp"
#include "hodokit/hodograph.hpp"
#include "hodokit/vec3.hpp"

namespace hodokit::test {

// Canonical hyperbolic case used throughout: m=k=1, x=(1,0,0), v=(0,2,0),
// which gives j=2, h=1, R=1/2, c=(0,3/2,0), e=3.
inline State canonical_hyperbolic() { return State({1, 0, 0}, {0, 2, 0}); }
inline State canonical_circular() { return State({1, 0, 0}, {0, 1, 0}); }
inline State canonical_elliptic() { return State({1, 0, 0}, {0, 1.2, 0}); }

inline Rotation random_rotation(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    return Rotation::from_quaternion(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
}

inline State rotated(const State& s, const Rotation& q) {
    return State(q.apply(s.x), q.apply(s.v), s.t);
}

/// Build a state on the orbit with eccentricity e, semi-latus rectum lam and
/// polar angle theta, oriented by q. Uses only textbook conic geometry, so it
/// serves as an input generator independent of the code paths under test.
inline State make_orbit_state(double e, double lam, double theta, const SystemParams& p,
                              const Rotation& q) {
    const double j = std::sqrt(lam * p.m * p.k);
    const double r = lam / (1.0 + e * std::cos(theta));
    const double big_r = p.k / j;
    const Vec3 x{r * std::cos(theta), r * std::sin(theta), 0.0};
    const Vec3 v{-big_r * std::sin(theta), big_r * (e + std::cos(theta)), 0.0};
    return State(q.apply(x), q.apply(v));
}

inline double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

}  // namespace hodokit::test
