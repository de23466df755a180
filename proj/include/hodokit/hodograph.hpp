#pragma once

#include <string>
#include <vector>

#include "hodokit/dynamics.hpp"

namespace hodokit {

/// The circle traced by the velocity vector of a Kepler orbit. Traversal is
/// always counterclockwise about frame.e3 (increasing polar angle).
struct HodographCircle {
    Vec3 center;       ///< the vector c, lying in the orbital plane
    double radius;     ///< R = k/j
    PlaneFrame frame;  ///< center sits at (0, |c|, 0) in this frame
};

enum class ConicClass { Circle, Ellipse, Parabola, Hyperbola };

std::string to_string(ConicClass cls);

/// Conic orbit r(theta) = latus_rectum / (1 + e cos theta) with focus at the
/// origin. Carries the conserved scalars so it is self-contained.
struct ConicOrbit {
    double e;             ///< eccentricity |c|/R
    double latus_rectum;  ///< j^2 / (m k)
    ConicClass cls;
    PlaneFrame frame;
    SystemParams params;
    double j;
    double h;
};

struct ThetaVelocity {
    double theta;
    Vec3 v;
};

// Half-width of the classification band around e = 1.
inline constexpr double kClassifyTolerance = 1e-9;

HodographCircle velocity_circle(const State& s, const SystemParams& p);

double eccentricity(const HodographCircle& circle);

ConicOrbit conic_from_state(const State& s, const SystemParams& p);

ConicClass classify(double e);

/// Supremum of admissible |theta| for e >= 1: acos(-1/e). Unbounded conics only.
double theta_max(double e);

double radius_at(const ConicOrbit& orbit, double theta);

Vec3 velocity_at(const HodographCircle& circle, const ConicOrbit& orbit, double theta);

/// The state on the orbit at polar angle theta (time tag 0).
State state_at(const HodographCircle& circle, const ConicOrbit& orbit, double theta);

/// The state at perihelion of the orbit with conserved quantities (h, j),
/// laid out in the xy-plane with perihelion on +x.
State state_from_conserved(double h, double j, const SystemParams& p);

std::vector<ThetaVelocity> sample_hodograph(const HodographCircle& circle,
                                            const ConicOrbit& orbit, std::size_t n);

}  // namespace hodokit
