#pragma once

#include "hodokit/errors.hpp"
#include "hodokit/vec3.hpp"

namespace hodokit {

/// Mass of the particle and force constant of the attractive 1/r potential.
/// Both strictly positive.
struct SystemParams {
    double m = 1.0;
    double k = 1.0;

    SystemParams() = default;
    SystemParams(double mass, double force_constant);
};

/// A single mechanical state: position (never the origin), velocity and a
/// time tag. Everything else in the library is computed from one of these.
struct State {
    Vec3 x;
    Vec3 v;
    double t = 0.0;

    State() = default;
    State(const Vec3& position, const Vec3& velocity, double time = 0.0);
};

/// The two conserved quantities of the motion.
struct Conserved {
    Vec3 J;    ///< angular momentum x cross m*v
    double j;  ///< |J|
    double h;  ///< total energy m|v|^2/2 - k/|x|
};

/// Right-handed orthonormal frame of the orbital plane. e3 is the angular
/// momentum direction; e1 points at perihelion (or at the defining state's
/// position for circular orbits); e2 = e3 x e1 carries the hodograph center.
struct PlaneFrame {
    Vec3 e1;
    Vec3 e2;
    Vec3 e3;

    Vec3 to_world(const Vec3& local) const {
        return e1 * local.x + e2 * local.y + e3 * local.z;
    }
    Vec3 to_local(const Vec3& world) const {
        return {dot(world, e1), dot(world, e2), dot(world, e3)};
    }
};

/// Planar polar decomposition of a state: radius, polar angle in (-pi, pi]
/// measured from e1 positively about e3, and in-plane velocity components.
struct PlaneCoords {
    double r;
    double theta;
    double v1;
    double v2;
};

// Relative threshold below which the angular momentum counts as zero.
inline constexpr double kRadialTolerance = 1e-14;
// Eccentricity below which the orbit counts as an exact circle.
inline constexpr double kDegenerateEccentricity = 1e-12;

Vec3 angular_momentum(const State& s, const SystemParams& p);

double energy(const State& s, const SystemParams& p);

Conserved conserved(const State& s, const SystemParams& p);

/// Center of the velocity circle, c = v - (k/j) (jhat x xhat). Needed here
/// because the frame's e1 axis is recovered from it.
Vec3 hodograph_center(const State& s, const SystemParams& p);

PlaneFrame plane_frame(const State& s, const SystemParams& p);

PlaneCoords to_plane_coords(const State& s, const PlaneFrame& f);

}  // namespace hodokit
