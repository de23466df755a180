#pragma once

#include "hodokit/hodograph.hpp"

namespace hodokit {

/// Everything the hyperbolic refinement produces from one state: the arc of
/// the velocity circle between the asymptotic velocities, the asymptote
/// directions, and the (equal) arc and scattering angles.
struct HyperbolicScattering {
    double theta_star;     ///< arccos(1/e), in (0, pi/2)
    double theta_0;        ///< asymptote angle pi - theta_star
    double Theta;          ///< arc angle 2 (pi - theta_star), in (pi, 2 pi)
    double Psi;            ///< scattering angle; equals Theta
    double deflection;     ///< Theta - pi, the conventional deflection angle
    Vec3 v_in;             ///< asymptotic velocity of the incoming motion, v(-theta_0)
    Vec3 v_out;            ///< asymptotic velocity of the outgoing motion, v(+theta_0)
    Vec3 d_in;             ///< unit direction of the incoming asymptote
    Vec3 d_out;            ///< unit direction of the outgoing asymptote
    double energy_radius;  ///< sqrt(2h/m); both endpoints lie on this circle
    Vec3 hyperbola_center;
};

struct ThetaLimits {
    double theta_star;
    double theta_0;
};

struct ArcEndpoints {
    Vec3 v_in;
    Vec3 v_out;
};

struct AsymptoticDirections {
    Vec3 d_in;
    Vec3 d_out;
};

ThetaLimits theta_limits(double e);

ArcEndpoints arc_endpoints(const HodographCircle& circle, const ConicOrbit& orbit);

AsymptoticDirections asymptotic_directions(const ConicOrbit& orbit);

double arc_angle(double e);

double scattering_angle_from_conserved(double h, double j, const SystemParams& p);

double energy_circle_radius(double h, const SystemParams& p);

Vec3 hyperbola_center(const ConicOrbit& orbit);

HyperbolicScattering analyze_scattering(const State& s, const SystemParams& p);

/// Counterclockwise angle about `axis` carrying `from` onto `to`, reduced to
/// the branch (pi, 2 pi) that hyperbolic arc and scattering angles live in.
double ccw_angle_upper_branch(const Vec3& from, const Vec3& to, const Vec3& axis);

}  // namespace hodokit
