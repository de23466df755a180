#pragma once

#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "hodokit/integrate.hpp"
#include "hodokit/scattering.hpp"

namespace hodokit {

using json = nlohmann::ordered_json;

/// Full single-state analysis: conserved quantities, velocity circle, conic
/// elements and (for hyperbolic states) the scattering block.
json analysis_report(const State& s, const SystemParams& p, bool degrees = false);

/// Scattering angles from conserved quantities alone.
json scatter_report(double h, double j, const SystemParams& p, bool degrees = false);

/// JSON sidecar for the hodograph sampler: circle, conic class, arc endpoints
/// and energy circle, all in frame coordinates next to the world frame itself.
json hodograph_sidecar(const State& s, const SystemParams& p);

/// Columns: t,x,y,z,vx,vy,vz,r,theta,j,h with theta unwrapped in the orbit
/// frame of the initial sample. LF line endings, 17-significant-digit floats.
void write_propagate_csv(std::ostream& os, const Trajectory& traj, const PlaneFrame& frame);

/// Columns: theta,vx,vy (frame components of the sampled hodograph).
void write_hodograph_csv(std::ostream& os, const HodographCircle& circle,
                         const ConicOrbit& orbit, std::size_t samples);

struct BatchScatterRow {
    double h;
    double j;
    bool hyperbolic;
    double e;
    double theta_formula;
    double theta_numeric;
    double abs_err;
};

/// Evaluate the closed-form and oracle scattering angles on the (h, j) grid.
/// Rows follow the input order h-major; independent cases may run in parallel.
std::vector<BatchScatterRow> batch_scatter(const std::vector<double>& h_values,
                                           const std::vector<double>& j_values,
                                           const SystemParams& p, double radius_factor = 1e6);

/// Columns: h,j,e,Theta_formula,Theta_numeric,abs_err,status. Non-hyperbolic
/// grid points keep their h,j and get status=not-hyperbolic with empty fields.
void write_batch_scatter_csv(std::ostream& os, const std::vector<BatchScatterRow>& rows);

}  // namespace hodokit
