#include "hodokit/report.hpp"

#include <cmath>

#include "hodokit/util.hpp"

namespace hodokit {

namespace {

json to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

double maybe_degrees(double radians, bool degrees) {
    return degrees ? radians * 180.0 / M_PI : radians;
}

json scattering_block(const HyperbolicScattering& sc, bool degrees) {
    json out;
    out["theta_star"] = maybe_degrees(sc.theta_star, degrees);
    out["theta_0"] = maybe_degrees(sc.theta_0, degrees);
    out["Theta"] = maybe_degrees(sc.Theta, degrees);
    out["Psi"] = maybe_degrees(sc.Psi, degrees);
    out["deflection"] = maybe_degrees(sc.deflection, degrees);
    out["v_in"] = to_json(sc.v_in);
    out["v_out"] = to_json(sc.v_out);
    out["d_in"] = to_json(sc.d_in);
    out["d_out"] = to_json(sc.d_out);
    out["energy_radius"] = sc.energy_radius;
    out["hyperbola_center"] = to_json(sc.hyperbola_center);
    return out;
}

constexpr const char* kConventionNote = "j = |J| = m |x cross v|; h = m|v|^2/2 - k/|x|";

}  // namespace

json analysis_report(const State& s, const SystemParams& p, bool degrees) {
    const Conserved cons = conserved(s, p);
    const HodographCircle circle = velocity_circle(s, p);
    const ConicOrbit orbit = conic_from_state(s, p);

    json out;
    out["inputs"] = {
        {"m", p.m},
        {"k", p.k},
        {"state", {{"x", to_json(s.x)}, {"v", to_json(s.v)}, {"t", s.t}}},
    };
    out["conserved"] = {{"J", to_json(cons.J)}, {"j", cons.j}, {"h", cons.h}};
    out["hodograph"] = {
        {"center", to_json(circle.center)},
        {"radius", circle.radius},
        {"eccentricity", orbit.e},
        {"latus_rectum", orbit.latus_rectum},
        {"class", to_string(orbit.cls)},
    };
    if (orbit.cls == ConicClass::Hyperbola) {
        out["scattering"] = scattering_block(analyze_scattering(s, p), degrees);
    }
    out["angle_unit"] = degrees ? "degrees" : "radians";
    out["convention"] = kConventionNote;
    return out;
}

json scatter_report(double h, double j, const SystemParams& p, bool degrees) {
    const double Psi = scattering_angle_from_conserved(h, j, p);
    const double e = std::sqrt(1.0 + 2.0 * h * j * j / (p.m * p.k * p.k));
    const auto [theta_star, theta_0] = theta_limits(e);

    json out;
    out["inputs"] = {{"m", p.m}, {"k", p.k}, {"h", h}, {"j", j}};
    out["eccentricity"] = e;
    out["theta_star"] = maybe_degrees(theta_star, degrees);
    out["theta_0"] = maybe_degrees(theta_0, degrees);
    out["Theta"] = maybe_degrees(Psi, degrees);
    out["Psi"] = maybe_degrees(Psi, degrees);
    out["deflection"] = maybe_degrees(Psi - M_PI, degrees);
    out["energy_radius"] = energy_circle_radius(h, p);
    out["angle_unit"] = degrees ? "degrees" : "radians";
    out["convention"] = kConventionNote;
    return out;
}

json hodograph_sidecar(const State& s, const SystemParams& p) {
    const HodographCircle circle = velocity_circle(s, p);
    const ConicOrbit orbit = conic_from_state(s, p);
    const Vec3 center_local = circle.frame.to_local(circle.center);

    json out;
    out["center"] = json::array({center_local.x, center_local.y});
    out["radius"] = circle.radius;
    out["eccentricity"] = orbit.e;
    out["latus_rectum"] = orbit.latus_rectum;
    out["class"] = to_string(orbit.cls);
    out["frame"] = {
        {"e1", to_json(circle.frame.e1)},
        {"e2", to_json(circle.frame.e2)},
        {"e3", to_json(circle.frame.e3)},
    };
    if (orbit.cls == ConicClass::Hyperbola) {
        const auto [v_in, v_out] = arc_endpoints(circle, orbit);
        const Vec3 in_local = circle.frame.to_local(v_in);
        const Vec3 out_local = circle.frame.to_local(v_out);
        out["arc"] = {
            {"theta_0", theta_limits(orbit.e).theta_0},
            {"v_in", json::array({in_local.x, in_local.y})},
            {"v_out", json::array({out_local.x, out_local.y})},
        };
    }
    if (orbit.h > 0.0) {
        out["energy_circle_radius"] = energy_circle_radius(orbit.h, p);
    }
    out["convention"] = kConventionNote;
    return out;
}

void write_propagate_csv(std::ostream& os, const Trajectory& traj, const PlaneFrame& frame) {
    const auto swept = sweep_theta(traj, frame);
    os << "t,x,y,z,vx,vy,vz,r,theta,j,h\n";
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const TrajectorySample& s = traj.samples[i];
        const Conserved cons = conserved(State(s.x, s.v, s.t), traj.params);
        os << format_double(s.t) << ',' << format_double(s.x.x) << ',' << format_double(s.x.y)
           << ',' << format_double(s.x.z) << ',' << format_double(s.v.x) << ','
           << format_double(s.v.y) << ',' << format_double(s.v.z) << ','
           << format_double(s.x.norm()) << ',' << format_double(swept[i].theta) << ','
           << format_double(cons.j) << ',' << format_double(cons.h) << '\n';
    }
}

void write_hodograph_csv(std::ostream& os, const HodographCircle& circle, const ConicOrbit& orbit,
                         std::size_t samples) {
    os << "theta,vx,vy\n";
    for (const auto& [theta, v] : sample_hodograph(circle, orbit, samples)) {
        const Vec3 local = circle.frame.to_local(v);
        os << format_double(theta) << ',' << format_double(local.x) << ','
           << format_double(local.y) << '\n';
    }
}

std::vector<BatchScatterRow> batch_scatter(const std::vector<double>& h_values,
                                           const std::vector<double>& j_values,
                                           const SystemParams& p, double radius_factor) {
    std::vector<BatchScatterRow> rows(h_values.size() * j_values.size());
    parallel_for(rows.size(), [&](std::size_t idx) {
        const double h = h_values[idx / j_values.size()];
        const double j = j_values[idx % j_values.size()];
        BatchScatterRow& row = rows[idx];
        row.h = h;
        row.j = j;
        row.hyperbolic = h > 0.0 && j > 0.0;
        if (!row.hyperbolic) {
            row.e = row.theta_formula = row.theta_numeric = row.abs_err = 0.0;
            return;
        }
        row.e = std::sqrt(1.0 + 2.0 * h * j * j / (p.m * p.k * p.k));
        row.theta_formula = scattering_angle_from_conserved(h, j, p);

        const State s0 = state_from_conserved(h, j, p);
        const PlaneFrame frame = plane_frame(s0, p);
        const Vec3 v_fwd = asymptotic_direction(s0, p, TimeDirection::Forward, radius_factor);
        const Vec3 v_bwd = asymptotic_direction(s0, p, TimeDirection::Backward, radius_factor);
        row.theta_numeric = ccw_angle_upper_branch(-v_bwd, v_fwd, frame.e3);
        row.abs_err = std::abs(row.theta_formula - row.theta_numeric);
    });
    return rows;
}

void write_batch_scatter_csv(std::ostream& os, const std::vector<BatchScatterRow>& rows) {
    os << "h,j,e,Theta_formula,Theta_numeric,abs_err,status\n";
    for (const BatchScatterRow& row : rows) {
        os << format_double(row.h) << ',' << format_double(row.j) << ',';
        if (row.hyperbolic) {
            os << format_double(row.e) << ',' << format_double(row.theta_formula) << ','
               << format_double(row.theta_numeric) << ',' << format_double(row.abs_err)
               << ",ok\n";
        } else {
            os << ",,,,not-hyperbolic\n";
        }
    }
}

}  // namespace hodokit
