#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hodokit/circle_fit.hpp"
#include "hodokit/report.hpp"
#include "hodokit/scattering.hpp"
#include "hodokit/util.hpp"
#include "hodokit/verify.hpp"

namespace py = pybind11;
using namespace hodokit;

namespace {

std::string vec_repr(const Vec3& v) {
    std::ostringstream os;
    os << "Vec3(" << format_double(v.x) << ", " << format_double(v.y) << ", "
       << format_double(v.z) << ")";
    return os.str();
}

}  // namespace

PYBIND11_MODULE(_hodokit, m) {
    m.doc() = "Kepler velocity-circle (hodograph) and scattering toolkit";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

    py::class_<Vec3>(m, "Vec3")
        .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"), py::arg("z"))
        .def(py::init([](const std::array<double, 3>& a) { return Vec3{a[0], a[1], a[2]}; }))
        .def_readonly("x", &Vec3::x)
        .def_readonly("y", &Vec3::y)
        .def_readonly("z", &Vec3::z)
        .def("norm", &Vec3::norm)
        .def("__repr__", &vec_repr)
        .def("__iter__", [](const Vec3& v) {
            return py::iter(py::make_tuple(v.x, v.y, v.z));
        });

    m.def("dot", &dot);
    m.def("cross", &cross);

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<double, double>(), py::arg("m") = 1.0, py::arg("k") = 1.0)
        .def_readonly("m", &SystemParams::m)
        .def_readonly("k", &SystemParams::k);

    py::class_<State>(m, "State")
        .def(py::init<const Vec3&, const Vec3&, double>(), py::arg("x"), py::arg("v"),
             py::arg("t") = 0.0)
        .def_readonly("x", &State::x)
        .def_readonly("v", &State::v)
        .def_readonly("t", &State::t);

    py::class_<Conserved>(m, "Conserved")
        .def_readonly("J", &Conserved::J)
        .def_readonly("j", &Conserved::j)
        .def_readonly("h", &Conserved::h);

    py::class_<PlaneFrame>(m, "PlaneFrame")
        .def_readonly("e1", &PlaneFrame::e1)
        .def_readonly("e2", &PlaneFrame::e2)
        .def_readonly("e3", &PlaneFrame::e3)
        .def("to_world", &PlaneFrame::to_world)
        .def("to_local", &PlaneFrame::to_local);

    m.def("angular_momentum", &angular_momentum, py::arg("state"), py::arg("params"));
    m.def("energy", &energy, py::arg("state"), py::arg("params"));
    m.def("conserved", &conserved, py::arg("state"), py::arg("params"));
    m.def("plane_frame", &plane_frame, py::arg("state"), py::arg("params"));
    m.def(
        "to_plane_coords",
        [](const State& s, const PlaneFrame& f) {
            const PlaneCoords pc = to_plane_coords(s, f);
            return py::make_tuple(pc.r, pc.theta, py::make_tuple(pc.v1, pc.v2));
        },
        py::arg("state"), py::arg("frame"));

    py::enum_<ConicClass>(m, "ConicClass")
        .value("Circle", ConicClass::Circle)
        .value("Ellipse", ConicClass::Ellipse)
        .value("Parabola", ConicClass::Parabola)
        .value("Hyperbola", ConicClass::Hyperbola);

    py::class_<HodographCircle>(m, "HodographCircle")
        .def_readonly("center", &HodographCircle::center)
        .def_readonly("radius", &HodographCircle::radius)
        .def_readonly("frame", &HodographCircle::frame);

    py::class_<ConicOrbit>(m, "ConicOrbit")
        .def_readonly("e", &ConicOrbit::e)
        .def_readonly("latus_rectum", &ConicOrbit::latus_rectum)
        .def_readonly("cls", &ConicOrbit::cls)
        .def_readonly("frame", &ConicOrbit::frame)
        .def_readonly("j", &ConicOrbit::j)
        .def_readonly("h", &ConicOrbit::h);

    m.def("velocity_circle", &velocity_circle, py::arg("state"), py::arg("params"));
    m.def("eccentricity", &eccentricity, py::arg("circle"));
    m.def("conic_from_state", &conic_from_state, py::arg("state"), py::arg("params"));
    m.def("classify", &classify, py::arg("e"));
    m.def("theta_max", &theta_max, py::arg("e"));
    m.def("radius_at", &radius_at, py::arg("orbit"), py::arg("theta"));
    m.def("velocity_at", &velocity_at, py::arg("circle"), py::arg("orbit"), py::arg("theta"));
    m.def("state_at", &state_at, py::arg("circle"), py::arg("orbit"), py::arg("theta"));
    m.def("state_from_conserved", &state_from_conserved, py::arg("h"), py::arg("j"),
          py::arg("params"));
    m.def(
        "sample_hodograph",
        [](const HodographCircle& circle, const ConicOrbit& orbit, std::size_t n) {
            py::list out;
            for (const auto& [theta, v] : sample_hodograph(circle, orbit, n)) {
                out.append(py::make_tuple(theta, v));
            }
            return out;
        },
        py::arg("circle"), py::arg("orbit"), py::arg("n"));

    py::class_<HyperbolicScattering>(m, "HyperbolicScattering")
        .def_readonly("theta_star", &HyperbolicScattering::theta_star)
        .def_readonly("theta_0", &HyperbolicScattering::theta_0)
        .def_readonly("Theta", &HyperbolicScattering::Theta)
        .def_readonly("Psi", &HyperbolicScattering::Psi)
        .def_readonly("deflection", &HyperbolicScattering::deflection)
        .def_readonly("v_in", &HyperbolicScattering::v_in)
        .def_readonly("v_out", &HyperbolicScattering::v_out)
        .def_readonly("d_in", &HyperbolicScattering::d_in)
        .def_readonly("d_out", &HyperbolicScattering::d_out)
        .def_readonly("energy_radius", &HyperbolicScattering::energy_radius)
        .def_readonly("hyperbola_center", &HyperbolicScattering::hyperbola_center);

    m.def(
        "theta_limits",
        [](double e) {
            const auto [theta_star, theta_0] = theta_limits(e);
            return py::make_tuple(theta_star, theta_0);
        },
        py::arg("e"));
    m.def(
        "arc_endpoints",
        [](const HodographCircle& circle, const ConicOrbit& orbit) {
            const auto [v_in, v_out] = arc_endpoints(circle, orbit);
            return py::make_tuple(v_in, v_out);
        },
        py::arg("circle"), py::arg("orbit"));
    m.def(
        "asymptotic_directions",
        [](const ConicOrbit& orbit) {
            const auto [d_in, d_out] = asymptotic_directions(orbit);
            return py::make_tuple(d_in, d_out);
        },
        py::arg("orbit"));
    m.def("arc_angle", &arc_angle, py::arg("e"));
    m.def("scattering_angle_from_conserved", &scattering_angle_from_conserved, py::arg("h"),
          py::arg("j"), py::arg("params"));
    m.def("energy_circle_radius", &energy_circle_radius, py::arg("h"), py::arg("params"));
    m.def("hyperbola_center", &hyperbola_center, py::arg("orbit"));
    m.def("analyze_scattering", &analyze_scattering, py::arg("state"), py::arg("params"));

    py::enum_<IntegrationMethod>(m, "IntegrationMethod")
        .value("AdaptiveRK45", IntegrationMethod::AdaptiveRK45)
        .value("Leapfrog", IntegrationMethod::Leapfrog);
    py::enum_<TimeDirection>(m, "TimeDirection")
        .value("Forward", TimeDirection::Forward)
        .value("Backward", TimeDirection::Backward);

    py::class_<IntegratorConfig>(m, "IntegratorConfig")
        .def(py::init<>())
        .def_readwrite("method", &IntegratorConfig::method)
        .def_readwrite("rel_tol", &IntegratorConfig::rel_tol)
        .def_readwrite("abs_tol", &IntegratorConfig::abs_tol)
        .def_readwrite("initial_step", &IntegratorConfig::initial_step)
        .def_readwrite("max_steps", &IntegratorConfig::max_steps)
        .def_readwrite("min_radius_guard", &IntegratorConfig::min_radius_guard);

    py::class_<TrajectorySample>(m, "TrajectorySample")
        .def_readonly("t", &TrajectorySample::t)
        .def_readonly("x", &TrajectorySample::x)
        .def_readonly("v", &TrajectorySample::v);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("samples", &Trajectory::samples)
        .def("__len__", [](const Trajectory& t) { return t.samples.size(); });

    m.def("accelerate", &accelerate, py::arg("x"), py::arg("params"));
    m.def("integrate", &integrate, py::arg("state"), py::arg("params"), py::arg("t_final"),
          py::arg("config") = IntegratorConfig{});
    m.def("integrate_sampled", &integrate_sampled, py::arg("state"), py::arg("params"),
          py::arg("times"), py::arg("config") = IntegratorConfig{});
    m.def("integrate_until_radius", &integrate_until_radius, py::arg("state"), py::arg("params"),
          py::arg("r_stop"), py::arg("direction"), py::arg("config") = IntegratorConfig{});
    m.def(
        "sweep_theta",
        [](const Trajectory& traj, const PlaneFrame& f) {
            py::list out;
            for (const auto& [t, theta] : sweep_theta(traj, f)) {
                out.append(py::make_tuple(t, theta));
            }
            return out;
        },
        py::arg("trajectory"), py::arg("frame"));
    m.def("asymptotic_direction", &asymptotic_direction, py::arg("state"), py::arg("params"),
          py::arg("direction"), py::arg("radius_factor") = 1e6,
          py::arg("config") = IntegratorConfig{});

    py::class_<CircleFit>(m, "CircleFit")
        .def_property_readonly("center",
                               [](const CircleFit& f) {
                                   return py::make_tuple(f.center.x, f.center.y);
                               })
        .def_readonly("radius", &CircleFit::radius)
        .def_readonly("rms_residual", &CircleFit::rms_residual);

    m.def(
        "fit_circle",
        [](const std::vector<std::pair<double, double>>& pts) {
            std::vector<Point2> converted;
            converted.reserve(pts.size());
            for (const auto& [x, y] : pts) {
                converted.push_back({x, y});
            }
            return fit_circle(converted);
        },
        py::arg("points"));

    m.def("ccw_angle_upper_branch", &ccw_angle_upper_branch, py::arg("from_vec"),
          py::arg("to_vec"), py::arg("axis"));

    m.def(
        "analysis_report_json",
        [](const State& s, const SystemParams& p, bool degrees) {
            return analysis_report(s, p, degrees).dump();
        },
        py::arg("state"), py::arg("params"), py::arg("degrees") = false);
    m.def(
        "scatter_report_json",
        [](double h, double j, const SystemParams& p, bool degrees) {
            return scatter_report(h, j, p, degrees).dump();
        },
        py::arg("h"), py::arg("j"), py::arg("params"), py::arg("degrees") = false);

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("pass_", &CheckResult::pass)
        .def_readonly("worst", &CheckResult::worst)
        .def_readonly("detail", &CheckResult::detail);

    m.def(
        "run_verification",
        [](std::uint64_t seed, std::size_t cases, double tol_override) {
            VerifyOptions opts;
            opts.seed = seed;
            opts.cases = cases;
            opts.tol_override = tol_override;
            return run_verification(opts);
        },
        py::arg("seed") = 42, py::arg("cases") = 100, py::arg("tol_override") = 0.0);

#ifdef HODOKIT_VERSION
    m.attr("__version__") = HODOKIT_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
