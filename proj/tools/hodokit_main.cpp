// hodokit: velocity-circle / scattering analysis of Kepler states, with a
// numerical integration oracle for cross-checking every closed form.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hodokit/report.hpp"
#include "hodokit/util.hpp"
#include "hodokit/verify.hpp"

namespace {

using namespace hodokit;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitDomainError = 2;
constexpr int kExitUsageError = 3;
constexpr int kExitNumericalError = 4;

Vec3 parse_vec3(const std::string& text) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        parts.push_back(parse_double(item));
    }
    if (parts.size() != 3) {
        throw std::invalid_argument("expected a comma-separated triple, got '" + text + "'");
    }
    return {parts[0], parts[1], parts[2]};
}

// "lo:hi:n" for n linearly spaced values, or an explicit comma list.
std::vector<double> parse_grid(const std::string& text) {
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ':')) {
            parts.push_back(item);
        }
        if (parts.size() != 3) {
            throw std::invalid_argument("grid must be lo:hi:n or a comma list, got '" + text +
                                        "'");
        }
        const double lo = parse_double(parts[0]);
        const double hi = parse_double(parts[1]);
        const double n_real = parse_double(parts[2]);
        const std::size_t n = static_cast<std::size_t>(n_real);
        if (n < 1 || static_cast<double>(n) != n_real) {
            throw std::invalid_argument("grid count must be a positive integer");
        }
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = n == 1 ? lo
                            : lo + (hi - lo) * static_cast<double>(i) /
                                       static_cast<double>(n - 1);
        }
        return out;
    }
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_double(item));
    }
    if (out.empty()) {
        throw std::invalid_argument("empty grid");
    }
    return out;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    out.back() = b;
    return out;
}

/// Stream sink: --out writes the file, otherwise stdout.
class OutputSink {
public:
    explicit OutputSink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) {
                throw std::invalid_argument("cannot open output file '" + path + "'");
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct StateFlags {
    double m = 1.0;
    double k = 1.0;
    std::string x_text;
    std::string v_text;
    double t = 0.0;

    void attach(CLI::App* cmd, bool required = true) {
        cmd->add_option("--m", m, "particle mass")->capture_default_str();
        cmd->add_option("--k", k, "force constant of the 1/r potential")->capture_default_str();
        auto* x = cmd->add_option("--x", x_text, "position as x,y,z");
        auto* v = cmd->add_option("--v", v_text, "velocity as vx,vy,vz");
        if (required) {
            x->required();
            v->required();
        }
        cmd->add_option("--t", t, "time tag of the state")->capture_default_str();
    }
    SystemParams params() const { return {m, k}; }
    State state() const { return {parse_vec3(x_text), parse_vec3(v_text), t}; }
};

void emit_json(const json& j, const std::string& out_path) {
    OutputSink sink(out_path);
    sink.stream() << j.dump(2) << '\n';
}

int run_verify_text(const VerifyOptions& opts, bool as_json, const std::string& out_path) {
    const std::vector<CheckResult> results = run_verification(opts);
    std::size_t passed = 0;
    for (const CheckResult& r : results) {
        passed += r.pass ? 1 : 0;
    }
    OutputSink sink(out_path);
    if (as_json) {
        json doc;
        doc["seed"] = opts.seed;
        doc["cases"] = opts.cases;
        json checks = json::array();
        // no timings here: identical invocations must produce identical bytes
        for (const CheckResult& r : results) {
            checks.push_back({{"name", r.name},
                              {"pass", r.pass},
                              {"worst_ratio", r.worst},
                              {"detail", r.detail}});
        }
        doc["checks"] = checks;
        doc["passed"] = passed;
        doc["failed"] = results.size() - passed;
        sink.stream() << doc.dump(2) << '\n';
    } else {
        for (const CheckResult& r : results) {
            sink.stream() << (r.pass ? "PASS  " : "FAIL  ") << r.name << "  (err/tol "
                          << format_double(r.worst) << ")\n      " << r.detail << '\n';
        }
        sink.stream() << passed << '/' << results.size() << " checks passed\n";
    }
    return passed == results.size() ? kExitOk : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kepler velocity-circle (hodograph) and scattering toolkit"};
    app.set_version_flag("--version", "hodokit 0.1.0");
    app.require_subcommand(1);
    int exit_code = kExitOk;

    // analyze ---------------------------------------------------------------
    auto* analyze = app.add_subcommand(
        "analyze", "conserved quantities, velocity circle, conic orbit and scattering data");
    StateFlags an_state;
    an_state.attach(analyze);
    bool an_degrees = false;
    std::string an_out;
    analyze->add_flag("--degrees", an_degrees, "emit angles in degrees");
    analyze->add_option("--out", an_out, "write JSON here instead of stdout");
    analyze->callback([&] {
        emit_json(analysis_report(an_state.state(), an_state.params(), an_degrees), an_out);
    });

    // propagate ---------------------------------------------------------------
    auto* propagate =
        app.add_subcommand("propagate", "integrate the trajectory and emit CSV samples");
    StateFlags pr_state;
    pr_state.attach(propagate);
    double pr_t_final = 0.0;
    double pr_until_radius = 0.0;
    std::size_t pr_samples = 0;
    std::string pr_method = "rk45";
    std::string pr_out;
    IntegratorConfig pr_cfg;
    auto* tf = propagate->add_option("--t-final", pr_t_final, "integrate to this time");
    auto* ur = propagate->add_option("--until-radius", pr_until_radius,
                                     "integrate forward until |x| reaches this radius");
    propagate->add_option("--samples", pr_samples,
                          "emit exactly this many uniformly spaced rows (default: every "
                          "accepted step)");
    propagate->add_option("--method", pr_method, "rk45 or leapfrog")->capture_default_str();
    propagate->add_option("--rel-tol", pr_cfg.rel_tol, "relative tolerance")
        ->capture_default_str();
    propagate->add_option("--abs-tol", pr_cfg.abs_tol, "absolute tolerance")
        ->capture_default_str();
    propagate->add_option("--step", pr_cfg.initial_step,
                          "initial step (rk45) or fixed step (leapfrog)");
    propagate->add_option("--max-steps", pr_cfg.max_steps, "step budget")->capture_default_str();
    propagate->add_option("--out", pr_out, "write CSV here instead of stdout");
    tf->excludes(ur);
    propagate->callback([&] {
        if (!*tf && !*ur) {
            throw CLI::RequiredError("--t-final or --until-radius");
        }
        if (pr_method == "leapfrog") {
            pr_cfg.method = IntegrationMethod::Leapfrog;
        } else if (pr_method != "rk45") {
            throw CLI::ValidationError("--method must be rk45 or leapfrog");
        }
        const State s0 = pr_state.state();
        const SystemParams p = pr_state.params();
        const PlaneFrame frame = plane_frame(s0, p);

        Trajectory traj;
        if (pr_samples == 1) {
            traj = integrate(s0, p, s0.t, pr_cfg);  // exactly the initial row
        } else if (*tf) {
            if (pr_samples == 0 || pr_t_final == s0.t) {
                traj = integrate(s0, p, pr_t_final, pr_cfg);
            } else {
                traj = integrate_sampled(s0, p, linspace(s0.t, pr_t_final, pr_samples), pr_cfg);
            }
        } else {
            traj = integrate_until_radius(s0, p, pr_until_radius, TimeDirection::Forward, pr_cfg);
            if (pr_samples > 1) {
                const double t_end = traj.final().t;
                traj = integrate_sampled(s0, p, linspace(s0.t, t_end, pr_samples), pr_cfg);
            }
        }
        OutputSink sink(pr_out);
        write_propagate_csv(sink.stream(), traj, frame);
    });

    // hodograph ---------------------------------------------------------------
    auto* hodograph = app.add_subcommand(
        "hodograph", "sample the velocity circle as CSV plus a JSON sidecar");
    StateFlags ho_state;
    ho_state.attach(hodograph);
    std::size_t ho_samples = 720;
    std::string ho_out;
    std::string ho_json;
    hodograph->add_option("--samples", ho_samples, "number of theta samples")
        ->capture_default_str();
    hodograph->add_option("--out", ho_out, "write CSV here instead of stdout");
    hodograph->add_option("--json", ho_json,
                          "sidecar path (default: --out with .json extension)");
    hodograph->callback([&] {
        const State s0 = ho_state.state();
        const SystemParams p = ho_state.params();
        const HodographCircle circle = velocity_circle(s0, p);
        const ConicOrbit orbit = conic_from_state(s0, p);
        {
            OutputSink sink(ho_out);
            write_hodograph_csv(sink.stream(), circle, orbit, ho_samples);
        }
        std::string sidecar = ho_json;
        if (sidecar.empty() && !ho_out.empty()) {
            const std::size_t dot = ho_out.find_last_of('.');
            sidecar = (dot == std::string::npos ? ho_out : ho_out.substr(0, dot)) + ".json";
        }
        if (!sidecar.empty()) {
            emit_json(hodograph_sidecar(s0, p), sidecar);
        }
    });

    // scatter ---------------------------------------------------------------
    auto* scatter = app.add_subcommand(
        "scatter", "hyperbolic scattering angles from (h, j) or from a state");
    scatter->set_help_flag("--help", "print help");  // frees -h for the energy flag
    StateFlags sc_state;
    sc_state.attach(scatter, /*required=*/false);
    double sc_h = 0.0;
    double sc_j = 0.0;
    bool sc_degrees = false;
    std::string sc_out;
    auto* oh = scatter->add_option("--h", sc_h, "total energy");
    auto* oj = scatter->add_option("--j", sc_j, "angular momentum magnitude |J|");
    scatter->add_flag("--degrees", sc_degrees, "emit angles in degrees");
    scatter->add_option("--out", sc_out, "write JSON here instead of stdout");
    scatter->callback([&] {
        double h = sc_h;
        double j = sc_j;
        if (!sc_state.x_text.empty() || !sc_state.v_text.empty()) {
            if (*oh || *oj) {
                throw CLI::ValidationError("give either --h/--j or --x/--v, not both");
            }
            const Conserved cons = conserved(sc_state.state(), sc_state.params());
            h = cons.h;
            j = cons.j;
        } else if (!*oh || !*oj) {
            throw CLI::RequiredError("--h and --j (or --x and --v)");
        }
        emit_json(scatter_report(h, j, sc_state.params(), sc_degrees), sc_out);
    });

    // verify ---------------------------------------------------------------
    auto* verify = app.add_subcommand(
        "verify", "run the oracle-vs-closed-form property suite and report pass/fail");
    VerifyOptions vf_opts;
    bool vf_json = false;
    std::string vf_out;
    verify->add_option("--seed", vf_opts.seed, "RNG seed")->capture_default_str();
    verify->add_option("--cases", vf_opts.cases, "case count for oracle checks")
        ->capture_default_str();
    verify->add_option("--tol", vf_opts.tol_override,
                       "override every check tolerance (debugging)");
    verify->add_flag("--json", vf_json, "emit a JSON report");
    verify->add_option("--out", vf_out, "write the report here instead of stdout");
    verify->callback([&] { exit_code = run_verify_text(vf_opts, vf_json, vf_out); });

    // batch-scatter ---------------------------------------------------------------
    auto* batch = app.add_subcommand(
        "batch-scatter", "closed-form vs oracle scattering angles over an (h, j) grid");
    std::string ba_h_grid;
    std::string ba_j_grid;
    double ba_m = 1.0;
    double ba_k = 1.0;
    double ba_radius_factor = 1e6;
    std::string ba_out;
    batch->add_option("--h-grid", ba_h_grid, "energies, lo:hi:n or comma list")->required();
    batch->add_option("--j-grid", ba_j_grid, "angular momenta, lo:hi:n or comma list")
        ->required();
    batch->add_option("--m", ba_m, "particle mass")->capture_default_str();
    batch->add_option("--k", ba_k, "force constant")->capture_default_str();
    batch->add_option("--radius-factor", ba_radius_factor,
                      "asymptote extraction radius in units of the latus rectum")
        ->capture_default_str();
    batch->add_option("--out", ba_out, "write CSV here instead of stdout");
    batch->callback([&] {
        const auto rows = batch_scatter(parse_grid(ba_h_grid), parse_grid(ba_j_grid),
                                        SystemParams(ba_m, ba_k), ba_radius_factor);
        OutputSink sink(ba_out);
        write_batch_scatter_csv(sink.stream(), rows);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsageError;
    } catch (const DomainError& e) {
        std::cerr << e.what() << '\n';
        return kExitDomainError;
    } catch (const NumericalError& e) {
        std::cerr << e.what() << '\n';
        return kExitNumericalError;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << '\n';
        return kExitUsageError;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return kExitNumericalError;
    }
    return exit_code;
}
