#include "hodokit/integrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hodokit {

namespace {

using StateVec = std::array<double, 6>;  // (x, y, z, vx, vy, vz)

StateVec pack(const Vec3& x, const Vec3& v) {
    return {x.x, x.y, x.z, v.x, v.y, v.z};
}

Vec3 position_of(const StateVec& y) { return {y[0], y[1], y[2]}; }
Vec3 velocity_of(const StateVec& y) { return {y[3], y[4], y[5]}; }

void kepler_rhs(const SystemParams& p, const StateVec& y, StateVec& dydt) {
    const double r2 = y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
    const double inv_r3 = 1.0 / (r2 * std::sqrt(r2));
    const double a = -(p.k / p.m) * inv_r3;
    dydt[0] = y[3];
    dydt[1] = y[4];
    dydt[2] = y[5];
    dydt[3] = a * y[0];
    dydt[4] = a * y[1];
    dydt[5] = a * y[2];
}

bool all_finite(const StateVec& y) {
    for (double v : y) {
        if (!std::isfinite(v)) {
            return false;
        }
    }
    return true;
}

void validate_config(const IntegratorConfig& cfg) {
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0)) {
        throw std::invalid_argument("integrator tolerances must be > 0");
    }
    if (cfg.max_steps == 0) {
        throw std::invalid_argument("max_steps must be > 0");
    }
    if (cfg.method == IntegrationMethod::Leapfrog && !(cfg.initial_step > 0.0)) {
        throw std::invalid_argument("Leapfrog needs a fixed initial_step > 0");
    }
}

double resolve_guard(const IntegratorConfig& cfg, const Vec3& x0) {
    return cfg.min_radius_guard >= 0.0 ? cfg.min_radius_guard : 1e-9 * x0.norm();
}

// Dormand-Prince 5(4) coefficients (Hairer, Norsett & Wanner).
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

// Step-control constants (Lund stabilization).
constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;   // strongest shrink per step
constexpr double kMaxFactor = 10.0;  // strongest growth per step
constexpr double kBeta = 0.04;

class Dopri5 {
public:
    Dopri5(const State& s0, const SystemParams& p, const IntegratorConfig& cfg, double direction)
        : params_(p),
          cfg_(cfg),
          dir_(direction),
          t_(s0.t),
          y_(pack(s0.x, s0.v)),
          guard_(resolve_guard(cfg, s0.x)) {
        kepler_rhs(params_, y_, k1_);
        h_ = cfg.initial_step > 0.0 ? cfg.initial_step * dir_ : initial_step_guess();
    }

    double t() const { return t_; }
    TrajectorySample current() const { return {t_, position_of(y_), velocity_of(y_)}; }

    /// Take one accepted step, clamped so t never passes t_limit (NaN = no
    /// limit). Returns false once t_limit has been reached exactly.
    bool step(double t_limit) {
        if (!std::isnan(t_limit) && (t_limit - t_) * dir_ <= 0.0) {
            return false;
        }
        bool rejected = false;
        while (true) {
            if (++steps_taken_ > cfg_.max_steps) {
                throw StepLimitExceeded();
            }
            if (0.1 * std::abs(h_) <=
                std::abs(t_) * std::numeric_limits<double>::epsilon()) {
                // Near-collision orbits shrink the step below time resolution
                // shortly before |x| would cross the guard; report those as
                // the collision they are.
                if (position_of(y_).norm() < 1e4 * guard_) {
                    throw SingularPosition("collision guard tripped");
                }
                throw NumericalError("integrator step size underflow");
            }

            bool last = false;
            if (!std::isnan(t_limit) && (t_ + 1.01 * h_ - t_limit) * dir_ > 0.0) {
                h_ = t_limit - t_;
                last = true;
            }

            const double err = attempt(h_);

            if (!std::isfinite(err)) {
                h_ *= 0.1;
                rejected = true;
                continue;
            }

            const double fac11 = std::pow(err, 0.2 - kBeta * 0.75);
            if (err > 1.0) {
                h_ /= std::min(1.0 / kMinFactor, fac11 / kSafety);
                rejected = true;
                continue;
            }

            // accepted
            double fac = fac11 / std::pow(facold_, kBeta);
            fac = std::max(1.0 / kMaxFactor, std::min(1.0 / kMinFactor, fac / kSafety));
            double h_next = h_ / fac;
            if (rejected) {
                h_next = dir_ * std::min(std::abs(h_next), std::abs(h_));
            }
            facold_ = std::max(err, 1e-4);

            t_ = last ? t_limit : t_ + h_;
            y_ = y_new_;
            k1_ = k7_;  // FSAL
            h_ = h_next;

            if (!all_finite(y_)) {
                throw NonFinite();
            }
            if (position_of(y_).norm() < guard_) {
                throw SingularPosition("collision guard tripped");
            }
            return true;
        }
    }

private:
    // One trial step of size h; fills y_new_/k7_ and returns the scaled error.
    double attempt(double h) {
        StateVec w, k2, k3, k4, k5, k6;

        for (int d = 0; d < 6; ++d) w[d] = y_[d] + h * a21 * k1_[d];
        kepler_rhs(params_, w, k2);
        for (int d = 0; d < 6; ++d) w[d] = y_[d] + h * (a31 * k1_[d] + a32 * k2[d]);
        kepler_rhs(params_, w, k3);
        for (int d = 0; d < 6; ++d) w[d] = y_[d] + h * (a41 * k1_[d] + a42 * k2[d] + a43 * k3[d]);
        kepler_rhs(params_, w, k4);
        for (int d = 0; d < 6; ++d)
            w[d] = y_[d] + h * (a51 * k1_[d] + a52 * k2[d] + a53 * k3[d] + a54 * k4[d]);
        kepler_rhs(params_, w, k5);
        for (int d = 0; d < 6; ++d)
            w[d] = y_[d] + h * (a61 * k1_[d] + a62 * k2[d] + a63 * k3[d] + a64 * k4[d] + a65 * k5[d]);
        kepler_rhs(params_, w, k6);
        for (int d = 0; d < 6; ++d)
            y_new_[d] = y_[d] + h * (a71 * k1_[d] + a73 * k3[d] + a74 * k4[d] + a75 * k5[d] +
                                     a76 * k6[d]);
        kepler_rhs(params_, y_new_, k7_);

        double err = 0.0;
        for (int d = 0; d < 6; ++d) {
            const double ee = h * (e1 * k1_[d] + e3 * k3[d] + e4 * k4[d] + e5 * k5[d] +
                                   e6 * k6[d] + e7 * k7_[d]);
            const double sc =
                cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(y_[d]), std::abs(y_new_[d]));
            err += (ee / sc) * (ee / sc);
        }
        return std::sqrt(err / 6.0);
    }

    // Hairer's starting-step heuristic based on one explicit Euler trial.
    double initial_step_guess() {
        double dnf = 0.0, dny = 0.0;
        for (int d = 0; d < 6; ++d) {
            const double sc = cfg_.abs_tol + cfg_.rel_tol * std::abs(y_[d]);
            dnf += (k1_[d] / sc) * (k1_[d] / sc);
            dny += (y_[d] / sc) * (y_[d] / sc);
        }
        double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
        h *= dir_;

        StateVec y1, k2;
        for (int d = 0; d < 6; ++d) y1[d] = y_[d] + h * k1_[d];
        kepler_rhs(params_, y1, k2);

        double der2 = 0.0;
        for (int d = 0; d < 6; ++d) {
            const double sc = cfg_.abs_tol + cfg_.rel_tol * std::abs(y_[d]);
            der2 += ((k2[d] - k1_[d]) / sc) * ((k2[d] - k1_[d]) / sc);
        }
        der2 = std::sqrt(der2) / std::abs(h);

        const double der12 = std::max(der2, std::sqrt(dnf));
        const double h1 =
            der12 <= 1e-15 ? std::max(1e-6, std::abs(h) * 1e-3) : std::pow(0.01 / der12, 0.2);
        return dir_ * std::min(100.0 * std::abs(h), h1);
    }

    SystemParams params_;
    IntegratorConfig cfg_;
    double dir_;
    double t_;
    StateVec y_;
    StateVec k1_{};
    StateVec y_new_{};
    StateVec k7_{};
    double guard_;
    double h_ = 0.0;
    double facold_ = 1e-4;
    std::uint64_t steps_taken_ = 0;
};

class Leapfrog {
public:
    Leapfrog(const State& s0, const SystemParams& p, const IntegratorConfig& cfg, double direction)
        : params_(p),
          cfg_(cfg),
          h_(cfg.initial_step * direction),
          dir_(direction),
          t_(s0.t),
          x_(s0.x),
          v_(s0.v),
          guard_(resolve_guard(cfg, s0.x)),
          a_(accelerate(s0.x, p)) {}

    double t() const { return t_; }
    TrajectorySample current() const { return {t_, x_, v_}; }

    bool step(double t_limit) {
        if (!std::isnan(t_limit) && (t_limit - t_) * dir_ <= 0.0) {
            return false;
        }
        if (++steps_taken_ > cfg_.max_steps) {
            throw StepLimitExceeded();
        }
        double h = h_;
        bool last = false;
        if (!std::isnan(t_limit) && (t_ + h - t_limit) * dir_ >= 0.0) {
            h = t_limit - t_;
            last = true;
        }
        // kick-drift-kick
        const Vec3 v_half = v_ + a_ * (0.5 * h);
        x_ += v_half * h;
        a_ = accelerate(x_, params_);
        v_ = v_half + a_ * (0.5 * h);
        t_ = last ? t_limit : t_ + h;

        if (!x_.is_finite() || !v_.is_finite()) {
            throw NonFinite();
        }
        if (x_.norm() < guard_) {
            throw SingularPosition("collision guard tripped");
        }
        return true;
    }

private:
    SystemParams params_;
    IntegratorConfig cfg_;
    double h_;
    double dir_;
    double t_;
    Vec3 x_;
    Vec3 v_;
    double guard_;
    Vec3 a_;
    std::uint64_t steps_taken_ = 0;
};

constexpr double kNoLimit = std::numeric_limits<double>::quiet_NaN();

// Drive either stepper to t_limit / until stop(sample) is true, reporting
// every accepted step.
template <typename Stepper, typename Observer, typename Stop>
void drive(Stepper& stepper, double t_limit, Observer&& observe, Stop&& stop) {
    observe(stepper.current());
    if (stop(stepper.current())) {
        return;
    }
    while (stepper.step(t_limit)) {
        const TrajectorySample s = stepper.current();
        observe(s);
        if (stop(s)) {
            return;
        }
    }
}

template <typename Observer, typename Stop>
void run(const State& s0, const SystemParams& p, const IntegratorConfig& cfg, double direction,
         double t_limit, Observer&& observe, Stop&& stop) {
    validate_config(cfg);
    if (cfg.method == IntegrationMethod::AdaptiveRK45) {
        Dopri5 stepper(s0, p, cfg, direction);
        drive(stepper, t_limit, observe, stop);
    } else {
        Leapfrog stepper(s0, p, cfg, direction);
        drive(stepper, t_limit, observe, stop);
    }
}

const auto never = [](const TrajectorySample&) { return false; };

}  // namespace

Vec3 accelerate(const Vec3& x, const SystemParams& p) {
    const double r = x.norm();
    if (r == 0.0) {
        throw SingularPosition();
    }
    return x * (-(p.k / p.m) / (r * r * r));
}

Trajectory integrate(const State& s0, const SystemParams& p, double t_final,
                     const IntegratorConfig& cfg) {
    if (!std::isfinite(t_final)) {
        throw std::invalid_argument("t_final must be finite");
    }
    Trajectory traj{{}, p, cfg};
    if (t_final == s0.t) {
        validate_config(cfg);
        traj.samples.push_back({s0.t, s0.x, s0.v});
        return traj;
    }
    const double direction = t_final > s0.t ? 1.0 : -1.0;
    run(s0, p, cfg, direction, t_final,
        [&](const TrajectorySample& s) { traj.samples.push_back(s); }, never);
    return traj;
}

Trajectory integrate_sampled(const State& s0, const SystemParams& p,
                             const std::vector<double>& times, const IntegratorConfig& cfg) {
    validate_config(cfg);
    if (times.empty()) {
        throw std::invalid_argument("need at least one sample time");
    }
    if (times.front() != s0.t) {
        throw std::invalid_argument("first sample time must equal the initial time");
    }
    const double direction = times.size() > 1 && times[1] < times[0] ? -1.0 : 1.0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        if ((times[i] - times[i - 1]) * direction <= 0.0) {
            throw std::invalid_argument("sample times must be strictly monotone");
        }
    }

    Trajectory traj{{}, p, cfg};
    traj.samples.reserve(times.size());
    traj.samples.push_back({s0.t, s0.x, s0.v});
    if (times.size() == 1) {
        return traj;
    }

    auto step_to = [&](auto& stepper) {
        for (std::size_t i = 1; i < times.size(); ++i) {
            while (stepper.step(times[i])) {
            }
            traj.samples.push_back(stepper.current());
        }
    };
    if (cfg.method == IntegrationMethod::AdaptiveRK45) {
        Dopri5 stepper(s0, p, cfg, direction);
        step_to(stepper);
    } else {
        Leapfrog stepper(s0, p, cfg, direction);
        step_to(stepper);
    }
    return traj;
}

Trajectory integrate_until_radius(const State& s0, const SystemParams& p, double r_stop,
                                  TimeDirection direction, const IntegratorConfig& cfg) {
    Trajectory traj{{}, p, cfg};
    const double dir = direction == TimeDirection::Forward ? 1.0 : -1.0;
    run(s0, p, cfg, dir, kNoLimit,
        [&](const TrajectorySample& s) { traj.samples.push_back(s); },
        [&](const TrajectorySample& s) { return s.x.norm() >= r_stop; });
    return traj;
}

void integrate_observe(const State& s0, const SystemParams& p, double t_final,
                       const IntegratorConfig& cfg,
                       const std::function<void(const TrajectorySample&)>& observer) {
    if (!std::isfinite(t_final)) {
        throw std::invalid_argument("t_final must be finite");
    }
    if (t_final == s0.t) {
        validate_config(cfg);
        observer({s0.t, s0.x, s0.v});
        return;
    }
    const double direction = t_final > s0.t ? 1.0 : -1.0;
    run(s0, p, cfg, direction, t_final, [&](const TrajectorySample& s) { observer(s); }, never);
}

std::vector<ThetaSample> sweep_theta(const Trajectory& traj, const PlaneFrame& f) {
    std::vector<ThetaSample> out;
    out.reserve(traj.samples.size());
    double offset = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const TrajectorySample& s = traj.samples[i];
        const PlaneCoords pc = to_plane_coords(State(s.x, s.v, s.t), f);
        double theta = pc.theta + offset;
        if (i > 0) {
            const double jump = std::round((theta - prev) / (2.0 * M_PI));
            offset -= jump * 2.0 * M_PI;
            theta -= jump * 2.0 * M_PI;
        }
        prev = theta;
        out.push_back({s.t, theta});
    }
    return out;
}

Vec3 asymptotic_direction(const State& s0, const SystemParams& p, TimeDirection direction,
                          double radius_factor, const IntegratorConfig& cfg) {
    if (!(radius_factor > 0.0) || !std::isfinite(radius_factor)) {
        throw std::invalid_argument("radius_factor must be finite and > 0");
    }
    const Conserved cons = conserved(s0, p);
    if (!(cons.h > 0.0)) {
        throw NotHyperbolic("not hyperbolic (h <= 0)");
    }
    if (cons.j <= kRadialTolerance * p.m * s0.x.norm() * s0.v.norm()) {
        throw DegenerateRadialMotion();
    }
    const double latus_rectum = cons.j * cons.j / (p.m * p.k);
    const double r_stop = radius_factor * latus_rectum;

    const double dir = direction == TimeDirection::Forward ? 1.0 : -1.0;
    Vec3 v_end = s0.v;
    run(s0, p, cfg, dir, kNoLimit, [&](const TrajectorySample& s) { v_end = s.v; },
        [&](const TrajectorySample& s) { return s.x.norm() >= r_stop; });
    return v_end.normalized();
}

}  // namespace hodokit
