#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hodokit/dynamics.hpp"

namespace hodokit {

enum class IntegrationMethod { AdaptiveRK45, Leapfrog };

enum class TimeDirection { Forward, Backward };

/// Knobs of the numerical oracle. The defaults give ~1e-10 local error with
/// the embedded Dormand-Prince 5(4) pair; Leapfrog is a fixed-step
/// kick-drift-kick cross-check and needs initial_step > 0.
struct IntegratorConfig {
    IntegrationMethod method = IntegrationMethod::AdaptiveRK45;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double initial_step = 0.0;  ///< 0 = choose automatically (RK45 only)
    std::uint64_t max_steps = 10'000'000;
    double min_radius_guard = -1.0;  ///< < 0 = use 1e-9 * |x0|
};

struct TrajectorySample {
    double t;
    Vec3 x;
    Vec3 v;
};

/// Time-ordered samples of an integrated orbit (monotone t, forward or
/// backward), together with the parameters and config that produced them.
struct Trajectory {
    std::vector<TrajectorySample> samples;
    SystemParams params;
    IntegratorConfig config;

    const TrajectorySample& initial() const { return samples.front(); }
    const TrajectorySample& final() const { return samples.back(); }
};

struct ThetaSample {
    double t;
    double theta;
};

/// Acceleration of Newton's equation: -(k/m) x / |x|^3.
Vec3 accelerate(const Vec3& x, const SystemParams& p);

/// Integrate from s0 to t_final, recording every accepted step (first sample
/// is s0 itself). t_final < s0.t integrates backward.
Trajectory integrate(const State& s0, const SystemParams& p, double t_final,
                     const IntegratorConfig& cfg = {});

/// Integrate and report exactly the requested sample times (strictly monotone,
/// starting at s0.t). Steps are clamped so every sample time is hit exactly.
Trajectory integrate_sampled(const State& s0, const SystemParams& p,
                             const std::vector<double>& times, const IntegratorConfig& cfg = {});

/// Integrate forward or backward in time until |x| >= r_stop.
Trajectory integrate_until_radius(const State& s0, const SystemParams& p, double r_stop,
                                  TimeDirection direction, const IntegratorConfig& cfg = {});

/// Streaming variant of integrate() for long runs: every accepted step is
/// passed to `observer` and nothing is stored.
void integrate_observe(const State& s0, const SystemParams& p, double t_final,
                       const IntegratorConfig& cfg,
                       const std::function<void(const TrajectorySample&)>& observer);

/// Unwrapped polar angle along a trajectory that lies in the plane of `f`.
std::vector<ThetaSample> sweep_theta(const Trajectory& traj, const PlaneFrame& f);

/// Unit velocity direction after escaping to |x| >= radius_factor * latus
/// rectum. Requires positive energy.
Vec3 asymptotic_direction(const State& s0, const SystemParams& p, TimeDirection direction,
                          double radius_factor = 1e6, const IntegratorConfig& cfg = {});

}  // namespace hodokit
