#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hodokit/integrate.hpp"
#include "hodokit/scattering.hpp"
#include "test_support.hpp"

using namespace hodokit;
using test::canonical_circular;
using test::canonical_elliptic;
using test::canonical_hyperbolic;

namespace {

const SystemParams kUnit{1, 1};

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    out.back() = b;
    return out;
}

// radial period of an elliptic orbit
double period(const ConicOrbit& orbit) {
    const double a = orbit.latus_rectum / (1.0 - orbit.e * orbit.e);
    return 2.0 * M_PI * std::sqrt(orbit.params.m * a * a * a / orbit.params.k);
}

}  // namespace

TEST_CASE("acceleration examples") {
    const Vec3 a1 = accelerate({1, 0, 0}, kUnit);
    CHECK(a1.x == -1.0);
    CHECK(a1.y == 0.0);

    const Vec3 a2 = accelerate({2, 0, 0}, kUnit);
    CHECK(a2.x == -0.25);

    const Vec3 a3 = accelerate({0, 1, 0}, SystemParams(2, 1));
    CHECK(a3.y == -0.5);

    CHECK_THROWS_AS(accelerate({0, 0, 0}, kUnit), SingularPosition);
}

TEST_CASE("circular orbit closes after one period") {
    const State s0 = canonical_circular();
    const Trajectory traj = integrate(s0, kUnit, 2.0 * M_PI);
    const TrajectorySample& last = traj.final();
    CHECK(last.t == 2.0 * M_PI);
    CHECK(std::abs(last.x.x - 1.0) < 1e-8);
    CHECK(std::abs(last.x.y) < 1e-8);
    CHECK(std::abs(last.v.x) < 1e-8);
    CHECK(std::abs(last.v.y - 1.0) < 1e-8);
}

TEST_CASE("zero-length integration returns the initial state only") {
    const State s0 = canonical_hyperbolic();
    const Trajectory traj = integrate(s0, kUnit, 0.0);
    REQUIRE(traj.samples.size() == 1);
    CHECK(traj.samples[0].t == 0.0);
    CHECK(traj.samples[0].x.x == 1.0);
}

TEST_CASE("escape on the canonical hyperbola approaches the energy-circle speed") {
    const Trajectory traj = integrate_until_radius(canonical_hyperbolic(), kUnit, 1e6,
                                                   TimeDirection::Forward);
    CHECK(traj.final().x.norm() >= 1e6);
    CHECK(std::abs(traj.final().v.norm() - std::sqrt(2.0)) < 1e-5);
}

TEST_CASE("conserved quantities drift below 1e-8 along adaptive trajectories") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> um(0.5, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        SystemParams p(um(rng), um(rng));
        std::uniform_real_distribution<double> ue(0.0, 0.85);
        const State s0 =
            test::make_orbit_state(ue(rng), 1.0 + trial * 0.1, 0.3, p, test::random_rotation(rng));
        const Conserved c0 = conserved(s0, p);
        // ~several characteristic times
        const Trajectory traj = integrate(s0, p, 50.0);
        const double h_scale = std::max(std::abs(c0.h), p.k / s0.x.norm());
        for (const TrajectorySample& s : traj.samples) {
            const Conserved c = conserved(State(s.x, s.v, s.t), p);
            CHECK((c.J - c0.J).norm() / c0.j < 1e-8);
            CHECK(std::abs(c.h - c0.h) / h_scale < 1e-8);
        }
    }
}

TEST_CASE("polar angle increases strictly along forward trajectories") {
    SystemParams p(1.2, 0.9);
    const State s0 = test::make_orbit_state(0.6, 1.3, 0.1, p, Rotation{});
    const PlaneFrame f = plane_frame(s0, p);
    const Trajectory traj = integrate(s0, p, 40.0);
    const auto swept = sweep_theta(traj, f);
    REQUIRE(swept.size() == traj.samples.size());
    for (std::size_t i = 1; i < swept.size(); ++i) {
        CHECK(swept[i].theta > swept[i - 1].theta);
    }
    // several revolutions happened, so unwrapping mattered
    CHECK(swept.back().theta - swept.front().theta > 2.0 * M_PI);
}

TEST_CASE("circular orbit sweeps exactly 2 pi per period") {
    const State s0 = canonical_circular();
    const PlaneFrame f = plane_frame(s0, kUnit);
    const Trajectory traj = integrate(s0, kUnit, 2.0 * M_PI);
    const auto swept = sweep_theta(traj, f);
    CHECK(std::abs(swept.back().theta - swept.front().theta - 2.0 * M_PI) < 1e-8);
}

TEST_CASE("hyperbolic sweep converges to the asymptote angle") {
    const State s0 = canonical_hyperbolic();
    const PlaneFrame f = plane_frame(s0, kUnit);
    const Trajectory traj = integrate_until_radius(s0, kUnit, 1e6, TimeDirection::Forward);
    const auto swept = sweep_theta(traj, f);
    CHECK(std::abs(swept.back().theta - 1.9106332362490186) < 1e-5);
}

TEST_CASE("specific angular momentum matches r^2 dtheta/dt (finite differences)") {
    const State s0 = canonical_elliptic();
    const ConicOrbit orbit = conic_from_state(s0, kUnit);
    const double T = period(orbit);
    const Trajectory traj = integrate_sampled(s0, kUnit, linspace(0.0, T, 10001));
    const auto swept = sweep_theta(traj, orbit.frame);
    const Conserved c0 = conserved(s0, kUnit);
    for (std::size_t i = 1; i + 1 < swept.size(); i += 37) {
        const double dtheta_dt =
            (swept[i + 1].theta - swept[i - 1].theta) / (swept[i + 1].t - swept[i - 1].t);
        const double r = traj.samples[i].x.norm();
        const double j_fd = kUnit.m * r * r * dtheta_dt;
        CHECK(test::rel_diff(j_fd, c0.j) < 1e-6);
    }
}

TEST_CASE("sampled integration hits the requested times exactly") {
    const State s0 = canonical_circular();
    const auto times = linspace(0.0, 2.0 * M_PI, 100);
    const Trajectory traj = integrate_sampled(s0, kUnit, times);
    REQUIRE(traj.samples.size() == 100);
    for (std::size_t i = 0; i < times.size(); ++i) {
        CHECK(traj.samples[i].t == times[i]);
    }
    CHECK(std::abs(traj.samples.back().x.x - 1.0) < 1e-8);

    CHECK_THROWS_AS(integrate_sampled(s0, kUnit, {0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(integrate_sampled(s0, kUnit, {0.0, 1.0, 0.5}), std::invalid_argument);
}

TEST_CASE("forward-then-backward integration returns to the start") {
    const State s0 = canonical_elliptic();
    const Trajectory fwd = integrate(s0, kUnit, 7.0);
    const State mid(fwd.final().x, fwd.final().v, fwd.final().t);
    const Trajectory back = integrate(mid, kUnit, 0.0);
    const TrajectorySample& end = back.final();
    CHECK(std::abs(end.x.x - s0.x.x) < 1e-7);
    CHECK(std::abs(end.x.y - s0.x.y) < 1e-7);
    CHECK(std::abs(end.x.z - s0.x.z) < 1e-7);
    CHECK(std::abs(end.v.x - s0.v.x) < 1e-7);
    CHECK(std::abs(end.v.y - s0.v.y) < 1e-7);
    CHECK(std::abs(end.v.z - s0.v.z) < 1e-7);
}

TEST_CASE("collision guard aborts near-radial plunges") {
    const State plunge({1, 0, 0}, {0, 1e-5, 0});
    CHECK_THROWS_AS(integrate(plunge, kUnit, 2.0), SingularPosition);
}

TEST_CASE("step limit is enforced") {
    IntegratorConfig cfg;
    cfg.max_steps = 10;
    CHECK_THROWS_AS(integrate(canonical_circular(), kUnit, 2.0 * M_PI, cfg), StepLimitExceeded);
}

TEST_CASE("config validation") {
    IntegratorConfig bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(integrate(canonical_circular(), kUnit, 1.0, bad), std::invalid_argument);

    IntegratorConfig lf;
    lf.method = IntegrationMethod::Leapfrog;
    lf.initial_step = 0.0;
    CHECK_THROWS_AS(integrate(canonical_circular(), kUnit, 1.0, lf), std::invalid_argument);

    CHECK_THROWS_AS(integrate(canonical_circular(), kUnit, std::nan("")),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        asymptotic_direction(canonical_hyperbolic(), kUnit, TimeDirection::Forward, -1.0),
        std::invalid_argument);
}

TEST_CASE("leapfrog: energy error oscillates without secular growth") {
    const State s0 = canonical_elliptic();
    const ConicOrbit orbit = conic_from_state(s0, kUnit);
    const double T = period(orbit);
    const double h0 = energy(s0, kUnit);

    IntegratorConfig cfg;
    cfg.method = IntegrationMethod::Leapfrog;
    cfg.initial_step = T / 500.0;

    const double n_periods = 1e4;
    const double t_head_end = 100.0 * T;
    const double t_tail_start = (n_periods - 100.0) * T;

    double head_sum = 0.0, tail_sum = 0.0, max_dev = 0.0;
    std::size_t head_n = 0, tail_n = 0;
    integrate_observe(s0, kUnit, n_periods * T, cfg, [&](const TrajectorySample& s) {
        const double h = energy(State(s.x, s.v, s.t), kUnit);
        max_dev = std::max(max_dev, std::abs(h - h0));
        if (s.t <= t_head_end) {
            head_sum += h;
            ++head_n;
        } else if (s.t >= t_tail_start) {
            tail_sum += h;
            ++tail_n;
        }
    });
    REQUIRE(head_n > 0);
    REQUIRE(tail_n > 0);
    const double drift = std::abs(head_sum / head_n - tail_sum / tail_n) / std::abs(h0);
    CHECK(drift < 1e-6);
    // bounded oscillation (no blow-up); amplitude is O(step^2)
    CHECK(max_dev / std::abs(h0) < 1e-3);
}

TEST_CASE("leapfrog round trip on a circular orbit") {
    IntegratorConfig cfg;
    cfg.method = IntegrationMethod::Leapfrog;
    cfg.initial_step = 2.0 * M_PI / 2000.0;
    const Trajectory traj = integrate(canonical_circular(), kUnit, 2.0 * M_PI, cfg);
    CHECK(std::abs(traj.final().x.x - 1.0) < 1e-4);
    CHECK(std::abs(traj.final().x.y) < 1e-4);
}

TEST_CASE("asymptotic directions from the oracle match the closed form") {
    const Vec3 fwd = asymptotic_direction(canonical_hyperbolic(), kUnit, TimeDirection::Forward);
    CHECK(std::abs(fwd.x - (-1.0 / 3.0)) < 1e-4);
    CHECK(std::abs(fwd.y - 0.9428090415820634) < 1e-4);
    CHECK(std::abs(fwd.z) < 1e-12);

    // backward gives -d_in: the incoming motion moves opposite its asymptote direction
    const Vec3 bwd = asymptotic_direction(canonical_hyperbolic(), kUnit, TimeDirection::Backward);
    CHECK(std::abs(bwd.x - 1.0 / 3.0) < 1e-4);
    CHECK(std::abs(bwd.y - 0.9428090415820634) < 1e-4);

    CHECK_THROWS_AS(asymptotic_direction(canonical_elliptic(), kUnit, TimeDirection::Forward),
                    NotHyperbolic);
    // positive energy but radial: rejected like every other planar operation
    CHECK_THROWS_AS(
        asymptotic_direction(State({1, 0, 0}, {2, 0, 0}), kUnit, TimeDirection::Forward),
        DegenerateRadialMotion);
}

TEST_CASE("nearly straight passage deflects by nearly nothing") {
    // huge j: the deflection angle 2 atan(1/sqrt(e^2-1)) ~ 1.4e-5 vanishes and
    // the two asymptotic velocity directions become anti-parallel
    const State s0 = state_from_conserved(1.0, 1e5, kUnit);
    const Vec3 fwd = asymptotic_direction(s0, kUnit, TimeDirection::Forward, 1e6);
    const Vec3 bwd = asymptotic_direction(s0, kUnit, TimeDirection::Backward, 1e6);
    // the far-past and far-future unit velocities coincide, i.e. the incoming
    // asymptote direction -bwd is anti-parallel to the outgoing one
    CHECK((fwd - bwd).norm() < 1e-4);
}

TEST_CASE("far position directions converge to the asymptote directions") {
    const State s0 = canonical_hyperbolic();
    const ConicOrbit orbit = conic_from_state(s0, kUnit);
    const auto [d_in, d_out] = asymptotic_directions(orbit);

    const Trajectory fwd = integrate_until_radius(s0, kUnit, 1e6, TimeDirection::Forward);
    CHECK((fwd.final().x.normalized() - d_out).norm() < 1e-4);
    const Trajectory bwd = integrate_until_radius(s0, kUnit, 1e6, TimeDirection::Backward);
    CHECK((bwd.final().x.normalized() - d_in).norm() < 1e-4);
}

TEST_CASE("oracle scattering angle agrees with the claim for the canonical case") {
    const State s0 = canonical_hyperbolic();
    const PlaneFrame f = plane_frame(s0, kUnit);
    const Vec3 v_fwd = asymptotic_direction(s0, kUnit, TimeDirection::Forward);
    const Vec3 v_bwd = asymptotic_direction(s0, kUnit, TimeDirection::Backward);
    double angle = signed_angle(-v_bwd, v_fwd, f.e3);
    if (angle <= 0.0) {
        angle += 2.0 * M_PI;
    }
    CHECK(std::abs(angle - 3.8212664724980372) < 1e-4);
}
