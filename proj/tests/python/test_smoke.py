import json
import math

import pytest

import hodokit as hk

P = hk.SystemParams(1, 1)


def canonical_state() -> "hk.State":
    return hk.State(hk.Vec3(1, 0, 0), hk.Vec3(0, 2, 0))


def test_velocity_circle_canonical():
    circle = hk.velocity_circle(canonical_state(), P)
    assert circle.radius == pytest.approx(0.5, abs=1e-15)
    assert tuple(circle.center) == pytest.approx((0.0, 1.5, 0.0), abs=1e-15)


def test_conic_elements():
    orbit = hk.conic_from_state(canonical_state(), P)
    assert orbit.e == pytest.approx(3.0, abs=1e-13)
    assert orbit.latus_rectum == pytest.approx(4.0, abs=1e-13)
    assert orbit.cls == hk.ConicClass.Hyperbola
    assert hk.radius_at(orbit, 0.0) == pytest.approx(1.0, abs=1e-13)


def test_claim_angles_agree():
    theta = hk.arc_angle(3.0)
    psi = hk.scattering_angle_from_conserved(1.0, 2.0, P)
    assert theta == pytest.approx(psi, rel=1e-14)
    assert theta == pytest.approx(3.8212664724980372, abs=1e-13)
    star, limit = hk.theta_limits(3.0)
    assert star == pytest.approx(math.acos(1.0 / 3.0), abs=1e-14)
    assert limit == pytest.approx(math.pi - star, abs=1e-14)


def test_scattering_assembly():
    sc = hk.analyze_scattering(canonical_state(), P)
    assert sc.Psi == sc.Theta
    assert sc.energy_radius == pytest.approx(math.sqrt(2.0), abs=1e-14)
    assert tuple(sc.v_out) == pytest.approx((-0.47140452079103173, 4.0 / 3.0, 0.0), abs=1e-12)
    assert tuple(sc.hyperbola_center) == pytest.approx((1.5, 0.0, 0.0), abs=1e-12)


def test_domain_errors_are_value_errors():
    radial = hk.State(hk.Vec3(1, 0, 0), hk.Vec3(2, 0, 0))
    with pytest.raises(ValueError):
        hk.velocity_circle(radial, P)
    with pytest.raises(ValueError):
        hk.scattering_angle_from_conserved(-1.0, 2.0, P)
    with pytest.raises(ValueError):
        hk.State(hk.Vec3(0, 0, 0), hk.Vec3(1, 0, 0))


def test_integrate_circular_orbit_closes():
    s0 = hk.State(hk.Vec3(1, 0, 0), hk.Vec3(0, 1, 0))
    traj = hk.integrate(s0, P, 2.0 * math.pi)
    last = traj.samples[-1]
    assert last.x.x == pytest.approx(1.0, abs=1e-8)
    assert last.x.y == pytest.approx(0.0, abs=1e-8)


def test_sweep_theta_increases():
    s0 = hk.State(hk.Vec3(1, 0, 0), hk.Vec3(0, 1.2, 0))
    frame = hk.plane_frame(s0, P)
    traj = hk.integrate(s0, P, 20.0)
    swept = hk.sweep_theta(traj, frame)
    thetas = [theta for _, theta in swept]
    assert all(b > a for a, b in zip(thetas, thetas[1:]))


def test_asymptotic_direction_matches_closed_form():
    d = hk.asymptotic_direction(canonical_state(), P, hk.TimeDirection.Forward)
    assert d.x == pytest.approx(-1.0 / 3.0, abs=1e-4)
    assert d.y == pytest.approx(0.9428090415820634, abs=1e-4)


def test_fit_circle_exact():
    fit = hk.fit_circle([(1, 0), (0, 1), (-1, 0)])
    assert fit.center == pytest.approx((0.0, 0.0), abs=1e-14)
    assert fit.radius == pytest.approx(1.0, abs=1e-14)
    assert fit.rms_residual < 1e-14


def test_analyze_dict_matches_golden(golden_dir):
    report = hk.analyze(canonical_state(), P)
    golden = json.loads((golden_dir / "analyze_canonical.json").read_text())
    assert report == golden


def test_run_verification_passes():
    results = hk.run_verification(seed=7, cases=8)
    assert all(r.pass_ for r in results), [(r.name, r.detail) for r in results if not r.pass_]
