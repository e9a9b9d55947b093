import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from msdyn import adiabatic, linkage, mstransform
from msdyn import pulses as P
from msdyn.errors import PreconditionError
from msdyn.scenarios import PRESETS, get_preset, w_rap, x_fstirap

angles = st.floats(-10, 10, allow_nan=False)


def test_alpha_examples():
    assert adiabatic.da_angle_two(0.0, 2.0) == 0.0
    assert adiabatic.da_angle_two(1.5, 1.5) == pytest.approx(np.pi / 8)
    assert adiabatic.da_angle_two(1.0, -1e9) == pytest.approx(np.pi / 2, abs=1e-8)
    with pytest.raises(PreconditionError):
        adiabatic.da_angle_two(0.0, 0.0)


def test_alpha_sweeps_continuously_through_resonance():
    delta = np.linspace(50, -50, 2001)
    alpha = adiabatic.da_angle_two(np.full_like(delta, 3.0), delta)
    assert np.all(np.diff(alpha) > 0)
    assert alpha[0] == pytest.approx(0, abs=0.04) and alpha[-1] == pytest.approx(np.pi / 2, abs=0.04)


def test_three_state_angle_examples():
    theta, _ = adiabatic.da_angles_three(0.0, 2.0, 0.0)
    assert theta == 0.0
    theta, phi = adiabatic.da_angles_three(3.0, 3.0, 0.0)
    assert theta == pytest.approx(np.pi / 4) and phi == pytest.approx(np.pi / 4)
    theta, _ = adiabatic.da_angles_three(5.0, 1e-12, 0.0)
    assert theta == pytest.approx(np.pi / 2)
    with pytest.raises(PreconditionError):
        adiabatic.da_angles_three(0.0, 0.0, 1.0)


def test_rotation_examples():
    assert np.array_equal(adiabatic.rotation_two(0.0), np.eye(2))
    assert np.allclose(adiabatic.rotation_two(np.pi / 2), [[0, 1], [-1, 0]], atol=1e-15)
    assert np.array_equal(adiabatic.rotation_three(0.0, 0.0), [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    R = adiabatic.rotation_three(np.pi / 4, 0.0)
    assert R[1] == pytest.approx([np.sqrt(2) / 2, 0, -np.sqrt(2) / 2])


@given(angles, angles)
def test_rotations_orthogonal(a, b):
    R2 = adiabatic.rotation_two(a)
    assert np.abs(R2 @ R2.T - np.eye(2)).max() < 1e-12
    assert np.linalg.det(R2) == pytest.approx(1.0, abs=1e-12)
    R3 = adiabatic.rotation_three(a, b)
    assert np.abs(R3 @ R3.T - np.eye(3)).max() < 1e-12
    assert abs(np.linalg.det(R3)) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=100)
@given(st.floats(0, 50), st.floats(-50, 50).filter(lambda d: abs(d) > 1e-6))
def test_rotation_two_diagonalises_pair(omega, delta):
    H = 0.5 * np.array([[0, omega], [omega, 2 * delta]])
    R = adiabatic.rotation_two(adiabatic.da_angle_two(omega, delta))
    D = R.T @ H @ R  # DA states are the columns of R
    assert abs(D[0, 1]) < 1e-12 * (1 + abs(omega) + abs(delta))


@settings(max_examples=100)
@given(st.floats(0.01, 50), st.floats(0, 50), st.floats(-20, 20))
def test_rotation_three_diagonalises_triple(op, os_, delta):
    H = 0.5 * np.array([[0, op, 0], [op, 2 * delta, os_], [0, os_, 0]])
    R = adiabatic.rotation_three(*adiabatic.da_angles_three(op, os_, delta))
    D = R @ H @ R.T
    assert np.abs(D - np.diag(np.diag(D))).max() < 1e-12 * (1 + op + os_ + abs(delta))
    assert D[1, 1] == pytest.approx(0, abs=1e-12 * (1 + op + os_))


def test_two_state_condition_examples():
    rep = adiabatic.check_adiabatic_two(3.0, 0.0, 2.0, 0.0)
    assert rep.lhs == 0 and rep.ratio == 0
    omega = np.sqrt(3) * 40
    rep = adiabatic.check_adiabatic_two(omega, 0.0, 0.0, 1.0, t=30.0)
    assert rep.lhs == pytest.approx(69.28, abs=5e-3)
    assert rep.rhs == pytest.approx(3.324e5, rel=1e-3)
    assert rep.ratio == pytest.approx(2.08e-4, rel=2e-3)
    rep = adiabatic.check_adiabatic_two(0.0, 0.0, 4.0, 1.0)
    assert rep.ratio == 0


def test_two_state_exponent_is_configurable():
    rep = adiabatic.check_adiabatic_two(4.0, 0.0, 0.0, 1.0, exponent=0.5)
    assert rep.rhs == pytest.approx(4.0)
    assert rep.ratio == pytest.approx(1.0)


def test_fig3_schedule_condition_at_crossing():
    spec = w_rap().build_linkage()
    fam = mstransform.ms_family(spec, np.array([30.0]))
    omega, rate = fam.couplings[0, 1, 0], fam.coupling_rates[0, 1, 0]
    assert omega == pytest.approx(np.sqrt(3) * 40)
    rep = adiabatic.check_adiabatic_two(omega, rate, 0.0, 1.0)
    assert rep.ratio == pytest.approx(2.08e-4, rel=2e-3)


def test_three_state_condition_examples():
    rep = adiabatic.check_adiabatic_three(2.0, -0.4, 4.0, -0.8)
    assert rep.lhs == 0
    rep = adiabatic.check_adiabatic_three(0.0, 0.0, 0.0, 0.0)
    assert not rep.defined and np.isnan(rep.ratio)


def _theta(op, os_, t):
    return adiabatic.da_angles_three(P.evaluate(op, t), P.evaluate(os_, t), 0.0)[0]


@pytest.mark.parametrize("delay", [0.5, 1.0, 2.0])
def test_three_state_ratio_at_gaussian_crossing(delay):
    op, os_ = P.gaussian(10, delay / 2), P.gaussian(10, -delay / 2)
    t = 0.0
    rep = adiabatic.check_adiabatic_three(P.evaluate(op, t), P.derivative(op, t), P.evaluate(os_, t),
                                          P.derivative(os_, t))
    h = 1e-5
    fd = (_theta(op, os_, t + h) - _theta(op, os_, t - h)) / (2 * h)
    assert rep.ratio == pytest.approx(abs(fd), abs=1e-6)
    assert rep.ratio == pytest.approx(delay, rel=1e-9)  # theta' = d / T^2 for equal-width Gaussians


@settings(max_examples=100, deadline=None)
@given(st.floats(0.5, 50), st.floats(0.5, 50), st.floats(-3, 3), st.floats(0.5, 3), st.floats(-4, 4))
def test_three_state_ratio_is_theta_speed(a, b, delay, width, t):
    op, os_ = P.gaussian(a, delay, width), P.gaussian(b, 0.0, width)
    rms2 = P.evaluate(op, t) ** 2 + P.evaluate(os_, t) ** 2
    if rms2 <= 1e-6:
        return
    rep = adiabatic.check_adiabatic_three(P.evaluate(op, t), P.derivative(op, t), P.evaluate(os_, t),
                                          P.derivative(os_, t))
    h = 1e-5
    fd = (_theta(op, os_, t + h) - _theta(op, os_, t - h)) / (2 * h)
    assert rep.ratio == pytest.approx(abs(fd), abs=1e-6)


def test_fractional_schedule_theta_speed_against_coupling():
    scenario = x_fstirap()
    fam = mstransform.ms_family(scenario.build_linkage(), scenario.grid.times())
    c, r = fam.couplings[:, 0], fam.coupling_rates[:, 0]
    rep = adiabatic.check_adiabatic_three(c[:, 0], r[:, 0], c[:, 1], r[:, 1])
    speed = np.where(rep.defined, rep.ratio, 0.0)
    rms = np.sqrt(rep.rhs)
    assert 0.3 < speed.max() < 1.0  # measured 0.58 / T
    on = rms > 1e-12 * rms.max()
    assert (speed[on] / rms[on]).max() <= 0.2


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_da_basis_diagonalises_ms_blocks(name):
    scenario = get_preset(name)
    spec = scenario.build_linkage()
    times = scenario.grid.with_steps(3000).times()
    fam = mstransform.ms_family(spec, times)
    delta = linkage.detuning_values(spec, times)
    U = adiabatic.da_transform(fam, delta)
    H_ms = fam.S @ linkage.hamiltonian_series(spec, times) @ fam.S.transpose(0, 2, 1)
    D = U @ H_ms @ U.transpose(0, 2, 1)
    off = np.abs(D * (1 - np.eye(spec.dim))).max(axis=(1, 2))
    scale = np.linalg.norm(H_ms, 2, axis=(1, 2))
    active = fam.active
    assert np.all(off[active] <= 1e-9 * scale[active])


@pytest.mark.parametrize("name", ["w-rap", "w-half-rap", "npod-cpr"])
def test_alpha_continuous_on_scenario_grids(name):
    scenario = get_preset(name)
    spec = scenario.build_linkage()
    times = scenario.grid.times()
    fam = mstransform.ms_family(spec, times)
    delta = linkage.detuning_values(spec, times) * np.ones_like(times)
    for k in range(fam.couplings.shape[1]):
        alpha = adiabatic.block_angles(fam.couplings[:, k], delta, "pair")[0]
        assert np.abs(np.diff(alpha)).max() < np.pi / 4


def test_da_labels():
    scenario = x_fstirap()
    fam = mstransform.ms_family(scenario.build_linkage(), np.array([50.0]))
    assert adiabatic.da_labels(fam.structure) == ["dg1", "de1", "phi1_+", "phi1_0", "phi1_-"]
