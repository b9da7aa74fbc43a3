import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic import ValidationError
from scipy.integrate import quad, trapezoid

from core.errors import ProtocolError
from core.transport import (
    alpha_of_t,
    coherent_complexity,
    coherent_wavefunction,
    displacement,
    expectation_energy,
    fidelity,
    fidelity_series,
    nonadiabaticity,
    phase_space_means,
    read_protocol_table,
    tfd_theta,
    velocity,
)
from models import TransportParams, TransportProtocol

PARAMS = TransportParams(m=1.0, omega=2.0, beta=1.0)
SUDDEN = TransportProtocol(kind="sudden", d0=1.0)
SMOOTH = TransportProtocol(kind="smooth", length=1.0, duration=2.0)


def printed_complexity(alpha: complex, vartheta: float) -> float:
    return vartheta / math.sinh(vartheta / 2) * math.sqrt((abs(alpha) ** 2 + 2) * math.cosh(vartheta) - 2)


# ===== protocols =====

def test_sudden_displacement():
    assert displacement(SUDDEN, 0.0) == 0.0
    np.testing.assert_array_equal(displacement(SUDDEN, np.array([0.0, 1e-9, 5.0])), [0.0, 1.0, 1.0])


def test_smooth_displacement_and_velocity():
    assert displacement(SMOOTH, 0.0) == pytest.approx(0.0)
    assert displacement(SMOOTH, 1.0) == pytest.approx(0.5)
    assert displacement(SMOOTH, 2.0) == pytest.approx(1.0)
    assert displacement(SMOOTH, 7.0) == pytest.approx(1.0)
    assert velocity(SMOOTH, 1.0) == pytest.approx(math.pi / 4)
    assert velocity(SMOOTH, 3.0) == 0.0

    t = np.linspace(0, 2, 2001)
    np.testing.assert_allclose(np.gradient(displacement(SMOOTH, t), t), velocity(SMOOTH, t), atol=1e-5)


def test_velocity_only_for_smooth():
    with pytest.raises(ProtocolError):
        velocity(SUDDEN, 1.0)


def test_tabulated_protocol_validation():
    with pytest.raises(ValidationError):
        TransportProtocol(kind="tabulated", table=[(0.0, 0.0)])
    with pytest.raises(ValidationError, match="start at d = 0"):
        TransportProtocol(kind="tabulated", table=[(0.0, 0.5), (1.0, 1.0)])
    with pytest.raises(ValidationError, match="increasing"):
        TransportProtocol(kind="tabulated", table=[(0.0, 0.0), (1.0, 1.0), (1.0, 2.0)])


def test_read_protocol_table(tmp_path):
    path = tmp_path / "ramp.txt"
    path.write_text("# t d\n0 0\n0.5 0.25\n\n1.0 1.0\n", encoding="utf-8")
    assert read_protocol_table(path) == [(0.0, 0.0), (0.5, 0.25), (1.0, 1.0)]


def test_read_protocol_table_rejects_bad_rows(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("0 0\n1 2 3\n", encoding="utf-8")
    with pytest.raises(ProtocolError, match=":2:"):
        read_protocol_table(path)


# ===== amplitude =====

def test_sudden_closed_form():
    t = np.linspace(0, math.pi, 201)
    traj = alpha_of_t(PARAMS, SUDDEN, t)
    assert traj.at(0.0) == 0
    alpha = traj.at(math.pi / 2)
    assert alpha == pytest.approx(2.0, abs=1e-12)
    assert nonadiabaticity(alpha) == pytest.approx(8.0, abs=1e-9)
    assert fidelity(traj, math.pi / 2) == pytest.approx(math.exp(-4), abs=1e-12)
    assert fidelity(traj, math.pi) == pytest.approx(1.0, abs=1e-12)


def test_sudden_is_periodic():
    period = math.pi  # 2 pi / omega
    t = np.linspace(0, 3 * period, 601)
    alpha = alpha_of_t(PARAMS, SUDDEN, t).alpha
    np.testing.assert_allclose(alpha[200:400], alpha[:200], atol=1e-12)


def test_sudden_matches_steep_ramp():
    ramp = TransportProtocol(kind="tabulated", table=[(0.0, 0.0), (1e-4, 1.0)])
    t = np.linspace(0, math.pi / 2, 200001)
    smooth_jump = alpha_of_t(PARAMS, ramp, t)
    exact = alpha_of_t(PARAMS, SUDDEN, t)
    assert abs(smooth_jump.alpha[-1] - exact.alpha[-1]) < 1e-3
    assert abs(smooth_jump.alpha[-1] - 2.0) < 1e-3


def test_any_protocol_starts_at_rest():
    t = np.linspace(0, 4, 401)
    for proto in (SUDDEN, SMOOTH, TransportProtocol(kind="tabulated", table=[(0, 0), (1, 0.3), (2, 1)])):
        assert alpha_of_t(PARAMS, proto, t).alpha[0] == 0


def test_smooth_quadrature_converges():
    coarse = alpha_of_t(PARAMS, SMOOTH, np.linspace(0, 2, 2001))
    fine = alpha_of_t(PARAMS, SMOOTH, np.linspace(0, 2, 4001))
    assert abs(coarse.at(2.0) - fine.at(2.0)) < 1e-8


def direct_alpha(proto: TransportProtocol, t: float) -> complex:
    # alpha(t) = sqrt(m omega / 2) (d(t) - e^{-i omega t} int_0^t v e^{i omega s} ds), m = 1, omega = 2
    re, _ = quad(lambda s: velocity(proto, s) * math.cos(2 * s), 0, t, epsabs=1e-13)
    im, _ = quad(lambda s: velocity(proto, s) * math.sin(2 * s), 0, t, epsabs=1e-13)
    return displacement(proto, t) - cmath.exp(-2j * t) * complex(re, im)


@pytest.mark.parametrize("t", [1.5, 2.0])
def test_smooth_matches_direct_integration(t):
    traj = alpha_of_t(PARAMS, SMOOTH, np.linspace(0, 2, 2001))
    expected = direct_alpha(SMOOTH, t)
    assert abs(expected.imag) > 0.1
    assert abs(traj.at(t) - expected) < 1e-9


def test_tabulated_matches_smooth_samples():
    t = np.linspace(0, 2, 4001)
    table = list(zip(t.tolist(), displacement(SMOOTH, t).tolist()))
    traj = alpha_of_t(PARAMS, TransportProtocol(kind="tabulated", table=table), t)
    assert abs(traj.at(1.5) - direct_alpha(SMOOTH, 1.5)) < 1e-5


def test_smooth_suppresses_energy_buildup():
    t = np.linspace(0, 2 * math.pi, 1201)
    q_sudden = max(nonadiabaticity(a) for a in alpha_of_t(PARAMS, SUDDEN, t).alpha)
    q_smooth = max(nonadiabaticity(a) for a in alpha_of_t(PARAMS, SMOOTH, t).alpha)
    assert q_sudden == pytest.approx(8.0, abs=1e-9)
    assert q_smooth < q_sudden


def test_alpha_rejects_grid_not_at_origin():
    with pytest.raises(ValueError, match="start at 0"):
        alpha_of_t(PARAMS, SMOOTH, np.linspace(0.1, 2, 10))


def test_trajectory_lookup_off_grid():
    traj = alpha_of_t(PARAMS, SUDDEN, np.linspace(0, 1, 11))
    with pytest.raises(ValueError):
        traj.at(0.05)


# ===== fidelity and energy =====

def test_fidelity_nonadiabaticity_link():
    for proto in (SUDDEN, SMOOTH):
        traj = alpha_of_t(PARAMS, proto, np.linspace(0, 6, 601))
        q = np.array([nonadiabaticity(a) for a in traj.alpha])
        np.testing.assert_allclose(fidelity_series(traj), np.exp(-q / 2), rtol=1e-12)


def test_fidelity_in_unit_interval():
    traj = alpha_of_t(PARAMS, SMOOTH, np.linspace(0, 6, 601))
    f = fidelity_series(traj)
    assert f[0] == 1.0
    assert np.all((f > 0) & (f <= 1))


def test_expectation_energy():
    assert expectation_energy(0, 2.0) == pytest.approx(1.0)
    assert expectation_energy(2.0, 2.0) == pytest.approx(9.0)
    with pytest.raises(ValueError):
        expectation_energy(0, 0.0)


@given(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False), st.floats(0.1, 10))
def test_energy_consistent_with_nonadiabaticity(alpha, omega):
    e0 = omega / 2
    assert (expectation_energy(alpha, omega) - e0) / e0 == pytest.approx(nonadiabaticity(alpha), abs=1e-9)


def test_nonadiabaticity_homogeneous():
    assert nonadiabaticity(0) == 0.0
    assert nonadiabaticity(2 * (0.3 + 0.4j)) == pytest.approx(4 * nonadiabaticity(0.3 + 0.4j))


def test_phase_space_means_and_wavefunction():
    x_mean, p_mean = phase_space_means(1.0 + 0.5j, PARAMS)
    assert x_mean == pytest.approx(1.0)
    assert p_mean == pytest.approx(1.0)

    x = np.linspace(-10, 10, 4001)
    psi = coherent_wavefunction(1.0 + 0.5j, x, PARAMS)
    density = np.abs(psi) ** 2
    assert trapezoid(density, x) == pytest.approx(1.0, abs=1e-10)
    assert trapezoid(x * density, x) == pytest.approx(x_mean, abs=1e-10)


# ===== TFD complexity =====

def test_tfd_theta():
    assert tfd_theta(math.inf, 2.0) == 0.0
    assert tfd_theta(1.0, 2.0) == pytest.approx(math.atanh(math.exp(-1)), rel=1e-14)
    assert tfd_theta(1.0, 2.0) == pytest.approx(0.385969, abs=1e-6)
    assert tfd_theta(2.0, 1.0) == tfd_theta(1.0, 2.0)
    with pytest.raises(ValueError):
        tfd_theta(-1.0, 2.0)
    with pytest.raises(ValueError):
        tfd_theta(0.0, 2.0)


@pytest.mark.parametrize("vartheta", [0.1, 0.386, 1.0])
def test_complexity_of_ground_state(vartheta):
    assert coherent_complexity(0, vartheta) == pytest.approx(2 * vartheta, abs=1e-10)
    assert coherent_complexity(0.7 - 0.2j, vartheta) == pytest.approx(
        printed_complexity(0.7 - 0.2j, vartheta), rel=1e-12
    )


def test_complexity_zero_temperature_limit():
    assert coherent_complexity(0, 0.0) == 0.0
    assert coherent_complexity(2.0, 0.0) == pytest.approx(4.0)
    assert coherent_complexity(1.0, 1e-5) == pytest.approx(printed_complexity(1.0, 1e-5), abs=1e-10)


def test_complexity_continuous_across_series_cutoff():
    assert coherent_complexity(1.3, 0.99999e-4) == pytest.approx(coherent_complexity(1.3, 1.00001e-4), abs=1e-10)


def test_complexity_rejects_negative_angle():
    with pytest.raises(ValueError):
        coherent_complexity(0, -0.1)
