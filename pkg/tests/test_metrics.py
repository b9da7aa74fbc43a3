import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from core.coupled_system import steady_state_exponent
from core.errors import UnphysicalStateError
from core.gaussian_core import (
    CovarianceMatrix,
    GaussianExponent,
    exponent_to_covariance,
    mode_entropy,
    vacuum,
    wavefunction_norm,
)
from core.metrics import (
    Gate,
    GateKind,
    circuit_depth,
    depth_diagnostics,
    gate_apply,
    mutual_information,
    pearson,
    synchronization,
)
from models import CoupledParams


def steady_sigma(**kwargs) -> CovarianceMatrix:
    exp, _ = steady_state_exponent(CoupledParams(**kwargs))
    return exponent_to_covariance(exp)


# ===== circuit depth =====

def test_depth_of_reference_is_zero():
    exp, _ = steady_state_exponent(CoupledParams(omega1=1.0, omega2=1.0, g=0.0, omega_c=0.0))
    assert circuit_depth(exp, 1.0) == pytest.approx(0.0, abs=1e-12)
    assert circuit_depth(GaussianExponent(2.5, 2.5, 0), 2.5) == pytest.approx(0.0, abs=1e-12)


def test_depth_maximal_mixing_closed_form():
    exp, _ = steady_state_exponent(CoupledParams(omega1=1.0, omega2=1.0, g=0.5))
    big1, big2 = math.sqrt(1.5), math.sqrt(0.5)
    expected = 0.5 * math.log(big1 * big2) + (big1 - big2) / (big1 + big2)
    assert circuit_depth(exp, 1.0) == pytest.approx(expected, rel=1e-12)


def test_depth_field_dominated_limit():
    exp, _ = steady_state_exponent(CoupledParams(omega1=1.0, omega2=1.2, g=0.5, omega_c=100.0))
    depth = circuit_depth(exp, 1.0)
    assert abs(depth - math.log(100.0)) / depth < 0.02


def test_depth_grows_with_small_coupling():
    depths = [
        circuit_depth(steady_state_exponent(CoupledParams(omega1=1.0, omega2=1.2, g=g, omega_c=1.5))[0], 1.0)
        for g in np.linspace(0.0, 0.5, 26)
    ]
    assert np.all(np.diff(depths) > 0)


def test_depth_of_complex_exponent_uses_modulus():
    exp = GaussianExponent(1 - 1j, 1 - 1j, 0.5 - 0.5j)
    det = abs((1 - 1j) ** 2 - (0.5 - 0.5j) ** 2)
    assert circuit_depth(exp, 1.0) == pytest.approx(0.5 * math.log(det) + 0.5)


def test_depth_rejects_bad_reference():
    with pytest.raises(ValueError):
        circuit_depth(GaussianExponent(1, 1, 0), 0.0)
    with pytest.raises(UnphysicalStateError):
        circuit_depth(GaussianExponent(-1, 1, 0), 1.0)


def test_depth_diagnostics():
    exp, _ = steady_state_exponent(CoupledParams(omega1=1.0, omega2=1.2, g=0.5, omega_c=1.5))
    diag = depth_diagnostics(exp, 1.0, 1.5, 0.5)
    assert diag.depth == pytest.approx(circuit_depth(exp, 1.0))
    assert diag.weak_limit == pytest.approx(0.5 * math.log(abs(exp.a1 * exp.a2)))
    assert diag.field_limit == pytest.approx(math.log(1.5))
    assert math.isfinite(diag.strong_limit)
    assert math.isnan(depth_diagnostics(exp, 1.0, 0.0, 0.5).field_limit)


# ===== synchronization and mutual information =====

def test_synchronization_of_vacuum():
    assert synchronization(vacuum()) == pytest.approx(0.5)


def test_synchronization_of_real_exponent():
    # <(x1 - x2)^2> = 0.4, <(p1 - p2)^2> = 2.5
    sigma = exponent_to_covariance(GaussianExponent(2, 2, 1))
    assert synchronization(sigma) == pytest.approx(1 / 2.9, rel=1e-12)


def test_synchronization_of_resonant_steady_state():
    # omega1 = omega2 = 1, g = 0.5, omega_c = 0: theta = pi/4, Omega1^2 = 1.5, Omega2^2 = 0.5.
    # A1 = A2 = (O1 + O2) / 2 and A12 = (O1 - O2) / 2, so x1 - x2 is an eigenvector of K
    # with eigenvalue lam = A1 + A12 / 2 = (3 O1 + O2) / 4, giving
    # <(x1 - x2)^2> = 1 / lam and <(p1 - p2)^2> = lam.
    big1, big2 = math.sqrt(1.5), math.sqrt(0.5)
    lam = (3 * big1 + big2) / 4
    sigma = steady_sigma(omega1=1.0, omega2=1.0, g=0.5, omega_c=0.0)
    assert synchronization(sigma) == pytest.approx(1 / (lam + 1 / lam), rel=1e-12)
    assert 1 / synchronization(sigma) == pytest.approx(2.008298, abs=1e-6)


def test_synchronization_with_full_cross_term():
    # K = [[a, -b], [-b, a]] puts Omega1 itself on x1 - x2
    big1, big2 = math.sqrt(1.5), math.sqrt(0.5)
    a, b = (big1 + big2) / 2, (big1 - big2) / 2
    sigma = exponent_to_covariance(GaussianExponent(a, a, 2 * b))
    assert synchronization(sigma) == pytest.approx(1 / (big1 + 1 / big1), rel=1e-12)


def test_steady_state_norm_against_exponent_determinant():
    exp, norm = steady_state_exponent(CoupledParams(omega1=1.0, omega2=1.0, g=0.5))
    big1, big2 = math.sqrt(1.5), math.sqrt(0.5)
    a, b = (big1 + big2) / 2, (big1 - big2) / 2
    assert norm == pytest.approx((big1 * big2 / math.pi**2) ** 0.25, rel=1e-12)
    assert wavefunction_norm(exp) == pytest.approx(((a * a - b * b / 4) / math.pi**2) ** 0.25, rel=1e-12)
    assert wavefunction_norm(exp) > norm

    # without a cross term the two agree
    exp, norm = steady_state_exponent(CoupledParams(omega1=1.3, omega2=1.0, g=0.0))
    assert exp.a12 == 0
    assert wavefunction_norm(exp) == pytest.approx(norm, rel=1e-12)


@pytest.mark.parametrize("factor", [0.5, 2.0, 7.3])
def test_synchronization_homogeneous(factor):
    sigma = steady_sigma(omega1=1.0, omega2=1.2, g=0.3, omega_c=0.5)
    assert synchronization(sigma.scaled(factor)) == pytest.approx(synchronization(sigma) / factor)


def test_synchronization_requires_two_modes():
    with pytest.raises(ValueError):
        synchronization(vacuum(1))


def test_mutual_information_of_product_state():
    assert mutual_information(vacuum()) == pytest.approx(0.0, abs=1e-12)
    assert mutual_information(exponent_to_covariance(GaussianExponent(1.5, 0.7, 0))) == pytest.approx(0.0, abs=1e-12)


def test_mutual_information_opposes_synchronization():
    sync, info = [], []
    for g in np.linspace(0.05, 0.8, 16):
        sigma = steady_sigma(omega1=1.0, omega2=1.0, g=g, omega_c=0.0)
        sync.append(synchronization(sigma))
        info.append(mutual_information(sigma))
    assert np.all(np.diff(info) > 0)
    assert np.all(np.diff(sync) <= 1e-15)


def test_mutual_information_increasing_to_strong_coupling():
    info = [
        mutual_information(steady_sigma(omega1=1.0, omega2=1.0, g=g, omega_c=0.0))
        for g in np.linspace(0.01, 0.89, 45)
    ]
    assert info[0] > 0
    assert np.all(np.diff(info) > 0)


def test_purity_identity_for_coupled_ground_states():
    rng = np.random.default_rng(3)
    for _ in range(50):
        omega1, omega2 = rng.uniform(0.5, 2.0, size=2)
        g = rng.uniform(-0.2, 0.2)
        p = CoupledParams(omega1=omega1, omega2=omega2, g=g, omega_c=rng.uniform(0, 2))
        sigma = exponent_to_covariance(steady_state_exponent(p)[0])
        s_ab = mode_entropy(sigma, [1, 2])
        s_a = mode_entropy(sigma, [1])
        assert s_ab < 1e-8
        assert abs(mutual_information(sigma) - 2 * s_a) < 1e-7


# ===== pearson =====

def test_pearson_extremes():
    a = np.array([0.1, 0.5, -0.3, 2.0])
    assert pearson(a, a) == pytest.approx(1.0)
    assert pearson(a, -a) == pytest.approx(-1.0)


def test_pearson_orthogonal_over_period():
    t = np.linspace(0, 2 * math.pi, 1000, endpoint=False)
    assert abs(pearson(np.sin(t), np.cos(t))) < 1e-10


def test_pearson_rejects_degenerate_input():
    with pytest.raises(ValueError, match="constant"):
        pearson([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        pearson([1.0], [2.0])
    with pytest.raises(ValueError):
        pearson([1.0, 2.0], [1.0, 2.0, 3.0])


@given(
    st.lists(st.floats(-1e3, 1e3, allow_subnormal=False), min_size=2, max_size=30).flatmap(
        lambda xs: st.tuples(st.just(xs), st.lists(st.floats(-1e3, 1e3, allow_subnormal=False), min_size=len(xs), max_size=len(xs)))
    )
)
def test_pearson_bounded(pair):
    a, b = pair
    try:
        r = pearson(a, b)
    except ValueError:
        return
    assert abs(r) <= 1 + 1e-12


# ===== gates =====

def test_gate_identity_at_zero():
    exp = GaussianExponent(1.3, 0.8, 0.2)
    for gate in (Gate.scaling(1), Gate.scaling(2), Gate.entangling(2, 1), Gate.entangling(1, 2)):
        assert gate_apply(exp, gate, 0.0) == exp


def test_scaling_gates_build_uncoupled_target():
    omega_r, a1, a2 = 1.0, 2.3, 0.6
    eps1, eps2 = 0.5 * math.log(a1 / omega_r), 0.5 * math.log(a2 / omega_r)
    reference = GaussianExponent(omega_r, omega_r, 0)
    target = gate_apply(gate_apply(reference, Gate.scaling(1), eps1), Gate.scaling(2), eps2)
    assert (target.a1, target.a2, target.a12) == pytest.approx((a1, a2, 0))
    assert circuit_depth(target, omega_r) == pytest.approx(eps1 + eps2)


def test_scaling_gates_compose():
    exp = GaussianExponent(1.3 - 0.2j, 0.8, 0.2 + 0.1j)
    twice = gate_apply(gate_apply(exp, Gate.scaling(1), 0.3), Gate.scaling(1), -0.7)
    once = gate_apply(exp, Gate.scaling(1), -0.4)
    assert (twice.a1, twice.a2, twice.a12) == pytest.approx((once.a1, once.a2, once.a12))


def test_entangling_gate_shifts_second_coordinate():
    exp = gate_apply(GaussianExponent(1.0, 2.0, 0), Gate.entangling(2, 1), 0.5)
    # x2 -> x2 + 0.5 x1
    assert exp.a1 == pytest.approx(1.0 + 2.0 * 0.25)
    assert exp.a2 == pytest.approx(2.0)
    assert exp.a12 == pytest.approx(-2.0)


def test_entangling_gate_requires_distinct_modes():
    with pytest.raises(ValueError):
        Gate.entangling(1, 1)
    assert Gate.entangling(2, 1).kind is GateKind.ENTANGLING


def test_gate_mode_out_of_range():
    with pytest.raises(ValueError):
        gate_apply(GaussianExponent(1, 1, 0), Gate.scaling(3), 0.1)
