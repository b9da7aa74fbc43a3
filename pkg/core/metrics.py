"""
Observables of the coupled-oscillator states: circuit depth, synchronization,
mutual information, the classical Pearson coefficient, and the scaling and
entangling gates the depth is built from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from core.errors import UnphysicalStateError
from core.gaussian_core import CovarianceMatrix, GaussianExponent, mode_entropy
from logging_config import get_logger

logger = get_logger(__name__)

MI_CLAMP = 1e-10


# ===== Circuit depth =====

def circuit_depth(exp: GaussianExponent, omega_R: float) -> float:
    """D = 1/2 log(|A1 A2 - A12^2| / omega_R^2) + |A12 / A1|."""
    if omega_R <= 0:
        raise ValueError(f"omega_R must be positive, got {omega_R}")
    exp.validate()
    det = abs(exp.a1 * exp.a2 - exp.a12**2)
    if det == 0.0:
        raise UnphysicalStateError("degenerate state: A1 A2 - A12^2 = 0")
    return 0.5 * math.log(det / omega_R**2) + abs(exp.a12 / exp.a1)


@dataclass(frozen=True)
class DepthDiagnostics:
    depth: float
    weak_limit: float
    field_limit: float
    # labeled estimate only: A12 ~ sqrt(g/2) near maximal mixing
    strong_limit: float


def weak_coupling_depth(exp: GaussianExponent, omega_R: float) -> float:
    return 0.5 * math.log(abs(exp.a1 * exp.a2) / omega_R**2)


def field_dominated_depth(omega_c: float, omega_R: float) -> float:
    if omega_c <= 0:
        return float("nan")
    return math.log(omega_c / omega_R)


def strong_coupling_depth(exp: GaussianExponent, g: float, omega_R: float) -> float:
    det = abs(exp.a1 * exp.a2 - g / 2)
    if g < 0 or det == 0.0:
        return float("nan")
    return 0.5 * math.log(det / omega_R**2) + math.sqrt(g / 2) / abs(exp.a1)


def depth_diagnostics(exp: GaussianExponent, omega_R: float, omega_c: float, g: float) -> DepthDiagnostics:
    return DepthDiagnostics(
        depth=circuit_depth(exp, omega_R),
        weak_limit=weak_coupling_depth(exp, omega_R),
        field_limit=field_dominated_depth(omega_c, omega_R),
        strong_limit=strong_coupling_depth(exp, g, omega_R),
    )


# ===== Correlations =====

def synchronization(sigma: CovarianceMatrix) -> float:
    """S_c = 1 / (<(p1 - p2)^2> + <(x1 - x2)^2>) for zero-mean two-mode states."""
    s = sigma.sigma
    if s.shape != (4, 4):
        raise ValueError(f"synchronization needs a two-mode covariance, got {s.shape}")
    dx = s[0, 0] + s[2, 2] - 2 * s[0, 2]
    dp = s[1, 1] + s[3, 3] - 2 * s[1, 3]
    denominator = dx + dp
    assert denominator > 0, f"non-positive fluctuation sum {denominator}"
    return float(1.0 / denominator)


def mutual_information(sigma: CovarianceMatrix) -> float:
    """I = S(A) + S(B) - S(AB) in nats."""
    s_a = mode_entropy(sigma, [1])
    s_b = mode_entropy(sigma, [2])
    s_ab = mode_entropy(sigma, [1, 2])
    info = s_a + s_b - s_ab
    if -MI_CLAMP < info < 0:
        logger.debug(f"Clamping mutual information {info:.3g} to 0")
        return 0.0
    return info


def pearson(a: Sequence[float], b: Sequence[float]) -> float:
    x = np.asarray(a, dtype=float)
    y = np.asarray(b, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError(f"sequences must be 1-D with equal length, got {x.shape} and {y.shape}")
    if len(x) < 2:
        raise ValueError("need at least two samples")
    dx = x - x.mean()
    dy = y - y.mean()
    var_x, var_y = float(np.dot(dx, dx)), float(np.dot(dy, dy))
    if var_x == 0.0 or var_y == 0.0:
        raise ValueError("pearson coefficient undefined for a constant sequence")
    r = float(np.dot(dx, dy)) / (math.sqrt(var_x) * math.sqrt(var_y))
    return max(-1.0, min(1.0, r))


# ===== Gates =====

class GateKind(str, Enum):
    SCALING = "scaling"
    ENTANGLING = "entangling"


@dataclass(frozen=True)
class Gate:
    """
    Scaling gate O_jj on `mode`, or entangling gate shifting x_mode by
    epsilon * x_source (O_21 is Gate.entangling(2, 1)).
    """

    kind: GateKind
    mode: int
    source: Optional[int] = None

    @classmethod
    def scaling(cls, mode: int) -> "Gate":
        return cls(GateKind.SCALING, mode)

    @classmethod
    def entangling(cls, mode: int, source: int) -> "Gate":
        if mode == source:
            raise ValueError("entangling gate needs two distinct modes")
        return cls(GateKind.ENTANGLING, mode, source)

    def argument_map(self, epsilon: float) -> np.ndarray:
        """Matrix T with Psi(x) -> Psi(T x)."""
        t = np.eye(2)
        if self.kind is GateKind.SCALING:
            t[self.mode - 1, self.mode - 1] = math.exp(epsilon)
        else:
            t[self.mode - 1, self.source - 1] = epsilon
        return t


def gate_apply(exp: GaussianExponent, gate: Gate, epsilon: float) -> GaussianExponent:
    """Exponent after acting with the gate: K -> T^T K T."""
    for mode in (gate.mode, gate.source):
        if mode is not None and mode not in (1, 2):
            raise ValueError(f"mode {mode} outside 1..2")
    t = gate.argument_map(epsilon)
    return GaussianExponent.from_matrix(t.T @ exp.matrix() @ t)
