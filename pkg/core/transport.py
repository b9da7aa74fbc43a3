"""
Single-ion transport in a moving harmonic trap.

The ion starts in the motional ground state and stays coherent; everything
follows from the amplitude

    alpha(t) = sqrt(m omega / 2) (d(t) - e^{-i omega t} int_0^t d'(s) e^{i omega s} ds)

with hbar = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np
from scipy.integrate import cumulative_simpson

from core.errors import ProtocolError
from logging_config import get_logger
from models import TransportParams, TransportProtocol

logger = get_logger(__name__)

ArrayLike = Union[float, np.ndarray]

# below this |vartheta| the prefactor vartheta / sinh(vartheta / 2) uses its series
SMALL_THETA = 1e-4


@dataclass(frozen=True)
class AmplitudeTrajectory:
    t_grid: np.ndarray
    alpha: np.ndarray

    def index_of(self, t: float) -> int:
        i = int(np.argmin(np.abs(self.t_grid - t)))
        if not math.isclose(self.t_grid[i], t, rel_tol=1e-9, abs_tol=1e-12):
            raise ValueError(f"t = {t} is not on the trajectory grid")
        return i

    def at(self, t: float) -> complex:
        return complex(self.alpha[self.index_of(t)])


# ===== Protocols =====

def displacement(proto: TransportProtocol, t: ArrayLike) -> ArrayLike:
    """Trap-minimum position d(t); held at its final value after the protocol ends."""
    t = np.asarray(t, dtype=float)
    if proto.kind == "sudden":
        d = np.where(t > 0, proto.d0, 0.0)
    elif proto.kind == "smooth":
        tt = np.minimum(t, proto.duration)
        d = proto.length * np.sin(np.pi * tt / (2 * proto.duration)) ** 2
    else:
        table = np.asarray(proto.table, dtype=float)
        d = np.interp(t, table[:, 0], table[:, 1])
    return d if d.ndim else float(d)


def velocity(proto: TransportProtocol, t: ArrayLike) -> ArrayLike:
    """d'(t) for the smooth protocol; zero after t = T."""
    if proto.kind != "smooth":
        raise ProtocolError(f"analytic velocity only exists for the smooth protocol, not {proto.kind}")
    t = np.asarray(t, dtype=float)
    rate = proto.length * np.pi / (2 * proto.duration)
    v = np.where(t <= proto.duration, rate * np.sin(np.pi * t / proto.duration), 0.0)
    return v if v.ndim else float(v)


def read_protocol_table(path: Union[str, Path]) -> List[Tuple[float, float]]:
    """Two whitespace-separated columns (time, displacement); '#' starts a header line."""
    rows = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise ProtocolError(f"{path}:{lineno}: expected two columns, got {len(parts)}")
        try:
            rows.append((float(parts[0]), float(parts[1])))
        except ValueError as e:
            raise ProtocolError(f"{path}:{lineno}: {e}") from e
    if len(rows) < 2:
        raise ProtocolError(f"{path}: need at least two rows")
    return rows


# ===== Amplitude =====

def _check_grid(t_grid: np.ndarray) -> None:
    if t_grid.ndim != 1 or len(t_grid) < 2:
        raise ValueError("t_grid must be a 1-D array with at least two points")
    if t_grid[0] != 0.0:
        raise ValueError(f"t_grid must start at 0, got {t_grid[0]}")
    if np.any(np.diff(t_grid) <= 0):
        raise ValueError("t_grid must be strictly increasing")


def alpha_of_t(p: TransportParams, proto: TransportProtocol, t_grid: np.ndarray) -> AmplitudeTrajectory:
    t_grid = np.asarray(t_grid, dtype=float)
    _check_grid(t_grid)
    scale = math.sqrt(p.m * p.omega / 2)
    phase = np.exp(1j * p.omega * t_grid)

    if proto.kind == "sudden":
        # the jump at t = 0+ contributes its full weight
        alpha = scale * proto.d0 * (1 - np.conj(phase))
        alpha[0] = 0.0
        return AmplitudeTrajectory(t_grid=t_grid, alpha=alpha)

    d = displacement(proto, t_grid)
    if proto.kind == "smooth":
        v = velocity(proto, t_grid)
    else:
        v = np.gradient(d, t_grid)
    # cumulative_simpson is real-only; integrate the two quadratures separately
    integrand = v * phase
    integral = cumulative_simpson(integrand.real, x=t_grid, initial=0.0) + 1j * cumulative_simpson(
        integrand.imag, x=t_grid, initial=0.0
    )
    alpha = scale * (d - np.conj(phase) * integral)
    logger.debug(f"alpha(t) for {proto.kind} protocol: max |alpha| = {float(np.max(np.abs(alpha))):.6g}")
    return AmplitudeTrajectory(t_grid=t_grid, alpha=alpha)


def phase_space_means(alpha: complex, p: TransportParams) -> Tuple[float, float]:
    """<x> = sqrt(2 / m omega) Re alpha, <p> = sqrt(2 m omega) Im alpha."""
    return (
        math.sqrt(2 / (p.m * p.omega)) * alpha.real,
        math.sqrt(2 * p.m * p.omega) * alpha.imag,
    )


def coherent_wavefunction(alpha: complex, x: ArrayLike, p: TransportParams) -> np.ndarray:
    """Position-space coherent state, up to a global phase."""
    x_mean, p_mean = phase_space_means(alpha, p)
    x = np.asarray(x, dtype=float)
    return (p.m * p.omega / math.pi) ** 0.25 * np.exp(
        1j * p_mean * x - 0.5 * p.m * p.omega * (x - x_mean) ** 2
    )


# ===== Figures of merit =====

def fidelity(traj: AmplitudeTrajectory, t: float) -> float:
    """F = exp(-|alpha(t) - alpha(0)|^2)."""
    return math.exp(-abs(traj.at(t) - complex(traj.alpha[0])) ** 2)


def fidelity_series(traj: AmplitudeTrajectory) -> np.ndarray:
    return np.exp(-np.abs(traj.alpha - traj.alpha[0]) ** 2)


def tfd_theta(beta: float, omega: float) -> float:
    """vartheta = atanh(exp(-beta omega / 2)); zero at beta = inf."""
    if math.isinf(beta) and beta > 0 and omega > 0:
        return 0.0
    x = beta * omega
    if not x > 0:
        raise ValueError(f"beta * omega must be positive, got {x}")
    return math.atanh(math.exp(-x / 2))


def _theta_over_sinh_half(vartheta: float) -> float:
    if abs(vartheta) < SMALL_THETA:
        u = vartheta / 2
        return 2.0 / (1 + u * u / 6 + u**4 / 120)
    return vartheta / math.sinh(vartheta / 2)


def coherent_complexity(alpha: complex, vartheta: float) -> float:
    """
    C = vartheta csch(vartheta/2) sqrt((|alpha|^2 + 2) cosh(vartheta) - 2).

    Rewritten as sqrt(q^2 |alpha|^2 cosh(vartheta) + 4 vartheta^2) with
    q = vartheta / sinh(vartheta/2), which is finite at vartheta = 0 (C -> 2|alpha|).
    """
    if vartheta < 0:
        raise ValueError(f"vartheta must be non-negative, got {vartheta}")
    q = _theta_over_sinh_half(vartheta)
    a2 = abs(alpha) ** 2
    return math.sqrt(q * q * a2 * math.cosh(vartheta) + 4 * vartheta * vartheta)


def nonadiabaticity(alpha: complex) -> float:
    """Q = (<H> - E0) / E0 = 2 |alpha|^2."""
    return 2 * abs(alpha) ** 2


def expectation_energy(alpha: complex, omega: float) -> float:
    """<H> = omega (|alpha|^2 + 1/2)."""
    if omega <= 0:
        raise ValueError(f"omega must be positive, got {omega}")
    return omega * (abs(alpha) ** 2 + 0.5)
