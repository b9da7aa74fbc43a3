"""
Two coupled oscillators in a magnetic field.

Normal-mode frequencies in the rotating frame phi(t) = omega_c t + theta,
Ermakov scale factors (fixed-step RK4 or the analytic quench form) and the
Gaussian exponent of the evolving ground state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

import numpy as np
from scipy.integrate import cumulative_trapezoid

from config import config
from core.errors import ErmakovCollapseError, InvertedModeError, SimulationError
from core.gaussian_core import GaussianExponent
from logging_config import get_logger
from models import CoupledParams, QuenchSpec

logger = get_logger(__name__)

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class ModeFrequencies:
    Omega1_sq: float
    Omega2_sq: float
    Omega12_sq: float

    @property
    def inverted(self) -> bool:
        return self.Omega1_sq <= 0 or self.Omega2_sq <= 0

    def require_stable(self, params: str = "") -> "ModeFrequencies":
        if self.Omega1_sq <= 0:
            raise InvertedModeError(1, self.Omega1_sq, params)
        if self.Omega2_sq <= 0:
            raise InvertedModeError(2, self.Omega2_sq, params)
        return self


@dataclass(frozen=True)
class ErmakovMode:
    """Scale factor of one normal mode on a time grid."""

    t_grid: np.ndarray
    h: np.ndarray
    hdot: np.ndarray
    omega0: float
    residual: float


@dataclass(frozen=True)
class ErmakovSolution:
    t_grid: np.ndarray
    h1: np.ndarray
    h2: np.ndarray
    hdot1: np.ndarray
    hdot2: np.ndarray
    omega0_1: float
    omega0_2: float
    residual: float = 0.0

    @classmethod
    def from_modes(cls, mode1: ErmakovMode, mode2: ErmakovMode) -> "ErmakovSolution":
        if mode1.t_grid.shape != mode2.t_grid.shape or not np.allclose(mode1.t_grid, mode2.t_grid):
            raise ValueError("modes were solved on different grids")
        return cls(
            t_grid=mode1.t_grid,
            h1=mode1.h,
            h2=mode2.h,
            hdot1=mode1.hdot,
            hdot2=mode2.hdot,
            omega0_1=mode1.omega0,
            omega0_2=mode2.omega0,
            residual=max(mode1.residual, mode2.residual),
        )

    def index_of(self, t: float) -> int:
        i = int(np.argmin(np.abs(self.t_grid - t)))
        spacing = float(np.min(np.diff(self.t_grid))) if len(self.t_grid) > 1 else 1.0
        if abs(self.t_grid[i] - t) > 1e-9 * max(spacing, 1e-300) + 1e-12 * abs(t):
            raise ValueError(f"t = {t} is not on the solution grid")
        return i

    def subsample(self, stride: int) -> "ErmakovSolution":
        s = slice(None, None, stride)
        return ErmakovSolution(
            t_grid=self.t_grid[s],
            h1=self.h1[s],
            h2=self.h2[s],
            hdot1=self.hdot1[s],
            hdot2=self.hdot2[s],
            omega0_1=self.omega0_1,
            omega0_2=self.omega0_2,
            residual=self.residual,
        )


def decoupling_angle(g: float, omega1: float, omega2: float) -> float:
    """theta with tan(2 theta) = 2g / (omega1^2 - omega2^2), in (-pi/2, pi/2]."""
    return 0.5 * math.atan2(2 * g, omega1**2 - omega2**2)


def resolve_theta(p: CoupledParams) -> float:
    if p.theta is not None:
        return p.theta
    return decoupling_angle(p.g, p.omega1, p.omega2)


def mixing_angle(p: CoupledParams, t: ArrayLike) -> ArrayLike:
    return p.omega_c * t + resolve_theta(p)


def _frequencies(p: CoupledParams, phi: ArrayLike) -> Tuple[ArrayLike, ArrayLike, ArrayLike]:
    c2, s2, sin2 = np.cos(phi) ** 2, np.sin(phi) ** 2, np.sin(2 * phi)
    w1, w2, wc = p.omega1**2, p.omega2**2, p.omega_c**2
    omega1_sq = w1 * c2 + w2 * s2 + wc + p.g * sin2
    omega2_sq = w1 * s2 + w2 * c2 + wc - p.g * sin2
    omega12_sq = 0.5 * (w1 - w2) * sin2 - p.g * np.cos(2 * phi)
    return omega1_sq, omega2_sq, omega12_sq


def mode_frequencies(p: CoupledParams, phi: float) -> ModeFrequencies:
    o1, o2, o12 = _frequencies(p, phi)
    return ModeFrequencies(float(o1), float(o2), float(o12))


def describe(p: CoupledParams) -> str:
    return (
        f"omega1={p.omega1:g}, omega2={p.omega2:g}, g={p.g:g}, "
        f"omega_c={p.omega_c:g}, theta={resolve_theta(p):g}"
    )


# ===== Ermakov equation =====

def _rk4(omega_sq_of_t: Callable[[float], float], omega0: float, t_grid: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    w0 = omega0**2

    def rhs(t: float, h: float, v: float) -> Tuple[float, float]:
        return v, w0 / h**3 - omega_sq_of_t(t) * h

    n = len(t_grid)
    h = np.empty(n)
    v = np.empty(n)
    h[0], v[0] = 1.0, 0.0
    for i in range(n - 1):
        t, dt = t_grid[i], t_grid[i + 1] - t_grid[i]
        k1h, k1v = rhs(t, h[i], v[i])
        k2h, k2v = rhs(t + dt / 2, h[i] + dt / 2 * k1h, v[i] + dt / 2 * k1v)
        k3h, k3v = rhs(t + dt / 2, h[i] + dt / 2 * k2h, v[i] + dt / 2 * k2v)
        k4h, k4v = rhs(t + dt, h[i] + dt * k3h, v[i] + dt * k3v)
        h[i + 1] = h[i] + dt / 6 * (k1h + 2 * k2h + 2 * k3h + k4h)
        v[i + 1] = v[i] + dt / 6 * (k1v + 2 * k2v + 2 * k3v + k4v)
        if not h[i + 1] > 0 or not math.isfinite(h[i + 1]):
            raise ErmakovCollapseError(float(t_grid[i + 1]), float(h[i + 1]))
    return h, v


def _second_derivative(y: np.ndarray, t_grid: np.ndarray) -> Tuple[np.ndarray, slice]:
    """d/dt of y and the slice of grid points where it is trusted."""
    dt = np.diff(t_grid)
    if len(t_grid) >= 5 and np.allclose(dt, dt[0], rtol=1e-9, atol=0.0):
        step = dt[0]
        d = np.full_like(y, np.nan)
        d[2:-2] = (-y[4:] + 8 * y[3:-1] - 8 * y[1:-3] + y[:-4]) / (12 * step)
        return d, slice(2, -2)
    return np.gradient(y, t_grid, edge_order=2), slice(None)


def ermakov_residual(
    t_grid: np.ndarray,
    h: np.ndarray,
    hdot: np.ndarray,
    omega_sq: np.ndarray,
    omega0: float,
) -> float:
    """max |hddot + Omega^2 h - Omega0^2 / h^3| with hddot from differences of hdot."""
    if len(t_grid) < 3:
        return float("nan")
    hddot, valid = _second_derivative(hdot, t_grid)
    res = hddot + omega_sq * h - omega0**2 / h**3
    return float(np.max(np.abs(res[valid])))


def solve_ermakov(
    omega_sq_of_t: Callable[[float], float],
    omega0: float,
    t_grid: np.ndarray,
) -> ErmakovMode:
    """
    Integrate hddot + Omega^2(t) h = Omega0^2 / h^3 with h(0) = 1, hdot(0) = 0
    by classical RK4 on the given grid.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or len(t_grid) < 2:
        raise ValueError("t_grid must be a 1-D array with at least two points")
    if t_grid[0] != 0.0:
        raise ValueError(f"t_grid must start at 0, got {t_grid[0]}")
    if np.any(np.diff(t_grid) <= 0):
        raise ValueError("t_grid must be strictly increasing")
    if omega0 <= 0:
        raise SimulationError(f"initial mode frequency must be positive, got {omega0}")

    h, hdot = _rk4(omega_sq_of_t, omega0, t_grid)
    omega_sq = np.array([omega_sq_of_t(t) for t in t_grid])
    residual = ermakov_residual(t_grid, h, hdot, omega_sq, omega0)
    logger.debug(f"Ermakov solved: {len(t_grid)} points, omega0={omega0:.6g}, residual={residual:.3g}")
    return ErmakovMode(t_grid=t_grid, h=h, hdot=hdot, omega0=float(omega0), residual=residual)


def quench_ermakov_analytic(omega_i: float, omega_f: float, t: ArrayLike) -> ArrayLike:
    """h^2(t) after a sudden jump Omega_i -> Omega_f at t = 0."""
    wf, wi = omega_f**2, omega_i**2
    return (wf - wi) / (2 * wf) * np.cos(2 * omega_f * t) + (wf + wi) / (2 * wf)


def quench_ermakov_solution(omega_i: float, omega_f: float, t_grid: np.ndarray) -> ErmakovMode:
    if omega_f <= 0:
        raise SimulationError(f"post-quench frequency must be positive, got {omega_f}")
    t_grid = np.asarray(t_grid, dtype=float)
    h = np.sqrt(quench_ermakov_analytic(omega_i, omega_f, t_grid))
    dh2 = -(omega_f**2 - omega_i**2) / omega_f * np.sin(2 * omega_f * t_grid)
    hdot = dh2 / (2 * h)
    residual = ermakov_residual(t_grid, h, hdot, np.full_like(t_grid, omega_f**2), omega_i)
    return ErmakovMode(t_grid=t_grid, h=h, hdot=hdot, omega0=float(omega_i), residual=residual)


def ermakov_invariant(mode: ErmakovMode, omega_sq: float) -> np.ndarray:
    """1/2 (hdot^2 + Omega^2 h^2 + Omega0^2 / h^2); constant when Omega is."""
    return 0.5 * (mode.hdot**2 + omega_sq * mode.h**2 + mode.omega0**2 / mode.h**2)


def phase_accumulated(sol: ErmakovSolution) -> Tuple[np.ndarray, np.ndarray]:
    """Omega_j(0) * int_0^t dt' / h_j^2, the dynamical phase of the normalization."""
    p1 = sol.omega0_1 * cumulative_trapezoid(1 / sol.h1**2, sol.t_grid, initial=0.0)
    p2 = sol.omega0_2 * cumulative_trapezoid(1 / sol.h2**2, sol.t_grid, initial=0.0)
    return p1, p2


def _refined_grid(t_grid: np.ndarray, step: float) -> Tuple[np.ndarray, int]:
    """Uniform output grid refined so the integration step is at most `step`."""
    dt = np.diff(t_grid)
    if not np.allclose(dt, dt[0], rtol=1e-9, atol=0.0):
        return t_grid, 1
    stride = max(1, math.ceil(dt[0] / step - 1e-9))
    fine = np.linspace(t_grid[0], t_grid[-1], (len(t_grid) - 1) * stride + 1)
    return fine, stride


def solve_quench(
    spec: QuenchSpec,
    t_grid: np.ndarray,
    omega_R: float = 1.0,
    step: Optional[float] = None,
) -> Tuple[CoupledParams, ErmakovSolution]:
    """
    Two-mode Ermakov solution after the quench.

    Mode frequencies are taken at the post-quench decoupling angle theta.
    With omega_c = 0 they are constant and the analytic form is used;
    otherwise Omega_j^2(t) follows phi(t) and the equation is integrated.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    post = spec.post_quench(omega_R)
    theta = resolve_theta(post)
    post = post.model_copy(update={"theta": theta})
    pre = spec.pre_quench(theta, omega_R)

    initial = mode_frequencies(pre, theta).require_stable("pre-quench: " + describe(pre))
    omega_i1, omega_i2 = math.sqrt(initial.Omega1_sq), math.sqrt(initial.Omega2_sq)

    if post.omega_c == 0.0:
        final = mode_frequencies(post, theta).require_stable("post-quench: " + describe(post))
        mode1 = quench_ermakov_solution(omega_i1, math.sqrt(final.Omega1_sq), t_grid)
        mode2 = quench_ermakov_solution(omega_i2, math.sqrt(final.Omega2_sq), t_grid)
        logger.info(f"Quench solved analytically on {len(t_grid)} points")
        return post, ErmakovSolution.from_modes(mode1, mode2)

    fine, stride = _refined_grid(t_grid, step or config.ermakov_step)
    o1, o2, _ = _frequencies(post, mixing_angle(post, fine))
    for mode, values in ((1, o1), (2, o2)):
        if np.min(values) <= 0:
            raise InvertedModeError(mode, float(np.min(values)), "post-quench: " + describe(post))

    mode1 = solve_ermakov(lambda t: _frequencies(post, mixing_angle(post, t))[0], omega_i1, fine)
    mode2 = solve_ermakov(lambda t: _frequencies(post, mixing_angle(post, t))[1], omega_i2, fine)
    sol = ErmakovSolution.from_modes(mode1, mode2).subsample(stride)
    logger.info(f"Quench integrated: {len(fine) - 1} steps (stride {stride}), residual {sol.residual:.3g}")
    return post, sol


# ===== Gaussian exponent =====

def gaussian_exponents(p: CoupledParams, sol: ErmakovSolution) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """A1, A2, A12 over the whole solution grid."""
    phi = mixing_angle(p, sol.t_grid)
    c2, s2, sc = np.cos(phi) ** 2, np.sin(phi) ** 2, np.sin(phi) * np.cos(phi)
    u1 = sol.omega0_1 / sol.h1 - 1j * sol.hdot1 / sol.h1
    u2 = sol.omega0_2 / sol.h2 - 1j * sol.hdot2 / sol.h2
    a1 = u1 * c2 + u2 * s2
    a2 = u2 * c2 + u1 * s2
    a12 = (u1 - u2) * sc
    return a1, a2, a12


def gaussian_exponent_at(p: CoupledParams, sol: ErmakovSolution, t: float) -> GaussianExponent:
    i = sol.index_of(t)
    if not sol.h1[i] > 0 or not sol.h2[i] > 0:
        raise ErmakovCollapseError(float(sol.t_grid[i]), float(min(sol.h1[i], sol.h2[i])))
    phi = float(mixing_angle(p, sol.t_grid[i]))
    c2, s2, sc = math.cos(phi) ** 2, math.sin(phi) ** 2, math.sin(phi) * math.cos(phi)
    u1 = sol.omega0_1 / sol.h1[i] - 1j * sol.hdot1[i] / sol.h1[i]
    u2 = sol.omega0_2 / sol.h2[i] - 1j * sol.hdot2[i] / sol.h2[i]
    return GaussianExponent(
        a1=complex(u1 * c2 + u2 * s2),
        a2=complex(u2 * c2 + u1 * s2),
        a12=complex((u1 - u2) * sc),
    )


def steady_state_exponent(p: CoupledParams) -> Tuple[GaussianExponent, float]:
    """Real exponent of the instantaneous ground state at phi = theta, and its normalization."""
    theta = resolve_theta(p)
    freqs = mode_frequencies(p, theta).require_stable(describe(p))
    big1, big2 = math.sqrt(freqs.Omega1_sq), math.sqrt(freqs.Omega2_sq)
    c2, s2, sc = math.cos(theta) ** 2, math.sin(theta) ** 2, math.sin(theta) * math.cos(theta)
    exponent = GaussianExponent(
        a1=complex(big1 * c2 + big2 * s2),
        a2=complex(big2 * c2 + big1 * s2),
        a12=complex((big1 - big2) * sc),
    )
    norm = (big1 * big2 / math.pi**2) ** 0.25
    return exponent, norm
