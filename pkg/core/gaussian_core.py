"""
Gaussian-state machinery.

Moments of two-mode Gaussian wavefunctions, symplectic spectra, von Neumann
entropies and the geodesic complexity between covariance matrices.

Conventions: hbar = m = 1, vacuum variance 1/2, quadrature ordering
(x1, p1, x2, p2), entropies in nats.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from core.errors import UnphysicalStateError
from logging_config import get_logger

logger = get_logger(__name__)

SYMMETRY_TOL = 1e-12
UNCERTAINTY_TOL = 1e-9
# below this distance from 1/2 the entropy function switches to its series form
SERIES_CUTOFF = 1e-6


@dataclass(frozen=True)
class GaussianExponent:
    """Coefficients of Psi ~ exp[-1/2 (a1 x1^2 + a2 x2^2 - a12 x1 x2)]."""

    a1: complex
    a2: complex
    a12: complex

    def matrix(self) -> np.ndarray:
        """Complex symmetric K with Psi ~ exp(-1/2 x^T K x)."""
        return np.array(
            [[self.a1, -self.a12 / 2], [-self.a12 / 2, self.a2]], dtype=complex
        )

    @classmethod
    def from_matrix(cls, k: np.ndarray) -> "GaussianExponent":
        return cls(a1=complex(k[0, 0]), a2=complex(k[1, 1]), a12=complex(-2 * k[0, 1]))

    @property
    def is_real(self) -> bool:
        return all(abs(complex(c).imag) == 0.0 for c in (self.a1, self.a2, self.a12))

    def validate(self) -> None:
        """Reject exponents whose real part is not positive definite."""
        r1, r2, r12 = (complex(c).real for c in (self.a1, self.a2, self.a12))
        if r1 <= 0 or r2 <= 0:
            raise UnphysicalStateError(
                f"exponent not normalizable: Re(a1) = {r1:.6g}, Re(a2) = {r2:.6g}"
            )
        if 4 * r1 * r2 - r12**2 <= 0:
            raise UnphysicalStateError(
                f"real part of exponent not positive definite: "
                f"4 Re(a1) Re(a2) - Re(a12)^2 = {4 * r1 * r2 - r12**2:.6g}"
            )


@dataclass(frozen=True)
class CovarianceMatrix:
    """Real symmetric second-moment matrix over (x1, p1, x2, p2, ...)."""

    sigma: np.ndarray

    @property
    def modes(self) -> int:
        return self.sigma.shape[0] // 2

    def position_block(self) -> np.ndarray:
        return self.sigma[0::2, 0::2]

    def momentum_block(self) -> np.ndarray:
        return self.sigma[1::2, 1::2]

    def cross_block(self) -> np.ndarray:
        """Entry (a, b) is the symmetrized <x_a p_b>."""
        return self.sigma[0::2, 1::2]

    def reduce(self, modes: Iterable[int]) -> "CovarianceMatrix":
        """Marginal covariance on the given 1-based modes."""
        idx = []
        for mode in sorted(set(modes)):
            if not 1 <= mode <= self.modes:
                raise ValueError(f"mode {mode} outside 1..{self.modes}")
            idx.extend([2 * (mode - 1), 2 * (mode - 1) + 1])
        return CovarianceMatrix(self.sigma[np.ix_(idx, idx)])

    def scaled(self, factor: float) -> "CovarianceMatrix":
        return CovarianceMatrix(self.sigma * factor)


@dataclass(frozen=True)
class SymplecticSpectrum:
    nus: tuple[float, ...]

    @property
    def is_pure(self) -> bool:
        return all(abs(nu - 0.5) < UNCERTAINTY_TOL for nu in self.nus)


def vacuum(modes: int = 2) -> CovarianceMatrix:
    return CovarianceMatrix(0.5 * np.eye(2 * modes))


def symplectic_form(modes: int) -> np.ndarray:
    return np.kron(np.eye(modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def _check_square_even(sigma: np.ndarray) -> None:
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1] or sigma.shape[0] % 2:
        raise ValueError(f"covariance must be square with even dimension, got {sigma.shape}")


def _check_symmetric(sigma: np.ndarray) -> None:
    _check_square_even(sigma)
    scale = max(1.0, float(np.max(np.abs(sigma))))
    asym = float(np.max(np.abs(sigma - sigma.T)))
    if asym > SYMMETRY_TOL * scale:
        raise UnphysicalStateError(f"covariance matrix is not symmetric (max |S - S^T| = {asym:.3g})")


def exponent_to_covariance(exp: GaussianExponent) -> CovarianceMatrix:
    """
    Second moments of |Psi|^2 for Psi ~ exp(-1/2 x^T (R + iJ) x).

    Position block R^-1 / 2, momentum block (R + J R^-1 J) / 2, cross block
    -R^-1 J / 2. First moments vanish.
    """
    exp.validate()
    k = exp.matrix()
    r, j = k.real, k.imag
    try:
        r_inv = np.linalg.inv(r)
    except np.linalg.LinAlgError as e:
        raise UnphysicalStateError(f"real part of exponent is singular: {e}") from e

    sigma_x = 0.5 * r_inv
    sigma_p = 0.5 * (r + j @ r_inv @ j)
    sigma_xp = -0.5 * r_inv @ j

    sigma = np.empty((4, 4))
    sigma[0::2, 0::2] = sigma_x
    sigma[1::2, 1::2] = 0.5 * (sigma_p + sigma_p.T)
    sigma[0::2, 1::2] = sigma_xp
    sigma[1::2, 0::2] = sigma_xp.T
    return CovarianceMatrix(sigma)


def wavefunction_norm(exp: GaussianExponent) -> float:
    """Normalization N with |N|^2 int |exp(-1/2 x^T K x)|^2 dx = 1."""
    exp.validate()
    return float((np.linalg.det(exp.matrix().real) / np.pi**2) ** 0.25)


def _spectrum(sigma: np.ndarray) -> np.ndarray:
    """Symplectic eigenvalues of any 2n x 2n covariance, sorted descending."""
    n = sigma.shape[0] // 2
    eig = np.abs(np.linalg.eigvals(1j * symplectic_form(n) @ sigma))
    # eigenvalues come in +/- nu pairs
    return np.sort(eig)[::-1][::2]


def symplectic_eigenvalues(sigma: CovarianceMatrix) -> SymplecticSpectrum:
    _check_symmetric(sigma.sigma)
    nus = _spectrum(sigma.sigma)
    if nus[-1] < 0.5 - UNCERTAINTY_TOL:
        raise UnphysicalStateError(
            f"uncertainty bound violated: smallest symplectic eigenvalue {nus[-1]:.12g} < 1/2"
        )
    return SymplecticSpectrum(tuple(float(nu) for nu in nus))


def entropy_function(nu: float) -> float:
    """f(nu) = (nu + 1/2) ln(nu + 1/2) - (nu - 1/2) ln(nu - 1/2), f(1/2) = 0."""
    if nu < 0.5 - UNCERTAINTY_TOL:
        raise UnphysicalStateError(f"symplectic eigenvalue {nu:.12g} below 1/2")
    x = nu - 0.5
    if x <= 0.0:
        return 0.0
    if x < SERIES_CUTOFF:
        return x + x * x / 2 - x * np.log(x)
    return float((nu + 0.5) * np.log(nu + 0.5) - x * np.log(x))


def mode_entropy(sigma: CovarianceMatrix, modes: Iterable[int]) -> float:
    """Von Neumann entropy (nats) of the marginal state on the selected modes."""
    reduced = sigma.reduce(modes)
    spectrum = symplectic_eigenvalues(reduced)
    return float(sum(entropy_function(nu) for nu in spectrum.nus))


def purity(sigma: CovarianceMatrix) -> float:
    """Tr(rho^2) = 1 / (2^n sqrt(det sigma))."""
    _check_symmetric(sigma.sigma)
    det = np.linalg.det(sigma.sigma)
    if det <= 0:
        raise UnphysicalStateError(f"covariance determinant {det:.3g} is not positive")
    return float(1.0 / (2**sigma.modes * np.sqrt(det)))


def geodesic_complexity(target: CovarianceMatrix, reference: CovarianceMatrix) -> float:
    """
    C = 1/4 Tr(log^2 M) with M = G_T G_R^-1.

    With G_R = L L^T, M is similar to L^-1 G_T L^-T, which is symmetric
    positive definite, so log M is evaluated on its real spectrum.
    """
    g_t, g_r = target.sigma, reference.sigma
    _check_symmetric(g_t)
    _check_symmetric(g_r)
    if g_t.shape != g_r.shape:
        raise ValueError(f"shape mismatch: target {g_t.shape}, reference {g_r.shape}")
    try:
        chol = np.linalg.cholesky(g_r)
    except np.linalg.LinAlgError as e:
        raise UnphysicalStateError(f"reference covariance is singular or indefinite: {e}") from e

    l_inv = np.linalg.inv(chol)
    sym = l_inv @ g_t @ l_inv.T
    lam = np.linalg.eigvalsh(0.5 * (sym + sym.T))
    if lam[0] <= 0:
        raise UnphysicalStateError(f"target covariance is not positive definite (eigenvalue {lam[0]:.3g})")
    return float(0.25 * np.sum(np.log(lam) ** 2))


def tfd_covariance(vartheta: float) -> CovarianceMatrix:
    """Two-mode squeezed vacuum generated by exp[vartheta (a^dag a'^dag - a a')]."""
    c = 0.5 * np.cosh(2 * vartheta)
    s = 0.5 * np.sinh(2 * vartheta)
    sigma = np.array(
        [
            [c, 0.0, s, 0.0],
            [0.0, c, 0.0, -s],
            [s, 0.0, c, 0.0],
            [0.0, -s, 0.0, c],
        ]
    )
    return CovarianceMatrix(sigma)
