"""
Exception types raised by the simulation core.
"""


class SimulationError(ValueError):
    """Base class for every rejection raised by the numerical core."""


class UnphysicalStateError(SimulationError):
    """A Gaussian state or matrix violates positivity or the uncertainty bound."""


class InvertedModeError(SimulationError):
    """A normal-mode squared frequency is not positive."""

    def __init__(self, mode: int, omega_sq: float, params: str = ""):
        self.mode = mode
        self.omega_sq = omega_sq
        detail = f" ({params})" if params else ""
        super().__init__(
            f"mode {mode} is inverted: Omega_{mode}^2 = {omega_sq:.6g} <= 0{detail}"
        )


class ErmakovCollapseError(SimulationError):
    """The Ermakov scale factor crossed zero during integration."""

    def __init__(self, t: float, h: float):
        self.t = t
        self.h = h
        super().__init__(f"Ermakov scale factor collapsed at t = {t:.6g} (h = {h:.3g})")


class ProtocolError(SimulationError):
    """Invalid transport protocol or displacement table."""
