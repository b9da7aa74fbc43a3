"""
Core package initialization
"""
from .errors import (
    ErmakovCollapseError,
    InvertedModeError,
    ProtocolError,
    SimulationError,
    UnphysicalStateError,
)

__all__ = [
    "SimulationError",
    "UnphysicalStateError",
    "InvertedModeError",
    "ErmakovCollapseError",
    "ProtocolError",
]
