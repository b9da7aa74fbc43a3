"""
Parameter and run-configuration models.
Physical constants use hbar = m = 1 unless a model carries its own mass.
"""

import math
from typing import Any, Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


SweepVariable = Literal["g", "omega_c", "delta", "detuning"]
ProtocolKind = Literal["sudden", "smooth", "tabulated"]


class CoupledParams(BaseModel):
    """Two oscillators with position coupling in a magnetic field."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    omega1: float = Field(gt=0, description="Natural frequency of oscillator 1")
    omega2: float = Field(gt=0, description="Natural frequency of oscillator 2")
    g: float = Field(default=0.0, description="Coupling in units of frequency^2")
    omega_c: float = Field(default=0.0, ge=0, description="Cyclotron frequency eB/2c")
    theta: Optional[float] = Field(
        default=None,
        description="Mixing-angle integration constant; the decoupling angle when omitted",
    )
    omega_R: float = Field(default=1.0, gt=0, description="Reference-state frequency")


class QuenchSpec(BaseModel):
    """Sudden change of frequencies and coupling at t = 0; the field is held fixed."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    omega_i1: float = Field(gt=0, description="Pre-quench frequency of oscillator 1")
    omega_i2: float = Field(gt=0, description="Pre-quench frequency of oscillator 2")
    omega_f1: float = Field(gt=0, description="Post-quench frequency of oscillator 1")
    omega_f2: float = Field(gt=0, description="Post-quench frequency of oscillator 2")
    g_f: float = Field(default=0.0, description="Post-quench coupling (pre-quench coupling is 0)")
    omega_c: float = Field(default=0.0, ge=0, description="Cyclotron frequency, unchanged by the quench")
    theta: Optional[float] = Field(default=None, description="Override for the post-quench decoupling angle")

    def post_quench(self, omega_R: float = 1.0) -> CoupledParams:
        return CoupledParams(
            omega1=self.omega_f1,
            omega2=self.omega_f2,
            g=self.g_f,
            omega_c=self.omega_c,
            theta=self.theta,
            omega_R=omega_R,
        )

    def pre_quench(self, theta: float, omega_R: float = 1.0) -> CoupledParams:
        return CoupledParams(
            omega1=self.omega_i1,
            omega2=self.omega_i2,
            g=0.0,
            omega_c=self.omega_c,
            theta=theta,
            omega_R=omega_R,
        )


class TransportParams(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    m: float = Field(default=1.0, gt=0, description="Ion mass")
    omega: float = Field(default=2.0, gt=0, description="Trap frequency")
    beta: float = Field(default=1.0, gt=0, description="Inverse temperature of the TFD purification (inf allowed)")


class TransportProtocol(BaseModel):
    """Trajectory d(t) of the trap minimum."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: ProtocolKind
    d0: float = Field(default=1.0, description="Jump length of the sudden protocol")
    length: float = Field(default=1.0, description="Total transport length L of the smooth protocol")
    duration: float = Field(default=2.0, gt=0, description="Transport time T of the smooth protocol")
    table: Optional[List[Tuple[float, float]]] = Field(
        default=None, description="(t, d) rows of a tabulated protocol"
    )

    @model_validator(mode="after")
    def _check_table(self) -> "TransportProtocol":
        if self.kind != "tabulated":
            return self
        if not self.table or len(self.table) < 2:
            raise ValueError("tabulated protocol needs at least two (t, d) rows")
        times = np.array([row[0] for row in self.table])
        if times[0] != 0.0:
            raise ValueError(f"tabulated protocol must start at t = 0, got {times[0]}")
        if np.any(np.diff(times) <= 0):
            raise ValueError("tabulated protocol times must be strictly increasing")
        if self.table[0][1] != 0.0:
            raise ValueError(f"tabulated protocol must start at d = 0, got {self.table[0][1]}")
        return self


class GridSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    start: float
    stop: float
    count: int = Field(ge=2)

    @model_validator(mode="after")
    def _check_order(self) -> "GridSpec":
        if not self.start < self.stop:
            raise ValueError(f"grid start {self.start} must be below stop {self.stop}")
        return self

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


class RunConfig(BaseModel):
    """Fields shared by every run."""

    model_config = ConfigDict(frozen=True, extra="forbid", ser_json_inf_nan="constants")

    output: Optional[str] = Field(default=None, description="CSV path; stdout when omitted")


# omega_c and grid per sweep variable; the g sweep keeps the field defaults
DEPTH_SWEEP_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "omega_c": {"grid": {"start": 0.5, "stop": 100.0, "count": 200}},
    "delta": {"omega_c": 1.0, "grid": {"start": 0.01, "stop": 10.0, "count": 101}},
    "detuning": {"omega_c": 1.0, "grid": {"start": -0.5, "stop": 0.5, "count": 101}},
}


class DepthSweepConfig(RunConfig):
    """
    Defaults reproduce the steady-state depth panels.

    The g sweep uses omega_c = 1.5 on g in [0, 2]. The field and detuning sweeps take
    omega_c and the grid from DEPTH_SWEEP_DEFAULTS unless they are given explicitly.
    """

    omega1: float = Field(default=1.0, gt=0)
    omega2: float = Field(default=1.2, gt=0)
    g: float = 0.5
    omega_c: float = Field(default=1.5, ge=0)
    omega_r: float = Field(default=1.0, gt=0)
    theta: Optional[float] = None
    sweep: SweepVariable = "g"
    grid: GridSpec = GridSpec(start=0.0, stop=2.0, count=101)
    at_time: Optional[float] = Field(
        default=None, ge=0, description="Evaluate the quenched state (g: 0 -> g) at this time instead of the steady state"
    )

    @model_validator(mode="before")
    @classmethod
    def _sweep_defaults(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        sweep = data.get("sweep", "g")
        defaults = DEPTH_SWEEP_DEFAULTS.get(sweep, {}) if isinstance(sweep, str) else {}
        return {**defaults, **data}


class SyncSweepConfig(RunConfig):
    """Steady-state synchronization and mutual information against detuning."""

    omega1: float = Field(default=1.0, gt=0)
    omega2: float = Field(default=1.0, gt=0)
    g: float = 0.5
    omega_c: float = Field(default=1.0, ge=0)
    omega_r: float = Field(default=1.0, gt=0)
    theta: Optional[float] = None
    sweep: SweepVariable = "detuning"
    grid: GridSpec = GridSpec(start=-0.5, stop=0.5, count=101)


class QuenchConfig(RunConfig):
    omega_i1: float = Field(default=1.0, gt=0)
    omega_i2: float = Field(default=1.2, gt=0)
    omega_f1: float = Field(default=1.0, gt=0)
    omega_f2: float = Field(default=1.2, gt=0)
    g_f: float = 1.0
    omega_c: float = Field(default=1.0, ge=0)
    omega_r: float = Field(default=1.0, gt=0)
    theta: Optional[float] = None
    grid: GridSpec = GridSpec(start=0.0, stop=20.0, count=2001)
    step: Optional[float] = Field(default=None, gt=0, description="Ermakov integration step")

    @model_validator(mode="after")
    def _check_grid_origin(self) -> "QuenchConfig":
        if self.grid.start != 0.0:
            raise ValueError(f"quench grid must start at t = 0, got {self.grid.start}")
        return self

    def quench_spec(self) -> QuenchSpec:
        return QuenchSpec(
            omega_i1=self.omega_i1,
            omega_i2=self.omega_i2,
            omega_f1=self.omega_f1,
            omega_f2=self.omega_f2,
            g_f=self.g_f,
            omega_c=self.omega_c,
            theta=self.theta,
        )


class TransportConfig(RunConfig):
    """Defaults: m = d0 = L = 1, T = 2, beta = 1, omega = 2."""

    m: float = Field(default=1.0, gt=0)
    omega: float = Field(default=2.0, gt=0)
    beta: float = Field(default=1.0, gt=0)
    d0: float = 1.0
    length: float = 1.0
    duration: float = Field(default=2.0, gt=0)
    protocols: List[ProtocolKind] = Field(default_factory=lambda: ["sudden", "smooth"], min_length=1)
    table_path: Optional[str] = Field(default=None, description="Two-column (t, d) file for the tabulated protocol")
    grid: GridSpec = GridSpec(start=0.0, stop=2 * math.pi, count=1201)

    @model_validator(mode="after")
    def _check_table_source(self) -> "TransportConfig":
        if "tabulated" in self.protocols and not self.table_path:
            raise ValueError("tabulated protocol requires table_path")
        if self.grid.start != 0.0:
            raise ValueError(f"transport grid must start at t = 0, got {self.grid.start}")
        return self

    def transport_params(self) -> TransportParams:
        return TransportParams(m=self.m, omega=self.omega, beta=self.beta)
