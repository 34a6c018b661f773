from typing import Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

Vector = Tuple[float, float, float]


class ConfigInput(BaseModel):
    config: str
    alpha: Optional[float] = None

    model_config = ConfigDict(extra="forbid", json_schema_extra={"example": {"config": "O4"}})


class EffectiveSpectrumInput(ConfigInput):
    two_j: int
    w: float = 1.0
    x: Optional[float] = None
    omega: Optional[float] = None
    field: Vector = (0.0, 0.0, 0.0)
    seed: Optional[int] = None

    model_config = ConfigDict(extra="forbid", json_schema_extra={"example": {"config": "O4", "two_j": 0, "w": 1.0}})

    @field_validator("two_j")
    @classmethod
    def validate_two_j(cls, v):
        if v < 0:
            raise ValueError("two_j must be a non-negative integer")
        return v

    @model_validator(mode="after")
    def validate_multipath_factor(self):
        if self.x is not None and self.omega is not None:
            raise ValueError("Give either x or omega, not both")
        return self


class EffectiveSweepInput(EffectiveSpectrumInput):
    two_j: int = 0
    parameter: Literal["two_j", "alpha", "omega"] = "two_j"
    start: float = 0.0
    stop: float = 12.0
    steps: int = 13

    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "example": {"config": "O4", "two_j": 48, "parameter": "omega", "start": 0.0, "stop": 1.0, "steps": 101}
        },
    )


class GroupDecomposeInput(ConfigInput):
    two_j: int

    @field_validator("two_j")
    @classmethod
    def validate_two_j(cls, v):
        if v < 0:
            raise ValueError("two_j must be a non-negative integer")
        return v


class ExactSpectrumInput(BaseModel):
    two_j: int
    phi: Optional[float] = None
    u: Optional[float] = None
    threshold: Optional[float] = None
    splitting: bool = False

    model_config = ConfigDict(extra="forbid", json_schema_extra={"example": {"two_j": 48, "phi": 0.2}})

    @model_validator(mode="after")
    def validate_angle(self):
        if (self.phi is None) == (self.u is None):
            raise ValueError("Exactly one of phi and u is required")
        if self.splitting and self.u is None:
            raise ValueError("The splitting exponent is defined through u")
        return self


class ExactSweepInput(BaseModel):
    two_j: int
    start: float = -1.5707963267948966
    stop: float = 1.5707963267948966
    steps: int = 61
    threshold: Optional[float] = None
    levels: int = 14

    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={"example": {"two_j": 48, "start": -1.5, "stop": 1.5, "steps": 31}},
    )


class WkbInput(BaseModel):
    u: Optional[float] = None
    start: Optional[float] = None
    stop: Optional[float] = None
    steps: Optional[int] = None
    icosahedral: bool = False

    model_config = ConfigDict(extra="forbid", json_schema_extra={"example": {"u": 0.0}})

    @model_validator(mode="after")
    def validate_grid(self):
        grid = (self.start, self.stop, self.steps)
        if self.icosahedral:
            return self
        if self.u is None and any(v is None for v in grid):
            raise ValueError("Give u, or start, stop and steps")
        return self


class ThermoInput(ConfigInput):
    two_j: int
    w: float = 1.0
    x: Optional[float] = None
    direction: Vector = (0.0, 0.0, 1.0)
    tmin: float = 0.01
    tmax: float = 100.0
    tsteps: int = 41


class OscillationInput(ConfigInput):
    two_j: int
    w: float = 1.0
    x: Optional[float] = None
    site: int = 0
    tmax: float = 10.0
    tsteps: int = 201


class TauInput(BaseModel):
    rho: float
    delta: float
    omega: float
    sound_velocity: float
    temperature: Optional[float] = None

    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "example": {"rho": 10.0, "delta": 10.0, "omega": 1e10, "sound_velocity": 1e5}
        },
    )


class DipolarInput(BaseModel):
    g: float
    two_j: int
    density: float
    concentration: float
    prefactor: Optional[float] = None

    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "example": {"g": 2.0, "two_j": 7, "density": 1e22, "concentration": 1.0}
        },
    )
