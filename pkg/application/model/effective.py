from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from application.model.configuration import Configuration
from application.model.spin import OperatorMatrix, SpinValue


class GaugePhases(BaseModel):
    """Tunnelling phases per edge, one entry per parallel path, oriented i -> j."""

    phases: List[List[float]]
    max_residual: float = 0.0

    def phase(self, edge_index: int, path: int = 0) -> float:
        return self.phases[edge_index][path]


class EffectiveHamiltonian(BaseModel):
    matrix: OperatorMatrix
    w: float
    config: Configuration
    spin: SpinValue
    field: Tuple[float, float, float] = (0.0, 0.0, 0.0)
    x: Optional[float] = None

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @property
    def entries(self) -> np.ndarray:
        return self.matrix.entries


class Level(BaseModel):
    value: float
    multiplicity: int


class Spectrum(BaseModel):
    levels: List[Level]
    tol: float

    @classmethod
    def from_values(cls, values, tol: float) -> "Spectrum":
        """Cluster eigenvalues whose neighbouring gap is <= tol * max(1, width)."""
        ordered = np.sort(np.asarray(values, dtype=float))
        if ordered.size == 0:
            return cls(levels=[], tol=tol)
        threshold = tol * max(1.0, float(ordered[-1] - ordered[0]))
        clusters = [[ordered[0]]]
        for value in ordered[1:]:
            if value - clusters[-1][-1] <= threshold:
                clusters[-1].append(value)
            else:
                clusters.append([value])
        levels = [Level(value=float(np.mean(c)), multiplicity=len(c)) for c in clusters]
        return cls(levels=levels, tol=tol)

    @classmethod
    def from_pairs(cls, pairs, tol: float) -> "Spectrum":
        values = [value for value, multiplicity in pairs for _ in range(multiplicity)]
        return cls.from_values(values, tol)

    @property
    def size(self) -> int:
        return sum(level.multiplicity for level in self.levels)

    @property
    def values(self) -> List[float]:
        return [level.value for level in self.levels]

    @property
    def multiplicities(self) -> List[int]:
        return [level.multiplicity for level in self.levels]

    def expanded(self) -> np.ndarray:
        return np.repeat(self.values, self.multiplicities)

    def matches(self, other: "Spectrum", atol: float = 1e-10) -> bool:
        if self.multiplicities != other.multiplicities:
            return False
        return bool(np.allclose(self.values, other.values, rtol=0.0, atol=atol))

    def negated(self) -> "Spectrum":
        return Spectrum(
            levels=[Level(value=-l.value, multiplicity=l.multiplicity) for l in reversed(self.levels)],
            tol=self.tol,
        )

    def to_dict(self) -> List[Dict]:
        return [level.model_dump() for level in self.levels]


class ResponseKind(str, Enum):
    MOMENT = "moment"
    SUSCEPTIBILITY = "susceptibility"


class GroundResponse(BaseModel):
    """Ground-state response of C(O,2) to an infinitesimal field along a 4-fold axis.

    Moments are in units of g J mu_B, susceptibilities in (g J mu_B)^2.
    """

    kind: ResponseKind
    value: float
    x: float


class GapPoint(BaseModel):
    omega: float
    amplitude: float
    gap: float
    levels: List[Level]
