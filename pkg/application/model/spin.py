from enum import Enum
from fractions import Fraction
from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator


class SpinValue(BaseModel):
    """Spin quantum number stored as the integer 2J so half-integers stay exact."""

    two_j: int = Field(ge=0)

    model_config = ConfigDict(frozen=True, json_schema_extra={"example": {"two_j": 48}})

    @classmethod
    def from_j(cls, j: float) -> "SpinValue":
        return cls(two_j=int(round(2 * j)))

    @property
    def j(self) -> float:
        return self.two_j / 2.0

    @property
    def dim(self) -> int:
        return self.two_j + 1

    @property
    def is_half_integer(self) -> bool:
        return self.two_j % 2 == 1

    @property
    def label(self) -> str:
        return str(Fraction(self.two_j, 2))

    def shifted(self, delta_two_j: int) -> "SpinValue":
        return SpinValue(two_j=abs(self.two_j + delta_two_j))


class OperatorMatrix(BaseModel):
    """Dense complex square matrix, row-major."""

    entries: np.ndarray
    hermitian_flag: bool = False

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @field_validator("entries", mode="before")
    @classmethod
    def validate_entries(cls, v):
        array = np.asarray(v, dtype=complex)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise ValueError("Operator entries must form a square matrix")
        return array

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def hermitian_deviation(self) -> float:
        scale = max(1.0, float(np.max(np.abs(self.entries), initial=0.0)))
        return float(np.max(np.abs(self.entries - self.entries.conj().T), initial=0.0)) / scale

    def dagger(self) -> "OperatorMatrix":
        return OperatorMatrix(
            entries=self.entries.conj().T, hermitian_flag=self.hermitian_flag
        )

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return OperatorMatrix(
            entries=self.entries + other.entries,
            hermitian_flag=self.hermitian_flag and other.hermitian_flag,
        )

    def scaled(self, factor: float) -> "OperatorMatrix":
        return OperatorMatrix(
            entries=factor * self.entries,
            hermitian_flag=bool(self.hermitian_flag and np.isreal(factor)),
        )

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "hermitian": self.hermitian_flag,
            "real": self.entries.real.tolist(),
            "imag": self.entries.imag.tolist(),
        }


class InvariantLabel(str, Enum):
    CUBIC4 = "cubic4"
    CUBIC6 = "cubic6"
    ICOSA6 = "icosa6"
    O40 = "O40"
    O44 = "O44"
    O60 = "O60"
    O64 = "O64"
    ZEEMAN = "zeeman"


class Normalization(str, Enum):
    RAW = "raw"
    STEVENS_NORMALIZED = "stevens_normalized"


class CefModel(BaseModel):
    """Crystal-field Hamiltonian as a weighted sum of invariants.

    With ``stevens_normalized`` every rank-k term is divided by (J(J+1))^(k/2)
    so coefficients stay O(1) as J grows.
    """

    spin: SpinValue
    terms: List[Tuple[InvariantLabel, float]] = []
    normalization: Normalization = Normalization.RAW
    field: Tuple[float, float, float] = (0.0, 0.0, 0.0)

    model_config = ConfigDict(extra="forbid")
