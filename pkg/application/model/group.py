from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict


class GroupLabel(str, Enum):
    D2 = "D2"
    D4 = "D4"
    D6 = "D6"
    O = "O"
    Y = "Y"


class ClassInfo(BaseModel):
    """Conjugacy class of a double group.

    ``axes`` lists the rotation axes (up to sign) when several classes share
    the same rotation angle; ``None`` means the angle alone identifies it.
    """

    name: str
    size: int
    angle: float
    axes: Optional[List[Tuple[float, float, float]]] = None
    q_flag: bool = False


class IrrepInfo(BaseModel):
    label: str
    dimension: int
    characters: List[float]
    double_valued: bool = False


class DoubleGroupTable(BaseModel):
    group: GroupLabel
    order: int
    classes: List[ClassInfo]
    irreps: List[IrrepInfo]

    def irrep(self, label: str) -> IrrepInfo:
        for irrep in self.irreps:
            if irrep.label == label:
                return irrep
        raise KeyError(label)

    @property
    def single_valued(self) -> List[IrrepInfo]:
        return [irrep for irrep in self.irreps if not irrep.double_valued]

    @property
    def double_valued(self) -> List[IrrepInfo]:
        return [irrep for irrep in self.irreps if irrep.double_valued]


class GroupElement(BaseModel):
    """Element of a double group: SU(2) matrix plus its SO(3) image."""

    su2: np.ndarray
    rotation: np.ndarray
    angle: float
    axis: Optional[np.ndarray] = None
    class_name: Optional[str] = None

    model_config = ConfigDict(arbitrary_types_allowed=True)


class IrrepDecomposition(BaseModel):
    group: GroupLabel
    config_label: str
    two_j: int
    multiplicities: Dict[str, int]
    dimension_total: int
    n_sites: int
    max_residual: float

    @property
    def dimension_check(self) -> bool:
        return self.dimension_total == self.n_sites

    def nonzero(self) -> Dict[str, int]:
        return {label: m for label, m in self.multiplicities.items() if m}

    def dimension_multiset(self, table: DoubleGroupTable) -> List[int]:
        dims = []
        for label, m in self.multiplicities.items():
            dims.extend([table.irrep(label).dimension] * m)
        return sorted(dims)

    def to_dict(self) -> dict:
        return {
            "group": self.group.value,
            "config": self.config_label,
            "two_j": self.two_j,
            "irreps": self.nonzero(),
            "dimension_total": self.dimension_total,
            "n_sites": self.n_sites,
            "dimension_check": self.dimension_check,
        }
