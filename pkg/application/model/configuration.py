import re
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from application.model.group import GroupLabel

HYBRID = "4+3"

_KEY_PATTERN = re.compile(r"^(?:(D[246])-(\d)|([OY])(\d|4\+3))(-multipath)?$")


class EdgeKind(str, Enum):
    NN = "NN"
    NNN = "NNN"


class ConfigurationKey(BaseModel):
    """Textual handle of a configuration C(G, p), e.g. ``O4``, ``D4-2``, ``O3-multipath``."""

    group: GroupLabel
    p: str
    multipath: bool = False

    model_config = ConfigDict(frozen=True)

    @classmethod
    def parse(cls, text: str) -> "ConfigurationKey":
        match = _KEY_PATTERN.match(text.strip())
        if not match:
            raise ValueError(f"Unrecognised configuration key '{text}'")
        dihedral, dihedral_p, group, p, multipath = match.groups()
        if dihedral:
            return cls(group=GroupLabel(dihedral), p=dihedral_p, multipath=bool(multipath))
        return cls(group=GroupLabel(group), p=p, multipath=bool(multipath))

    @property
    def label(self) -> str:
        if self.group in (GroupLabel.D2, GroupLabel.D4, GroupLabel.D6):
            base = f"{self.group.value}-{self.p}"
        else:
            base = f"{self.group.value}{self.p}"
        return base + ("-multipath" if self.multipath else "")


class Edge(BaseModel):
    i: int
    j: int
    kind: EdgeKind = EdgeKind.NN
    path_multiplicity: int = 1


class Plaquette(BaseModel):
    """Oriented vertex cycle, counterclockwise seen from outside the sphere.

    ``paths`` selects, per step, which parallel path of the edge is used.
    """

    cycle: List[int]
    paths: List[int]
    solid_angle: float


class Configuration(BaseModel):
    group: GroupLabel
    p: str
    label: str
    n_sites: int
    vertices: List[Tuple[float, float, float]]
    edges: List[Edge] = []
    plaquettes: List[Plaquette] = []
    s_parameter: Optional[int] = None
    alpha: Optional[float] = None
    multipath: bool = False

    @field_validator("vertices", mode="before")
    @classmethod
    def validate_vertices(cls, v):
        return [tuple(float(c) for c in vertex) for vertex in v]

    @property
    def vertex_array(self) -> np.ndarray:
        return np.array(self.vertices, dtype=float)

    @property
    def is_multigraph(self) -> bool:
        return any(edge.path_multiplicity > 1 for edge in self.edges)

    @property
    def total_solid_angle(self) -> float:
        return float(sum(p.solid_angle for p in self.plaquettes))

    @property
    def dimensionality(self) -> int:
        """Number of independent directions spanned by the vertex set."""
        return int(np.linalg.matrix_rank(self.vertex_array, tol=1e-9))

    def to_dict(self) -> dict:
        return {
            "config": self.label,
            "group": self.group.value,
            "p": self.p,
            "n_sites": self.n_sites,
            "s_parameter": self.s_parameter,
            "alpha": self.alpha,
            "vertices": [list(v) for v in self.vertices],
            "edges": [edge.model_dump(mode="json") for edge in self.edges],
            "plaquettes": [p.model_dump() for p in self.plaquettes],
            "total_solid_angle": self.total_solid_angle,
        }


class ExtremaClass(BaseModel):
    n_minima: int
    boundary_flag: bool = False
    depths: Tuple[float, float, float]
