from typing import List, Optional

from pydantic import BaseModel


class SweepPoint(BaseModel):
    phi: float
    eigenvalues: List[float] = []
    multiplet_sizes: List[int] = []
    ground_size: Optional[int] = None
    rescale: Optional[float] = None
    minus_ln_r_over_j: Optional[float] = None
    gap_ratio: Optional[float] = None
    n_minima: Optional[int] = None
    boundary_flag: bool = False
    status: str = "completed"
    error_message: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.status == "completed"


class SweepResult(BaseModel):
    """Exact spectra of the cubic CEF Hamiltonian along a grid of phi."""

    two_j: int
    gap_ratio_threshold: float
    points: List[SweepPoint]

    @property
    def phi(self) -> List[float]:
        return [p.phi for p in self.points]

    @property
    def failed(self) -> List[SweepPoint]:
        return [p for p in self.points if not p.ok]

    def rows(self, n_levels: int) -> List[dict]:
        """Flat records: phi, E0..E{n-1}, multiplet_size, minus_lnR_over_J."""
        records = []
        for point in self.points:
            record = {"phi": point.phi}
            for k in range(n_levels):
                record[f"E{k}"] = point.eigenvalues[k] if k < len(point.eigenvalues) else None
            record["multiplet_size"] = point.ground_size
            record["minus_lnR_over_J"] = point.minus_ln_r_over_j
            record["gap_ratio"] = point.gap_ratio
            record["n_minima"] = point.n_minima
            record["boundary"] = point.boundary_flag
            record["status"] = point.status
            records.append(record)
        return records


class SplittingResult(BaseModel):
    u: float
    phi: float
    two_j: int
    e0: float
    e1: float
    exponent: float
    ground_size: int
    c: Optional[float] = None
    implied_prefactor: Optional[float] = None
