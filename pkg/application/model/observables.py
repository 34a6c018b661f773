from typing import List, Optional, Tuple

from pydantic import BaseModel


class ThermoCurve(BaseModel):
    """chi(T) in units of (g J mu_B)^2 / w, temperatures in units of w / k_B."""

    config: str
    two_j: int
    direction: Tuple[float, float, float]
    temperatures: List[float]
    chi: List[Optional[float]]


class LowTemperatureResponse(BaseModel):
    """chi(T) -> curie / T + van_vleck below the first excited multiplet."""

    ground_energy: float
    ground_degeneracy: int
    ground_moments: List[float]
    curie: float
    van_vleck: float

    def chi(self, temperature: float) -> float:
        return self.curie / temperature + self.van_vleck


class MagnetizationSeries(BaseModel):
    """Projection of the moment on the starting direction, in units of g mu_B J."""

    site: int
    times: List[float]
    values: List[float]
    dc: float
    max_imag: float


class Estimate(BaseModel):
    """Order-of-magnitude estimator output in CGS units."""

    name: str
    value: float
    unit: str
    correction: Optional[float] = None
    order_of_magnitude: bool = True
