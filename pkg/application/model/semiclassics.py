from typing import Optional

from pydantic import BaseModel, ConfigDict


class ActionResult(BaseModel):
    """Tunnelling action per unit J along a geodesic, exp(-c J)."""

    u: Optional[float] = None
    c: Optional[float] = None
    valid: bool = True
    abs_error: float = 0.0

    model_config = ConfigDict(frozen=True)
