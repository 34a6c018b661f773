from typing import List, Sequence

import numpy as np

from application.exception.application_error import InvalidArgumentError


def success_response(data):
    response = {"status": "success", "data": data}
    return response


def parse_vector(text: str, length: int = 3) -> List[float]:
    """Parse a comma separated vector such as ``"0,0,1.5"``."""
    try:
        values = [float(part) for part in text.split(",")]
    except ValueError as e:
        raise InvalidArgumentError(
            payload={
                "error": "Invalid Vector",
                "message": f"Cannot parse '{text}' as {length} comma separated numbers",
            }
        ) from e
    if len(values) != length:
        raise InvalidArgumentError(
            payload={
                "error": "Invalid Vector",
                "message": f"Expected {length} components, got {len(values)}",
            }
        )
    return values


def unit_vector(values: Sequence[float]) -> np.ndarray:
    vector = np.asarray(values, dtype=float)
    norm = np.linalg.norm(vector)
    if norm == 0.0:
        raise InvalidArgumentError(
            payload={"error": "Invalid Direction", "message": "Direction must be non-zero"}
        )
    return vector / norm


def linear_grid(start: float, stop: float, steps: int) -> List[float]:
    if steps < 1:
        raise InvalidArgumentError(
            payload={"error": "Invalid Grid", "message": "Grid needs at least one step"}
        )
    if steps == 1:
        return [float(start)]
    return [float(v) for v in np.linspace(start, stop, steps)]
