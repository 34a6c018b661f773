"""Tabulated effective spectra in units of w (w > 0).

Rows are keyed by the reduced 2J of the equivalence class. Entries are
(value, multiplicity) pairs; rows parameterised by x are callables.
"""

from typing import Callable, Dict, List, Tuple

import numpy as np

Row = List[Tuple[float, int]]

S2, S3, S5, S6 = np.sqrt(2.0), np.sqrt(3.0), np.sqrt(5.0), np.sqrt(6.0)
S7, S13 = np.sqrt(7.0), np.sqrt(13.0)
C1, C3 = np.cos(np.pi / 10), np.cos(3 * np.pi / 10)


def _negated(row: Row) -> Row:
    return [(-value, m) for value, m in row]


Y5_SPECTRA: Dict[int, Row] = {
    0: [(-S5, 3), (-1.0, 5), (S5, 3), (5.0, 1)],
    2: [(-S5, 4), ((S5 - 3) / 2, 5), ((5 + S5) / 2, 3)],
    4: [(-S5, 4), ((S5 - 5) / 2, 3), ((S5 + 3) / 2, 5)],
    6: [(-(S5 + 3) / 2, 5), ((5 - S5) / 2, 3), (S5, 4)],
    8: [(-(5 + S5) / 2, 3), ((3 - S5) / 2, 5), (S5, 4)],
    10: [(-5.0, 1), (-S5, 3), (1.0, 5), (S5, 3)],
    1: [(-2 * C1, 6), ((3 - S5) * C1, 4), (2 * S5 * C1, 2)],
    3: [(-2 * S5 * C3, 2), (-2 * C3, 6), ((3 + S5) * C3, 4)],
    5: [(-S5, 6), (S5, 6)],
    7: [(-(3 + S5) * C3, 4), (2 * C3, 6), (2 * S5 * C3, 2)],
    9: [(-2 * S5 * C1, 2), ((S5 - 3) * C1, 4), (2 * C1, 6)],
}

_Y3_J1: Row = [
    (-(1 + S13) / 2, 5),
    (-1.0, 4),
    ((3 - S5) / 2, 3),
    ((-1 + S13) / 2, 5),
    ((3 + S5) / 2, 3),
]
_Y3_J_HALF: Row = [
    (-(S3 + S7) / 2, 6),
    (S3 * (1 - S5) / 2, 2),
    ((-S3 + S7) / 2, 6),
    (S3, 4),
    (S3 * (1 + S5) / 2, 2),
]

Y3_SPECTRA: Dict[int, Row] = {
    0: [(-S5, 3), (-2.0, 4), (0.0, 4), (1.0, 5), (S5, 3), (3.0, 1)],
    2: _Y3_J1,
    # J=2 is the inverted J=1 row (J -> J+3 inverts the spectrum); zero trace fixes
    # the sign of the (sqrt5-3)/2 level.
    4: _negated(_Y3_J1),
    6: [(-3.0, 1), (-S5, 3), (-1.0, 5), (0.0, 4), (2.0, 4), (S5, 3)],
    1: _Y3_J_HALF,
    3: [(-S6, 4), (-1.0, 6), (1.0, 6), (S6, 4)],
    5: _negated(_Y3_J_HALF),
}

HYBRID_SPECTRA: Dict[int, Row] = {
    0: [(-2 * S3, 1), (-2.0, 3), (0.0, 6), (2.0, 3), (2 * S3, 1)],
    2: [(-(1 + S3), 3), (1 - S3, 3), (0.0, 2), (S3 - 1, 3), (1 + S3, 3)],
    4: [(-S6, 2), (-2.0, 3), (0.0, 4), (2.0, 3), (S6, 2)],
    6: [(-2.0, 6), (0.0, 2), (2.0, 6)],
    1: [
        (-np.sqrt(6 + 2 * S3), 2),
        (-np.sqrt(3 - S3), 4),
        (0.0, 2),
        (np.sqrt(3 - S3), 4),
        (np.sqrt(6 + 2 * S3), 2),
    ],
    3: [(-S6, 4), (0.0, 6), (S6, 4)],
    5: [
        (-np.sqrt(6 - 2 * S3), 2),
        (-np.sqrt(3 + S3), 4),
        (0.0, 2),
        (np.sqrt(3 + S3), 4),
        (np.sqrt(6 - 2 * S3), 2),
    ],
}

MULTIPATH_SPECTRA: Dict[int, Callable[[float], Row]] = {
    0: lambda x: [(-3 * (1 - x), 1), (-(1 + x), 3), (1 - x, 3), (3 * (1 + x), 1)],
    2: lambda x: [(-2 * (1 - x / 2), 3), (-3 * x, 2), (2 * (1 + x / 2), 3)],
    4: lambda x: [(-2 * (1 + x / 2), 3), (3 * x, 2), (2 * (1 - x / 2), 3)],
    6: lambda x: [(-3 * (1 + x), 1), (-(1 - x), 3), (1 + x, 3), (3 * (1 - x), 1)],
    1: lambda x: [(-(S6 - x * S3), 2), (-x * S3, 4), (S6 + x * S3, 2)],
    3: lambda x: [(-np.sqrt(3 * (1 + x**2)), 4), (np.sqrt(3 * (1 + x**2)), 4)],
    5: lambda x: [(-(S6 + x * S3), 2), (x * S3, 4), (S6 - x * S3, 2)],
}


def o2_spectrum(two_j: int, alpha: float) -> Row:
    """C(O,2) spectrum with x = J(alpha + 2pi)/4."""
    x = (two_j / 2.0) * (alpha + 2 * np.pi) / 4
    c, s = np.cos(x), np.sin(x)
    if two_j % 2 == 0:
        root = np.sqrt(8 - 7 * c**2)
        return [(4 * c, 1), (-2 * c, 2), (2 * c, 3), (-c + root, 3), (-c - root, 3)]
    root = np.sqrt(2 + c**2)
    return [
        (2 * (c + S2 * s), 2),
        (2 * (c - S2 * s), 2),
        (-c + root, 4),
        (-c - root, 4),
    ]


def y2_spectrum(two_j: int, alpha: float) -> Row:
    """C(Y,2) spectrum for odd integer J with x = cos(J(alpha + 3pi)/5)."""
    x = np.cos((two_j / 2.0) * (alpha + 3 * np.pi) / 5)
    r5 = np.sqrt(4 - 3 * x**2)
    r3a = np.sqrt(4 + (5 - 4 * S5) * x**2)
    r3b = np.sqrt(4 + (5 + 4 * S5) * x**2)
    return [
        (1 + 2 * x, 4),
        (-1 + 2 * x, 4),
        (-x + r5, 5),
        (-x - r5, 5),
        ((1 + S5) * (-x + r3a) / 2, 3),
        ((1 + S5) * (-x - r3a) / 2, 3),
        ((1 - S5) * (-x + r3b) / 2, 3),
        ((1 - S5) * (-x - r3b) / 2, 3),
    ]
