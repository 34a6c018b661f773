from typing import Dict, List, Tuple

import numpy as np

from application.model.group import ClassInfo, DoubleGroupTable, GroupLabel, IrrepInfo

PI = np.pi
SQRT2 = np.sqrt(2.0)
SQRT3 = np.sqrt(3.0)
TAU = (1.0 + np.sqrt(5.0)) / 2.0

# Icosahedron vertex (alpha, beta, 0)
ICOSA_ALPHA = np.sqrt((5.0 + np.sqrt(5.0)) / 10.0)
ICOSA_BETA = np.sqrt((5.0 - np.sqrt(5.0)) / 10.0)

X = (1.0, 0.0, 0.0)
Y = (0.0, 1.0, 0.0)
Z = (0.0, 0.0, 1.0)


def _unit(v) -> Tuple[float, float, float]:
    a = np.asarray(v, dtype=float)
    return tuple(float(c) for c in a / np.linalg.norm(a))


def _planar(degrees: float) -> Tuple[float, float, float]:
    r = np.radians(degrees)
    return (float(np.cos(r)), float(np.sin(r)), 0.0)


# Rotation generators (axis, angle) of each group, lifted to SU(2) by the service.
GENERATORS: Dict[GroupLabel, List[Tuple[Tuple[float, float, float], float]]] = {
    GroupLabel.D2: [(Z, PI), (X, PI)],
    GroupLabel.D4: [(Z, PI / 2), (X, PI)],
    GroupLabel.D6: [(Z, PI / 3), (X, PI)],
    GroupLabel.O: [(Z, PI / 2), (X, PI / 2)],
    GroupLabel.Y: [
        (_unit((ICOSA_ALPHA, ICOSA_BETA, 0.0)), 2 * PI / 5),
        (_unit((1.0, 1.0, 1.0)), 2 * PI / 3),
        (Z, PI),
    ],
}


def _cls(name, size, angle, axes=None, q_flag=False) -> ClassInfo:
    return ClassInfo(name=name, size=size, angle=angle, axes=axes, q_flag=q_flag)


def _irreps(rows) -> List[IrrepInfo]:
    return [
        IrrepInfo(
            label=label,
            dimension=int(round(chars[0])),
            characters=[float(c) for c in chars],
            double_valued=chars[1] < 0,
        )
        for label, chars in rows
    ]


def _d2_table() -> DoubleGroupTable:
    classes = [
        _cls("E", 1, 0.0),
        _cls("Q", 1, 2 * PI, q_flag=True),
        _cls("C2z", 2, PI, [Z]),
        _cls("C2y", 2, PI, [Y]),
        _cls("C2x", 2, PI, [X]),
    ]
    rows = [
        ("A", [1, 1, 1, 1, 1]),
        ("B1", [1, 1, 1, -1, -1]),
        ("B2", [1, 1, -1, 1, -1]),
        ("B3", [1, 1, -1, -1, 1]),
        ("E'", [2, -2, 0, 0, 0]),
    ]
    return DoubleGroupTable(group=GroupLabel.D2, order=8, classes=classes, irreps=_irreps(rows))


def _d4_table() -> DoubleGroupTable:
    classes = [
        _cls("E", 1, 0.0),
        _cls("Q", 1, 2 * PI, q_flag=True),
        _cls("C4", 2, PI / 2),
        _cls("C4Q", 2, 3 * PI / 2, q_flag=True),
        _cls("C2", 2, PI, [Z]),
        _cls("C2'", 4, PI, [X, Y]),
        _cls("C2''", 4, PI, [_planar(45), _planar(135)]),
    ]
    rows = [
        ("A1", [1, 1, 1, 1, 1, 1, 1]),
        ("A2", [1, 1, 1, 1, 1, -1, -1]),
        ("B1", [1, 1, -1, -1, 1, 1, -1]),
        ("B2", [1, 1, -1, -1, 1, -1, 1]),
        ("E", [2, 2, 0, 0, -2, 0, 0]),
        ("E1'", [2, -2, SQRT2, -SQRT2, 0, 0, 0]),
        ("E2'", [2, -2, -SQRT2, SQRT2, 0, 0, 0]),
    ]
    return DoubleGroupTable(group=GroupLabel.D4, order=16, classes=classes, irreps=_irreps(rows))


def _d6_table() -> DoubleGroupTable:
    classes = [
        _cls("E", 1, 0.0),
        _cls("Q", 1, 2 * PI, q_flag=True),
        _cls("C6", 2, PI / 3),
        _cls("C6Q", 2, 5 * PI / 3, q_flag=True),
        _cls("C3", 2, 2 * PI / 3),
        _cls("C3Q", 2, 4 * PI / 3, q_flag=True),
        _cls("C2", 2, PI, [Z]),
        _cls("C2'", 6, PI, [_planar(0), _planar(60), _planar(120)]),
        _cls("C2''", 6, PI, [_planar(30), _planar(90), _planar(150)]),
    ]
    rows = [
        ("A1", [1, 1, 1, 1, 1, 1, 1, 1, 1]),
        ("A2", [1, 1, 1, 1, 1, 1, 1, -1, -1]),
        ("B1", [1, 1, -1, -1, 1, 1, -1, 1, -1]),
        ("B2", [1, 1, -1, -1, 1, 1, -1, -1, 1]),
        ("E1", [2, 2, 1, 1, -1, -1, -2, 0, 0]),
        ("E2", [2, 2, -1, -1, -1, -1, 2, 0, 0]),
        ("E1'", [2, -2, SQRT3, -SQRT3, 1, -1, 0, 0, 0]),
        ("E2'", [2, -2, -SQRT3, SQRT3, 1, -1, 0, 0, 0]),
        ("E3'", [2, -2, 0, 0, -2, 2, 0, 0, 0]),
    ]
    return DoubleGroupTable(group=GroupLabel.D6, order=24, classes=classes, irreps=_irreps(rows))


def _o_table() -> DoubleGroupTable:
    diagonals = [
        _unit(v)
        for v in [(1, 1, 0), (1, -1, 0), (1, 0, 1), (1, 0, -1), (0, 1, 1), (0, 1, -1)]
    ]
    classes = [
        _cls("E", 1, 0.0),
        _cls("Q", 1, 2 * PI, q_flag=True),
        _cls("C3", 8, 2 * PI / 3),
        _cls("C3Q", 8, 4 * PI / 3, q_flag=True),
        _cls("C4", 6, PI / 2),
        _cls("C4Q", 6, 3 * PI / 2, q_flag=True),
        _cls("C4^2", 6, PI, [X, Y, Z]),
        _cls("C2'", 12, PI, diagonals),
    ]
    rows = [
        ("A1", [1, 1, 1, 1, 1, 1, 1, 1]),
        ("A2", [1, 1, 1, 1, -1, -1, 1, -1]),
        ("E", [2, 2, -1, -1, 0, 0, 2, 0]),
        ("F1", [3, 3, 0, 0, 1, 1, -1, -1]),
        ("F2", [3, 3, 0, 0, -1, -1, -1, 1]),
        ("E1'", [2, -2, 1, -1, SQRT2, -SQRT2, 0, 0]),
        ("E2'", [2, -2, 1, -1, -SQRT2, SQRT2, 0, 0]),
        ("G'", [4, -4, -1, 1, 0, 0, 0, 0]),
    ]
    return DoubleGroupTable(group=GroupLabel.O, order=48, classes=classes, irreps=_irreps(rows))


def _y_table() -> DoubleGroupTable:
    t = TAU
    classes = [
        _cls("E", 1, 0.0),
        _cls("Q", 1, 2 * PI, q_flag=True),
        _cls("C5", 12, 2 * PI / 5),
        _cls("C5^2", 12, 4 * PI / 5),
        _cls("C5^3", 12, 6 * PI / 5, q_flag=True),
        _cls("C5^4", 12, 8 * PI / 5, q_flag=True),
        _cls("C3", 20, 2 * PI / 3),
        _cls("C3Q", 20, 4 * PI / 3, q_flag=True),
        _cls("C2", 30, PI),
    ]
    rows = [
        ("A", [1, 1, 1, 1, 1, 1, 1, 1, 1]),
        ("F1", [3, 3, t, 1 - t, 1 - t, t, 0, 0, -1]),
        ("F2", [3, 3, 1 - t, t, t, 1 - t, 0, 0, -1]),
        ("G", [4, 4, -1, -1, -1, -1, 1, 1, 0]),
        ("H", [5, 5, 0, 0, 0, 0, -1, -1, 1]),
        ("E1'", [2, -2, t, t - 1, 1 - t, -t, 1, -1, 0]),
        ("E2'", [2, -2, 1 - t, -t, t, t - 1, 1, -1, 0]),
        ("G'", [4, -4, 1, -1, 1, -1, -1, 1, 0]),
        ("I'", [6, -6, -1, 1, -1, 1, 0, 0, 0]),
    ]
    return DoubleGroupTable(group=GroupLabel.Y, order=120, classes=classes, irreps=_irreps(rows))


_TABLE_BUILDERS = {
    GroupLabel.D2: _d2_table,
    GroupLabel.D4: _d4_table,
    GroupLabel.D6: _d6_table,
    GroupLabel.O: _o_table,
    GroupLabel.Y: _y_table,
}


def get_character_table(group: GroupLabel) -> DoubleGroupTable:
    return _TABLE_BUILDERS[GroupLabel(group)]()


def get_generators(group: GroupLabel):
    return GENERATORS[GroupLabel(group)]
