from functools import lru_cache
from typing import Dict, List, Tuple

import numpy as np
from fastapi import status

from application.config.config import Config
from application.data.character_tables import get_character_table, get_generators
from application.exception.application_error import (
    ApplicationError,
    GroupTheoryError,
    InvalidArgumentError,
)
from application.model.group import (
    DoubleGroupTable,
    GroupElement,
    GroupLabel,
    IrrepDecomposition,
)
from application.model.spin import SpinValue
from application.utils.logger import log

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def su2_rotation(axis, angle: float) -> np.ndarray:
    """cos(angle/2) I - i sin(angle/2) n.sigma"""
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    generator = sum(c * s for c, s in zip(n, PAULI))
    return np.cos(angle / 2) * np.eye(2) - 1j * np.sin(angle / 2) * generator


def so3_image(u: np.ndarray) -> np.ndarray:
    """R_ij = Tr(sigma_i U sigma_j U^dagger) / 2"""
    u_dag = u.conj().T
    return np.array(
        [[0.5 * np.trace(PAULI[i] @ u @ PAULI[j] @ u_dag).real for j in range(3)] for i in range(3)]
    )


def angle_axis(u: np.ndarray) -> Tuple[float, np.ndarray]:
    """Rotation angle in [0, 2pi] and unit axis of an SU(2) element."""
    a0 = np.clip(np.real(u[0, 0] + u[1, 1]) / 2, -1.0, 1.0)
    b = np.array(
        [
            -np.imag(u[0, 1] + u[1, 0]) / 2,
            np.real(u[1, 0] - u[0, 1]) / 2,
            -np.imag(u[0, 0] - u[1, 1]) / 2,
        ]
    )
    angle = 2 * np.arccos(a0)
    half_sin = np.sin(angle / 2)
    if half_sin < 1e-9:
        return angle, None
    return angle, b / half_sin


@lru_cache(maxsize=None)
def _closure(group: GroupLabel) -> Tuple[np.ndarray, ...]:
    generators = [su2_rotation(axis, angle) for axis, angle in get_generators(group)]
    elements = [np.eye(2, dtype=complex)]
    frontier = list(elements)
    while frontier:
        fresh = []
        for element in frontier:
            for generator in generators:
                candidate = generator @ element
                if not any(np.allclose(candidate, known, atol=1e-9) for known in elements):
                    elements.append(candidate)
                    fresh.append(candidate)
        frontier = fresh
    return tuple(elements)


class GroupRepService:
    def __init__(self):
        self.tolerance = Config.GROUP_TOL

    def builtin_table(self, group: GroupLabel) -> DoubleGroupTable:
        try:
            return get_character_table(GroupLabel(group))
        except (KeyError, ValueError) as e:
            raise InvalidArgumentError(
                payload={
                    "error": "Unknown Group",
                    "message": f"No character table for group '{group}'",
                }
            ) from e

    def _classify(self, table: DoubleGroupTable, angle: float, axis) -> str:
        for cls in table.classes:
            if abs(angle - cls.angle) > 1e-6:
                continue
            if cls.axes is None:
                return cls.name
            if any(abs(np.dot(axis, a)) > 1 - 1e-6 for a in cls.axes):
                return cls.name
        raise GroupTheoryError(
            payload={
                "error": "Unclassified Element",
                "message": f"Rotation by {angle:.6f} about {axis} matches no class of {table.group.value}",
            }
        )

    def group_elements(self, group: GroupLabel) -> List[GroupElement]:
        """All elements of the double group, generated by SU(2) closure."""
        table = self.builtin_table(group)
        matrices = _closure(table.group)
        if len(matrices) != table.order:
            raise GroupTheoryError(
                payload={
                    "error": "Closure Size Mismatch",
                    "message": f"{table.group.value}' closed to {len(matrices)} elements, expected {table.order}",
                }
            )
        elements = []
        counts: Dict[str, int] = {cls.name: 0 for cls in table.classes}
        for u in matrices:
            angle, axis = angle_axis(u)
            name = self._classify(table, angle, axis)
            counts[name] += 1
            elements.append(
                GroupElement(su2=u, rotation=so3_image(u), angle=angle, axis=axis, class_name=name)
            )
        for cls in table.classes:
            if counts[cls.name] != cls.size:
                raise GroupTheoryError(
                    payload={
                        "error": "Class Size Mismatch",
                        "message": f"class {cls.name} has {counts[cls.name]} elements, expected {cls.size}",
                    }
                )
        return elements

    def proper_rotations(self, group: GroupLabel) -> List[np.ndarray]:
        """Distinct SO(3) images of the double group."""
        rotations: List[np.ndarray] = []
        for element in self.group_elements(group):
            if not any(np.allclose(element.rotation, r, atol=1e-9) for r in rotations):
                rotations.append(element.rotation)
        return rotations

    @staticmethod
    def element_character(element: GroupElement, vertices: np.ndarray, spin: SpinValue) -> complex:
        """Trace of the main representation: sum over fixed vertices of exp(-iJ theta s)."""
        j = spin.j
        total = 0.0 + 0.0j
        for n in vertices:
            if np.linalg.norm(element.rotation @ n - n) > 1e-9:
                continue
            if element.axis is None:
                total += np.exp(-1j * j * element.angle)
            else:
                sign = 1.0 if np.dot(element.axis, n) > 0 else -1.0
                total += np.exp(-1j * j * element.angle * sign)
        return total

    def main_rep_characters(self, config, spin: SpinValue) -> Dict[str, float]:
        """Characters of W(G, p, J) per class of the double group."""
        table = self.builtin_table(config.group)
        vertices = config.vertex_array
        elements = self.group_elements(table.group)
        characters: Dict[str, float] = {}
        for cls in table.classes:
            members = [e for e in elements if e.class_name == cls.name]
            values = [self.element_character(e, vertices, spin) for e in members]
            spread = max(abs(v - values[0]) for v in values)
            if spread > self.tolerance or abs(values[0].imag) > self.tolerance:
                raise GroupTheoryError(
                    payload={
                        "error": "Inconsistent Class Character",
                        "message": f"class {cls.name} of {config.label}: spread {spread:.3e}",
                    }
                )
            characters[cls.name] = float(values[0].real)
        return characters

    def decompose(self, config, spin: SpinValue) -> IrrepDecomposition:
        """Multiplicities of the irreps of the double group in W(G, p, J).

        Integer J is projected onto single-valued irreps, half-integer J onto
        double-valued ones.

        Raises:
            GroupTheoryError: when a multiplicity is not an integer.
        """
        try:
            table = self.builtin_table(config.group)
            characters = self.main_rep_characters(config, spin)
            irreps = table.double_valued if spin.is_half_integer else table.single_valued
            multiplicities: Dict[str, int] = {}
            max_residual = 0.0
            for irrep in irreps:
                raw = sum(
                    cls.size * characters[cls.name] * chi
                    for cls, chi in zip(table.classes, irrep.characters)
                ) / table.order
                rounded = int(round(raw))
                residual = abs(raw - rounded)
                max_residual = max(max_residual, residual)
                if residual > self.tolerance or rounded < 0:
                    raise GroupTheoryError(
                        payload={
                            "error": "Non-integer Multiplicity",
                            "message": f"{irrep.label} in {config.label}, 2J={spin.two_j}: {raw:.12f}",
                        }
                    )
                multiplicities[irrep.label] = rounded
            total = sum(m * table.irrep(label).dimension for label, m in multiplicities.items())
            log.debug(f"decomposed {config.label} 2J={spin.two_j}: {multiplicities}")
            return IrrepDecomposition(
                group=table.group,
                config_label=config.label,
                two_j=spin.two_j,
                multiplicities=multiplicities,
                dimension_total=total,
                n_sites=config.n_sites,
                max_residual=max_residual,
            )
        except ApplicationError:
            raise
        except Exception as e:
            log.error(f"Error decomposing {config.label}: {e}", exc_info=True)
            raise GroupTheoryError(
                status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
                payload={"error": "Decomposition Failed", "message": str(e)},
            ) from e
