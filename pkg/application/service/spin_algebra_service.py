import itertools
from typing import Dict, Sequence, Tuple

import numpy as np
from scipy.linalg import expm

from application.config.config import Config
from application.exception.application_error import InvalidArgumentError
from application.model.spin import (
    CefModel,
    InvariantLabel,
    Normalization,
    OperatorMatrix,
    SpinValue,
)
from application.utils.logger import log

SQRT5 = np.sqrt(5.0)

# Rank of each invariant, used for the (J(J+1))^(k/2) normalization.
INVARIANT_RANK = {
    InvariantLabel.CUBIC4: 4,
    InvariantLabel.CUBIC6: 6,
    InvariantLabel.ICOSA6: 6,
    InvariantLabel.O40: 4,
    InvariantLabel.O44: 4,
    InvariantLabel.O60: 6,
    InvariantLabel.O64: 6,
}


def classical_invariant(label: InvariantLabel, x, y, z):
    """Classical counterpart of an invariant evaluated at (x, y, z).

    Works for complex arguments, which the imaginary-time trajectories need.
    """
    if label == InvariantLabel.CUBIC4:
        return x**4 + y**4 + z**4
    if label == InvariantLabel.CUBIC6:
        return x**6 + y**6 + z**6 + 30 * x**2 * y**2 * z**2
    if label == InvariantLabel.ICOSA6:
        x2, y2, z2 = x**2, y**2, z**2
        return (
            x**6
            + y**6
            + z**6
            + 30 * x2 * y2 * z2
            - 3
            * SQRT5
            * (x2 * y2 * (x2 - y2) + y2 * z2 * (y2 - z2) + z2 * x2 * (z2 - x2))
        )
    raise InvalidArgumentError(
        payload={
            "error": "Unsupported Invariant",
            "message": f"No classical form for invariant '{label.value}'",
        }
    )


class SpinAlgebraService:
    def __init__(self):
        self.hermitian_tol = Config.HERMITIAN_TOL

    def _wrap(self, entries: np.ndarray) -> OperatorMatrix:
        operator = OperatorMatrix(entries=entries, hermitian_flag=True)
        deviation = operator.hermitian_deviation()
        if deviation > self.hermitian_tol:
            log.warning(f"Operator deviates from hermiticity by {deviation:.3e}")
            operator.hermitian_flag = False
        return operator

    @staticmethod
    def _ladder(spin: SpinValue) -> Tuple[np.ndarray, np.ndarray]:
        j = spin.j
        m = j - np.arange(spin.dim)
        j_plus = np.diag(np.sqrt(j * (j + 1.0) - m[1:] * (m[1:] + 1.0)), 1)
        return m, j_plus.astype(complex)

    def build_spin_operators(
        self, spin: SpinValue
    ) -> Tuple[OperatorMatrix, OperatorMatrix, OperatorMatrix]:
        """Return (Jx, Jy, Jz) in the basis m = J, J-1, ..., -J with hbar = 1."""
        m, j_plus = self._ladder(spin)
        j_minus = j_plus.conj().T
        jx = 0.5 * (j_plus + j_minus)
        jy = -0.5j * (j_plus - j_minus)
        jz = np.diag(m).astype(complex)
        return self._wrap(jx), self._wrap(jy), self._wrap(jz)

    def build_ladder(self, spin: SpinValue) -> Tuple[np.ndarray, np.ndarray]:
        _, j_plus = self._ladder(spin)
        return j_plus, j_plus.conj().T

    def build_stevens(self, spin: SpinValue, label: InvariantLabel) -> OperatorMatrix:
        """Stevens operator equivalents O40, O44, O60, O64.

        Args:
            spin: spin quantum number.
            label: one of O40, O44, O60, O64.

        Returns:
            Hermitian, traceless operator. It vanishes identically when 2J is
            smaller than the rank.
        """
        label = InvariantLabel(label)
        m, j_plus = self._ladder(spin)
        j_minus = j_plus.conj().T
        identity = np.eye(spin.dim)
        x = spin.j * (spin.j + 1.0)
        jz = np.diag(m)
        jz2 = jz @ jz
        jz4 = jz2 @ jz2
        plus4 = np.linalg.matrix_power(j_plus, 4) + np.linalg.matrix_power(j_minus, 4)

        if label == InvariantLabel.O40:
            entries = 35 * jz4 - 30 * x * jz2 + 25 * jz2 + (3 * x**2 - 6 * x) * identity
        elif label == InvariantLabel.O44:
            entries = 0.5 * plus4
        elif label == InvariantLabel.O60:
            entries = (
                231 * jz4 @ jz2
                - 315 * x * jz4
                + 735 * jz4
                + 105 * x**2 * jz2
                - 525 * x * jz2
                + 294 * jz2
                + (-5 * x**3 + 40 * x**2 - 60 * x) * identity
            )
        elif label == InvariantLabel.O64:
            left = 11 * jz2 - (x + 38) * identity
            entries = 0.25 * (left @ plus4 + plus4 @ left)
        else:
            raise InvalidArgumentError(
                payload={
                    "error": "Unsupported Stevens Operator",
                    "message": f"'{label.value}' is not a Stevens operator label",
                }
            )
        return self._wrap(np.asarray(entries, dtype=complex))

    def symmetrized_monomial(
        self, spin: SpinValue, powers: Dict[int, int]
    ) -> np.ndarray:
        """Average of the product over all distinct orderings of the factors.

        ``powers`` maps axis index (0, 1, 2) to its exponent.
        """
        components = [op.entries for op in self.build_spin_operators(spin)]
        factors = [axis for axis, power in sorted(powers.items()) for _ in range(power)]
        orderings = set(itertools.permutations(factors))
        total = np.zeros((spin.dim, spin.dim), dtype=complex)
        for ordering in orderings:
            product = np.eye(spin.dim, dtype=complex)
            for axis in ordering:
                product = product @ components[axis]
            total += product
        return total / len(orderings)

    def _polynomial(self, spin: SpinValue, monomials: Sequence[Tuple[float, Dict[int, int]]]):
        entries = np.zeros((spin.dim, spin.dim), dtype=complex)
        for coefficient, powers in monomials:
            entries += coefficient * self.symmetrized_monomial(spin, powers)
        return entries

    def build_invariant(self, spin: SpinValue, label: InvariantLabel) -> OperatorMatrix:
        """Operator image of the cubic or icosahedral polynomial invariants."""
        label = InvariantLabel(label)
        pure6 = [(1.0, {0: 6}), (1.0, {1: 6}), (1.0, {2: 6}), (30.0, {0: 2, 1: 2, 2: 2})]
        if label == InvariantLabel.CUBIC4:
            monomials = [(1.0, {0: 4}), (1.0, {1: 4}), (1.0, {2: 4})]
        elif label == InvariantLabel.CUBIC6:
            monomials = pure6
        elif label == InvariantLabel.ICOSA6:
            c = -3.0 * SQRT5
            monomials = pure6 + [
                (c, {0: 4, 1: 2}),
                (-c, {0: 2, 1: 4}),
                (c, {1: 4, 2: 2}),
                (-c, {1: 2, 2: 4}),
                (c, {2: 4, 0: 2}),
                (-c, {2: 2, 0: 4}),
            ]
        else:
            return self.build_stevens(spin, label)
        return self._wrap(self._polynomial(spin, monomials))

    def build_cubic_cef(self, spin: SpinValue, phi: float) -> OperatorMatrix:
        """H = -cos(phi) O4c/(J(J+1))^2 - (5/14) sin(phi) O6c/(J(J+1))^3.

        O4c = O40 + 5 O44 and O6c = O60 - 21 O64 are the cubic combinations.
        """
        if not -np.pi - 1e-12 <= phi <= np.pi + 1e-12:
            raise InvalidArgumentError(
                payload={
                    "error": "Invalid Angle",
                    "message": f"phi={phi} must lie in [-pi, pi]",
                }
            )
        if spin.two_j == 0:
            return self._wrap(np.zeros((1, 1), dtype=complex))
        x = spin.j * (spin.j + 1.0)
        o4 = (
            self.build_stevens(spin, InvariantLabel.O40).entries
            + 5 * self.build_stevens(spin, InvariantLabel.O44).entries
        )
        o6 = (
            self.build_stevens(spin, InvariantLabel.O60).entries
            - 21 * self.build_stevens(spin, InvariantLabel.O64).entries
        )
        entries = -np.cos(phi) * o4 / x**2 - (5.0 / 14.0) * np.sin(phi) * o6 / x**3
        return self._wrap(entries)

    def build_zeeman(self, spin: SpinValue, h: Sequence[float]) -> OperatorMatrix:
        """Return -(h . J), with h = g mu_B H in energy units."""
        hx, hy, hz = (float(v) for v in h)
        jx, jy, jz = self.build_spin_operators(spin)
        return self._wrap(-(hx * jx.entries + hy * jy.entries + hz * jz.entries))

    def build_cef(self, model: CefModel) -> OperatorMatrix:
        spin = model.spin
        entries = np.zeros((spin.dim, spin.dim), dtype=complex)
        x = spin.j * (spin.j + 1.0)
        for label, coefficient in model.terms:
            if label == InvariantLabel.ZEEMAN:
                entries += coefficient * self.build_zeeman(spin, model.field).entries
                continue
            term = self.build_invariant(spin, label).entries
            if model.normalization == Normalization.STEVENS_NORMALIZED and x > 0:
                term = term / x ** (INVARIANT_RANK[label] / 2)
            entries += coefficient * term
        return self._wrap(entries)

    def rotation(self, spin: SpinValue, axis: Sequence[float], angle: float) -> np.ndarray:
        """exp(-i angle n.J) for a unit axis n."""
        n = np.asarray(axis, dtype=float)
        n = n / np.linalg.norm(n)
        jx, jy, jz = self.build_spin_operators(spin)
        generator = n[0] * jx.entries + n[1] * jy.entries + n[2] * jz.entries
        return expm(-1j * angle * generator)

    def coherent_state(self, spin: SpinValue, direction: Sequence[float]) -> np.ndarray:
        """Spin coherent state |n>, the maximal-weight eigenstate of n.J."""
        n = np.asarray(direction, dtype=float)
        n = n / np.linalg.norm(n)
        theta = np.arccos(np.clip(n[2], -1.0, 1.0))
        phi = np.arctan2(n[1], n[0])
        top = np.zeros(spin.dim, dtype=complex)
        top[0] = 1.0
        # rotate |J,J> about (-sin phi, cos phi, 0) by theta
        rotation = self.rotation(spin, (-np.sin(phi), np.cos(phi), 0.0), theta)
        return rotation @ top

    def coherent_expectation(
        self, hamiltonian: OperatorMatrix, spin: SpinValue, direction: Sequence[float]
    ) -> float:
        state = self.coherent_state(spin, direction)
        return float(np.real(np.vdot(state, hamiltonian.entries @ state)))

    def coherent_energy_scan(
        self, hamiltonian: OperatorMatrix, spin: SpinValue, directions: np.ndarray
    ) -> np.ndarray:
        return np.array(
            [self.coherent_expectation(hamiltonian, spin, d) for d in directions]
        )

