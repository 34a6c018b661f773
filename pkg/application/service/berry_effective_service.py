from typing import List, Optional, Sequence

import numpy as np
from scipy.linalg import eigvalsh
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import minimum_spanning_tree

from application.config.config import Config
from application.exception.application_error import (
    ApplicationError,
    DomainError,
    GaugeError,
    InvalidArgumentError,
    NumericalError,
)
from application.model.configuration import Configuration, EdgeKind
from application.model.effective import (
    EffectiveHamiltonian,
    GapPoint,
    GaugePhases,
    GroundResponse,
    ResponseKind,
    Spectrum,
)
from application.model.group import GroupLabel
from application.model.spin import OperatorMatrix, SpinValue
from application.utils.logger import log

# Largest split-trajectory solid angle for which two paths stay separated.
DOUBLE_PATH_CAP = {GroupLabel.O: np.pi / 3, GroupLabel.Y: 2 * np.pi / 15}


def wrap_phase(angle):
    """Map to (-pi, pi]."""
    return np.pi - np.mod(np.pi - np.asarray(angle, dtype=float), 2 * np.pi)


def count_sign_changes(values: Sequence[float], floor: float = 1e-12) -> int:
    signs = [np.sign(v) for v in values if abs(v) > floor]
    return int(sum(1 for a, b in zip(signs, signs[1:]) if a != b))


class BerryEffectiveService:
    def __init__(self):
        self.gauge_tol = Config.GAUGE_TOL
        self.degeneracy_tol = Config.DEGENERACY_TOL

    @staticmethod
    def _variables(config: Configuration):
        return [(e, q) for e, edge in enumerate(config.edges) for q in range(edge.path_multiplicity)]

    @staticmethod
    def _edge_key(edge) -> tuple:
        return (min(edge.i, edge.j), max(edge.i, edge.j))

    @staticmethod
    def _tree_edges(config: Configuration) -> set:
        n = config.n_sites
        weights = np.zeros((n, n))
        for edge in config.edges:
            weights[min(edge.i, edge.j), max(edge.i, edge.j)] = 1.0
        tree = minimum_spanning_tree(csr_matrix(weights)).tocoo()
        return {(int(min(a, b)), int(max(a, b))) for a, b in zip(tree.row, tree.col)}

    def flux_rows(self, config: Configuration) -> np.ndarray:
        """Oriented incidence of every plaquette on the (edge, path) variables."""
        variables = self._variables(config)
        index = {v: k for k, v in enumerate(variables)}
        lookup = {}
        for e, edge in enumerate(config.edges):
            lookup[(edge.i, edge.j)] = (e, 1.0)
            lookup[(edge.j, edge.i)] = (e, -1.0)
        rows = np.zeros((len(config.plaquettes), len(variables)))
        for r, plaquette in enumerate(config.plaquettes):
            cycle = plaquette.cycle
            for m, (a, path) in enumerate(zip(cycle, plaquette.paths)):
                b = cycle[(m + 1) % len(cycle)]
                try:
                    e, sign = lookup[(a, b)]
                except KeyError as e:
                    raise GaugeError(
                        payload={
                            "error": "Missing Edge",
                            "message": f"{config.label}: plaquette step {a}->{b} has no edge",
                        }
                    ) from e
                rows[r, index[(e, path)]] += sign
        return rows

    def flux_residual(self, config: Configuration, spin: SpinValue, phases: GaugePhases) -> float:
        """Largest |sum of oriented phases - J Omega| mod 2pi over the plaquettes."""
        if not config.plaquettes:
            return 0.0
        vector = np.array([phases.phase(e, q) for e, q in self._variables(config)])
        targets = np.array([spin.j * p.solid_angle for p in config.plaquettes])
        return float(np.max(np.abs(wrap_phase(self.flux_rows(config) @ vector - targets))))

    def solve_gauge(self, config: Configuration, spin: SpinValue) -> GaugePhases:
        """Tunnelling phases reproducing the flux J*Omega through every plaquette.

        Tree edges (first path) carry phase zero; the remaining phases solve an
        independent subset of the plaquette equations.

        Raises:
            GaugeError: the plaquettes do not fix the phases or a constraint is violated.
        """
        variables = self._variables(config)
        empty = [[0.0] * edge.path_multiplicity for edge in config.edges]
        if not config.plaquettes or spin.two_j == 0:
            return GaugePhases(phases=empty)

        tree = self._tree_edges(config)
        free = [
            k
            for k, (e, q) in enumerate(variables)
            if q > 0 or self._edge_key(config.edges[e]) not in tree
        ]
        rows = self.flux_rows(config)
        targets = wrap_phase([spin.j * p.solid_angle for p in config.plaquettes])
        reduced = rows[:, free]

        chosen: List[int] = []
        for r in range(len(rows)):
            if len(chosen) == len(free):
                break
            if np.linalg.matrix_rank(reduced[chosen + [r]]) > len(chosen):
                chosen.append(r)
        if len(chosen) != len(free):
            raise GaugeError(
                payload={
                    "error": "Underdetermined Gauge",
                    "message": f"{config.label}: {len(chosen)} independent plaquettes for {len(free)} free phases",
                }
            )

        vector = np.zeros(len(variables))
        if free:
            vector[free] = np.linalg.solve(reduced[chosen], targets[chosen])
        phases = [list(row) for row in empty]
        for k, (e, q) in enumerate(variables):
            phases[e][q] = float(vector[k])
        gauge = GaugePhases(phases=phases)
        residual = self.flux_residual(config, spin, gauge)
        if residual > self.gauge_tol:
            raise GaugeError(
                payload={
                    "error": "Inconsistent Flux",
                    "message": f"{config.label}, 2J={spin.two_j}: plaquette residual {residual:.3e}",
                }
            )
        gauge.max_residual = residual
        log.debug(f"gauge for {config.label} 2J={spin.two_j}: residual {residual:.2e}")
        return gauge

    def build_effective(
        self,
        config: Configuration,
        spin: SpinValue,
        w: float = 1.0,
        h: Sequence[float] = (0.0, 0.0, 0.0),
        x: Optional[float] = None,
    ) -> EffectiveHamiltonian:
        """H_ij = amplitude * exp(i phi_ij) summed over paths, diagonal -J h.n_k.

        Nearest-neighbour links carry w, the face diagonals of the multipath
        cube carry x*w.
        """
        if (x is None) == config.multipath:
            raise InvalidArgumentError(
                payload={
                    "error": "Invalid Multipath Factor",
                    "message": "x is required for multipath configurations and only for them",
                }
            )
        field = tuple(float(v) for v in h)
        if len(field) != 3:
            raise InvalidArgumentError(
                payload={"error": "Invalid Field", "message": "field must have three components"}
            )
        gauge = self.solve_gauge(config, spin)
        entries = np.zeros((config.n_sites, config.n_sites), dtype=complex)
        for e, edge in enumerate(config.edges):
            amplitude = w * x if edge.kind == EdgeKind.NNN else w
            hop = amplitude * sum(np.exp(1j * phase) for phase in gauge.phases[e])
            entries[edge.i, edge.j] += hop
            entries[edge.j, edge.i] += np.conj(hop)
        entries += np.diag(-spin.j * (config.vertex_array @ np.array(field)))
        return EffectiveHamiltonian(
            matrix=OperatorMatrix(entries=entries, hermitian_flag=True),
            w=w,
            config=config,
            spin=spin,
            field=field,
            x=x,
        )

    def spectrum(self, hamiltonian: EffectiveHamiltonian, tol: Optional[float] = None) -> Spectrum:
        tol = self.degeneracy_tol if tol is None else tol
        try:
            values = eigvalsh(hamiltonian.entries)
        except Exception as e:
            log.error(f"Eigensolver failed for {hamiltonian.config.label}: {e}", exc_info=True)
            raise NumericalError(
                payload={"error": "Eigensolver Failed", "message": str(e)}
            ) from e
        return Spectrum.from_values(values, tol)

    def effective_spectrum(
        self,
        config: Configuration,
        spin: SpinValue,
        w: float = 1.0,
        h: Sequence[float] = (0.0, 0.0, 0.0),
        x: Optional[float] = None,
        seed: Optional[int] = None,
    ) -> Spectrum:
        """Build and diagonalize; a seed applies a random diagonal gauge first."""
        hamiltonian = self.build_effective(config, spin, w=w, h=h, x=x)
        if seed is not None:
            hamiltonian = self.random_gauge(hamiltonian, seed)
        return self.spectrum(hamiltonian)

    @staticmethod
    def random_gauge(hamiltonian: EffectiveHamiltonian, seed: int) -> EffectiveHamiltonian:
        """U H U^dagger for a random diagonal unitary U."""
        rng = np.random.default_rng(seed)
        u = np.exp(1j * rng.uniform(-np.pi, np.pi, size=hamiltonian.config.n_sites))
        entries = u[:, None] * hamiltonian.entries * np.conj(u)[None, :]
        return hamiltonian.model_copy(
            update={"matrix": OperatorMatrix(entries=entries, hermitian_flag=True)}
        )

    @staticmethod
    def trace_invariants(hamiltonian: EffectiveHamiltonian, n_max: int) -> List[float]:
        """Tr H^n for n = 0..n_max."""
        entries = hamiltonian.entries
        power = np.eye(entries.shape[0], dtype=complex)
        traces = []
        for _ in range(n_max + 1):
            traces.append(float(np.trace(power).real))
            power = power @ entries
        return traces

    @staticmethod
    def loop_sum(config: Configuration, spin: SpinValue, sides: int) -> float:
        """2 * sides * sum over plaquettes with the given side count of cos(J Omega)."""
        return float(
            sum(
                2 * sides * np.cos(spin.j * p.solid_angle)
                for p in config.plaquettes
                if len(p.cycle) == sides
            )
        )

    @staticmethod
    def equivalence_class(spin: SpinValue, config: Configuration) -> SpinValue:
        """Representative of J in [0, s/4] under J -> -J and J -> J + s/2."""
        s = config.s_parameter
        if s is None:
            raise InvalidArgumentError(
                payload={
                    "error": "Undefined Period",
                    "message": f"{config.label} has no plaquette period",
                }
            )
        r = spin.two_j % s
        return SpinValue(two_j=min(r, s - r))

    @staticmethod
    def double_path_amplitude(
        w: float,
        spin: SpinValue,
        omega: float,
        group: GroupLabel = GroupLabel.O,
        phase: float = 0.0,
    ) -> complex:
        """2|w| exp(i(phase - J Omega/2)) cos(J Omega/2) for two paths enclosing omega."""
        group = GroupLabel(group)
        cap = DOUBLE_PATH_CAP.get(group)
        if cap is None:
            raise InvalidArgumentError(
                payload={
                    "error": "Unsupported Group",
                    "message": f"double paths are defined for O and Y, not {group.value}",
                }
            )
        if not 0 <= omega < cap:
            raise DomainError(
                payload={
                    "error": "Solid Angle Out Of Range",
                    "message": f"omega={omega} must lie in [0, {cap:.6f}) for {group.value}",
                }
            )
        half = spin.j * omega / 2
        return complex(2 * abs(w) * np.exp(1j * (phase - half)) * np.cos(half))

    def multipath_gap_sweep(
        self,
        config: Configuration,
        spin: SpinValue,
        omegas: Sequence[float],
        w: float = 1.0,
    ) -> List[GapPoint]:
        """Ground gap of C(O,4) when each link is a pair of paths enclosing omega.

        The signed amplitude 2|w|cos(J Omega/2) replaces w; gap is the distance
        from the ground level to the next one (zero when the amplitude vanishes).
        """
        points = []
        for omega in omegas:
            amplitude = self.double_path_amplitude(w, spin, omega, config.group)
            signed = float(2 * abs(w) * np.cos(spin.j * omega / 2))
            spectrum = self.spectrum(self.build_effective(config, spin, w=signed))
            gap = spectrum.values[1] - spectrum.values[0] if len(spectrum.levels) > 1 else 0.0
            log.debug(f"omega={omega:.6f}: |w_e|={abs(amplitude):.6e}, gap={gap:.6e}")
            points.append(
                GapPoint(omega=float(omega), amplitude=signed, gap=float(gap), levels=spectrum.levels)
            )
        return points

    @staticmethod
    def co2_ground_response(spin: SpinValue, alpha: float, w: float = 1.0) -> GroundResponse:
        """Ground-state moment or Van Vleck susceptibility of C(O,2), w > 0."""
        if w <= 0:
            raise InvalidArgumentError(
                payload={"error": "Invalid Amplitude", "message": "w must be positive"}
            )
        x = spin.j * (alpha + 2 * np.pi) / 4
        c, s = np.cos(x), abs(np.sin(x))
        if not spin.is_half_integer:
            if c > -0.5:
                moment = 2 * s / np.sqrt(2 * (8 - 7 * c**2))
                return GroundResponse(kind=ResponseKind.MOMENT, value=float(moment), x=float(x))
            return GroundResponse(
                kind=ResponseKind.SUSCEPTIBILITY, value=float(-1 / (3 * w * c)), x=float(x)
            )
        if c < np.cos(3 * np.pi / 8):
            return GroundResponse(kind=ResponseKind.MOMENT, value=1 / 3, x=float(x))
        root = np.sqrt(2 + c**2)
        factor = np.sqrt(
            (c**2 + 5 + 3 * c * root + 2 * np.sqrt(2) * s * (3 * c + root)) / (2 * (2 + c**2))
        )
        return GroundResponse(kind=ResponseKind.MOMENT, value=float(factor / 3), x=float(x))

    @staticmethod
    def level_spacing_ratios(spectrum: Spectrum) -> List[float]:
        """min/max ratios of consecutive gaps between distinct levels."""
        gaps = np.diff(spectrum.values)
        return [
            float(min(a, b) / max(a, b)) for a, b in zip(gaps, gaps[1:]) if max(a, b) > 0
        ]
