from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import eigh, eigvalsh

from application.config.config import Config
from application.exception.application_error import (
    ApplicationError,
    DomainError,
    InvalidArgumentError,
    NumericalError,
    RegionError,
)
from application.model.spin import OperatorMatrix, SpinValue
from application.model.sweep import SplittingResult, SweepPoint, SweepResult
from application.model.task import Task, TaskStatus
from application.service.geometry_service import GeometryService
from application.service.semiclassics_service import U_WINDOW, SemiclassicsService
from application.service.spin_algebra_service import SpinAlgebraService
from application.service.task_manager import TaskManager
from application.utils.logger import log

# Sub-levels inside a multiplet are merged below this fraction of its spread.
SUBLEVEL_FRACTION = 0.05


class ExactSpectrumService:
    def __init__(self):
        self.gap_ratio_threshold = Config.GAP_RATIO_THRESHOLD
        self.floor = Config.DEGENERACY_FLOOR
        self.spin_algebra_service = SpinAlgebraService()
        self.geometry_service = GeometryService()
        self.semiclassics_service = SemiclassicsService()

    def diagonalize(self, operator: OperatorMatrix, vectors: bool = False):
        """Ascending eigenvalues, and eigenvectors as columns when requested.

        Raises:
            NumericalError: the eigensolver failed or the residual check did not pass.
        """
        entries = operator.entries
        try:
            if not vectors:
                return eigvalsh(entries)
            values, states = eigh(entries)
        except Exception as e:
            log.error(f"Diagonalization of a {operator.dim}x{operator.dim} matrix failed: {e}", exc_info=True)
            raise NumericalError(
                payload={"error": "Eigensolver Failed", "message": str(e)}
            ) from e
        residual = np.linalg.norm(entries @ states - states * values)
        scale = np.linalg.norm(entries)
        if residual > 1e-9 * max(scale, 1.0):
            raise NumericalError(
                payload={
                    "error": "Eigen Residual",
                    "message": f"residual {residual:.3e} exceeds 1e-9 * |H| = {1e-9 * scale:.3e}",
                }
            )
        return values, states

    @staticmethod
    def _gap_run(
        gaps: np.ndarray, resolved: np.ndarray, start: int, threshold: float
    ) -> Tuple[List[float], int]:
        """Resolved gaps from start on, up to the first that jumps past threshold times their max.

        Returns the run and the index of the jump (gaps.size when there is none).
        """
        run: List[float] = []
        for k in range(start, gaps.size):
            if not resolved[k]:
                continue
            if run and gaps[k] > threshold * max(run):
                return run, k
            run.append(float(gaps[k]))
        return run, gaps.size

    def multiplet_bounds(
        self, eigenvalues: Sequence[float], threshold: Optional[float] = None
    ) -> List[Tuple[int, int]]:
        """Index ranges [start, stop) of the multiplets, from the bottom up.

        Gaps below the rounding floor never separate levels. A resolved gap opens a new
        multiplet when it exceeds ``threshold`` times the largest resolved gap already
        inside the current multiplet. The first resolved gap of a multiplet is measured
        against the run of gaps that follows it instead.
        """
        threshold = self.gap_ratio_threshold if threshold is None else threshold
        values = np.asarray(eigenvalues, dtype=float)
        if values.size == 0:
            return []
        floor = self.floor * max(1.0, float(values[-1] - values[0]))
        gaps = np.diff(values)
        resolved = gaps > floor
        starts = [0]
        intra: List[float] = []
        k = 0
        while k < gaps.size:
            if not resolved[k]:
                k += 1
                continue
            gap = float(gaps[k])
            if intra:
                if gap > threshold * max(intra):
                    starts.append(k + 1)
                    intra = []
                else:
                    intra.append(gap)
                k += 1
                continue

            run, stop = self._gap_run(gaps, resolved, k + 1, threshold)
            if not run:
                intra = [gap]
                k += 1
            elif run[0] > threshold * gap:
                # next gap is on a larger scale; it is internal only when the gaps after it match it
                following = int(np.flatnonzero(resolved[k + 1 :])[0]) + k + 1
                after, after_stop = self._gap_run(gaps, resolved, following + 1, threshold)
                if after and after[0] <= threshold * run[0] and run[0] <= threshold * max(after):
                    intra = [gap, run[0]] + after
                    k = after_stop
                else:
                    intra = [gap]
                    k = following
            elif gap > threshold * max(run):
                starts.append(k + 1)
                k += 1
            else:
                intra = [gap] + run
                k = stop
        stops = starts[1:] + [len(values)]
        return list(zip(starts, stops))

    def detect_multiplets(
        self, eigenvalues: Sequence[float], threshold: Optional[float] = None
    ) -> List[int]:
        return [stop - start for start, stop in self.multiplet_bounds(eigenvalues, threshold)]

    @staticmethod
    def sublevels(values: Sequence[float]) -> List[Tuple[float, int]]:
        """(mean, count) of the degenerate groups inside one multiplet."""
        values = np.asarray(values, dtype=float)
        tol = SUBLEVEL_FRACTION * float(values[-1] - values[0])
        groups = [[values[0]]]
        for value in values[1:]:
            if value - groups[-1][-1] <= tol:
                groups[-1].append(value)
            else:
                groups.append([value])
        return [(float(np.mean(g)), len(g)) for g in groups]

    def sweep_point(self, spin: SpinValue, phi: float, threshold: Optional[float] = None) -> SweepPoint:
        threshold = self.gap_ratio_threshold if threshold is None else threshold
        hamiltonian = self.spin_algebra_service.build_cubic_cef(spin, phi)
        values = self.diagonalize(hamiltonian)
        bounds = self.multiplet_bounds(values, threshold)
        start, stop = bounds[0]
        ground = values[start:stop]
        rescale = float(np.sqrt(np.mean((ground - ground.mean()) ** 2)))
        minus_ln = -np.log(rescale) / spin.j if rescale > 0 and spin.j > 0 else None
        gap_ratio = None
        if len(bounds) > 1:
            gap_ratio = float((ground[-1] - ground[0]) / (values[stop] - values[stop - 1]))
        region = self.geometry_service.classify_phi(phi)
        return SweepPoint(
            phi=phi,
            eigenvalues=[float(v) for v in values],
            multiplet_sizes=[b - a for a, b in bounds],
            ground_size=stop - start,
            rescale=rescale,
            minus_ln_r_over_j=None if minus_ln is None else float(minus_ln),
            gap_ratio=gap_ratio,
            n_minima=region.n_minima,
            boundary_flag=region.boundary_flag,
        )

    def sweep_phi(
        self,
        spin: SpinValue,
        phi_grid: Sequence[float],
        threshold: Optional[float] = None,
        workers: int = Config.SWEEP_WORKERS,
    ) -> SweepResult:
        """Diagonalize the cubic CEF Hamiltonian at every phi of the grid.

        Each point reports its multiplet sizes, the RMS spread R of the centred
        ground multiplet and -ln(R)/J. Failed points are kept with their error.
        """
        threshold = self.gap_ratio_threshold if threshold is None else threshold
        grid = [float(phi) for phi in phi_grid]
        outside = [phi for phi in grid if not -np.pi - 1e-12 <= phi <= np.pi + 1e-12]
        if outside:
            raise InvalidArgumentError(
                payload={
                    "error": "Invalid Grid",
                    "message": f"phi values {outside[:3]} fall outside [-pi, pi]",
                }
            )
        tasks = [
            Task(f"phi-{k}", f"2J={spin.two_j} phi={phi:.6f}", "exact cubic spectrum", self.sweep_point, spin, phi, threshold)
            for k, phi in enumerate(grid)
        ]
        TaskManager(workers=workers).run_all(f"sweep-2J{spin.two_j}", tasks)
        points = [
            task.result
            if task.status == TaskStatus.COMPLETED
            else SweepPoint(phi=phi, status="failed", error_message=task.error_message)
            for task, phi in zip(tasks, grid)
        ]
        return SweepResult(two_j=spin.two_j, gap_ratio_threshold=threshold, points=points)

    def ground_multiplet(
        self, values: np.ndarray, size: int, threshold: Optional[float] = None, context: str = ""
    ) -> Tuple[int, int]:
        """Bounds of the ground multiplet when its size is known from the classical minima.

        Clustering decides when it agrees; otherwise the lowest ``size`` levels are taken
        as long as the gap above them exceeds their spread.

        Raises:
            RegionError: the lowest ``size`` levels do not stand apart from the rest.
        """
        start, stop = self.multiplet_bounds(values, threshold)[0]
        if stop - start == size:
            return start, stop
        if values.size > size and values[size] - values[size - 1] > values[size - 1] - values[0]:
            log.debug(f"ground {size}-multiplet taken from the classical minima, clustering gave {stop - start}")
            return 0, size
        raise RegionError(
            payload={
                "error": f"Not A {size}-fold Ground State",
                "message": f"{context}ground multiplet has {stop - start} states",
            }
        )

    def splitting_exponent(
        self, spin: SpinValue, u: float, threshold: Optional[float] = None
    ) -> SplittingResult:
        """-ln((E1 - E0)/4)/J from the two lowest sub-levels of the ground 6-multiplet.

        Raises:
            DomainError: u outside (-2/3, 1/15).
            RegionError: the ground multiplet is not 6-fold or not resolved.
        """
        if not U_WINDOW[0] < u < U_WINDOW[1]:
            raise DomainError(
                payload={
                    "error": "Outside Geodesic Window",
                    "message": f"u={u} must lie in ({U_WINDOW[0]:.6f}, {U_WINDOW[1]:.6f})",
                }
            )
        if spin.two_j == 0:
            raise InvalidArgumentError(
                payload={"error": "Invalid Spin", "message": "J must be positive"}
            )
        phi = float(np.arctan(u))
        try:
            values = self.diagonalize(self.spin_algebra_service.build_cubic_cef(spin, phi))
            start, stop = self.ground_multiplet(values, 6, threshold, context=f"2J={spin.two_j}, u={u}: ")
            levels = self.sublevels(values[start:stop])
            if len(levels) < 2:
                raise RegionError(
                    payload={
                        "error": "Unresolved Splitting",
                        "message": f"2J={spin.two_j}, u={u}: ground multiplet is degenerate",
                    }
                )
            e0, e1 = levels[0][0], levels[1][0]
            exponent = float(-np.log((e1 - e0) / 4) / spin.j)
            log.debug(f"2J={spin.two_j} u={u}: E1-E0={e1 - e0:.6e}, exponent {exponent:.6f}")
            return SplittingResult(
                u=u, phi=phi, two_j=spin.two_j, e0=e0, e1=e1, exponent=exponent, ground_size=6
            )
        except ApplicationError:
            raise
        except Exception as e:
            log.error(f"Error extracting splitting at u={u}: {e}", exc_info=True)
            raise NumericalError(
                payload={"error": "Splitting Failed", "message": str(e)}
            ) from e

    def implied_prefactor(self, spin: SpinValue, u: float) -> SplittingResult:
        """Splitting together with f(u) = (E1 - E0) / (4 exp(-J c(u)))."""
        result = self.splitting_exponent(spin, u)
        c = self.semiclassics_service.action_c(u).c
        prefactor = float((result.e1 - result.e0) / 4 * np.exp(spin.j * c))
        return result.model_copy(update={"c": c, "implied_prefactor": prefactor})
