from typing import List, Optional

import numpy as np

from application.config.config import Config
from application.exception.application_error import (
    ApplicationError,
    InvalidArgumentError,
    NumericalError,
)
from application.model.compute_input import (
    ConfigInput,
    DipolarInput,
    EffectiveSpectrumInput,
    EffectiveSweepInput,
    ExactSpectrumInput,
    ExactSweepInput,
    GroupDecomposeInput,
    OscillationInput,
    TauInput,
    ThermoInput,
    WkbInput,
)
from application.model.configuration import Configuration
from application.model.manifest import Report
from application.model.spin import SpinValue
from application.model.task import Task, TaskStatus
from application.service.berry_effective_service import (
    BerryEffectiveService,
    count_sign_changes,
)
from application.service.closed_form_service import ClosedFormService
from application.service.exact_spectrum_service import ExactSpectrumService
from application.service.geometry_service import GeometryService
from application.service.group_rep_service import GroupRepService
from application.service.observables_service import ObservablesService
from application.service.semiclassics_service import SemiclassicsService
from application.service.task_manager import TaskManager
from application.utils.general import linear_grid
from application.utils.logger import log


def _spin(two_j) -> SpinValue:
    if int(two_j) != two_j or two_j < 0:
        raise InvalidArgumentError(
            payload={"error": "Invalid Spin", "message": f"2J={two_j} must be a non-negative integer"}
        )
    return SpinValue(two_j=int(two_j))


class RunService:
    """One method per command; every method returns a Report."""

    def __init__(self, workers: int = Config.SWEEP_WORKERS):
        self.workers = workers
        self.geometry_service = GeometryService()
        self.berry_effective_service = BerryEffectiveService()
        self.closed_form_service = ClosedFormService()
        self.group_rep_service = GroupRepService()
        self.exact_spectrum_service = ExactSpectrumService()
        self.semiclassics_service = SemiclassicsService()
        self.observables_service = ObservablesService()

    def _config(self, data: ConfigInput, alpha: Optional[float] = None) -> Configuration:
        return self.geometry_service.from_key(data.config, alpha if alpha is not None else data.alpha)

    def _multipath_x(self, config: Configuration, spin: SpinValue, x, omega) -> Optional[float]:
        if not config.multipath:
            if x is not None or omega is not None:
                raise InvalidArgumentError(
                    payload={
                        "error": "Invalid Multipath Factor",
                        "message": f"{config.label} takes neither x nor omega",
                    }
                )
            return None
        if x is not None:
            return float(x)
        if omega is None:
            raise InvalidArgumentError(
                payload={
                    "error": "Missing Multipath Factor",
                    "message": f"{config.label} needs x or omega",
                }
            )
        self.berry_effective_service.double_path_amplitude(1.0, spin, omega, config.group)
        return float(2 * np.cos(spin.j * omega / 2))

    def _run(self, name: str, tasks: List[Task]) -> List[Task]:
        return TaskManager(workers=self.workers).run_all(name, tasks)

    def geometry_dump(self, data: ConfigInput) -> Report:
        config = self._config(data)
        meta = config.to_dict()
        vertices = meta.pop("vertices")
        rows = [
            {"site": k, "x": v[0], "y": v[1], "z": v[2]} for k, v in enumerate(vertices)
        ]
        return Report(
            command="geometry dump", parameters=data.model_dump(), rows=rows, meta=meta, rows_key="vertices"
        )

    def _spectrum_record(self, config: Configuration, spin: SpinValue, data, x):
        spectrum = self.berry_effective_service.effective_spectrum(
            config, spin, w=data.w, h=data.field, x=x, seed=data.seed
        )
        verified, note = self.closed_form_service.verify_against_closed_form(
            spectrum, config, spin, w=data.w, h=data.field, x=x
        )
        return spectrum, verified, note

    def effective_spectrum(self, data: EffectiveSpectrumInput) -> Report:
        spin = _spin(data.two_j)
        config = self._config(data)
        x = self._multipath_x(config, spin, data.x, data.omega)
        spectrum, verified, note = self._spectrum_record(config, spin, data, x)
        meta = {
            "config": config.label,
            "two_j": spin.two_j,
            "w": data.w,
            "x": x,
            "field": list(data.field),
            "verified": verified,
        }
        if note:
            meta["note"] = note
        return Report(
            command="effective spectrum",
            parameters=data.model_dump(),
            rows=spectrum.to_dict(),
            meta=meta,
            rows_key="levels",
        )

    def _sweep_point(self, data: EffectiveSweepInput, value: float) -> List[dict]:
        if data.parameter == "two_j":
            spin, alpha = _spin(int(round(value))), data.alpha
        else:
            spin, alpha = _spin(data.two_j), (value if data.parameter == "alpha" else data.alpha)
        config = self._config(data, alpha)
        x = self._multipath_x(config, spin, data.x, data.omega)
        spectrum, verified, note = self._spectrum_record(config, spin, data, x)
        return [
            {
                "config": config.label,
                "two_j": spin.two_j,
                "alpha": alpha,
                "value": level.value,
                "multiplicity": level.multiplicity,
                "verified": verified,
            }
            for level in spectrum.levels
        ]

    def effective_sweep(self, data: EffectiveSweepInput) -> Report:
        """Spectra along 2J or alpha; along omega the C(O,4) double-path gap."""
        grid = linear_grid(data.start, data.stop, data.steps)
        if data.parameter == "omega":
            spin = _spin(data.two_j)
            config = self._config(data)
            points = self.berry_effective_service.multipath_gap_sweep(config, spin, grid, w=data.w)
            rows = [
                {"config": config.label, "two_j": spin.two_j, "omega": p.omega, "amplitude": p.amplitude, "gap": p.gap}
                for p in points
            ]
            meta = {"zero_crossings": count_sign_changes([p.amplitude for p in points])}
            return Report(
                command="effective sweep", parameters=data.model_dump(), rows=rows, meta=meta, rows_key="points"
            )
        if data.parameter == "two_j":
            grid = sorted({int(round(v)) for v in grid})
        tasks = [
            Task(f"point-{k}", f"{data.parameter}={v}", "effective spectrum", self._sweep_point, data, v)
            for k, v in enumerate(grid)
        ]
        rows = []
        failures = []
        for task, value in zip(self._run("effective-sweep", tasks), grid):
            if task.status == TaskStatus.COMPLETED:
                rows.extend(task.result)
            else:
                failures.append({data.parameter: value, "error": task.error_message})
        return Report(
            command="effective sweep",
            parameters=data.model_dump(),
            rows=rows,
            meta={"failures": failures},
            rows_key="points",
        )

    def group_decompose(self, data: GroupDecomposeInput) -> Report:
        spin = _spin(data.two_j)
        config = self._config(data)
        decomposition = self.group_rep_service.decompose(config, spin)
        table = self.group_rep_service.builtin_table(config.group)
        rows = [
            {"irrep": label, "multiplicity": m, "dimension": table.irrep(label).dimension}
            for label, m in decomposition.multiplicities.items()
        ]
        return Report(
            command="group decompose",
            parameters=data.model_dump(),
            rows=rows,
            meta=decomposition.to_dict(),
            rows_key="multiplicities",
        )

    def exact_spectrum(self, data: ExactSpectrumInput) -> Report:
        spin = _spin(data.two_j)
        phi = data.phi if data.phi is not None else float(np.arctan(data.u))
        try:
            point = self.exact_spectrum_service.sweep_point(spin, phi, data.threshold)
        except NumericalError as e:
            raise NumericalError(
                payload={"error": "Exact Spectrum Failed", "message": f"2J={spin.two_j}, phi={phi}: {e.message}"}
            ) from e
        meta = point.model_dump(exclude={"eigenvalues", "status", "error_message"})
        meta["two_j"] = spin.two_j
        if data.splitting:
            meta["splitting"] = self.exact_spectrum_service.implied_prefactor(spin, data.u).model_dump()
        rows = [{"index": k, "value": v} for k, v in enumerate(point.eigenvalues)]
        return Report(
            command="exact spectrum", parameters=data.model_dump(), rows=rows, meta=meta, rows_key="eigenvalues"
        )

    def exact_sweep(self, data: ExactSweepInput) -> Report:
        spin = _spin(data.two_j)
        grid = linear_grid(data.start, data.stop, data.steps)
        result = self.exact_spectrum_service.sweep_phi(spin, grid, data.threshold, workers=self.workers)
        rows = [dict(two_j=spin.two_j, **row) for row in result.rows(data.levels)]
        return Report(
            command="exact sweep",
            parameters=data.model_dump(),
            rows=rows,
            meta={"failed": len(result.failed)},
            rows_key="points",
        )

    def wkb_c_of_u(self, data: WkbInput) -> Report:
        if data.icosahedral:
            result = self.semiclassics_service.action_c_icosahedral()
            rows = [{"configuration": "Y5", "c": result.c, "abs_error": result.abs_error}]
        else:
            grid = [data.u] if data.u is not None else linear_grid(data.start, data.stop, data.steps)
            if data.u is not None:
                results = [self.semiclassics_service.action_c(data.u)]
            else:
                results = self.semiclassics_service.c_curve(grid)
            rows = [{"u": r.u, "c": r.c, "valid": r.valid, "abs_error": r.abs_error} for r in results]
        return Report(command="wkb c-of-u", parameters=data.model_dump(), rows=rows)

    def thermo_chi(self, data: ThermoInput) -> Report:
        spin = _spin(data.two_j)
        config = self._config(data)
        x = self._multipath_x(config, spin, data.x, None)
        temperatures = self.observables_service.temperature_grid(data.tmin, data.tmax, data.tsteps)
        curve = self.observables_service.susceptibility_curve(
            config, spin, temperatures, data.direction, w=data.w, x=x, workers=self.workers
        )
        meta = {"config": config.label, "two_j": spin.two_j}
        try:
            low_t = self.observables_service.low_t_susceptibility(config, spin, data.direction, w=data.w, x=x)
            meta["low_temperature"] = low_t.model_dump()
        except ApplicationError as e:
            log.warning(f"No low-temperature limit for {config.label}: {e.message}")
        rows = [{"T": t, "chi": chi} for t, chi in zip(curve.temperatures, curve.chi)]
        return Report(command="thermo chi", parameters=data.model_dump(), rows=rows, meta=meta)

    def dynamics_oscillate(self, data: OscillationInput) -> Report:
        spin = _spin(data.two_j)
        config = self._config(data)
        x = self._multipath_x(config, spin, data.x, None)
        times = linear_grid(0.0, data.tmax, data.tsteps)
        series = self.observables_service.magnetization_oscillation(
            config, spin, data.site, times, w=data.w, x=x
        )
        rows = [{"t": t, "M": m} for t, m in zip(series.times, series.values)]
        meta = {"config": config.label, "two_j": spin.two_j, "site": series.site, "dc": series.dc, "max_imag": series.max_imag}
        return Report(command="dynamics oscillate", parameters=data.model_dump(), rows=rows, meta=meta)

    def estimate_tau(self, data: TauInput) -> Report:
        estimate = self.observables_service.relaxation_time(
            data.rho, data.delta, data.omega, data.sound_velocity, data.temperature
        )
        return Report(command="estimate tau", parameters=data.model_dump(), rows=[estimate.model_dump()])

    def estimate_dipolar(self, data: DipolarInput) -> Report:
        kwargs = {} if data.prefactor is None else {"prefactor": data.prefactor}
        estimate = self.observables_service.dipolar_broadening(
            data.g, _spin(data.two_j), data.density, data.concentration, **kwargs
        )
        return Report(command="estimate dipolar", parameters=data.model_dump(), rows=[estimate.model_dump()])
