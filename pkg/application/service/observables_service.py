from typing import List, Optional, Sequence

import numpy as np
from scipy import constants
from scipy.linalg import eigh
from scipy.special import logsumexp

from application.config.config import Config
from application.exception.application_error import (
    ApplicationError,
    InvalidArgumentError,
    NumericalError,
)
from application.model.configuration import Configuration
from application.model.observables import (
    Estimate,
    LowTemperatureResponse,
    MagnetizationSeries,
    ThermoCurve,
)
from application.model.spin import SpinValue
from application.model.task import Task, TaskStatus
from application.service.berry_effective_service import BerryEffectiveService
from application.service.task_manager import TaskManager
from application.utils.general import unit_vector
from application.utils.logger import log

# CGS
HBAR = constants.hbar * 1e7
K_B = constants.k * 1e7
MU_B = constants.physical_constants["Bohr magneton"][0] * 1e3

# rms of the angular factor P2(cos theta) of the secular dipolar coupling over a sphere of orientations
DIPOLAR_PREFACTOR = 1.0 / np.sqrt(5.0)


class ObservablesService:
    def __init__(self):
        self.step_divisor = Config.RICHARDSON_STEP_DIVISOR
        self.degeneracy_tol = Config.DEGENERACY_TOL
        self.berry_effective_service = BerryEffectiveService()

    def _site_projection(self, config: Configuration, direction: Sequence[float]) -> np.ndarray:
        try:
            axis = unit_vector(direction)
        except ApplicationError:
            raise
        except Exception as e:
            raise InvalidArgumentError(
                payload={"error": "Invalid Direction", "message": str(e)}
            ) from e
        return config.vertex_array @ axis

    def _zero_field(self, config: Configuration, spin: SpinValue, w: float, x: Optional[float]):
        return self.berry_effective_service.build_effective(config, spin, w=w, x=x).entries

    @staticmethod
    def free_energy(entries: np.ndarray, temperature: float) -> float:
        energies = np.linalg.eigvalsh(entries)
        return float(-temperature * logsumexp(-energies / temperature))

    def susceptibility(
        self,
        config: Configuration,
        spin: SpinValue,
        temperature: float,
        direction: Sequence[float] = (0.0, 0.0, 1.0),
        w: float = 1.0,
        x: Optional[float] = None,
    ) -> float:
        """-d2F/db2 at b = 0, where each site gains the energy -b (n.h).

        b stands for g J mu_B H, so chi is the coefficient of (g J mu_B)^2. The
        second difference is Richardson-extrapolated from steps delta and delta/2
        with delta = min(|w|, T) / 100.

        Raises:
            InvalidArgumentError: non-positive temperature.
            NumericalError: the difference quotient is not finite.
        """
        if temperature <= 0:
            raise InvalidArgumentError(
                payload={"error": "Invalid Temperature", "message": f"T={temperature} must be positive"}
            )
        base = self._zero_field(config, spin, w, x)
        coupling = np.diag(-self._site_projection(config, direction)).astype(complex)
        scale = min(abs(w), temperature) if w != 0 else temperature
        delta = scale / self.step_divisor
        f0 = self.free_energy(base, temperature)

        def second_difference(step: float) -> float:
            plus = self.free_energy(base + step * coupling, temperature)
            minus = self.free_energy(base - step * coupling, temperature)
            return (plus - 2 * f0 + minus) / step**2

        chi = -(4 * second_difference(delta / 2) - second_difference(delta)) / 3
        if not np.isfinite(chi):
            raise NumericalError(
                payload={
                    "error": "Non-finite Susceptibility",
                    "message": f"{config.label}, T={temperature}: step {delta:.3e} gave {chi}",
                }
            )
        return float(chi)

    def susceptibility_curve(
        self,
        config: Configuration,
        spin: SpinValue,
        temperatures: Sequence[float],
        direction: Sequence[float] = (0.0, 0.0, 1.0),
        w: float = 1.0,
        x: Optional[float] = None,
        workers: int = Config.SWEEP_WORKERS,
    ) -> ThermoCurve:
        grid = [float(t) for t in temperatures]
        tasks = [
            Task(f"T-{k}", f"{config.label} T={t:.6g}", "susceptibility", self.susceptibility, config, spin, t, direction, w, x)
            for k, t in enumerate(grid)
        ]
        TaskManager(workers=workers).run_all(f"chi-{config.label}", tasks)
        return ThermoCurve(
            config=config.label,
            two_j=spin.two_j,
            direction=tuple(float(v) for v in unit_vector(direction)),
            temperatures=grid,
            chi=[t.result if t.status == TaskStatus.COMPLETED else None for t in tasks],
        )

    def low_t_susceptibility(
        self,
        config: Configuration,
        spin: SpinValue,
        direction: Sequence[float] = (0.0, 0.0, 1.0),
        w: float = 1.0,
        x: Optional[float] = None,
    ) -> LowTemperatureResponse:
        """Degenerate perturbation theory in the ground level of the effective model.

        Curie coefficient: variance of the first-order moments over the ground
        level. Van Vleck term: (2/g0) sum |V_mi|^2 / (E_m - E0).
        """
        energies, states = eigh(self._zero_field(config, spin, w, x))
        coupling = states.conj().T @ np.diag(-self._site_projection(config, direction)) @ states
        width = max(1.0, float(energies[-1] - energies[0]))
        ground = np.flatnonzero(energies - energies[0] <= self.degeneracy_tol * width)
        excited = np.setdiff1d(np.arange(len(energies)), ground)
        g0 = len(ground)
        block = coupling[np.ix_(ground, ground)]
        moments = np.linalg.eigvalsh(block)
        mean = float(np.trace(block).real) / g0
        curie = float(np.trace(block @ block).real) / g0 - mean**2
        van_vleck = 0.0
        if excited.size:
            weights = np.abs(coupling[np.ix_(excited, ground)]) ** 2
            van_vleck = float(2 / g0 * np.sum(weights / (energies[excited] - energies[0])[:, None]))
        return LowTemperatureResponse(
            ground_energy=float(energies[0]),
            ground_degeneracy=g0,
            ground_moments=[float(m) for m in moments],
            curie=curie,
            van_vleck=van_vleck,
        )

    def _eigensystem(self, config: Configuration, spin: SpinValue, w: float, x: Optional[float]):
        entries = self._zero_field(config, spin, w, x)
        energies, states = eigh(entries)
        return energies, states

    def magnetization_oscillation(
        self,
        config: Configuration,
        spin: SpinValue,
        site: int,
        times: Sequence[float],
        w: float = 1.0,
        x: Optional[float] = None,
    ) -> MagnetizationSeries:
        """M(t) after preparing the spin along vertex ``site``.

        M(t) = sum_{a,b} A_ab exp(-i (E_a - E_b) t) with
        A_ab = sum_k' (n_k.n_k') V_k'a V*_k'b V*_ka V_kb.
        """
        if not 0 <= site < config.n_sites:
            raise InvalidArgumentError(
                payload={
                    "error": "Invalid Site",
                    "message": f"site {site} outside 0..{config.n_sites - 1}",
                }
            )
        try:
            energies, states = self._eigensystem(config, spin, w, x)
            overlaps = config.vertex_array @ config.vertex_array[site]
            start = states[site]
            weighted = (states * overlaps[:, None]).T @ states.conj()
            amplitudes = weighted * np.outer(start.conj(), start)
            frequencies = energies[:, None] - energies[None, :]
            series = np.array(
                [np.sum(amplitudes * np.exp(-1j * frequencies * t)) for t in times]
            )
            max_imag = float(np.max(np.abs(series.imag))) if series.size else 0.0
            return MagnetizationSeries(
                site=site,
                times=[float(t) for t in times],
                values=[float(v) for v in series.real],
                dc=self.magnetization_dc(config, spin, site, w=w, x=x),
                max_imag=max_imag,
            )
        except ApplicationError:
            raise
        except Exception as e:
            log.error(f"Error computing M(t) for {config.label}: {e}", exc_info=True)
            raise NumericalError(
                payload={"error": "Magnetization Failed", "message": str(e)}
            ) from e

    def magnetization_dc(
        self,
        config: Configuration,
        spin: SpinValue,
        site: int,
        w: float = 1.0,
        x: Optional[float] = None,
    ) -> float:
        """Time average of M(t): sum over levels of sum_k' (n_k.n_k') |<k'|P_level|k>|^2."""
        energies, states = self._eigensystem(config, spin, w, x)
        overlaps = config.vertex_array @ config.vertex_array[site]
        width = max(1.0, float(energies[-1] - energies[0]))
        total = 0.0
        start = 0
        for stop in range(1, len(energies) + 1):
            if stop < len(energies) and energies[stop] - energies[stop - 1] <= self.degeneracy_tol * width:
                continue
            block = states[:, start:stop]
            column = block @ block[site].conj()
            total += float(np.sum(overlaps * np.abs(column) ** 2))
            start = stop
        return total

    @staticmethod
    def relaxation_time(
        rho: float,
        delta: float,
        omega: float,
        sound_velocity: float,
        temperature: Optional[float] = None,
    ) -> Estimate:
        """tau ~ hbar rho s^5 / ((k_B Delta)^2 omega^3) in seconds.

        rho in g/cm^3, Delta and T in K, omega in 1/s, s in cm/s. When k_B T
        exceeds hbar omega the result is multiplied by hbar omega / (k_B T).
        """
        for name, value in (("rho", rho), ("delta", delta), ("omega", omega), ("s", sound_velocity)):
            if value <= 0:
                raise InvalidArgumentError(
                    payload={"error": "Invalid Parameter", "message": f"{name}={value} must be positive"}
                )
        tau = HBAR * rho * sound_velocity**5 / ((K_B * delta) ** 2 * omega**3)
        correction = None
        if temperature is not None:
            if temperature <= 0:
                raise InvalidArgumentError(
                    payload={"error": "Invalid Temperature", "message": f"T={temperature} must be positive"}
                )
            correction = min(1.0, HBAR * omega / (K_B * temperature))
            tau *= correction
        return Estimate(name="relaxation_time", value=float(tau), unit="s", correction=correction)

    @staticmethod
    def dipolar_broadening(
        g: float,
        spin: SpinValue,
        density: float,
        concentration: float,
        prefactor: float = DIPOLAR_PREFACTOR,
    ) -> Estimate:
        """Random dipolar frequency shift in 1/s.

        delta omega = prefactor * g^2 mu_B^2 J^2 / (hbar R^3) with 1/R^3 = n x, n in 1/cm^3.
        Two moments polarized along the easy axis couple as (g mu_B J)^2 (1 - 3 cos^2 theta) / R^3;
        written as P2(cos theta) = (3 cos^2 theta - 1) / 2 its orientational mean vanishes and
        the shift is set by the rms, <P2^2>^(1/2) = 1/sqrt(5). Pass prefactor=1 for the bare scale.
        """
        if not 0.0 <= concentration <= 1.0:
            raise InvalidArgumentError(
                payload={
                    "error": "Invalid Concentration",
                    "message": f"x={concentration} must lie in [0, 1]",
                }
            )
        if density < 0:
            raise InvalidArgumentError(
                payload={"error": "Invalid Density", "message": f"n={density} must be non-negative"}
            )
        if prefactor <= 0:
            raise InvalidArgumentError(
                payload={"error": "Invalid Prefactor", "message": f"prefactor={prefactor} must be positive"}
            )
        value = prefactor * g**2 * MU_B**2 * spin.j**2 * density * concentration / HBAR
        return Estimate(name="dipolar_broadening", value=float(value), unit="1/s")

    def temperature_grid(self, tmin: float, tmax: float, steps: int) -> List[float]:
        if not 0 < tmin <= tmax or steps < 1:
            raise InvalidArgumentError(
                payload={
                    "error": "Invalid Temperature Grid",
                    "message": f"need 0 < tmin <= tmax and steps >= 1, got {tmin}, {tmax}, {steps}",
                }
            )
        return [float(t) for t in np.geomspace(tmin, tmax, steps)]
