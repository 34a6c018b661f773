from typing import Callable, List, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from application.config.config import Config
from application.data.character_tables import ICOSA_ALPHA, ICOSA_BETA
from application.exception.application_error import (
    ApplicationError,
    DomainError,
    NumericalError,
)
from application.model.semiclassics import ActionResult
from application.model.spin import InvariantLabel, SpinValue
from application.service.spin_algebra_service import classical_invariant
from application.utils.logger import log

# Open window of u = bJ^2/a where the cubic trajectory follows the geodesic.
U_WINDOW = (-2.0 / 3.0, 1.0 / 15.0)

ICOSA_HALF_ARC = float(np.arctan2(ICOSA_BETA, ICOSA_ALPHA))

_T_GRID = np.concatenate(([0.0], np.geomspace(1e-14, 1e3, 400)))


def _arc_point(t: float, angle: float):
    """Point of the complexified sphere with azimuth angle and z = i sqrt(t)."""
    r = np.sqrt(1.0 + t)
    return r * np.cos(angle), r * np.sin(angle), 1j * np.sqrt(t)


def _first_root(energy: Callable[[float], float], tol: float) -> float:
    """Smallest t > 0 where energy(t) changes sign; 0 when the start is already a root."""
    start = energy(0.0)
    if abs(start) <= 1e-15:
        return 0.0
    sign = np.sign(start)
    previous = _T_GRID[0]
    for t in _T_GRID[1:]:
        value = energy(t)
        if np.sign(value) != sign:
            return brentq(energy, previous, t, xtol=tol, rtol=4 * np.finfo(float).eps)
        previous = t
    raise DomainError(
        payload={
            "error": "No Turning Point",
            "message": "energy equation has no positive root along the trajectory",
        }
    )


class SemiclassicsService:
    def __init__(self):
        self.root_tol = 1e-14
        self.quadrature_tol = Config.QUADRATURE_TOL

    @staticmethod
    def _check_window(u: float) -> None:
        if not U_WINDOW[0] < u < U_WINDOW[1]:
            raise DomainError(
                payload={
                    "error": "Outside Geodesic Window",
                    "message": f"u={u} must lie in ({U_WINDOW[0]:.6f}, {U_WINDOW[1]:.6f})",
                }
            )

    @staticmethod
    def cubic_energy(u: float, angle: float) -> Callable[[float], float]:
        """p4 + u I6 - (1 + u) on the arc; zero at the minima (1,0,0) and (0,1,0)."""

        def energy(t: float) -> float:
            x, y, z = _arc_point(t, angle)
            p4 = classical_invariant(InvariantLabel.CUBIC4, x, y, z)
            i6 = classical_invariant(InvariantLabel.CUBIC6, x, y, z)
            return float(np.real(p4 + u * i6 - (1.0 + u)))

        return energy

    @staticmethod
    def icosahedral_energy(angle: float) -> Callable[[float], float]:
        """P + 1/5 on the arc from (alpha, -beta, 0) to (alpha, beta, 0)."""

        def energy(t: float) -> float:
            x, y, z = _arc_point(t, angle)
            return float(np.real(classical_invariant(InvariantLabel.ICOSA6, x, y, z) + 0.2))

        return energy

    def kappa_profile(self, u: float, phi: float) -> float:
        """|J_z|/J on the imaginary-time trajectory between (1,0,0) and (0,1,0).

        Raises:
            DomainError: u outside the geodesic window or phi outside [0, pi/2].
        """
        self._check_window(u)
        if not 0.0 <= phi <= np.pi / 2:
            raise DomainError(
                payload={"error": "Invalid Angle", "message": f"phi={phi} must lie in [0, pi/2]"}
            )
        return float(np.sqrt(_first_root(self.cubic_energy(u, phi), self.root_tol)))

    def kappa_profile_icosahedral(self, psi: float) -> float:
        """Same quantity on the arc between adjacent 5-fold vertices, psi in [-psi0, psi0]."""
        if abs(psi) > ICOSA_HALF_ARC + 1e-12:
            raise DomainError(
                payload={
                    "error": "Invalid Angle",
                    "message": f"psi={psi} must lie in [-{ICOSA_HALF_ARC:.6f}, {ICOSA_HALF_ARC:.6f}]",
                }
            )
        return float(np.sqrt(_first_root(self.icosahedral_energy(psi), self.root_tol)))

    def _integrate(self, profile: Callable[[float], float], lower: float, upper: float):
        try:
            return quad(profile, lower, upper, epsabs=self.quadrature_tol, epsrel=1e-12, limit=200)
        except ApplicationError:
            raise
        except Exception as e:
            log.error(f"Quadrature failed: {e}", exc_info=True)
            raise NumericalError(
                payload={"error": "Quadrature Failed", "message": str(e)}
            ) from e

    def action_c(self, u: float) -> ActionResult:
        """c(u) = integral of kappa over the quarter arc."""
        self._check_window(u)
        c, error = self._integrate(lambda phi: self.kappa_profile(u, phi), 0.0, np.pi / 2)
        log.debug(f"c({u})={c:.12f} +- {error:.1e}")
        return ActionResult(u=u, c=c, valid=True, abs_error=error)

    def action_c_icosahedral(self) -> ActionResult:
        c, error = self._integrate(
            self.kappa_profile_icosahedral, -ICOSA_HALF_ARC, ICOSA_HALF_ARC
        )
        return ActionResult(c=c, valid=True, abs_error=error)

    def c_curve(self, u_grid: Sequence[float]) -> List[ActionResult]:
        """c(u) over a grid; points outside the window are marked invalid."""
        results = []
        for u in u_grid:
            try:
                results.append(self.action_c(float(u)))
            except DomainError:
                results.append(ActionResult(u=float(u), c=None, valid=False))
        return results

    @staticmethod
    def oscillation_count(spin: SpinValue, omega_max: float) -> float:
        """Full periods of cos(J Omega / 2) as Omega runs over [0, omega_max)."""
        return spin.j * omega_max / (4 * np.pi)
