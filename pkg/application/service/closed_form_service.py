from typing import List, Optional, Sequence, Tuple

import numpy as np

from application.config.config import Config
from application.data.spectra_tables import (
    HYBRID_SPECTRA,
    MULTIPATH_SPECTRA,
    Y3_SPECTRA,
    Y5_SPECTRA,
    o2_spectrum,
    y2_spectrum,
)
from application.exception.application_error import (
    ApplicationError,
    NumericalError,
    UnsupportedClosedFormError,
)
from application.model.configuration import HYBRID, Configuration
from application.model.effective import Spectrum
from application.model.group import GroupLabel
from application.model.spin import SpinValue
from application.service.berry_effective_service import BerryEffectiveService
from application.utils.logger import log

UNVERIFIED = "unverified-by-paper"

DIHEDRAL = (GroupLabel.D2, GroupLabel.D4, GroupLabel.D6)


# radicands within rounding of zero are exact zeros of the table rows
RADICAND_FLOOR = 1e-12


def _root(value: float) -> float:
    return float(np.sqrt(value)) if value > RADICAND_FLOOR else 0.0


def chi(x: float) -> float:
    return np.cos(2 * x / 3) * np.cos(x / 2) - _root(
        np.cos(x / 3) ** 2 + np.sin(2 * x / 3) ** 2 * np.sin(x / 2) ** 2
    )


def xi(x: float) -> float:
    rho = _root(4 * np.sin(x / 2) ** 2 * np.sin(x / 3) ** 2 + 1)
    return _root(3 + 2 * np.cos(x) * np.cos(2 * x / 3) + 4 * np.cos(x / 2) * np.cos(x / 3) * rho)


def lune_amplitude(fold: int, j: float) -> float:
    """Interference of the N parallel paths of C(D_N,N), in units of w."""
    if fold == 2:
        return 2 * np.cos(np.pi * j)
    if fold == 4:
        return 4 * np.cos(np.pi * j) * np.cos(np.pi * j / 2)
    if fold == 6:
        return 2 * np.cos(np.pi * j) * (1 + 2 * np.cos(2 * np.pi * j / 3))
    raise ValueError(f"no lune formula for fold {fold}")


class ClosedFormService:
    def __init__(self):
        self.tolerance = Config.DEGENERACY_TOL
        self.berry_effective_service = BerryEffectiveService()

    def _unsupported(self, config: Configuration, spin: SpinValue, reason: str):
        return UnsupportedClosedFormError(
            payload={
                "error": "No Closed Form",
                "message": f"{config.label}, 2J={spin.two_j}: {reason}",
            }
        )

    @staticmethod
    def _in_field(h: Sequence[float]) -> bool:
        return any(abs(v) > 0 for v in h)

    def _pairs(
        self,
        config: Configuration,
        spin: SpinValue,
        h: Sequence[float],
        x: Optional[float],
    ) -> List[Tuple[float, int]]:
        """Levels in units of w for w = 1."""
        group, p, j = config.group, config.p, spin.j
        field = np.asarray(h, dtype=float)

        if group in DIHEDRAL and p == group.value[1]:
            axis = config.vertex_array[0]
            along = float(field @ axis)
            if np.linalg.norm(field - along * axis) > 1e-12 * max(1.0, abs(along)):
                raise self._unsupported(config, spin, "closed form needs a field along the axis")
            e = np.sqrt(lune_amplitude(int(p), j) ** 2 + (along * j) ** 2)
            return [(-e, 1), (e, 1)]

        if group in DIHEDRAL and p == "2":
            fold = int(group.value[1])
            if not self._in_field(h):
                return [(2 * np.cos(2 * np.pi * (k + j) / fold), 1) for k in range(fold)]
            if fold != 4 or abs(field[2]) > 0:
                raise self._unsupported(config, spin, "field closed form exists for D4-2 in-plane fields only")
            h_bar = j * np.hypot(field[0], field[1])
            phi_h = np.arctan2(field[1], field[0])
            inner = np.sqrt(
                4 * np.cos(np.pi * j) ** 2 + 2 * h_bar**2 + (h_bar**4 / 4) * np.cos(2 * phi_h) ** 2
            )
            levels = []
            for sign in (1, -1):
                e = np.sqrt(max(2 + h_bar**2 / 2 + sign * inner, 0.0))
                levels += [(-e, 1), (e, 1)]
            return levels

        if self._in_field(h):
            raise self._unsupported(config, spin, "no closed form in a field")

        reduced = spin.two_j
        if config.s_parameter is not None:
            reduced = self.berry_effective_service.equivalence_class(spin, config).two_j

        if group == GroupLabel.O and config.multipath:
            if x is None:
                raise self._unsupported(config, spin, "multipath table needs x")
            return MULTIPATH_SPECTRA[reduced](x)
        if group == GroupLabel.O and p == "4":
            return [((-1) ** k * 2 * chi(np.pi * (j + 2 * k)), 1) for k in range(6)]
        if group == GroupLabel.O and p == "3":
            levels = []
            for k in range(4):
                e = xi(np.pi * (j + 3 * k))
                levels += [(-e, 1), (e, 1)]
            return levels
        if group == GroupLabel.O and p == HYBRID:
            return HYBRID_SPECTRA[reduced]
        if group == GroupLabel.O and p == "2":
            return o2_spectrum(spin.two_j, config.alpha)
        if group == GroupLabel.Y and p == "5":
            return Y5_SPECTRA[reduced]
        if group == GroupLabel.Y and p == "3":
            return Y3_SPECTRA[reduced]
        if group == GroupLabel.Y and p == "2":
            if spin.two_j % 4 != 2:
                raise self._unsupported(config, spin, "tabulated for odd integer J only")
            return y2_spectrum(spin.two_j, config.alpha)
        raise self._unsupported(config, spin, "no tabulated spectrum")

    def closed_form_spectrum(
        self,
        config: Configuration,
        spin: SpinValue,
        w: float = 1.0,
        h: Sequence[float] = (0.0, 0.0, 0.0),
        x: Optional[float] = None,
    ) -> Spectrum:
        """Evaluate the closed-form or tabulated spectrum of a configuration.

        Field components are given in the same units as w. The tables hold w = 1;
        levels scale with w, and a negative w inverts them.

        Raises:
            UnsupportedClosedFormError: no closed form for this configuration, J or field.
        """
        if w == 0:
            raise self._unsupported(config, spin, "w must be non-zero")
        try:
            pairs = self._pairs(config, spin, np.asarray(h, dtype=float) / abs(w), x)
            return Spectrum.from_pairs([(w * value, m) for value, m in pairs], self.tolerance)
        except ApplicationError:
            raise
        except Exception as e:
            log.error(f"Error evaluating closed form for {config.label}: {e}", exc_info=True)
            raise NumericalError(
                payload={"error": "Closed Form Failed", "message": str(e)}
            ) from e

    def verify_against_closed_form(
        self,
        spectrum: Spectrum,
        config: Configuration,
        spin: SpinValue,
        w: float = 1.0,
        h: Sequence[float] = (0.0, 0.0, 0.0),
        x: Optional[float] = None,
        atol: float = 1e-10,
    ) -> Tuple[bool, Optional[str]]:
        """Return (verified, note); note is set when no closed form applies."""
        try:
            reference = self.closed_form_spectrum(config, spin, w=w, h=h, x=x)
        except UnsupportedClosedFormError:
            return False, UNVERIFIED
        scale = max(1.0, abs(w))
        verified = spectrum.matches(reference, atol=atol * scale)
        if not verified:
            log.warning(f"{config.label} 2J={spin.two_j}: spectrum differs from closed form")
        return verified, None
