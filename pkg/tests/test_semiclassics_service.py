import numpy as np
import pytest

from application.exception.application_error import DomainError
from application.model.spin import SpinValue
from application.service.semiclassics_service import ICOSA_HALF_ARC, U_WINDOW


def test_action_of_the_pure_quartic_potential(semiclassics_service):
    result = semiclassics_service.action_c(0.0)
    assert result.valid
    assert result.c == pytest.approx(np.log(3.0) / 2, abs=1e-6)
    assert result.abs_error < 1e-6


def test_action_is_positive_across_the_window(semiclassics_service):
    for u in np.linspace(U_WINDOW[0] + 0.05, U_WINDOW[1] - 0.01, 6):
        assert semiclassics_service.action_c(float(u)).c > 0


def test_icosahedral_action(semiclassics_service):
    result = semiclassics_service.action_c_icosahedral()
    assert result.u is None
    assert 0.27 <= result.c <= 0.29


def test_kappa_vanishes_at_the_minima(semiclassics_service):
    assert semiclassics_service.kappa_profile(0.0, 0.0) == pytest.approx(0.0, abs=1e-6)
    assert semiclassics_service.kappa_profile(0.0, np.pi / 2) == pytest.approx(0.0, abs=1e-6)
    assert semiclassics_service.kappa_profile(0.0, np.pi / 4) > 0


def test_kappa_rejects_arguments_outside_their_range(semiclassics_service):
    with pytest.raises(DomainError):
        semiclassics_service.kappa_profile(0.2, 0.3)
    with pytest.raises(DomainError):
        semiclassics_service.kappa_profile(0.0, 2.0)
    with pytest.raises(DomainError):
        semiclassics_service.kappa_profile_icosahedral(ICOSA_HALF_ARC + 0.1)


def test_c_curve_marks_points_outside_the_window(semiclassics_service):
    results = semiclassics_service.c_curve([-1.0, 0.0, 0.5])
    assert [r.valid for r in results] == [False, True, False]
    assert results[0].c is None
    assert results[1].c == pytest.approx(np.log(3.0) / 2, abs=1e-6)


def test_oscillation_count(semiclassics_service):
    assert semiclassics_service.oscillation_count(SpinValue(two_j=48), np.pi / 3) == pytest.approx(2.0)
