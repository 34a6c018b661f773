import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import eval_legendre

from application.exception.application_error import InvalidArgumentError
from application.model.spin import SpinValue
from application.service.observables_service import DIPOLAR_PREFACTOR

SQRT5 = np.sqrt(5.0)
C1 = np.cos(np.pi / 10)
Z = (0.0, 0.0, 1.0)
X = (1.0, 0.0, 0.0)

# (config, 2J, field direction, "curie" for beta * value or "van_vleck" for value / w, value)
LOW_TEMPERATURE_TABLE = [
    ("D4-2", 0, X, "van_vleck", 0.5),
    ("D4-2", 1, X, "curie", 0.25),
    ("D6-2", 0, X, "van_vleck", 1.0),
    ("D6-2", 1, X, "curie", 0.25),
    ("O4", 0, Z, "van_vleck", 1 / 3),
    ("O4", 2, Z, "curie", 1 / 6),
    ("O4", 4, Z, "van_vleck", 1 / 6),
    ("O4", 1, Z, "curie", 2 / 9),
    ("O4", 3, Z, "curie", 1 / 9),
    ("O3", 0, Z, "van_vleck", 1 / 3),
    ("O3", 2, Z, "curie", 1 / 6),
    ("O3", 1, Z, "curie", 1 / 9),
    ("O3", 3, Z, "curie", 2 / 9),
    ("Y5", 0, Z, "van_vleck", (1 + SQRT5) / 6),
    ("Y5", 2, Z, "curie", 1 / 9),
    ("Y5", 4, Z, "curie", 1 / 9),
    ("Y5", 6, Z, "curie", 2 / 9),
    ("Y5", 8, Z, "curie", 1 / 6),
    ("Y5", 10, Z, "van_vleck", (5 + SQRT5) / 30),
    ("Y5", 1, Z, "curie", 1 / 5),
    ("Y5", 3, Z, "van_vleck", (5 + SQRT5) * C1 / 15),
    ("Y5", 5, Z, "curie", (5 + SQRT5) / 30),
    ("Y5", 7, Z, "curie", 1 / 5),
    ("Y5", 9, Z, "curie", 1 / 9),
    ("Y3", 0, Z, "van_vleck", 7 / 6 + 11 * SQRT5 / 18),
    ("Y3", 2, Z, "curie", (12 * SQRT5 + 37 + np.sqrt(13) * (3 * SQRT5 + 4)) / 468),
    ("Y3", 4, Z, "curie", 1 / 6),
    ("Y3", 6, Z, "van_vleck", (SQRT5 + 3) / 6),
    ("Y3", 1, Z, "curie", (10 * SQRT5 + 83 + np.sqrt(21) * (5 * SQRT5 - 2)) / 630),
    ("Y3", 3, Z, "curie", (4 * SQRT5 + 9) / 90),
    ("Y3", 5, Z, "curie", 1 / 9),
]


@pytest.mark.parametrize("key, two_j, direction, kind, value", LOW_TEMPERATURE_TABLE)
def test_low_temperature_susceptibility_table(observables_service, configs, key, two_j, direction, kind, value):
    low_t = observables_service.low_t_susceptibility(configs(key), SpinValue(two_j=two_j), direction)
    if kind == "curie":
        assert low_t.curie == pytest.approx(value, rel=1e-9)
    else:
        assert low_t.curie == pytest.approx(0.0, abs=1e-10)
        assert low_t.van_vleck == pytest.approx(value, rel=1e-9)


@pytest.mark.parametrize("key, two_j, direction, kind, value", LOW_TEMPERATURE_TABLE)
def test_full_susceptibility_follows_curie_plus_van_vleck(observables_service, configs, key, two_j, direction, kind, value):
    # the full chi keeps the ground Van Vleck constant next to the Curie term
    config, spin = configs(key), SpinValue(two_j=two_j)
    low_t = observables_service.low_t_susceptibility(config, spin, direction)
    chi = observables_service.susceptibility(config, spin, 0.01, direction)
    assert chi == pytest.approx(low_t.chi(0.01), rel=1e-2)


def test_curie_ground_levels_are_degenerate(observables_service, configs):
    low_t = observables_service.low_t_susceptibility(configs("O4"), SpinValue(two_j=2), Z)
    assert low_t.ground_degeneracy == 3
    low_t = observables_service.low_t_susceptibility(configs("D6-2"), SpinValue(two_j=1), X)
    assert low_t.ground_degeneracy == 2
    assert low_t.chi(0.01) > low_t.chi(1.0)


@pytest.mark.parametrize(
    "key, direction, dimensionality",
    [("O4", (0.0, 0.0, 1.0), 3), ("D4-2", (1.0, 0.0, 0.0), 2), ("D2-2", (1.0, 0.0, 0.0), 1)],
)
def test_high_temperature_curie_law(observables_service, configs, key, direction, dimensionality):
    temperature = 100.0
    chi = observables_service.susceptibility(configs(key), SpinValue(two_j=3), temperature, direction)
    assert chi * temperature == pytest.approx(1.0 / dimensionality, rel=1e-2)


def test_cubic_susceptibility_is_isotropic(observables_service, configs):
    config = configs("O4")
    spin = SpinValue(two_j=5)
    along_axis = observables_service.susceptibility(config, spin, 1.0, (0.0, 0.0, 1.0))
    along_diagonal = observables_service.susceptibility(config, spin, 1.0, (1.0, 1.0, 1.0))
    assert along_diagonal == pytest.approx(along_axis, rel=1e-3)


def test_susceptibility_curve(observables_service, configs):
    temperatures = observables_service.temperature_grid(0.1, 10.0, 3)
    assert temperatures == pytest.approx([0.1, 1.0, 10.0])
    curve = observables_service.susceptibility_curve(configs("O4"), SpinValue(two_j=0), temperatures)
    assert curve.config == "O4"
    assert curve.direction == pytest.approx((0.0, 0.0, 1.0))
    assert all(chi is not None and chi > 0 for chi in curve.chi)


def test_susceptibility_rejects_non_positive_temperature(observables_service, configs):
    with pytest.raises(InvalidArgumentError):
        observables_service.susceptibility(configs("O4"), SpinValue(two_j=0), 0.0)
    with pytest.raises(InvalidArgumentError):
        observables_service.temperature_grid(1.0, 0.5, 4)


def test_magnetization_starts_along_the_prepared_site(observables_service, configs):
    config = configs("O4")
    series = observables_service.magnetization_oscillation(
        config, SpinValue(two_j=3), 0, np.linspace(0.0, 10.0, 21)
    )
    assert series.values[0] == pytest.approx(1.0, abs=1e-10)
    assert series.max_imag < 1e-10
    assert all(abs(v) <= 1.0 + 1e-10 for v in series.values)
    assert -1.0 <= series.dc <= 1.0


def test_magnetization_rejects_unknown_site(observables_service, configs):
    with pytest.raises(InvalidArgumentError):
        observables_service.magnetization_oscillation(configs("O4"), SpinValue(two_j=0), 6, [0.0])


def test_relaxation_time_estimate(observables_service):
    estimate = observables_service.relaxation_time(10.0, 10.0, 1e10, 1e5)
    assert estimate.unit == "s"
    assert 0.03 <= estimate.value <= 0.3
    assert estimate.correction is None
    warm = observables_service.relaxation_time(10.0, 10.0, 1e10, 1e5, temperature=1.0)
    assert warm.correction < 1
    assert warm.value == pytest.approx(estimate.value * warm.correction)


def test_dipolar_broadening_estimate(observables_service):
    estimate = observables_service.dipolar_broadening(2.0, SpinValue(two_j=7), 1e22, 1.0)
    assert estimate.unit == "1/s"
    assert 1.6e10 <= estimate.value <= 2.0e10


def test_dipolar_prefactor_is_the_rms_angular_factor(observables_service):
    mean_square, _ = quad(lambda c: eval_legendre(2, c) ** 2 / 2.0, -1.0, 1.0)
    assert DIPOLAR_PREFACTOR == pytest.approx(np.sqrt(mean_square), rel=1e-12)

    spin = SpinValue(two_j=7)
    bare = observables_service.dipolar_broadening(2.0, spin, 1e22, 1.0, prefactor=1.0)
    assert bare.value == pytest.approx(4.0e10, rel=0.01)
    scaled = observables_service.dipolar_broadening(2.0, spin, 1e22, 1.0)
    assert scaled.value == pytest.approx(bare.value / SQRT5)
    assert scaled.value == pytest.approx(1.8e10, rel=0.01)
    assert observables_service.dipolar_broadening(2.0, spin, 1e22, 0.0).value == 0.0


@pytest.mark.parametrize(
    "kwargs",
    [
        {"rho": -1.0, "delta": 10.0, "omega": 1e10, "sound_velocity": 1e5},
        {"rho": 10.0, "delta": 10.0, "omega": 1e10, "sound_velocity": 1e5, "temperature": 0.0},
    ],
)
def test_relaxation_time_rejects_bad_parameters(observables_service, kwargs):
    with pytest.raises(InvalidArgumentError):
        observables_service.relaxation_time(**kwargs)


def test_dipolar_broadening_rejects_bad_concentration(observables_service):
    with pytest.raises(InvalidArgumentError):
        observables_service.dipolar_broadening(2.0, SpinValue(two_j=7), 1e22, 1.5)
    with pytest.raises(InvalidArgumentError):
        observables_service.dipolar_broadening(2.0, SpinValue(two_j=7), 1e22, 1.0, prefactor=0.0)
