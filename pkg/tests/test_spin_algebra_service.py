import numpy as np
import pytest
from pydantic import ValidationError

from application.exception.application_error import InvalidArgumentError
from application.model.spin import CefModel, InvariantLabel, Normalization, SpinValue


@pytest.mark.parametrize("two_j", [1, 2, 3, 6, 9])
def test_spin_operators_satisfy_su2_algebra(spin_algebra_service, two_j):
    spin = SpinValue(two_j=two_j)
    jx, jy, jz = (op.entries for op in spin_algebra_service.build_spin_operators(spin))

    np.testing.assert_allclose(jx @ jy - jy @ jx, 1j * jz, atol=1e-12)
    np.testing.assert_allclose(jy @ jz - jz @ jy, 1j * jx, atol=1e-12)
    casimir = jx @ jx + jy @ jy + jz @ jz
    np.testing.assert_allclose(casimir, spin.j * (spin.j + 1) * np.eye(spin.dim), atol=1e-12)


def test_spin_value_keeps_half_integers_exact():
    spin = SpinValue.from_j(3.5)
    assert spin.two_j == 7
    assert spin.is_half_integer
    assert spin.label == "7/2"
    assert spin.dim == 8


@pytest.mark.parametrize("label", ["O40", "O44", "O60", "O64"])
def test_stevens_operators_are_hermitian_and_traceless(spin_algebra_service, label):
    op = spin_algebra_service.build_stevens(SpinValue(two_j=8), InvariantLabel(label))
    assert op.hermitian_flag
    assert op.hermitian_deviation() < 1e-12
    assert abs(np.trace(op.entries)) < 1e-8 * max(1.0, np.abs(op.entries).max())


def test_rank_four_operator_vanishes_below_its_rank(spin_algebra_service):
    op = spin_algebra_service.build_stevens(SpinValue(two_j=3), InvariantLabel.O40)
    np.testing.assert_allclose(op.entries, 0.0, atol=1e-10)


@pytest.mark.parametrize(
    "axis, angle",
    [((0, 0, 1), np.pi / 2), ((1, 1, 1), 2 * np.pi / 3), ((1, 1, 0), np.pi)],
)
def test_cubic_invariant_commutes_with_octahedral_rotations(spin_algebra_service, axis, angle):
    spin = SpinValue(two_j=10)
    h = spin_algebra_service.build_invariant(spin, InvariantLabel.CUBIC4).entries
    u = spin_algebra_service.rotation(spin, axis, angle)
    np.testing.assert_allclose(u @ h @ u.conj().T, h, atol=1e-9)


def test_cubic_cef_commutes_with_four_fold_rotation(spin_algebra_service):
    spin = SpinValue(two_j=12)
    h = spin_algebra_service.build_cubic_cef(spin, 0.4).entries
    u = spin_algebra_service.rotation(spin, (1, 0, 0), np.pi / 2)
    np.testing.assert_allclose(u @ h @ u.conj().T, h, atol=1e-10)


def test_cubic_cef_rejects_angle_outside_range(spin_algebra_service):
    with pytest.raises(InvalidArgumentError):
        spin_algebra_service.build_cubic_cef(SpinValue(two_j=4), 4.0)


def test_cubic_cef_of_zero_spin_is_scalar_zero(spin_algebra_service):
    op = spin_algebra_service.build_cubic_cef(SpinValue(two_j=0), 0.3)
    assert op.dim == 1
    assert op.entries[0, 0] == 0


def test_zeeman_spectrum_is_equally_spaced(spin_algebra_service):
    spin = SpinValue(two_j=5)
    op = spin_algebra_service.build_zeeman(spin, (0.0, 0.0, 2.0))
    values = np.linalg.eigvalsh(op.entries)
    np.testing.assert_allclose(values, 2.0 * np.arange(-spin.j, spin.j + 1), atol=1e-12)


def test_coherent_state_points_along_its_direction(spin_algebra_service):
    spin = SpinValue(two_j=7)
    direction = np.array([1.0, -2.0, 0.5])
    direction /= np.linalg.norm(direction)
    state = spin_algebra_service.coherent_state(spin, direction)
    moments = [
        np.vdot(state, op.entries @ state).real
        for op in spin_algebra_service.build_spin_operators(spin)
    ]
    np.testing.assert_allclose(moments, spin.j * direction, atol=1e-10)


def test_normalized_cef_model_scales_each_rank(spin_algebra_service):
    spin = SpinValue(two_j=6)
    x = spin.j * (spin.j + 1)
    model = CefModel(
        spin=spin,
        terms=[(InvariantLabel.O40, 2.0)],
        normalization=Normalization.STEVENS_NORMALIZED,
    )
    expected = 2.0 * spin_algebra_service.build_stevens(spin, InvariantLabel.O40).entries / x**2
    np.testing.assert_allclose(spin_algebra_service.build_cef(model).entries, expected, atol=1e-12)


def test_coherent_energy_scan_follows_the_classical_moment(spin_algebra_service):
    spin = SpinValue(two_j=5)
    directions = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 1], [-1, 2, -2], [0, 0, -1]], dtype=float)
    unit = directions / np.linalg.norm(directions, axis=1)[:, None]
    operators = spin_algebra_service.build_spin_operators(spin)

    for axis, operator in enumerate(operators):
        scan = spin_algebra_service.coherent_energy_scan(operator, spin, directions)
        np.testing.assert_allclose(scan, spin.j * unit[:, axis], atol=1e-10)


def test_spin_value_is_immutable():
    spin = SpinValue(two_j=7)
    with pytest.raises(ValidationError):
        spin.two_j = 9
    assert spin.shifted(2) == SpinValue(two_j=9)
