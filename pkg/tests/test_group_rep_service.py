import pytest

from application.model.group import GroupLabel
from application.model.spin import SpinValue

ALPHA = {"O2": 0.5, "Y2": 0.3}

DECOMPOSITIONS = [
    ("O4", 0, {"A1": 1, "E": 1, "F1": 1}),
    ("O4", 2, {"F1": 1, "F2": 1}),
    ("O4", 4, {"A2": 1, "E": 1, "F2": 1}),
    ("O4", 1, {"E1'": 1, "G'": 1}),
    ("O4", 3, {"E2'": 1, "G'": 1}),
    ("O3", 0, {"A1": 1, "A2": 1, "F1": 1, "F2": 1}),
    ("O3", 2, {"E": 1, "F1": 1, "F2": 1}),
    ("O3", 1, {"E1'": 1, "E2'": 1, "G'": 1}),
    ("O3", 3, {"G'": 2}),
    ("O2", 0, {"A1": 1, "E": 1, "F1": 1, "F2": 2}),
    ("O2", 2, {"A2": 1, "E": 1, "F1": 2, "F2": 1}),
    ("O2", 1, {"E1'": 1, "E2'": 1, "G'": 2}),
    ("O1", 0, {"A1": 1, "A2": 1, "E": 2, "F1": 3, "F2": 3}),
    ("O1", 1, {"E1'": 2, "E2'": 2, "G'": 4}),
    ("Y5", 0, {"A": 1, "F1": 1, "F2": 1, "H": 1}),
    ("Y5", 2, {"F1": 1, "G": 1, "H": 1}),
    ("Y5", 4, {"F2": 1, "G": 1, "H": 1}),
    ("Y5", 1, {"E1'": 1, "G'": 1, "I'": 1}),
    ("Y5", 3, {"E2'": 1, "G'": 1, "I'": 1}),
    ("Y5", 5, {"I'": 2}),
    ("Y3", 0, {"A": 1, "F1": 1, "F2": 1, "G": 2, "H": 1}),
    ("Y3", 2, {"F1": 1, "F2": 1, "G": 1, "H": 2}),
    ("Y3", 1, {"E1'": 1, "E2'": 1, "G'": 1, "I'": 2}),
    ("Y3", 3, {"G'": 2, "I'": 2}),
    ("Y2", 0, {"A": 1, "F1": 1, "F2": 1, "G": 2, "H": 3}),
    ("Y2", 2, {"F1": 2, "F2": 2, "G": 2, "H": 2}),
    ("Y2", 1, {"E1'": 1, "E2'": 1, "G'": 2, "I'": 3}),
    ("Y1", 0, {"A": 1, "F1": 3, "F2": 3, "G": 4, "H": 5}),
    ("Y1", 1, {"E1'": 2, "E2'": 2, "G'": 4, "I'": 6}),
    ("D2-2", 0, {"A": 1, "B3": 1}),
    ("D2-2", 2, {"B1": 1, "B2": 1}),
    ("D2-2", 1, {"E'": 1}),
    ("D2-1", 0, {"A": 1, "B1": 1, "B2": 1, "B3": 1}),
    ("D2-1", 1, {"E'": 2}),
    ("D4-4", 0, {"A1": 1, "A2": 1}),
    ("D4-4", 2, {"E": 1}),
    ("D4-4", 4, {"B1": 1, "B2": 1}),
    ("D4-4", 1, {"E1'": 1}),
    ("D4-4", 3, {"E2'": 1}),
    ("D4-2", 0, {"A1": 1, "B1": 1, "E": 1}),
    ("D4-2", 2, {"A2": 1, "B2": 1, "E": 1}),
    ("D4-2", 1, {"E1'": 1, "E2'": 1}),
    ("D4-1", 0, {"A1": 1, "A2": 1, "B1": 1, "B2": 1, "E": 2}),
    ("D4-1", 1, {"E1'": 2, "E2'": 2}),
    ("D6-6", 0, {"A1": 1, "A2": 1}),
    ("D6-6", 2, {"E1": 1}),
    ("D6-6", 4, {"E2": 1}),
    ("D6-6", 6, {"B1": 1, "B2": 1}),
    ("D6-6", 1, {"E1'": 1}),
    ("D6-6", 3, {"E3'": 1}),
    ("D6-6", 5, {"E2'": 1}),
    ("D6-2", 0, {"A1": 1, "B1": 1, "E1": 1, "E2": 1}),
    ("D6-2", 2, {"A2": 1, "B2": 1, "E1": 1, "E2": 1}),
    ("D6-2", 1, {"E1'": 1, "E2'": 1, "E3'": 1}),
    ("D6-1", 0, {"A1": 1, "A2": 1, "B1": 1, "B2": 1, "E1": 2, "E2": 2}),
    ("D6-1", 1, {"E1'": 2, "E2'": 2, "E3'": 2}),
]


@pytest.mark.parametrize("key, two_j, expected", DECOMPOSITIONS)
def test_main_representation_decomposition(group_rep_service, configs, key, two_j, expected):
    result = group_rep_service.decompose(configs(key, ALPHA.get(key)), SpinValue(two_j=two_j))
    assert result.nonzero() == expected
    assert result.dimension_check


@pytest.mark.parametrize("key", ["O4", "O3", "O2", "O4+3", "Y5", "Y3", "Y2", "D4-2", "D6-6"])
def test_multiplicities_have_period_of_the_axis_order(group_rep_service, configs, key):
    config = configs(key, ALPHA.get(key))
    # the hybrid mixes 4- and 3-fold sites
    period = 24 if key == "O4+3" else 2 * int(config.p)
    for two_j in range(period):
        now = group_rep_service.decompose(config, SpinValue(two_j=two_j))
        later = group_rep_service.decompose(config, SpinValue(two_j=two_j + period))
        assert now.multiplicities == later.multiplicities
        assert now.dimension_total == config.n_sites


def test_decomposition_report_shape(group_rep_service, configs):
    report = group_rep_service.decompose(configs("O4"), SpinValue(two_j=1)).to_dict()
    assert report == {
        "group": "O",
        "config": "O4",
        "two_j": 1,
        "irreps": {"E1'": 1, "G'": 1},
        "dimension_total": 6,
        "n_sites": 6,
        "dimension_check": True,
    }


@pytest.mark.parametrize("group", list(GroupLabel))
def test_double_group_closure_matches_class_sizes(group_rep_service, group):
    table = group_rep_service.builtin_table(group)
    elements = group_rep_service.group_elements(group)
    assert len(elements) == table.order == sum(c.size for c in table.classes)
    assert len(group_rep_service.proper_rotations(group)) == table.order // 2


@pytest.mark.parametrize("group", list(GroupLabel))
def test_character_tables_are_orthonormal(group_rep_service, group):
    table = group_rep_service.builtin_table(group)
    for a in table.irreps:
        for b in table.irreps:
            inner = sum(c.size * x * y for c, x, y in zip(table.classes, a.characters, b.characters))
            assert inner / table.order == pytest.approx(1.0 if a.label == b.label else 0.0, abs=1e-12)


@pytest.mark.parametrize(
    "key, two_j",
    [("O4", 0), ("Y5", 0), ("Y3", 0), ("Y5", 1), ("Y3", 2)],
)
def test_spectral_multiplicities_match_irrep_dimensions(
    group_rep_service, berry_effective_service, configs, key, two_j
):
    config = configs(key)
    spin = SpinValue(two_j=two_j)
    spectrum = berry_effective_service.effective_spectrum(config, spin)
    decomposition = group_rep_service.decompose(config, spin)
    table = group_rep_service.builtin_table(config.group)
    assert sorted(spectrum.multiplicities) == decomposition.dimension_multiset(table)
