"""Tests for GA-spaces, their approximation operators and CF-approximation spaces."""
import logging

import pytest

from dfk.config import Config
from dfk.errors import DFKError, SizeExceededError, UnknownElementError
from dfk.generators import enum_relations, enum_transitive_relations, universe_names
from dfk.rough import (
    CFSpace,
    GASpace,
    check_operator_laws,
    lower_approx,
    m_witnesses,
    theta_s,
    upper_approx,
    validate_cf_space,
)


@pytest.fixture
def path():
    """a → b → c, not transitive."""
    return GASpace.from_pairs(["a", "b", "c"], [("a", "b"), ("b", "c")])


def test_successors_and_approximations(path):
    assert theta_s(path, "a") == {"b"}
    assert theta_s(path, "c") == frozenset()
    assert upper_approx(path, ["c"]) == {"b"}
    assert upper_approx(path, []) == frozenset()
    # c has no successors, so it lies in every lower approximation
    assert lower_approx(path, []) == {"c"}
    assert lower_approx(path, ["b"]) == {"a", "c"}


def test_unknown_universe_element(path):
    with pytest.raises(UnknownElementError):
        upper_approx(path, ["z"])
    with pytest.raises(UnknownElementError):
        GASpace.from_pairs(["a"], [("a", "b")])


def test_duplicate_universe_ids():
    with pytest.raises(DFKError):
        GASpace(["a", "a"], [[False, False], [False, False]])


def test_operator_laws_on_path(path):
    report = check_operator_laws(path)
    assert report.valid, report.violations
    assert report.flags == {'reflexive': False, 'transitive': False}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_operator_laws_on_every_relation(n):
    """The laws hold for all 2^(n*n) relations."""
    names = universe_names(n)
    for theta in enum_relations(n):
        assert check_operator_laws(GASpace(names, theta)).valid


@pytest.mark.parametrize("n, expected", [(1, 2), (2, 13), (3, 171)])
def test_transitive_relation_counts(n, expected):
    relations = list(enum_transitive_relations(n))
    assert len(relations) == expected
    names = universe_names(n)
    assert all(GASpace(names, theta).is_transitive() for theta in relations)


def test_exhaustive_cap():
    names = universe_names(9)
    space = GASpace(names, [[False] * 9 for _ in names])
    with pytest.raises(SizeExceededError):
        check_operator_laws(space, Config({'max_bound': None}))


def test_unit_space_flags(space_unit):
    """U_unit is transitive, topological and has (M) through {u}."""
    report = validate_cf_space(space_unit)
    assert report.valid
    assert report.flags == {
        'transitive': True,
        'topological': True,
        'has_M': True,
        'm_witnesses': ["{ u }"],
    }


def test_empty_member_witnesses_m(space_empty_family):
    report = validate_cf_space(space_empty_family)
    assert report.valid
    assert report.flags['topological'] is False
    assert report.flags['m_witnesses'] == ["{ }"]


def test_non_topological_space(space_nonalg):
    """Only the empty member lies below every upper approximation."""
    report = validate_cf_space(space_nonalg)
    assert report.valid
    assert report.flags['transitive'] is True
    assert report.flags['topological'] is False
    assert m_witnesses(space_nonalg) == [0]


def test_transitivity_violation_has_witness():
    space = CFSpace.from_sets(["a", "b", "c"], [("a", "b"), ("b", "c")], [[]])
    report = validate_cf_space(space)
    assert report.conditions() == ["transitivity"]
    assert report.violations[0].witness == ("a", "b", "c")
    assert report.flags['transitive'] is False


def test_cf_violation():
    """No member of 𝔉 lies inside Θ̄({b}) = {a}, so even K = ∅ goes uncovered."""
    space = CFSpace.from_sets(["a", "b"], [("a", "b")], [["b"]])
    report = validate_cf_space(space)
    assert report.conditions() == ["cf"]
    assert report.violations[0].witness == ("{ b }", "{ }")


def test_cf_witness_search_respects_exhaustive_cap():
    """Every element points at u0, so Θ̄({u0}) has nine elements and no member covers it."""
    names = universe_names(10)
    theta = [[x != 0 and y == 0 for y in range(10)] for x in range(10)]
    space = CFSpace(names, theta, [1])
    with pytest.raises(SizeExceededError):
        validate_cf_space(space, Config({'max_bound': None}))
    assert validate_cf_space(space, Config({'max_bound': 9})).conditions() == ["cf"]


def test_empty_family_warns(caplog):
    space = CFSpace.from_sets(["u"], [("u", "u")], [])
    with caplog.at_level(logging.WARNING, logger="dfk.rough"):
        report = validate_cf_space(space)
    assert report.valid
    assert report.flags['has_M'] is False
    assert "EmptyFamily" in caplog.text


def test_family_is_sorted_and_deduplicated():
    space = CFSpace.from_sets(["u", "v"], [], [["u", "v"], ["v"], [], ["v"]])
    assert space.family == (0, 2, 3)


def test_family_member_must_fit_universe():
    with pytest.raises(DFKError):
        CFSpace(["u"], [[True]], [0b10])


def test_space_equality():
    a = CFSpace.from_sets(["u"], [("u", "u")], [["u"]])
    b = CFSpace.from_sets(["u"], [("u", "u")], [["u"]])
    c = CFSpace.from_sets(["u"], [("u", "u")], [[]])
    assert a == b and hash(a) == hash(b)
    assert a != c
