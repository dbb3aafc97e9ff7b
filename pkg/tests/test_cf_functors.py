"""Tests for CF-approximable relations, the functors C and E, and the isomorphisms δ and γ."""
import pytest
from hypothesis import given, settings, strategies as st

from dfk.config import Config
from dfk.errors import DFKError, EmptyFamilyError, SizeExceededError, SpaceMismatchError
from dfk.frames import classify_frame, validate_frame
from dfk.functors.cfspaces import (
    C_on_morphism,
    C_on_object,
    E_on_morphism,
    E_on_object,
    check_delta_naturality,
    check_gamma_naturality,
    delta,
    gamma,
    lifted_relation,
)
from dfk.functors.domains import F_on_object
from dfk.generators import GenBounds, enum_cf_spaces, random_cf_relation, universe_names
from dfk.morphisms.mappings import identity_mapping, validate_mapping
from dfk.morphisms.relations import CFRelation, identity_cf, validate_cf_relation
from dfk.order import FinitePoset, is_algebraic
from dfk.rough import CFSpace, validate_cf_space
from dfk.states import domain_properties, induced_domain

NO_RAISE = Config({'max_bound': None})


def test_C_of_unit_space(space_unit):
    """C(U_unit) is F_unit up to renaming, with truth <u>."""
    frame = C_on_object(space_unit)
    assert frame.tokens == ("<u>",)
    assert frame.consistent_sets(0) == [0, 1]
    assert frame.closure(0, 0) == 1
    assert frame.truth == "<u>"
    assert classify_frame(frame).names() == ["strong", "algebraic", "conservative"]


def test_C_of_empty_member(space_empty_family):
    """The empty member becomes the token <> and is the truth."""
    frame = C_on_object(space_empty_family)
    assert frame.tokens == ("<>",)
    assert frame.truth == "<>"


def test_C_of_non_topological_space(space_nonalg):
    """Without reflexivity C(U) is strong but not algebraic."""
    frame = C_on_object(space_nonalg)
    assert frame.tokens == ("<>", "<u>", "<v>")
    assert validate_frame(frame).valid
    properties = classify_frame(frame)
    assert properties.strong
    assert not properties.algebraic
    assert properties.truth == ("<>",)


def test_C_needs_a_family():
    with pytest.raises(EmptyFamilyError):
        C_on_object(CFSpace.from_sets(["u"], [("u", "u")], []))


def test_E_of_unit_frame(frame_unit):
    """E(F_unit) has the pairs (∅,t) and ({t},t), all related to each other."""
    space = E_on_object(frame_unit)
    assert space.universe == ("(|t)", "(t|t)")
    assert space.theta.all()
    assert space.family == (1, 2)
    assert validate_cf_space(space).valid


def test_functor_identity_laws(space_unit, frame_unit):
    assert C_on_morphism(identity_cf(space_unit)) == identity_mapping(C_on_object(space_unit))
    assert E_on_morphism(identity_mapping(frame_unit)) == identity_cf(E_on_object(frame_unit))


def test_identity_relation_is_cf_approximable(space_unit, space_nonalg):
    for space in (space_unit, space_nonalg):
        assert validate_cf_relation(identity_cf(space)).valid


def test_empty_relation_breaks_totality(space_unit):
    """Every member must be related to something."""
    report = validate_cf_relation(CFRelation(space_unit, space_unit, []))
    assert report.conditions() == ["(1)"]
    assert report.violations[0].witness == ("{ u }",)


def test_relation_pairs_must_be_family_members(space_unit):
    with pytest.raises(DFKError):
        CFRelation(space_unit, space_unit, [(0, 1)])


def test_composition_needs_matching_spaces(space_unit, space_empty_family):
    with pytest.raises(SpaceMismatchError):
        identity_cf(space_unit).then(identity_cf(space_empty_family))


def test_delta_roundtrip(space_unit, space_empty_family, space_nonalg):
    """Υ then Γ and Γ then Υ are identities."""
    for space in (space_unit, space_empty_family, space_nonalg):
        report = delta(space).check()
        assert report.valid, report.violations


def test_gamma_roundtrip(frame_unit, chain2):
    """Q then P and P then Q are identities."""
    for frame in (frame_unit, F_on_object(chain2)):
        report = gamma(frame).check()
        assert report.valid, report.violations


def test_naturality_on_identities(space_unit, frame_unit):
    assert check_delta_naturality(identity_cf(space_unit)).valid
    assert check_gamma_naturality(identity_mapping(frame_unit)).valid


def test_lifted_relation_matches_E_of_C(space_nonalg):
    d = identity_cf(space_nonalg)
    assert lifted_relation(d) == E_on_morphism(C_on_morphism(d))


def test_delta_caps():
    names = universe_names(4)
    space = CFSpace(names, [[False] * 4 for _ in names], [0])
    with pytest.raises(SizeExceededError):
        delta(space, NO_RAISE)


def test_gamma_caps():
    with pytest.raises(SizeExceededError):
        gamma(F_on_object(FinitePoset.chain(4)), NO_RAISE)


SPACES = list(enum_cf_spaces(GenBounds(max_universe=1, max_family=2)))


def test_single_point_spaces():
    """Two transitive relations on {u}; without Θ only families holding ∅ survive (CF)."""
    assert len(SPACES) == 5
    for space in SPACES:
        assert delta(space).check().valid


@settings(max_examples=30, deadline=None)
@given(
    a=st.integers(min_value=0, max_value=len(SPACES) - 1),
    b=st.integers(min_value=0, max_value=len(SPACES) - 1),
    c=st.integers(min_value=0, max_value=len(SPACES) - 1),
    seed=st.integers(min_value=0, max_value=2**32),
)
def test_random_relations(a, b, c, seed):
    """Random relations lift to approximable mappings, compose functorially and commute with δ."""
    d = random_cf_relation(SPACES[a], SPACES[b], seed)
    o = random_cf_relation(SPACES[b], SPACES[c], seed + 1)
    if d is None or o is None:
        return
    assert validate_cf_relation(d).valid
    assert validate_mapping(C_on_morphism(d)).valid
    assert C_on_morphism(d.then(o)) == C_on_morphism(d).then(C_on_morphism(o))
    assert lifted_relation(d) == E_on_morphism(C_on_morphism(d))
    assert check_delta_naturality(d).valid


def test_D_of_C_is_a_domain():
    """Composing C with D turns every valid CF-space into an algebraic domain."""
    for space in SPACES:
        domain = induced_domain(C_on_object(space))
        assert is_algebraic(domain.poset)
        assert domain_properties(domain).algebraic


def test_D_of_C_on_fixtures(space_unit, space_nonalg):
    assert len(induced_domain(C_on_object(space_unit)).states) == 1
    assert domain_properties(induced_domain(C_on_object(space_nonalg))).algebraic


@settings(max_examples=30, deadline=None)
@given(
    chain=st.lists(st.integers(min_value=0, max_value=len(SPACES) - 1), min_size=4, max_size=4),
    seed=st.integers(min_value=0, max_value=2**32),
)
def test_cf_composition_is_associative(chain, seed):
    """(d then e) then o equals d then (e then o) on random chains of three relations."""
    u, v, w, x = (SPACES[index] for index in chain)
    d = random_cf_relation(u, v, seed)
    e = random_cf_relation(v, w, seed + 1)
    o = random_cf_relation(w, x, seed + 2)
    if d is None or e is None or o is None:
        return
    assert d.then(e).then(o) == d.then(e.then(o))
    assert validate_cf_relation(d.then(e).then(o)).valid
