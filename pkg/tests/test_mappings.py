"""Tests for approximable mappings and their composition."""
import pytest
from hypothesis import given, settings, strategies as st

from dfk.errors import FrameMismatchError, FrameTypeError
from dfk.functors.domains import F_on_morphism, F_on_object
from dfk.generators import GenBounds, enum_frames, random_mapping
from dfk.morphisms.mappings import (
    ApproximableMapping,
    check_mapping_lemmas,
    identity_mapping,
    respects_truth,
    validate_mapping,
)
from dfk.order import FinitePoset, MonotoneMap


def test_identity_is_approximable(frame_unit):
    """Id_A passes (a) to (e) and respects truth."""
    report = validate_mapping(identity_mapping(frame_unit))
    assert report.valid, report.violations
    assert report.flags['respects_truth'] is True


def test_empty_relation_does_not_respect_truth(frame_unit):
    """An empty relation never relates the truth tokens."""
    empty = ApproximableMapping(frame_unit, frame_unit, [{}])
    assert respects_truth(empty) is False
    assert validate_mapping(empty).flags['respects_truth'] is False


def test_monotonicity_violation(chain2):
    """Dropping an image on the larger premise breaks (b)."""
    frame = F_on_object(chain2)
    tables = [dict(table) for table in identity_mapping(frame).rel]
    one = frame.position("1")
    tables[one][frame.mask(["0", "1"])] = 0
    report = validate_mapping(ApproximableMapping(frame, frame, tables))
    assert "(b)" in report.conditions()


def test_from_pairs_matches_tables(frame_unit):
    """Triples and tables describe the same relation."""
    h = ApproximableMapping.from_pairs(frame_unit, frame_unit, [("t", [], "t"), ("t", ["t"], "t")])
    assert h == identity_mapping(frame_unit)
    assert h.triples() == [("t", (), "t"), ("t", ("t",), "t")]


def test_premise_must_be_consistent(chain2):
    """A premise outside Con_i is rejected."""
    frame = F_on_object(chain2)
    with pytest.raises(FrameTypeError):
        ApproximableMapping(frame, frame, [{frame.mask(["1"]): 1}, {}])


def test_identity_laws(chain2, diamond):
    """Id is neutral on both sides of composition."""
    f = MonotoneMap(chain2, diamond, {"0": "bot", "1": "a"})
    h = F_on_morphism(f)
    assert identity_mapping(h.source).then(h) == h
    assert h.then(identity_mapping(h.target)) == h


def test_composition_needs_matching_frames(frame_unit, chain2):
    """g.then(h) needs g's target to be h's source."""
    g = identity_mapping(frame_unit)
    h = identity_mapping(F_on_object(chain2))
    with pytest.raises(FrameMismatchError):
        g.then(h)


def test_lifted_maps_satisfy_mapping_lemmas(chain2, diamond):
    """Split interpolation and strengthened cut hold on F(f)."""
    f = MonotoneMap(diamond, chain2, {"bot": "0", "a": "0", "b": "1", "top": "1"})
    h = F_on_morphism(f)
    assert validate_mapping(h).valid
    assert check_mapping_lemmas(h).valid


FRAMES = list(enum_frames(GenBounds(max_tokens=2)))


@settings(max_examples=40, deadline=None)
@given(
    a=st.integers(min_value=0, max_value=len(FRAMES) - 1),
    b=st.integers(min_value=0, max_value=len(FRAMES) - 1),
    seed=st.integers(min_value=0, max_value=2**32),
)
def test_random_mappings_are_approximable(a, b, seed):
    """Whatever random_mapping returns is approximable and satisfies the lemmas."""
    h = random_mapping(FRAMES[a], FRAMES[b], seed)
    if h is None:
        return
    assert validate_mapping(h).valid
    assert check_mapping_lemmas(h).valid
    assert identity_mapping(h.source).then(h) == h


@settings(max_examples=40, deadline=None)
@given(
    chain=st.lists(st.integers(min_value=0, max_value=len(FRAMES) - 1), min_size=4, max_size=4),
    seed=st.integers(min_value=0, max_value=2**32),
)
def test_composition_is_associative(chain, seed):
    """(g then h) then k equals g then (h then k) on random chains of three mappings."""
    a, b, c, d = (FRAMES[index] for index in chain)
    g = random_mapping(a, b, seed)
    h = random_mapping(b, c, seed + 1)
    k = random_mapping(c, d, seed + 2)
    if g is None or h is None or k is None:
        return
    assert g.then(h).then(k) == g.then(h.then(k))
    assert validate_mapping(g.then(h).then(k)).valid


def test_random_mapping_is_deterministic():
    """The same seed gives the same mapping."""
    source, target = FRAMES[0], FRAMES[-1]
    assert random_mapping(source, target, 7) == random_mapping(source, target, 7)


def test_antichain_lift_identity():
    """F(id) on an antichain is the identity mapping."""
    poset = FinitePoset.antichain(2)
    lifted = F_on_object(poset)
    h = F_on_morphism(MonotoneMap(poset, poset, poset.elements))
    assert h == identity_mapping(lifted)
