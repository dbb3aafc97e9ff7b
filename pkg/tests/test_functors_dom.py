"""Tests for the functors D and F and the natural isomorphisms η and τ."""
import pytest
from hypothesis import given, settings, strategies as st

from dfk.errors import InvalidBasisError, NotContinuousError
from dfk.frames import classify_frame, validate_frame
from dfk.functors.domains import (
    D_on_morphism,
    F_on_morphism,
    F_on_object,
    check_eta_naturality,
    check_tau_naturality,
    eta,
    tau,
)
from dfk.generators import GenBounds, enum_frames, enum_posets, random_mapping, random_monotone_map
from dfk.morphisms.mappings import identity_mapping
from dfk.order import FinitePoset, MonotoneMap, identity_map, is_monotone, poset_isomorphic
from dfk.states import induced_domain


def test_lifted_chain_frame(chain2):
    """F(0 ⊑ 1): Con_0 = {∅, {0}}, Con_1 = P({0, 1}) and truth 0."""
    frame = F_on_object(chain2)
    assert frame.tokens == ("0", "1")
    assert frame.consistent_sets(0) == [0, 1]
    assert frame.consistent_sets(1) == [0, 1, 2, 3]
    assert frame.closure(0, 0) == 1
    assert frame.closure(1, 0) == 3
    assert frame.truth == "0"


def test_lifted_frames_are_strong(diamond):
    """F(D) is a valid strong frame whose truth is ⊥."""
    frame = F_on_object(diamond)
    assert validate_frame(frame).valid
    properties = classify_frame(frame)
    assert properties.strong
    assert properties.algebraic
    assert properties.truth == ("bot",)


def test_lifted_antichain_has_no_truth():
    """Without a least element F(D) designates no truth token."""
    frame = F_on_object(FinitePoset.antichain(2))
    assert frame.truth is None
    validate_frame(frame)
    assert classify_frame(frame).truth == ()


def test_basis_must_have_basis_property(diamond):
    """F rejects a basis missing top."""
    with pytest.raises(InvalidBasisError):
        F_on_object(diamond, basis=["bot", "a", "b"])


def test_F_rejects_non_monotone_maps(chain2):
    """Only Scott-continuous maps lift."""
    with pytest.raises(NotContinuousError):
        F_on_morphism(MonotoneMap(chain2, chain2, ["1", "0"]))


def test_eta_roundtrip_on_unit(frame_unit):
    """S then T and T then S are identities on F_unit."""
    report = eta(frame_unit).check()
    assert report.valid, report.violations


def test_tau_roundtrip_on_diamond(diamond):
    """st and sp are mutually inverse continuous maps."""
    pair = tau(diamond)
    assert pair.check().valid
    assert pair.forward.then(pair.backward) == identity_map(diamond)


def test_D_of_F_is_isomorphic(diamond, chain2):
    """D(F(D)) ≅ D."""
    for poset in (diamond, chain2):
        assert poset_isomorphic(induced_domain(F_on_object(poset)).poset, poset) is not None


def test_functor_identity_laws(frame_unit, diamond):
    """D(Id_A) = id and F(id_D) = Id."""
    assert D_on_morphism(identity_mapping(frame_unit)) == identity_map(induced_domain(frame_unit).poset)
    assert F_on_morphism(identity_map(diamond)) == identity_mapping(F_on_object(diamond))


def test_F_preserves_composition(chain2, diamond):
    """F(f then g) = F(f) then F(g)."""
    f = MonotoneMap(chain2, diamond, {"0": "a", "1": "top"})
    g = MonotoneMap(diamond, chain2, {"bot": "0", "a": "0", "b": "1", "top": "1"})
    assert F_on_morphism(f.then(g)) == F_on_morphism(f).then(F_on_morphism(g))


def test_naturality_on_lifted_map(chain2, diamond):
    """η and τ squares commute for a concrete map."""
    f = MonotoneMap(chain2, diamond, {"0": "bot", "1": "b"})
    assert check_tau_naturality(f).valid
    assert check_eta_naturality(F_on_morphism(f)).valid


FRAMES = list(enum_frames(GenBounds(max_tokens=2)))
POSETS = [poset for n in (1, 2, 3) for poset in enum_posets(n)]


def test_eta_on_every_small_frame():
    """η is an isomorphism on every frame with up to two tokens."""
    for frame in FRAMES:
        assert eta(frame).check().valid


def test_tau_on_every_small_poset():
    """τ is an isomorphism on all 23 posets with up to three elements."""
    assert len(POSETS) == 1 + 3 + 19
    for poset in POSETS:
        assert tau(poset).check().valid


@settings(max_examples=30, deadline=None)
@given(
    a=st.integers(min_value=0, max_value=len(FRAMES) - 1),
    b=st.integers(min_value=0, max_value=len(FRAMES) - 1),
    c=st.integers(min_value=0, max_value=len(FRAMES) - 1),
    seed=st.integers(min_value=0, max_value=2**32),
)
def test_D_preserves_composition_and_eta_is_natural(a, b, c, seed):
    """D(g then h) = D(g) then D(h), and the η square commutes."""
    g = random_mapping(FRAMES[a], FRAMES[b], seed)
    h = random_mapping(FRAMES[b], FRAMES[c], seed + 1)
    if g is None or h is None:
        return
    assert D_on_morphism(g.then(h)) == D_on_morphism(g).then(D_on_morphism(h))
    assert check_eta_naturality(g).valid


@settings(max_examples=30, deadline=None)
@given(
    p=st.integers(min_value=0, max_value=len(POSETS) - 1),
    q=st.integers(min_value=0, max_value=len(POSETS) - 1),
    seed=st.integers(min_value=0, max_value=2**32),
)
def test_random_monotone_maps_lift_naturally(p, q, seed):
    """Random monotone maps satisfy τ naturality."""
    f = random_monotone_map(POSETS[p], POSETS[q], seed)
    assert is_monotone(f)
    assert check_tau_naturality(f).valid
