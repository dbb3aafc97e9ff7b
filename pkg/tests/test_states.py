"""Tests for states, induced domains and the entailment reading of way-below."""
import pytest
from hypothesis import given, settings, strategies as st

from dfk.errors import InvalidStructureError, NotConsistentError, TheoremViolated
from dfk.functors.domains import F_on_object
from dfk.generators import GenBounds, enum_frames, random_poset
from dfk.order import FinitePoset, is_algebraic, poset_isomorphic
from dfk.states import (
    approx_by_entailment,
    domain_properties,
    enumerate_states,
    induced_domain,
    is_state,
    principal_state,
)


def test_unit_frame_has_one_state(frame_unit):
    """The only state of F_unit is {t}."""
    states = enumerate_states(frame_unit)
    assert [state.members for state in states] == [("t",)]
    assert is_state(frame_unit, 1)
    assert not is_state(frame_unit, 0)


def test_lifted_chain_states(chain2):
    """F(0 ⊑ 1) has the states {0} and {0, 1}, one Hasse edge between them."""
    domain = induced_domain(F_on_object(chain2))
    assert [state.members for state in domain.states] == [("0",), ("0", "1")]
    assert domain.hasse_edges() == [(domain.labels[0], domain.labels[1])]
    assert poset_isomorphic(domain.poset, chain2) is not None


def test_lifted_diamond_has_four_states(diamond):
    """D(F(diamond)) is again a diamond."""
    domain = induced_domain(F_on_object(diamond))
    assert len(domain.states) == 4
    assert poset_isomorphic(domain.poset, diamond) is not None


def test_principal_state_labels(frame_unit):
    """[∅]_t = {t}, labelled by its minimal generator."""
    state = principal_state(frame_unit, "t", [])
    assert state.members == ("t",)
    domain = induced_domain(frame_unit)
    assert domain.label(state) == "[]_t"
    assert domain.state_of("[]_t") == state


def test_principal_state_needs_consistent_set(chain2):
    """{1} is not in Con_0 of F(0 ⊑ 1)."""
    frame = F_on_object(chain2)
    with pytest.raises(NotConsistentError):
        principal_state(frame, "0", ["1"])


def test_invalid_frame_induces_nothing(interpolation_broken):
    """induced_domain validates first."""
    with pytest.raises(InvalidStructureError):
        induced_domain(interpolation_broken)


def test_entailment_matches_way_below(diamond):
    """x ≪ y via entailment agrees with the order of D(F(diamond))."""
    domain = induced_domain(F_on_object(diamond))
    for x in domain.states:
        for y in domain.states:
            expected = bool(domain.poset.leq[domain.index_of(x), domain.index_of(y)])
            assert approx_by_entailment(domain, x, y) == expected


def test_domain_properties_of_unit(frame_unit):
    """D(F_unit) is a pointed algebraic L-domain with least element [∅]_t."""
    properties = domain_properties(induced_domain(frame_unit))
    assert properties.names() == ["pointed", "algebraic", "L-domain"]
    assert properties.least == "[]_t"


def test_domain_properties_without_truth():
    """F of an antichain gives an unpointed domain."""
    domain = induced_domain(F_on_object(FinitePoset.antichain(2)))
    properties = domain_properties(domain)
    assert not properties.pointed
    assert properties.least is None


def test_conservative_pointed_domain_must_be_l_domain(frame_unit, monkeypatch):
    """F_unit is conservative with a pointed domain, so a failing L-domain test is a theorem failure."""
    domain = induced_domain(frame_unit)
    monkeypatch.setattr("dfk.states.is_L_domain", lambda poset: False)
    with pytest.raises(TheoremViolated):
        domain_properties(domain)


def test_enumerated_frames_induce_algebraic_domains():
    """Every frame with up to two tokens induces a domain whose ≪ agrees with entailment."""
    for frame in enum_frames(GenBounds(max_tokens=2)):
        domain = induced_domain(frame)
        assert is_algebraic(domain.poset)
        for x in domain.states:
            for y in domain.states:
                approx_by_entailment(domain, x, y)


@settings(max_examples=20, deadline=None)
@given(n=st.integers(min_value=1, max_value=4), seed=st.integers(min_value=0, max_value=2**32))
def test_state_count_matches_poset(n, seed):
    """F(D) has exactly one state per element of D."""
    poset = random_poset(n, seed)
    assert len(enumerate_states(F_on_object(poset))) == n
