"""Tests for finite posets, way-below and monotone maps."""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dfk.errors import (
    EmptyPosetError,
    InvalidBasisError,
    NotAntisymmetricError,
    NotReflexiveError,
    NotTransitiveError,
    UnknownElementError,
)
from dfk.generators import random_poset
from dfk.order import (
    FinitePoset,
    MonotoneMap,
    check_way_below_laws,
    compact_elements,
    constant_map,
    directed_subsets,
    identity_map,
    is_algebraic,
    is_basis,
    is_L_domain,
    is_monotone,
    is_pointed,
    is_scott_continuous,
    lub,
    poset_isomorphic,
    validate_poset,
    way_below,
)


def test_validate_poset_reports_antisymmetry_first():
    """Antisymmetry is checked before reflexivity and transitivity."""
    with pytest.raises(NotAntisymmetricError) as info:
        validate_poset(["x", "y"], [("x", "y"), ("y", "x")])
    assert info.value.witness == ("x", "y")


def test_validate_poset_missing_reflexive_pair():
    """A relation without (y, y) fails reflexivity at y."""
    with pytest.raises(NotReflexiveError) as info:
        validate_poset(["x", "y"], [("x", "x"), ("x", "y")])
    assert info.value.witness == ("y",)


def test_validate_poset_transitivity_witness():
    """The transitivity witness names the middle element."""
    with pytest.raises(NotTransitiveError) as info:
        validate_poset(["a", "b", "c"], [("a", "b"), ("b", "c")], add_reflexive=True)
    assert info.value.witness == ("a", "b", "c")


def test_validate_poset_unknown_element():
    """Pairs may only mention declared elements."""
    with pytest.raises(UnknownElementError):
        validate_poset(["a"], [("a", "z")], add_reflexive=True)


def test_empty_poset_rejected():
    """A poset needs at least one element."""
    with pytest.raises(EmptyPosetError):
        FinitePoset([], np.zeros((0, 0), dtype=bool))


def test_way_below_equals_order_on_chain(chain2):
    """On a finite poset ≪ is exactly ⊑."""
    assert np.array_equal(way_below(chain2), chain2.leq)
    assert compact_elements(chain2) == frozenset({"0", "1"})


def test_diamond_directed_subsets_and_way_below(diamond):
    """The diamond has 13 directed subsets and 9 way-below pairs."""
    assert len(directed_subsets(diamond)) == 13
    assert int(diamond.approximation.sum()) == 9
    assert frozenset({"a", "b"}) not in directed_subsets(diamond)


def test_diamond_lubs(diamond):
    """Least upper bounds exist for every subset of the diamond."""
    assert lub(diamond, ["a", "b"]) == "top"
    assert lub(diamond, ["bot"]) == "bot"
    assert lub(diamond, ["bot", "a"]) == "a"


def test_lub_missing():
    """Two maximal elements have no upper bound."""
    assert lub(FinitePoset.antichain(2), ["a", "b"]) is None


def test_diamond_classifiers(diamond):
    """The diamond is pointed, algebraic and an L-domain."""
    assert is_pointed(diamond)
    assert is_algebraic(diamond)
    assert is_L_domain(diamond)
    assert diamond.bottom() == "bot"


def test_antichain_not_pointed():
    """An antichain of two has no least element and so is no L-domain."""
    poset = FinitePoset.antichain(2)
    assert not is_pointed(poset)
    assert not is_L_domain(poset)
    assert is_algebraic(poset)


def test_two_middle_bounds_not_l_domain():
    """a, b below both c and d, all below top: the pair has no lub inside ↓top."""
    poset = validate_poset(
        ["bot", "a", "b", "c", "d", "top"],
        [("bot", "a"), ("bot", "b"), ("bot", "c"), ("bot", "d"), ("bot", "top"),
         ("a", "c"), ("a", "d"), ("a", "top"), ("b", "c"), ("b", "d"), ("b", "top"),
         ("c", "top"), ("d", "top")],
        add_reflexive=True,
    )
    assert is_pointed(poset)
    assert not is_L_domain(poset)


def test_basis_property(diamond):
    """Every element is needed in the basis of a finite poset."""
    assert is_basis(diamond, diamond.elements) is None
    assert is_basis(diamond, ["bot", "a", "b"]) == "top"
    with pytest.raises(InvalidBasisError):
        is_algebraic(diamond, ["bot", "a"])


def test_way_below_laws_hold_on_diamond(diamond):
    """Transitivity, absorption, compact bottom and interpolation hold."""
    report = check_way_below_laws(diamond)
    assert report.valid, report.violations


def test_covers_are_hasse_edges(diamond):
    """Only the four covering pairs of the diamond are Hasse edges."""
    assert sorted(diamond.covers()) == [("a", "top"), ("b", "top"), ("bot", "a"), ("bot", "b")]


def test_dual_reverses_order(chain2):
    """The dual of 0 ⊑ 1 has 1 as its least element."""
    assert chain2.dual().bottom() == "1"


def test_restrict_keeps_induced_order(diamond):
    """Removing bot leaves a ⊑ top and b ⊑ top."""
    sub = diamond.restrict(diamond.mask(["a", "b", "top"]))
    assert sub.elements == ("a", "b", "top")
    assert sorted(sub.covers()) == [("a", "top"), ("b", "top")]


def test_monotone_and_continuous(chain2, diamond):
    """A monotone map is Scott continuous on finite posets; a reversal is neither."""
    f = MonotoneMap(chain2, diamond, {"0": "bot", "1": "a"})
    assert is_monotone(f)
    assert is_scott_continuous(f)

    flip = MonotoneMap(chain2, chain2, ["1", "0"])
    assert not is_monotone(flip)
    assert not is_scott_continuous(flip)


def test_map_composition_is_diagrammatic(chain2, diamond):
    """f.then(g) applies f first."""
    f = MonotoneMap(chain2, diamond, {"0": "a", "1": "top"})
    g = constant_map(diamond, chain2, "1")
    assert f.then(g).as_dict() == {"0": "1", "1": "1"}
    assert f.then(identity_map(diamond)) == f
    assert identity_map(chain2).then(f) == f


def test_poset_isomorphic(diamond):
    """Relabelled diamonds are isomorphic; the chain is not."""
    other = validate_poset(
        ["0", "1", "2", "3"],
        [("0", "1"), ("0", "2"), ("0", "3"), ("1", "3"), ("2", "3")],
        add_reflexive=True,
    )
    found = poset_isomorphic(diamond, other)
    assert found is not None
    assert found["bot"] == "0" and found["top"] == "3"
    assert poset_isomorphic(diamond, FinitePoset.chain(4)) is None


@settings(max_examples=30, deadline=None)
@given(n=st.integers(min_value=1, max_value=4), seed=st.integers(min_value=0, max_value=2**32))
def test_random_posets_keep_way_below_laws(n, seed):
    """Way-below laws hold on randomly grown posets."""
    poset = random_poset(n, seed)
    assert poset.n == n
    assert check_way_below_laws(poset).valid
    assert is_algebraic(poset)
