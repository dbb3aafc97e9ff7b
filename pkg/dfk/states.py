"""States of a frame, principal states and the induced domain D(A)."""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

import numpy as np

from .errors import EmptyStateSpaceError, InternalInconsistencyError, NotConsistentError, TheoremViolated
from .frames import InformationFrame, classify_frame, ensure_valid
from .order import FinitePoset, _is_directed, has_local_lubs, is_algebraic, is_L_domain, is_pointed
from .utils.bitsets import bit, mask_of, members, set_key, submasks


@dataclass(frozen=True)
class State:
    """A state of a fixed frame, held as a token mask."""

    mask: int
    frame: InformationFrame = field(compare=False, repr=False, hash=False)

    @property
    def members(self) -> Tuple[str, ...]:
        return self.frame.labels(self.mask)

    def __len__(self) -> int:
        return len(members(self.mask))

    def __str__(self) -> str:
        return self.frame.show(self.mask)


def is_state(frame: InformationFrame, x: int) -> bool:
    """Finite consistency, closure under entailment and completeness, read literally."""
    if not x:
        return False
    inside = members(x)
    for F in submasks(x):
        if not any(F in frame.con[i] for i in inside):
            return False

    produced = 0
    for i in inside:
        for X in frame.consistent_sets(i):
            if X & ~x == 0:
                entailed = frame.closure(i, X)
                if entailed & ~x:
                    return False
                produced |= entailed
    return x & ~produced == 0


def _satisfies_st(frame: InformationFrame, x: int) -> bool:
    """Every F ⊆ x is entailed by some X ⊆ x at some i ∈ x, and x is closed."""
    generated = [
        frame.closure(i, X)
        for i in members(x)
        for X in frame.consistent_sets(i)
        if X & ~x == 0
    ]
    if any(entailed & ~x for entailed in generated):
        return False
    return all(any(F & ~entailed == 0 for entailed in generated) for F in submasks(x))


def enumerate_states(frame: InformationFrame) -> List[State]:
    """
    All states, by brute force over the token powerset, sorted by (size, lexicographic).

    The definition and the (ST) characterization are both enumerated and must agree.
    """
    everything = range(1 << frame.n)
    direct = [x for x in everything if is_state(frame, x)]
    via_st = [x for x in everything if _satisfies_st(frame, x)]
    if direct != via_st:
        differing = sorted(set(direct) ^ set(via_st), key=set_key)[0]
        raise InternalInconsistencyError(
            "state definition and (ST) disagree", frame.show(differing))
    return [State(x, frame) for x in sorted(direct, key=set_key)]


def principal_mask(frame: InformationFrame, i: int, X: int) -> int:
    if X not in frame.con[i]:
        raise NotConsistentError(
            f"{frame.show(X)} is not in Con_{frame.tokens[i]}", frame.tokens[i], frame.show(X))
    return frame.closure(i, X)


def principal_state(frame: InformationFrame, i: str, X: Iterable[str]) -> State:
    """
    [X]_i = { a : X ⊢_i a }.

    Raises:
        NotConsistentError: when X ∉ Con_i
    """
    ensure_valid(frame)
    result = principal_mask(frame, frame.position(i), frame.mask(X))
    if not is_state(frame, result):
        raise InternalInconsistencyError("principal set is not a state", i, frame.show(result))
    return State(result, frame)


def _generator_key(frame: InformationFrame, i: int, X: int):
    return (set_key(X), i)


def principal_label(frame: InformationFrame, i: int, X: int) -> str:
    return "[" + ",".join(frame.labels(X)) + "]_" + frame.tokens[i]


class StateDomain:
    """
    The states of a frame ordered by inclusion.

    Poset elements are labelled by the minimal generator of each state:
    ``[x,y]_i`` names [{x, y}]_i.
    """

    def __init__(self, frame: InformationFrame, states: List[State], poset: FinitePoset,
                 canonical_basis: FrozenSet[int]):
        self.frame = frame
        self.states: Tuple[State, ...] = tuple(states)
        self.poset = poset
        self.canonical_basis = canonical_basis
        self._position: Dict[int, int] = {state.mask: k for k, state in enumerate(states)}

    @property
    def labels(self) -> Tuple[str, ...]:
        return self.poset.elements

    def index_of(self, x: Union[int, State]) -> int:
        mask = x.mask if isinstance(x, State) else x
        try:
            return self._position[mask]
        except KeyError:
            raise InternalInconsistencyError("not a state of this domain", self.frame.show(mask)) from None

    def label(self, x: Union[int, State]) -> str:
        return self.poset.elements[self.index_of(x)]

    def state_of(self, label: str) -> State:
        return self.states[self.poset.position(label)]

    def contains(self, mask: int) -> bool:
        return mask in self._position

    @cached_property
    def way_below(self) -> np.ndarray:
        return self.poset.approximation

    def hasse_edges(self) -> List[Tuple[str, str]]:
        return self.poset.covers()

    def __repr__(self) -> str:
        return f"StateDomain({list(self.labels)})"


def induced_domain(frame: InformationFrame) -> StateDomain:
    """
    Build D(A): the inclusion order on the states, with the principal states as basis.

    Directed completeness, the principal-union decomposition of every state and
    the least state [∅]_t for truth elements are all verified.

    Raises:
        EmptyStateSpaceError: when the frame has no states
        InternalInconsistencyError: when one of the verified facts fails
    """
    ensure_valid(frame)
    states = enumerate_states(frame)
    if not states:
        raise EmptyStateSpaceError("the frame has no states")
    masks = [state.mask for state in states]
    position = {mask: k for k, mask in enumerate(masks)}

    generator: Dict[int, Tuple[tuple, int, int]] = {}
    for i in range(frame.n):
        for X in frame.consistent_sets(i):
            entailed = frame.closure(i, X)
            if entailed not in position:
                raise InternalInconsistencyError(
                    "principal set is not a state", frame.tokens[i], frame.show(X))
            key = _generator_key(frame, i, X)
            if entailed not in generator or key < generator[entailed][0]:
                generator[entailed] = (key, i, X)

    for mask in masks:
        if mask not in generator:
            raise InternalInconsistencyError("state is not principal", frame.show(mask))

    labels = [principal_label(frame, generator[m][1], generator[m][2]) for m in masks]
    leq = [[a & ~b == 0 for b in masks] for a in masks]
    poset = FinitePoset(labels, leq)

    for directed, top in poset.directed:
        union = 0
        for k in members(directed):
            union |= masks[k]
        if union not in position or top is None or masks[top] != union:
            raise InternalInconsistencyError("directed union of states is not their lub",
                                             frame.show(union))

    for z in masks:
        family = {
            frame.closure(i, X)
            for i in members(z)
            for X in frame.consistent_sets(i)
            if X & ~z == 0
        }
        union = 0
        for entailed in family:
            union |= entailed
        if union != z or not _is_directed(poset, mask_of(position[m] for m in family)):
            raise InternalInconsistencyError(
                "state is not the directed union of its principal substates", frame.show(z))

    domain = StateDomain(frame, states, poset, frozenset(generator))

    for t in classify_frame(frame).truth:
        least = frame.closure(frame.index[t], 0)
        if any(least & ~mask for mask in masks):
            raise InternalInconsistencyError("[∅]_t is not below every state", t)
    return domain


def approx_by_entailment(domain: StateDomain, x: Union[int, State], y: Union[int, State]) -> bool:
    """
    x ≪ y read through entailment: some i and V ∈ Con_i with {i} ∪ V ⊆ y and V ⊢_i x.

    Cross-checked against the definitional way-below on the inclusion order.
    """
    frame = domain.frame
    x_mask = x.mask if isinstance(x, State) else x
    y_mask = y.mask if isinstance(y, State) else y
    result = any(
        (bit(i) | V) & ~y_mask == 0 and x_mask & ~frame.closure(i, V) == 0
        for i in range(frame.n)
        for V in frame.consistent_sets(i)
    )
    definitional = bool(domain.way_below[domain.index_of(x_mask), domain.index_of(y_mask)])
    if result != definitional:
        raise InternalInconsistencyError("entailment and way-below disagree",
                                         frame.show(x_mask), frame.show(y_mask))
    return result


@dataclass(frozen=True)
class DomainProperties:
    pointed: bool
    algebraic: bool
    l_domain: bool
    least: Optional[str] = None

    def names(self) -> List[str]:
        return [name for name, on in (("pointed", self.pointed), ("algebraic", self.algebraic),
                                      ("L-domain", self.l_domain)) if on]


def domain_properties(domain: StateDomain) -> DomainProperties:
    """
    Pointed, algebraic and L-domain flags of D(A), checked against the frame classifiers.

    A conservative frame need not have a truth element, so its domain is only
    required to have local lubs; it is an L-domain once it is also pointed.

    Raises:
        TheoremViolated: when a conservative frame gives a domain without local
            lubs (or a pointed one that is not an L-domain), when an algebraic
            frame gives a non-algebraic domain, or when a truth element t
            leaves [∅]_t short of being the least state
    """
    frame = domain.frame
    properties = classify_frame(frame)
    pointed = is_pointed(domain.poset)
    algebraic = is_algebraic(domain.poset)
    l_domain = is_L_domain(domain.poset)

    if properties.conservative and not has_local_lubs(domain.poset):
        raise TheoremViolated("conservative frame whose domain lacks local lubs")
    if properties.conservative and pointed and not l_domain:
        raise TheoremViolated("conservative frame with a pointed domain that is not an L-domain")
    if properties.algebraic and not algebraic:
        raise TheoremViolated("algebraic frame with a non-algebraic domain")
    for t in properties.truth:
        least = domain.label(frame.closure(frame.index[t], 0))
        if not pointed or domain.poset.bottom() != least:
            raise TheoremViolated("[∅]_t is not the least state", t)

    return DomainProperties(pointed, algebraic, l_domain, domain.poset.bottom() if pointed else None)


__all__ = [
    "State", "StateDomain", "DomainProperties", "is_state", "enumerate_states",
    "principal_state", "principal_mask", "principal_label", "induced_domain",
    "approx_by_entailment", "domain_properties",
]
