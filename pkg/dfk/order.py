"""Finite posets as domains.

Elements are indexed densely 0..n-1 and the order is an n x n boolean numpy
matrix with ``leq[x, y]`` meaning x ⊑ y. Subsets are int bitmasks over the
indices (see :mod:`dfk.utils.bitsets`); the public functions take and return
element ids.
"""
import itertools
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import (
    DFKError,
    EmptyPosetError,
    InternalInconsistencyError,
    InvalidBasisError,
    NotAntisymmetricError,
    NotReflexiveError,
    NotTransitiveError,
    UnknownElementError,
)
from .reports import ValidationReport
from .utils.bitsets import mask_of, members, popcount, set_key, submasks


def _check_axioms(elements: Sequence[str], leq: np.ndarray):
    """Raise the first failing order axiom: antisymmetry, reflexivity, transitivity."""
    n = len(elements)
    both = np.triu(leq & leq.T, 1)
    if both.any():
        x, y = np.argwhere(both)[0]
        raise NotAntisymmetricError(elements[x], elements[y])

    missing = np.flatnonzero(~np.diag(leq))
    if missing.size:
        raise NotReflexiveError(elements[missing[0]])

    as_int = leq.astype(np.int64)
    broken = ((as_int @ as_int) > 0) & ~leq
    if broken.any():
        x, z = np.argwhere(broken)[0]
        y = next(k for k in range(n) if leq[x, k] and leq[k, z])
        raise NotTransitiveError(elements[x], elements[y], elements[z])


class FinitePoset:
    """A finite nonempty partial order; every such poset is an algebraic domain."""

    def __init__(self, elements: Sequence[str], leq):
        elements = tuple(str(element) for element in elements)
        if not elements:
            raise EmptyPosetError("a poset needs at least one element")
        if len(set(elements)) != len(elements):
            raise DFKError(f"duplicate element ids in {elements}")

        leq = np.array(leq, dtype=bool)
        n = len(elements)
        if leq.shape != (n, n):
            raise DFKError(f"order matrix has shape {leq.shape}, expected {(n, n)}")
        _check_axioms(elements, leq)
        leq.flags.writeable = False

        self.elements: Tuple[str, ...] = elements
        self.leq = leq
        self.n = n
        self.index: Dict[str, int] = {element: k for k, element in enumerate(elements)}
        self._down = tuple(mask_of(int(k) for k in np.flatnonzero(leq[:, y])) for y in range(n))
        self._up = tuple(mask_of(int(k) for k in np.flatnonzero(leq[x, :])) for x in range(n))

    @classmethod
    def from_pairs(cls, elements: Sequence[str], pairs: Iterable[Tuple[str, str]],
                   add_reflexive: bool = False) -> "FinitePoset":
        return validate_poset(elements, pairs, add_reflexive=add_reflexive)

    @classmethod
    def chain(cls, n: int) -> "FinitePoset":
        """0 ⊑ 1 ⊑ ... ⊑ n-1."""
        return cls([str(k) for k in range(n)], np.triu(np.ones((n, n), dtype=bool)))

    @classmethod
    def antichain(cls, n: int) -> "FinitePoset":
        names = [chr(ord('a') + k) for k in range(n)]
        return cls(names, np.eye(n, dtype=bool))

    @classmethod
    def diamond(cls) -> "FinitePoset":
        """bot below a and b, both below top, a and b incomparable."""
        return validate_poset(
            ["bot", "a", "b", "top"],
            [("bot", "a"), ("bot", "b"), ("bot", "top"), ("a", "top"), ("b", "top")],
            add_reflexive=True,
        )

    def position(self, element: str) -> int:
        try:
            return self.index[element]
        except KeyError:
            raise UnknownElementError(element) from None

    def mask(self, ids: Iterable[str]) -> int:
        return mask_of(self.position(element) for element in ids)

    def labels(self, mask: int) -> FrozenSet[str]:
        return frozenset(self.elements[k] for k in members(mask))

    def down(self, element: str) -> FrozenSet[str]:
        return self.labels(self._down[self.position(element)])

    def up(self, element: str) -> FrozenSet[str]:
        return self.labels(self._up[self.position(element)])

    def bottom(self) -> Optional[str]:
        least = np.flatnonzero(self.leq.all(axis=1))
        return self.elements[least[0]] if least.size else None

    def dual(self) -> "FinitePoset":
        return FinitePoset(self.elements, self.leq.T)

    def restrict(self, mask: int) -> "FinitePoset":
        keep = members(mask)
        return FinitePoset([self.elements[k] for k in keep], self.leq[np.ix_(keep, keep)])

    def covers(self) -> List[Tuple[str, str]]:
        """Hasse diagram edges (x, y) with x ⋖ y."""
        strict = self.leq & ~np.eye(self.n, dtype=bool)
        as_int = strict.astype(np.int64)
        cover = strict & ~((as_int @ as_int) > 0)
        return [(self.elements[x], self.elements[y]) for x, y in np.argwhere(cover)]

    @cached_property
    def approximation(self) -> np.ndarray:
        """The way-below matrix, computed once by definition."""
        return way_below(self)

    @cached_property
    def directed(self) -> Tuple[Tuple[int, Optional[int]], ...]:
        """Directed subsets as (mask, lub index) pairs."""
        return tuple((mask, _lub_index(self, mask)) for mask in _directed_masks(self))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self.elements == other.elements and np.array_equal(self.leq, other.leq)

    def __hash__(self) -> int:
        return hash((self.elements, self.leq.tobytes()))

    def __repr__(self) -> str:
        return f"FinitePoset({list(self.elements)}, covers={self.covers()})"


def validate_poset(elements: Sequence[str], pairs: Iterable[Tuple[str, str]],
                   add_reflexive: bool = False) -> FinitePoset:
    """
    Build a poset from a raw relation given as (x, y) pairs meaning x ⊑ y.

    Args:
        elements: Declared element ids, in index order
        pairs: The raw relation
        add_reflexive: Add every (x, x) before checking

    Raises:
        NotAntisymmetricError, NotReflexiveError, NotTransitiveError for the
        first failing axiom, in that order.
    """
    elements = [str(element) for element in elements]
    index = {element: k for k, element in enumerate(elements)}
    n = len(elements)
    leq = np.eye(n, dtype=bool) if add_reflexive else np.zeros((n, n), dtype=bool)
    for x, y in pairs:
        if x not in index:
            raise UnknownElementError(x)
        if y not in index:
            raise UnknownElementError(y)
        leq[index[x], index[y]] = True
    return FinitePoset(elements, leq)


def _is_directed(poset: FinitePoset, mask: int) -> bool:
    if not mask:
        return False
    for a, b in itertools.combinations(members(mask), 2):
        if not poset._up[a] & poset._up[b] & mask:
            return False
    return True


def _directed_masks(poset: FinitePoset) -> List[int]:
    found = [mask for mask in range(1, 1 << poset.n) if _is_directed(poset, mask)]
    return sorted(found, key=set_key)


def _lub_index(poset: FinitePoset, mask: int) -> Optional[int]:
    upper = poset.leq[members(mask), :].all(axis=0)
    candidates = np.flatnonzero(upper)
    for u in candidates:
        if poset.leq[u, candidates].all():
            return int(u)
    return None


def directed_subsets(poset: FinitePoset) -> List[FrozenSet[str]]:
    """All nonempty subsets in which every pair has an upper bound inside the subset."""
    return [poset.labels(mask) for mask, _ in poset.directed]


def lub(poset: FinitePoset, subset: Iterable[str]) -> Optional[str]:
    """Least upper bound of subset, or None when there is none."""
    found = _lub_index(poset, poset.mask(subset))
    return None if found is None else poset.elements[found]


def way_below(poset: FinitePoset) -> np.ndarray:
    """
    The approximation relation ≪ by its definition.

    x ≪ y iff for every directed S whose lub exists, y ⊑ ⊔S implies x ⊑ u for
    some u ∈ S. On a finite poset this must collapse to ⊑; a mismatch raises
    InternalInconsistencyError.
    """
    directed = [(mask, top) for mask, top in poset.directed if top is not None]
    n = poset.n
    relation = np.zeros((n, n), dtype=bool)
    for x in range(n):
        for y in range(n):
            relation[x, y] = all(
                poset._up[x] & mask for mask, top in directed if poset.leq[y, top]
            )

    if not np.array_equal(relation, poset.leq):
        x, y = np.argwhere(relation != poset.leq)[0]
        raise InternalInconsistencyError(
            "way-below differs from the order on a finite poset",
            poset.elements[x], poset.elements[y],
        )
    relation.flags.writeable = False
    return relation


def check_way_below_laws(poset: FinitePoset) -> ValidationReport:
    """Transitivity, ≪ ⊆ ⊑, u ⊑ x ≪ y ⊑ z ⇒ u ≪ z, compact ⊥ and interpolation."""
    report = ValidationReport(subject="way-below")
    wb = poset.approximation
    leq = poset.leq
    names = poset.elements
    n = poset.n

    for x, y, z in itertools.product(range(n), repeat=3):
        if wb[x, y] and wb[y, z] and not wb[x, z]:
            report.add("transitivity", names[x], names[y], names[z])
            break

    outside = np.argwhere(wb & ~leq)
    if outside.size:
        report.add("below-order", names[outside[0][0]], names[outside[0][1]])

    for u, x, y, z in itertools.product(range(n), repeat=4):
        if leq[u, x] and wb[x, y] and leq[y, z] and not wb[u, z]:
            report.add("order-absorption", names[u], names[x], names[y], names[z])
            break

    least = poset.bottom()
    if least is not None:
        k = poset.index[least]
        if not wb[k, k]:
            report.add("compact-bottom", least)

    for x in range(n):
        approximants = mask_of(int(k) for k in np.flatnonzero(wb[:, x]))
        for m in submasks(approximants):
            inside = members(m)
            if not any(wb[inside, v].all() and wb[v, x] for v in range(n)):
                report.add("interpolation", names[x], tuple(names[k] for k in inside))
                break

    return report


def is_pointed(poset: FinitePoset) -> bool:
    return poset.bottom() is not None


def _basis_failure(poset: FinitePoset, basis: int) -> Optional[int]:
    """First element that is not a directed lub of its basis approximants."""
    wb = poset.approximation
    for x in range(poset.n):
        approximants = basis & mask_of(int(k) for k in np.flatnonzero(wb[:, x]))
        if not any(
            _is_directed(poset, m) and _lub_index(poset, m) == x
            for m in submasks(approximants) if m
        ):
            return x
    return None


def is_basis(poset: FinitePoset, basis: Iterable[str]) -> Optional[str]:
    """None when basis has the basis property, otherwise the first failing element."""
    failure = _basis_failure(poset, poset.mask(basis))
    return None if failure is None else poset.elements[failure]


def compact_elements(poset: FinitePoset) -> FrozenSet[str]:
    wb = poset.approximation
    return frozenset(poset.elements[k] for k in range(poset.n) if wb[k, k])


def is_algebraic(poset: FinitePoset, basis: Optional[Iterable[str]] = None) -> bool:
    """
    Whether the compact elements form a basis.

    Args:
        poset: The domain
        basis: Optional basis to validate first

    Raises:
        InvalidBasisError: when the given basis lacks the basis property
    """
    if basis is not None:
        failure = is_basis(poset, basis)
        if failure is not None:
            raise InvalidBasisError(failure)
    return is_basis(poset, compact_elements(poset)) is None


def is_L_domain(poset: FinitePoset) -> bool:
    """Pointed, and each pair bounded by z has a least upper bound inside ↓z."""
    return is_pointed(poset) and has_local_lubs(poset)


def has_local_lubs(poset: FinitePoset) -> bool:
    """Each pair bounded by z has a least upper bound inside ↓z; pointedness aside."""
    for z in range(poset.n):
        below = members(poset._down[z])
        for x, y in itertools.combinations_with_replacement(below, 2):
            bounds = poset._up[x] & poset._up[y] & poset._down[z]
            if not any(bounds & ~poset._up[u] == 0 for u in members(bounds)):
                return False
    return True


class MonotoneMap:
    """
    A total function between finite posets.

    Monotonicity is not enforced here; ``is_scott_continuous`` decides it.
    """

    def __init__(self, source: FinitePoset, target: FinitePoset,
                 graph: Union[Mapping[str, str], Sequence[str]]):
        if isinstance(graph, Mapping):
            missing = [x for x in source.elements if x not in graph]
            if missing:
                raise UnknownElementError(missing[0])
            images = [graph[x] for x in source.elements]
        else:
            images = list(graph)
            if len(images) != source.n:
                raise DFKError(f"map lists {len(images)} images for {source.n} elements")
        self.source = source
        self.target = target
        self.graph: Tuple[int, ...] = tuple(target.position(y) for y in images)

    def __call__(self, element: str) -> str:
        return self.target.elements[self.graph[self.source.position(element)]]

    def image_mask(self, mask: int) -> int:
        return mask_of(self.graph[k] for k in members(mask))

    def then(self, other: "MonotoneMap") -> "MonotoneMap":
        """Apply self first, then other."""
        if self.target != other.source:
            raise DFKError("maps do not compose: target and source differ")
        return MonotoneMap(self.source, other.target,
                           [other.target.elements[other.graph[y]] for y in self.graph])

    def as_dict(self) -> Dict[str, str]:
        return {x: self.target.elements[y] for x, y in zip(self.source.elements, self.graph)}

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonotoneMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.graph == other.graph)

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.graph))

    def __repr__(self) -> str:
        return f"MonotoneMap({self.as_dict()})"


def identity_map(poset: FinitePoset) -> MonotoneMap:
    return MonotoneMap(poset, poset, poset.elements)


def constant_map(source: FinitePoset, target: FinitePoset, value: str) -> MonotoneMap:
    return MonotoneMap(source, target, [value] * source.n)


def is_monotone(f: MonotoneMap) -> bool:
    src, tgt = f.source.leq, f.target.leq
    return all(
        tgt[f.graph[x], f.graph[y]]
        for x, y in itertools.product(range(f.source.n), repeat=2) if src[x, y]
    )


def is_scott_continuous(f: MonotoneMap) -> bool:
    """
    Whether f preserves every existing directed lub.

    Raises:
        InternalInconsistencyError: when the answer differs from monotonicity
    """
    continuous = all(
        _lub_index(f.target, f.image_mask(mask)) == f.graph[top]
        for mask, top in f.source.directed if top is not None
    )
    if continuous != is_monotone(f):
        raise InternalInconsistencyError(
            "Scott continuity and monotonicity disagree on a finite poset", f.as_dict())
    return continuous


def poset_isomorphic(p: FinitePoset, q: FinitePoset) -> Optional[Dict[str, str]]:
    """
    First order isomorphism p -> q in lexicographic candidate order, or None.

    Backtracking over p's elements in index order; a candidate must match the
    element's (|↓x|, |↑x|) degree pair.
    """
    if p.n != q.n or int(p.leq.sum()) != int(q.leq.sum()):
        return None
    n = p.n
    p_degree = [(popcount(p._down[k]), popcount(p._up[k])) for k in range(n)]
    q_degree = [(popcount(q._down[k]), popcount(q._up[k])) for k in range(n)]
    assignment: List[int] = []
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        for c in range(n):
            if used[c] or q_degree[c] != p_degree[i]:
                continue
            if all(p.leq[i, k] == q.leq[c, assignment[k]] and p.leq[k, i] == q.leq[assignment[k], c]
                   for k in range(i)):
                assignment.append(c)
                used[c] = True
                if extend(i + 1):
                    return True
                assignment.pop()
                used[c] = False
        return False

    if not extend(0):
        return None
    return {p.elements[k]: q.elements[assignment[k]] for k in range(n)}


__all__ = [
    "FinitePoset", "MonotoneMap", "validate_poset", "directed_subsets", "lub", "way_below",
    "check_way_below_laws", "is_pointed", "is_basis", "is_algebraic", "is_L_domain", "has_local_lubs",
    "compact_elements", "is_monotone", "is_scott_continuous", "poset_isomorphic",
    "identity_map", "constant_map",
]
