"""The functors D and F between frames and domains, and the isomorphisms η and τ."""
from dataclasses import dataclass
from typing import Iterable, List, Optional

import numpy as np

from ..errors import InternalInconsistencyError, InvalidBasisError, NotContinuousError
from ..frames import InformationFrame
from ..morphisms.mappings import ApproximableMapping, FrameIsoPair
from ..order import (
    FinitePoset,
    MonotoneMap,
    _is_directed,
    _lub_index,
    identity_map,
    is_basis,
    is_scott_continuous,
)
from ..reports import ValidationReport
from ..states import StateDomain, induced_domain
from ..utils.bitsets import bit, mask_of, members, submasks


def F_on_object(poset: FinitePoset, basis: Optional[Iterable[str]] = None) -> InformationFrame:
    """
    F(D): tokens are the basis elements, CON_i = {{i}} ∪ P(↓↓i) and X ⊨_i a iff a ≪ b
    for some b ∈ X ∪ {i}.

    The least element, when it exists and lies in the basis, is designated truth.

    Raises:
        InvalidBasisError: when basis lacks the basis property
    """
    chosen = set(poset.elements if basis is None else basis)
    failure = is_basis(poset, chosen)
    if failure is not None:
        raise InvalidBasisError(failure)

    positions = [k for k, element in enumerate(poset.elements) if element in chosen]
    tokens = [poset.elements[k] for k in positions]
    wb = poset.approximation
    approximants = [
        mask_of(t for t, a in enumerate(positions) if wb[a, b]) for b in positions
    ]

    families = []
    tables = []
    for i in range(len(positions)):
        family = {bit(i)} | set(submasks(approximants[i]))
        table = {}
        for X in family:
            entailed = 0
            for b in members(X | bit(i)):
                entailed |= approximants[b]
            table[X] = entailed
        families.append(family)
        tables.append(table)

    least = poset.bottom()
    truth = least if least is not None and least in chosen else None
    return InformationFrame(tokens, families, tables, truth=truth)


def F_on_morphism(f: MonotoneMap) -> ApproximableMapping:
    """
    F(f): X F(f)_i a iff a ≪' f(c) for some c ∈ X ∪ {i}.

    Raises:
        NotContinuousError: when f is not Scott continuous
    """
    if not is_scott_continuous(f):
        raise NotContinuousError("F needs a Scott-continuous map", f.as_dict())
    source = F_on_object(f.source)
    target = F_on_object(f.target)
    wb = f.target.approximation
    below_image = [
        mask_of(int(a) for a in np.flatnonzero(wb[:, f.graph[c]])) for c in range(f.source.n)
    ]
    tables = []
    for i in range(source.n):
        table = {}
        for X in source.consistent_sets(i):
            image = 0
            for c in members(X | bit(i)):
                image |= below_image[c]
            table[X] = image
        tables.append(table)
    return ApproximableMapping(source, target, tables)


def D_on_morphism(h: ApproximableMapping, source_domain: Optional[StateDomain] = None,
                  target_domain: Optional[StateDomain] = None) -> MonotoneMap:
    """
    D(H)(x) = { a : X H_i a for some i ∈ x and X ∈ Con_i with X ⊆ x }.

    Every image is checked to be a target state and the result to be Scott continuous.
    """
    source_domain = source_domain or induced_domain(h.source)
    target_domain = target_domain or induced_domain(h.target)
    frame = h.source
    images = []
    for state in source_domain.states:
        x = state.mask
        image = 0
        for i in members(x):
            for X in frame.consistent_sets(i):
                if X & ~x == 0:
                    image |= h.image(i, X)
        if not target_domain.contains(image):
            raise InternalInconsistencyError("D(H) image is not a state", h.target.show(image))
        images.append(target_domain.label(image))

    result = MonotoneMap(source_domain.poset, target_domain.poset, images)
    if not is_scott_continuous(result):
        raise InternalInconsistencyError("D(H) is not Scott continuous", result.as_dict())
    return result


def eta(frame: InformationFrame) -> FrameIsoPair:
    """
    S_A : A -> F(D(A)) with X S_i u iff u ≪ [X]_i, and T_A back with
    𝔛 T_u a iff a ∈ v for some v ≪ w, w ∈ 𝔛 ∪ {u}.
    """
    domain = induced_domain(frame)
    target = F_on_object(domain.poset)
    wb = domain.way_below
    count = len(domain.states)

    forward = []
    for i in range(frame.n):
        table = {}
        for X in frame.consistent_sets(i):
            principal = domain.index_of(frame.closure(i, X))
            table[X] = mask_of(u for u in range(count) if wb[u, principal])
        forward.append(table)

    backward = []
    for u in range(target.n):
        table = {}
        for family in target.consistent_sets(u):
            tokens = 0
            for w in members(family | bit(u)):
                for v in range(count):
                    if wb[v, w]:
                        tokens |= domain.states[v].mask
            table[family] = tokens
        backward.append(table)

    return FrameIsoPair(ApproximableMapping(frame, target, forward),
                        ApproximableMapping(target, frame, backward))


def check_eta_naturality(h: ApproximableMapping) -> ValidationReport:
    """η_A followed by F(D(H)) equals H followed by η_A'."""
    report = ValidationReport(subject="eta-naturality")
    left = eta(h.source).forward.then(F_on_morphism(D_on_morphism(h)))
    right = h.then(eta(h.target).forward)
    if left != right:
        report.add("eta-square")
    return report


@dataclass
class DomainIsoPair:
    """st : D -> D(F(D)) and sp back."""

    forward: MonotoneMap
    backward: MonotoneMap

    def check(self) -> ValidationReport:
        report = ValidationReport(subject="domain-iso")
        for name, f in (("forward", self.forward), ("backward", self.backward)):
            if not is_scott_continuous(f):
                report.add(f"{name} continuity")
        if self.forward.then(self.backward) != identity_map(self.forward.source):
            report.add("forward-then-backward")
        if self.backward.then(self.forward) != identity_map(self.backward.source):
            report.add("backward-then-forward")
        return report


def tau(poset: FinitePoset, domain: Optional[StateDomain] = None) -> DomainIsoPair:
    """
    st(x) = { a : a ≪ x } and sp(x) = ⊔x between D and D(F(D)).

    Every state of F(D) is checked to be directed in D.
    """
    domain = domain or induced_domain(F_on_object(poset))
    wb = poset.approximation
    st = [
        domain.label(mask_of(int(a) for a in np.flatnonzero(wb[:, x]))) for x in range(poset.n)
    ]
    sp: List[str] = []
    for state in domain.states:
        if not _is_directed(poset, state.mask):
            raise InternalInconsistencyError("state of F(D) is not directed", str(state))
        top = _lub_index(poset, state.mask)
        if top is None:
            raise InternalInconsistencyError("state of F(D) has no lub", str(state))
        sp.append(poset.elements[top])
    return DomainIsoPair(MonotoneMap(poset, domain.poset, st),
                         MonotoneMap(domain.poset, poset, sp))


def check_tau_naturality(f: MonotoneMap) -> ValidationReport:
    """
    st_D followed by D(F(f)) equals f followed by st_D', and D(F(f)) sends st(x)
    to { a : a ≪' f(i) for some i ≪ x }.
    """
    report = ValidationReport(subject="tau-naturality")
    source_domain = induced_domain(F_on_object(f.source))
    target_domain = induced_domain(F_on_object(f.target))
    lifted = D_on_morphism(F_on_morphism(f), source_domain, target_domain)
    st_source = tau(f.source, source_domain).forward
    st_target = tau(f.target, target_domain).forward
    if st_source.then(lifted) != f.then(st_target):
        report.add("tau-square")

    wb, wb_t = f.source.approximation, f.target.approximation
    for x in range(f.source.n):
        expected = 0
        for i in range(f.source.n):
            if wb[i, x]:
                expected |= mask_of(int(a) for a in np.flatnonzero(wb_t[:, f.graph[i]]))
        state_label = st_source(f.source.elements[x])
        if lifted(state_label) != target_domain.label(expected):
            report.add("lifted-formula", f.source.elements[x])
            break
    return report


__all__ = [
    "F_on_object", "F_on_morphism", "D_on_morphism", "eta", "tau", "DomainIsoPair",
    "check_eta_naturality", "check_tau_naturality",
]
