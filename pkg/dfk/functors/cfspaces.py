"""The functors C and E between CF-approximation spaces and frames, and δ and γ."""
from typing import List, Optional, Tuple

import numpy as np

from ..config import Config, default_config
from ..errors import EmptyFamilyError, SizeExceededError
from ..frames import InformationFrame
from ..morphisms.mappings import ApproximableMapping, FrameIsoPair
from ..morphisms.relations import CFRelation, RelationIsoPair
from ..reports import ValidationReport
from ..rough import CFSpace, m_witnesses
from ..utils.bitsets import bit, mask_of, members, submasks


def family_label(space: CFSpace, F: int) -> str:
    """Token id of a family member in C(U): ``<u0,u1>``, ``<>`` for ∅."""
    return "<" + ",".join(space.labels(F)) + ">"


def pair_label(frame: InformationFrame, i: int, X: int) -> str:
    """Universe id of (X, i) in E(A): ``(x,y|i)``."""
    return "(" + ",".join(frame.labels(X)) + "|" + frame.tokens[i] + ")"


def frame_pairs(frame: InformationFrame) -> List[Tuple[int, int]]:
    """The universe of E(A) as (i, X) pairs, by token then by (size, lexicographic)."""
    return [(i, X) for i in range(frame.n) for X in frame.consistent_sets(i)]


def C_on_object(space: CFSpace) -> InformationFrame:
    """
    C(U): tokens are the members of 𝔉, Con_F = {{F}} ∪ P({G : G ⊆ Θ̄(F)}) and
    𝔛 ⊩_F G iff G ⊆ Θ̄(E) for some E ∈ 𝔛 ∪ {F}.

    The first (M) witness, if any, is designated truth.

    Raises:
        EmptyFamilyError: when 𝔉 is empty
    """
    if not space.family:
        raise EmptyFamilyError("C(U) needs a nonempty family")
    family = space.family
    admissible = []
    for F in family:
        upper = space.upper(F)
        admissible.append(mask_of(g for g, G in enumerate(family) if G & ~upper == 0))

    families = []
    tables = []
    for k in range(len(family)):
        con = {bit(k)} | set(submasks(admissible[k]))
        table = {}
        for chosen in con:
            entailed = 0
            for e in members(chosen | bit(k)):
                entailed |= admissible[e]
            table[chosen] = entailed
        families.append(con)
        tables.append(table)

    witnesses = m_witnesses(space)
    truth = family_label(space, witnesses[0]) if witnesses else None
    return InformationFrame([family_label(space, F) for F in family], families, tables, truth=truth)


def C_on_morphism(d: CFRelation) -> ApproximableMapping:
    """H^Δ: 𝔛 H_F G iff Z Δ G for some Z ∈ 𝔛 ∪ {F}."""
    source = C_on_object(d.source)
    target = C_on_object(d.target)
    related = [
        mask_of(g for g, G in enumerate(d.target.family) if d.related(F, G))
        for F in d.source.family
    ]
    tables = []
    for k in range(source.n):
        table = {}
        for chosen in source.consistent_sets(k):
            image = 0
            for z in members(chosen | bit(k)):
                image |= related[z]
            table[chosen] = image
        tables.append(table)
    return ApproximableMapping(source, target, tables)


def E_on_object(frame: InformationFrame) -> CFSpace:
    """
    E(A): universe the pairs (X, i) with X ∈ Con_i, (X,i) Θ (Y,j) iff Y ⊢_j {i} ∪ X,
    and 𝔉 the singletons.
    """
    pairs = frame_pairs(frame)
    size = len(pairs)
    theta = np.zeros((size, size), dtype=bool)
    for p, (i, X) in enumerate(pairs):
        for q, (j, Y) in enumerate(pairs):
            theta[p, q] = (bit(i) | X) & ~frame.closure(j, Y) == 0
    universe = [pair_label(frame, i, X) for i, X in pairs]
    return CFSpace(universe, theta, [bit(p) for p in range(size)])


def E_on_morphism(h: ApproximableMapping) -> CFRelation:
    """Δ_H: {(X,i)} Δ {(Y,j)} iff X H_i {j} ∪ Y."""
    source = E_on_object(h.source)
    target = E_on_object(h.target)
    left = frame_pairs(h.source)
    right = frame_pairs(h.target)
    return CFRelation(source, target, [
        (bit(p), bit(q))
        for p, (i, X) in enumerate(left)
        for q, (j, Y) in enumerate(right)
        if (bit(j) | Y) & ~h.image(i, X) == 0
    ])


def _check_space_caps(space: CFSpace, config: Optional[Config]):
    config = config or default_config()
    if space.n > config.limit('universe') or len(space.family) > config.limit('family'):
        raise SizeExceededError(
            f"E(C(U)) needs |U| <= {config.limit('universe')} and |F| <= {config.limit('family')}",
            space.n, len(space.family))


def _check_frame_caps(frame: InformationFrame, config: Optional[Config]):
    config = config or default_config()
    largest = max((len(con) for con in frame.con), default=0)
    if frame.n > config.limit('frame_tokens') or largest > config.limit('con_size'):
        raise SizeExceededError(
            f"C(E(A)) needs |A| <= {config.limit('frame_tokens')} and |Con_i| <= {config.limit('con_size')}",
            frame.n, largest)


def delta(space: CFSpace, config: Optional[Config] = None) -> RelationIsoPair:
    """
    Υ_U : U -> E(C(U)) with F Υ {(𝔜,G)} iff every K ∈ {G} ∪ 𝔜 has K ⊆ Θ̄(F), and
    Γ_U back with {(𝔛,F)} Γ G iff G ⊆ Θ̄(K) for some K ∈ {F} ∪ 𝔛.

    Raises:
        SizeExceededError: beyond the universe and family caps
    """
    _check_space_caps(space, config)
    tokens = C_on_object(space)
    roundtrip = E_on_object(tokens)
    family = space.family
    pairs = frame_pairs(tokens)

    def involved(k: int, chosen: int) -> List[int]:
        return [family[z] for z in members(chosen | bit(k))]

    upsilon = [
        (F, bit(p))
        for F in family
        for p, (k, chosen) in enumerate(pairs)
        if all(K & ~space.upper(F) == 0 for K in involved(k, chosen))
    ]
    gamma_pairs = [
        (bit(p), G)
        for p, (k, chosen) in enumerate(pairs)
        for G in family
        if any(G & ~space.upper(K) == 0 for K in involved(k, chosen))
    ]
    return RelationIsoPair(CFRelation(space, roundtrip, upsilon),
                           CFRelation(roundtrip, space, gamma_pairs))


def gamma(frame: InformationFrame, config: Optional[Config] = None) -> FrameIsoPair:
    """
    Q_A : A -> C(E(A)) with X Q_i {(Y,j)} iff X ⊢_i {j} ∪ Y, and P_A back with
    𝔛 P_(X,i) a iff Z ⊢_c a for some (Z,c) ∈ 𝔛 ∪ {(X,i)}.

    Raises:
        SizeExceededError: beyond the token and consistency-family caps
    """
    _check_frame_caps(frame, config)
    target = C_on_object(E_on_object(frame))
    pairs = frame_pairs(frame)

    forward = []
    for i in range(frame.n):
        table = {}
        for X in frame.consistent_sets(i):
            entailed = frame.closure(i, X)
            table[X] = mask_of(q for q, (j, Y) in enumerate(pairs) if (bit(j) | Y) & ~entailed == 0)
        forward.append(table)

    backward = []
    for k in range(target.n):
        table = {}
        for chosen in target.consistent_sets(k):
            tokens = 0
            for q in members(chosen | bit(k)):
                c, Z = pairs[q]
                tokens |= frame.closure(c, Z)
            table[chosen] = tokens
        backward.append(table)

    return FrameIsoPair(ApproximableMapping(frame, target, forward),
                        ApproximableMapping(target, frame, backward))


def check_delta_naturality(d: CFRelation, config: Optional[Config] = None) -> ValidationReport:
    """δ_U followed by E(C(Δ)) equals Δ followed by δ_U'."""
    report = ValidationReport(subject="delta-naturality")
    left = delta(d.source, config).forward.then(E_on_morphism(C_on_morphism(d)))
    right = d.then(delta(d.target, config).forward)
    if left != right:
        report.add("delta-square")
    return report


def check_gamma_naturality(h: ApproximableMapping, config: Optional[Config] = None) -> ValidationReport:
    """γ_A followed by C(E(H)) equals H followed by γ_A'."""
    report = ValidationReport(subject="gamma-naturality")
    left = gamma(h.source, config).forward.then(C_on_morphism(E_on_morphism(h)))
    right = h.then(gamma(h.target, config).forward)
    if left != right:
        report.add("gamma-square")
    return report


def lifted_relation(d: CFRelation) -> CFRelation:
    """
    E(C(Δ)) written out directly: {(𝔛,F)} Δ̃ {(𝔜,G)} iff every K ∈ 𝔜 ∪ {G} has
    some L ∈ 𝔛 ∪ {F} with L Δ K.
    """
    source_tokens = C_on_object(d.source)
    target_tokens = C_on_object(d.target)
    left = frame_pairs(source_tokens)
    right = frame_pairs(target_tokens)
    fam, fam_t = d.source.family, d.target.family
    return CFRelation(E_on_object(source_tokens), E_on_object(target_tokens), [
        (bit(p), bit(q))
        for p, (k, chosen) in enumerate(left)
        for q, (m, wanted) in enumerate(right)
        if all(any(d.related(fam[z], fam_t[w]) for z in members(chosen | bit(k)))
               for w in members(wanted | bit(m)))
    ])


__all__ = [
    "C_on_object", "C_on_morphism", "E_on_object", "E_on_morphism", "delta", "gamma",
    "check_delta_naturality", "check_gamma_naturality", "lifted_relation",
    "family_label", "pair_label", "frame_pairs",
]
