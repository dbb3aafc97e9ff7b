"""CF-approximable relations between CF-approximation spaces."""
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Tuple

from ..errors import DFKError, SpaceMismatchError
from ..reports import ValidationReport
from ..rough import CFSpace
from .base import BaseMorphism

RELATION_CONDITIONS = ("(1)", "(2)", "(3)", "(4)", "(5)")


class CFRelation(BaseMorphism):
    """A relation Δ ⊆ 𝔉 × 𝔉' held as pairs of family masks."""

    def __init__(self, source: CFSpace, target: CFSpace, pairs: Iterable[Tuple[int, int]]):
        super().__init__(source, target)
        pairs = frozenset((int(F), int(G)) for F, G in pairs)
        source_family, target_family = set(source.family), set(target.family)
        for F, G in pairs:
            if F not in source_family or G not in target_family:
                raise DFKError(f"pair ({source.show(F)}, {target.show(G)}) leaves the families")
        self.pairs: FrozenSet[Tuple[int, int]] = pairs

    @classmethod
    def from_sets(cls, source: CFSpace, target: CFSpace,
                  pairs: Iterable[Tuple[Iterable[str], Iterable[str]]]) -> "CFRelation":
        return cls(source, target, [(source.mask(F), target.mask(G)) for F, G in pairs])

    def related(self, F: int, G: int) -> bool:
        return (F, G) in self.pairs

    def sorted_pairs(self) -> List[Tuple[int, int]]:
        src_order = {F: k for k, F in enumerate(self.source.family)}
        tgt_order = {G: k for k, G in enumerate(self.target.family)}
        return sorted(self.pairs, key=lambda pair: (src_order[pair[0]], tgt_order[pair[1]]))

    def validate(self) -> ValidationReport:
        return validate_cf_relation(self)

    def then(self, other: "CFRelation") -> "CFRelation":
        return compose_cf(self, other)

    def extension(self):
        return self.pairs

    def __repr__(self) -> str:
        shown = [(self.source.show(F), self.target.show(G)) for F, G in self.sorted_pairs()]
        return f"CFRelation({shown})"


def validate_cf_relation(d: CFRelation) -> ValidationReport:
    """Check conditions (1) to (5) exhaustively; the first witness per condition is reported."""
    src, tgt = d.source, d.target
    up = {F: src.upper(F) for F in src.family}
    up_t = {G: tgt.upper(G) for G in tgt.family}
    report = ValidationReport(subject="cfrelation")
    ordered = d.sorted_pairs()

    def first(condition: str, witnesses):
        witness = next(iter(witnesses), None)
        if witness is not None:
            report.add(condition, *witness)

    first("(1)", ((src.show(F),) for F in src.family
                  if not any(d.related(F, G) for G in tgt.family)))
    first("(2)", ((src.show(F), src.show(F2), tgt.show(G))
                  for F, G in ordered for F2 in src.family
                  if F & ~up[F2] == 0 and not d.related(F2, G)))
    first("(3)", ((src.show(F), tgt.show(G), tgt.show(G2))
                  for F, G in ordered for G2 in tgt.family
                  if G2 & ~up_t[G] == 0 and not d.related(F, G2)))
    first("(4)", ((src.show(F), tgt.show(G))
                  for F, G in ordered
                  if not any(F_hat & ~up[F] == 0 and G & ~up_t[G_hat] == 0
                             for F_hat, G_hat in d.pairs)))
    first("(5)", ((src.show(F), tgt.show(G), tgt.show(G2))
                  for F, G in ordered for F2, G2 in ordered
                  if F2 == F and not any((G | G2) & ~up_t[G_hat] == 0 and d.related(F, G_hat)
                                         for G_hat in tgt.family)))
    return report


def identity_cf(space: CFSpace) -> CFRelation:
    """F Id G ⇔ G ⊆ Θ̄(F)."""
    return CFRelation(space, space, [
        (F, G) for F in space.family for G in space.family if G & ~space.upper(F) == 0
    ])


def compose_cf(d: CFRelation, o: CFRelation) -> CFRelation:
    """
    Diagrammatic composite, d first: F (d∘o) G iff F d E and E o G for some E.

    Raises:
        SpaceMismatchError: when d's target is not o's source
    """
    if d.target != o.source:
        raise SpaceMismatchError("relations do not compose: target and source spaces differ")
    return CFRelation(d.source, o.target, [
        (F, G) for F, E in d.pairs for E2, G in o.pairs if E == E2
    ])


@dataclass
class RelationIsoPair:
    """Mutually inverse CF-approximable relations."""

    forward: CFRelation
    backward: CFRelation

    def check(self) -> ValidationReport:
        report = ValidationReport(subject="cf-iso")
        report.merge(validate_cf_relation(self.forward), "forward ")
        report.merge(validate_cf_relation(self.backward), "backward ")
        if self.forward.then(self.backward) != identity_cf(self.forward.source):
            report.add("forward-then-backward")
        if self.backward.then(self.forward) != identity_cf(self.backward.source):
            report.add("backward-then-forward")
        return report


__all__ = [
    "CFRelation", "RelationIsoPair", "RELATION_CONDITIONS", "validate_cf_relation",
    "identity_cf", "compose_cf",
]
