"""Approximable mappings between information frames."""
import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..errors import DerivedLemmaViolated, FrameMismatchError, FrameTypeError, InvalidStructureError
from ..frames import InformationFrame, _WitnessCollector, accessibility
from ..reports import ValidationReport
from ..utils.bitsets import bit, members, set_key, submasks
from .base import BaseMorphism

MAPPING_CONDITIONS = ("(a)", "(b)", "(c)", "(d)", "(e)")


class ApproximableMapping(BaseMorphism):
    """
    A family (H_i) of relations Con_i × A' between two frames.

    ``rel[i]`` maps every X ∈ Con_i to the mask of target tokens b with X H_i b.
    """

    def __init__(self, source: InformationFrame, target: InformationFrame,
                 rel: Sequence[Mapping[int, int]]):
        super().__init__(source, target)
        if len(rel) != source.n:
            raise FrameTypeError("a mapping needs one relation per source token")
        full = (1 << target.n) - 1
        tables = []
        for i in range(source.n):
            table = {X: 0 for X in source.con[i]}
            for X, image in rel[i].items():
                if X not in table:
                    raise FrameTypeError(
                        f"premise {source.show(X)} of {source.tokens[i]} is not in Con_{source.tokens[i]}")
                if image & ~full:
                    raise FrameTypeError("image leaves the target token range")
                table[X] = int(image)
            tables.append(table)
        self.rel: Tuple[Dict[int, int], ...] = tuple(tables)
        self._extension = tuple(tuple(sorted(table.items())) for table in tables)

    @classmethod
    def from_pairs(cls, source: InformationFrame, target: InformationFrame,
                   pairs: Iterable[Tuple[str, Iterable[str], str]]) -> "ApproximableMapping":
        """Build from (i, X, b) triples meaning X H_i b."""
        tables: List[Dict[int, int]] = [dict() for _ in range(source.n)]
        for i, X, b in pairs:
            table = tables[source.position(i)]
            key = source.mask(X)
            table[key] = table.get(key, 0) | bit(target.position(b))
        return cls(source, target, tables)

    def image(self, i: int, X: int) -> int:
        return self.rel[i].get(X, 0)

    def triples(self) -> List[Tuple[str, Tuple[str, ...], str]]:
        out = []
        for i in range(self.source.n):
            for X in self.source.consistent_sets(i):
                for b in members(self.image(i, X)):
                    out.append((self.source.tokens[i], self.source.labels(X), self.target.tokens[b]))
        return out

    def validate(self) -> ValidationReport:
        return validate_mapping(self)

    def then(self, other: "ApproximableMapping") -> "ApproximableMapping":
        return compose_mappings(self, other)

    def extension(self):
        return self._extension

    def __repr__(self) -> str:
        return f"ApproximableMapping({list(self.source.tokens)} -> {list(self.target.tokens)})"


def _reachable(h: ApproximableMapping, i: int, X: int) -> List[int]:
    """Targets [V]'_e over X ⊢_i {c} ∪ U, U H_c {e} ∪ V."""
    src, tgt = h.source, h.target
    entailed = src.closure(i, X)
    out = []
    for c in members(entailed):
        for U in src.consistent_sets(c):
            if U & ~entailed:
                continue
            image = h.image(c, U)
            for e in members(image):
                for V in tgt.consistent_sets(e):
                    if V & ~image == 0:
                        out.append(tgt.closure(e, V))
    return out


def validate_mapping(h: ApproximableMapping) -> ValidationReport:
    """
    Check the approximable-mapping conditions (a) to (e) exhaustively.

    Truth respect, ∅ H_t t', is reported in ``flags['respects_truth']`` when both
    frames designate a truth token, and is None otherwise.
    """
    src, tgt = h.source, h.target
    seen = _WitnessCollector()
    s, t = src.tokens, tgt.tokens

    for i in range(src.n):
        for X in src.consistent_sets(i):
            image = h.image(i, X)
            for k in members(image):
                for Y in tgt.consistent_sets(k):
                    gained = tgt.closure(k, Y) & ~image
                    if Y & ~image == 0 and gained:
                        b = members(gained)[0]
                        seen.offer("(a)", (X, Y), (i, k, b), (s[i], src.show(X), t[k], tgt.show(Y), t[b]))

            for X2 in src.consistent_sets(i):
                lost = image & ~h.image(i, X2)
                if X & ~X2 == 0 and lost:
                    b = members(lost)[0]
                    seen.offer("(b)", (X, X2), (i, b), (s[i], src.show(X), src.show(X2), t[b]))

            entailed = src.closure(i, X)
            for X2 in src.consistent_sets(i):
                gained = h.image(i, X2) & ~image
                if X2 & ~entailed == 0 and gained:
                    b = members(gained)[0]
                    seen.offer("(c)", (X, X2), (i, b), (s[i], src.show(X), src.show(X2), t[b]))

    reach = accessibility(src)
    for i, j in itertools.product(range(src.n), repeat=2):
        if not reach[i, j]:
            continue
        for X in src.consistent_sets(i):
            lost = h.image(i, X) & ~h.image(j, X)
            if lost:
                b = members(lost)[0]
                seen.offer("(d)", (X,), (i, j, b), (s[i], s[j], src.show(X), t[b]))

    for i in range(src.n):
        for X in src.consistent_sets(i):
            image = h.image(i, X)
            targets = _reachable(h, i, X)
            if any(image & ~target == 0 for target in targets):
                continue
            F = next(F for F in sorted(submasks(image), key=set_key)
                     if not any(F & ~target == 0 for target in targets))
            seen.offer("(e)", (X, F), (i,), (s[i], src.show(X), tgt.show(F)))

    report = ValidationReport(subject="mapping")
    seen.fill(report, MAPPING_CONDITIONS)
    report.flags['respects_truth'] = respects_truth(h)
    return report


def respects_truth(h: ApproximableMapping) -> Optional[bool]:
    if h.source.truth is None or h.target.truth is None:
        return None
    t = h.source.position(h.source.truth)
    return bool(h.image(t, 0) & bit(h.target.position(h.target.truth)))


def identity_mapping(frame: InformationFrame) -> ApproximableMapping:
    """Id_A: H_i is ⊢_i itself."""
    return ApproximableMapping(frame, frame, frame.ent)


def compose_mappings(g: ApproximableMapping, h: ApproximableMapping) -> ApproximableMapping:
    """
    Diagrammatic composite, g first: X (g∘h)_i a iff X g_i {e} ∪ V and V h_e a.

    Raises:
        FrameMismatchError: when g's target is not h's source
    """
    if g.target != h.source:
        raise FrameMismatchError("mappings do not compose: target and source frames differ")
    src, middle = g.source, g.target
    tables = []
    for i in range(src.n):
        table = {}
        for X in src.consistent_sets(i):
            image = g.image(i, X)
            result = 0
            for e in members(image):
                for V in middle.consistent_sets(e):
                    if V & ~image == 0:
                        result |= h.image(e, V)
            table[X] = result
        tables.append(table)
    return ApproximableMapping(src, h.target, tables)


def ensure_valid_mapping(h: ApproximableMapping) -> ValidationReport:
    report = validate_mapping(h)
    if not report.valid:
        raise InvalidStructureError(
            "mapping is not approximable: " + ", ".join(str(v) for v in report.violations), report)
    return report


def check_mapping_lemmas(h: ApproximableMapping) -> ValidationReport:
    """
    Verify split interpolation (both halves) and the strengthened cut rule.

    Raises:
        DerivedLemmaViolated: on any counterexample
    """
    ensure_valid_mapping(h)
    src, tgt = h.source, h.target
    s = src.tokens
    for i in range(src.n):
        for X in src.consistent_sets(i):
            entailed = src.closure(i, X)
            image = h.image(i, X)

            if not any(
                U & ~entailed == 0 and image & ~h.image(c, U) == 0
                for c in members(entailed) for U in src.consistent_sets(c)
            ):
                raise DerivedLemmaViolated("split interpolation (1) fails", s[i], src.show(X))

            if not any(
                V & ~image == 0 and image & ~tgt.closure(e, V) == 0
                for e in members(image) for V in tgt.consistent_sets(e)
            ):
                raise DerivedLemmaViolated("split interpolation (2) fails", s[i], src.show(X))

            for j in members(entailed):
                for Y in src.consistent_sets(j):
                    if Y & ~entailed == 0 and h.image(j, Y) & ~image:
                        raise DerivedLemmaViolated(
                            "strengthened cut fails", s[i], src.show(X), s[j], src.show(Y))

    report = ValidationReport(subject="mapping-lemmas")
    report.flags['checked'] = ["split-interpolation-1", "split-interpolation-2", "strengthened-cut"]
    return report


@dataclass
class FrameIsoPair:
    """Mutually inverse approximable mappings."""

    forward: ApproximableMapping
    backward: ApproximableMapping

    def check(self) -> ValidationReport:
        """Both directions approximable, and both roundtrips equal to the identities."""
        report = ValidationReport(subject="frame-iso")
        forward = validate_mapping(self.forward)
        backward = validate_mapping(self.backward)
        report.merge(forward, "forward ")
        report.merge(backward, "backward ")
        if self.forward.then(self.backward) != identity_mapping(self.forward.source):
            report.add("forward-then-backward")
        if self.backward.then(self.forward) != identity_mapping(self.backward.source):
            report.add("backward-then-forward")
        report.flags.update({
            'forward_respects_truth': forward.flags['respects_truth'],
            'backward_respects_truth': backward.flags['respects_truth'],
        })
        return report


__all__ = [
    "ApproximableMapping", "FrameIsoPair", "MAPPING_CONDITIONS", "validate_mapping",
    "identity_mapping", "compose_mappings", "check_mapping_lemmas", "respects_truth",
    "ensure_valid_mapping",
]
