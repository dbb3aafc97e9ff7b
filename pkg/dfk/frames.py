"""Information frames: representation, axiom validation, classifiers and derived lemmas."""
import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    DerivedLemmaViolated,
    FrameTypeError,
    InvalidStructureError,
    NotValidatedError,
    UnknownTokenError,
)
from .reports import ValidationReport
from .utils.bitsets import bit, format_set, mask_of, members, popcount, set_key, sorted_masks, submasks


FRAME_CONDITIONS = (
    "self-consistency",
    "consistency-preservation",
    "soundness",
    "weakening",
    "cut",
    "consistency-transfer",
    "entailment-transfer",
    "interpolation",
)


class InformationFrame:
    """
    Tokens with a consistency family Con_i and an entailment relation ⊢_i per token.

    Token subsets are int bitmasks over token positions. ``ent[i]`` maps every
    X ∈ Con_i to the mask of tokens a with X ⊢_i a, so [X]_i is a lookup.
    The designated ``truth`` token is metadata and takes no part in equality.
    """

    def __init__(self, tokens: Sequence[str], con: Sequence[Iterable[int]],
                 ent: Sequence[Mapping[int, int]], truth: Optional[str] = None):
        tokens = tuple(str(token) for token in tokens)
        n = len(tokens)
        if len(set(tokens)) != n:
            raise FrameTypeError(f"duplicate token ids in {tokens}")
        if len(con) != n or len(ent) != n:
            raise FrameTypeError("con and ent must be given for exactly the tokens")

        full = (1 << n) - 1
        families = []
        closures = []
        for i in range(n):
            family = frozenset(int(X) for X in con[i])
            for X in family:
                if X & ~full or X < 0:
                    raise FrameTypeError(f"consistent set {X:#b} of {tokens[i]} leaves the token range")
            table = {X: 0 for X in family}
            for X, entailed in ent[i].items():
                if X not in family:
                    raise FrameTypeError(
                        f"entailment premise {format_set(X, tokens)} of {tokens[i]} "
                        f"is not in Con_{tokens[i]}")
                if entailed & ~full:
                    raise FrameTypeError(f"entailed set of {tokens[i]} leaves the token range")
                table[X] = int(entailed)
            families.append(family)
            closures.append(table)

        if truth is not None and truth not in tokens:
            raise UnknownTokenError(truth)

        self.tokens: Tuple[str, ...] = tokens
        self.n = n
        self.con: Tuple[FrozenSet[int], ...] = tuple(families)
        self.ent: Tuple[Dict[int, int], ...] = tuple(closures)
        self.truth = truth
        self.index: Dict[str, int] = {token: k for k, token in enumerate(tokens)}
        self._sorted_con = tuple(sorted_masks(family) for family in families)
        self._hash = hash((tokens, self.con, tuple(tuple(sorted(t.items())) for t in closures)))
        self._report: Optional["FrameReport"] = None

    @classmethod
    def from_sets(cls, tokens: Sequence[str], con: Mapping[str, Iterable[Iterable[str]]],
                  ent: Mapping[str, Iterable[Tuple[Iterable[str], str]]],
                  truth: Optional[str] = None) -> "InformationFrame":
        """
        Build a frame from id-level data.

        Args:
            tokens: Token ids in order
            con: Per token, its consistent sets as iterables of ids
            ent: Per token, pairs (X, a) meaning X ⊢_i a
            truth: Optional designated truth token
        """
        index = {token: k for k, token in enumerate(tokens)}

        def to_mask(ids: Iterable[str]) -> int:
            mask = 0
            for token in ids:
                if token not in index:
                    raise UnknownTokenError(token)
                mask |= bit(index[token])
            return mask

        for token in list(con) + list(ent):
            if token not in index:
                raise UnknownTokenError(token)

        families = [[to_mask(X) for X in con.get(token, ())] for token in tokens]
        tables: List[Dict[int, int]] = []
        for token in tokens:
            table: Dict[int, int] = {}
            for X, a in ent.get(token, ()):
                key = to_mask(X)
                table[key] = table.get(key, 0) | to_mask([a])
            tables.append(table)
        return cls(tokens, families, tables, truth=truth)

    def position(self, token: str) -> int:
        try:
            return self.index[token]
        except KeyError:
            raise UnknownTokenError(token) from None

    def mask(self, ids: Iterable[str]) -> int:
        return mask_of(self.position(token) for token in ids)

    def labels(self, mask: int) -> Tuple[str, ...]:
        return tuple(self.tokens[k] for k in members(mask))

    def show(self, mask: int) -> str:
        return format_set(mask, self.tokens)

    def closure(self, i: int, X: int) -> int:
        """[X]_i as a mask; empty when X ∉ Con_i."""
        return self.ent[i].get(X, 0)

    def entails(self, i: int, X: int, Y: int) -> bool:
        """X ⊢_i b for every b ∈ Y (vacuous for Y = ∅)."""
        return Y & ~self.closure(i, X) == 0

    def consistent_sets(self, i: int) -> List[int]:
        """Con_i in (size, lexicographic) order."""
        return self._sorted_con[i]

    @property
    def validated(self) -> bool:
        return self._report is not None and self._report.valid

    def with_truth(self, truth: Optional[str]) -> "InformationFrame":
        return InformationFrame(self.tokens, self.con, self.ent, truth=truth)

    def __eq__(self, other) -> bool:
        if not isinstance(other, InformationFrame):
            return NotImplemented
        return (self._hash == other._hash and self.tokens == other.tokens
                and self.con == other.con and self.ent == other.ent)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"InformationFrame(tokens={list(self.tokens)})"


@dataclass(frozen=True)
class FrameProperties:
    """The (C), (AL), (S) and (T) classifier results."""

    conservative: bool
    algebraic: bool
    strong: bool
    truth: Tuple[str, ...] = ()

    def names(self) -> List[str]:
        return [name for name in ("strong", "algebraic", "conservative") if getattr(self, name)]


@dataclass
class FrameReport(ValidationReport):
    properties: Optional[FrameProperties] = field(default=None)


class _WitnessCollector:
    """Keeps the minimal witness per condition under (total set size, lexicographic)."""

    def __init__(self):
        self.best: Dict[str, Tuple[tuple, tuple]] = {}

    def offer(self, condition: str, sets: Sequence[int], tokens: Sequence[int], witness: tuple):
        key = (sum(popcount(s) for s in sets), tuple(set_key(s) for s in sets), tuple(tokens))
        current = self.best.get(condition)
        if current is None or key < current[0]:
            self.best[condition] = (key, witness)

    def fill(self, report: ValidationReport, order: Sequence[str]):
        for condition in order:
            if condition in self.best:
                report.add(condition, *self.best[condition][1])


def accessibility(frame: InformationFrame) -> np.ndarray:
    """R[i, j] ⇔ {i} ∈ Con_j."""
    relation = np.zeros((frame.n, frame.n), dtype=bool)
    for i, j in itertools.product(range(frame.n), repeat=2):
        relation[i, j] = bit(i) in frame.con[j]
    return relation


def validate_frame(frame: InformationFrame) -> FrameReport:
    """
    Check the eight frame conditions exhaustively.

    Every violated condition is reported once, with its minimal witness. When
    the frame is valid the report carries its classifier properties and the
    frame is marked validated.
    """
    seen = _WitnessCollector()
    t = frame.tokens
    show = frame.show

    for i in range(frame.n):
        family = frame.con[i]
        if bit(i) not in family:
            seen.offer("self-consistency", (), (i,), (t[i],))
        for X in frame.consistent_sets(i):
            for Y in submasks(X):
                if Y != X and Y not in family:
                    seen.offer("consistency-preservation", (Y, X), (i,), (t[i], show(Y), show(X)))

            entailed = frame.closure(i, X)
            for Y in submasks(entailed):
                if Y not in family:
                    seen.offer("soundness", (X, Y), (i,), (t[i], show(X), show(Y)))

            for Y in frame.consistent_sets(i):
                lost = entailed & ~frame.closure(i, Y)
                if X & ~Y == 0 and lost:
                    a = members(lost)[0]
                    seen.offer("weakening", (X, Y), (i, a), (t[i], show(X), show(Y), t[a]))

            for Y in submasks(entailed):
                if Y in family:
                    gained = frame.closure(i, Y) & ~entailed
                    if gained:
                        a = members(gained)[0]
                        seen.offer("cut", (X, Y), (i, a), (t[i], show(X), show(Y), t[a]))

    reach = accessibility(frame)
    for i, j in itertools.product(range(frame.n), repeat=2):
        if not reach[i, j]:
            continue
        for X in frame.consistent_sets(i):
            if X not in frame.con[j]:
                seen.offer("consistency-transfer", (X,), (i, j), (t[i], t[j], show(X)))
            lost = frame.closure(i, X) & ~frame.closure(j, X)
            if lost:
                a = members(lost)[0]
                seen.offer("entailment-transfer", (X,), (i, j, a), (t[i], t[j], show(X), t[a]))

    for i in range(frame.n):
        for X in frame.consistent_sets(i):
            Y = _interpolation_failure(frame, i, X)
            if Y is not None:
                seen.offer("interpolation", (X, Y), (i,), (t[i], show(X), show(Y)))

    report = FrameReport(subject="frame")
    seen.fill(report, FRAME_CONDITIONS)

    if frame.truth is not None and frame.truth not in truth_elements(frame):
        report.add("truth-metadata", frame.truth)

    if report.valid:
        report.properties = _compute_properties(frame)
        report.flags.update({
            'conservative': report.properties.conservative,
            'algebraic': report.properties.algebraic,
            'strong': report.properties.strong,
            'truth': list(report.properties.truth),
        })
    frame._report = report
    return report


def _interpolation_failure(frame: InformationFrame, i: int, X: int) -> Optional[int]:
    """Smallest Y ⊆ [X]_i with no interpolant (e, Z), or None."""
    entailed = frame.closure(i, X)
    reachable = [
        frame.closure(e, Z)
        for e in members(entailed)
        for Z in frame.consistent_sets(e)
        if Z & ~entailed == 0
    ]
    # a larger Y is harder to interpolate, so testing [X]_i decides all Y
    if any(entailed & ~target == 0 for target in reachable):
        return None
    for Y in sorted(submasks(entailed), key=set_key):
        if not any(Y & ~target == 0 for target in reachable):
            return Y
    return entailed


def truth_elements(frame: InformationFrame) -> Tuple[str, ...]:
    """Tokens t with ∅ ⊢_i t for every i."""
    common = (1 << frame.n) - 1
    for i in range(frame.n):
        common &= frame.closure(i, 0)
    return frame.labels(common)


def _compute_properties(frame: InformationFrame) -> FrameProperties:
    reach = accessibility(frame)
    conservative = all(
        frame.closure(j, X) & ~frame.closure(i, X) == 0
        for i, j in itertools.product(range(frame.n), repeat=2) if reach[i, j]
        for X in frame.consistent_sets(i)
    )
    algebraic = all(
        (bit(i) | X) & ~frame.closure(i, X) == 0
        for i in range(frame.n) for X in frame.consistent_sets(i)
    )
    strong = all(
        X & ~frame.closure(i, bit(i)) == 0
        for i in range(frame.n) for X in frame.consistent_sets(i) if X != bit(i)
    )
    return FrameProperties(conservative, algebraic, strong, truth_elements(frame))


def classify_frame(frame: InformationFrame) -> FrameProperties:
    """
    Conservative, algebraic and strong flags plus the truth elements.

    Raises:
        NotValidatedError: unless validate_frame has accepted the frame
    """
    if not frame.validated:
        raise NotValidatedError("classify_frame needs a frame accepted by validate_frame")
    return frame._report.properties


def ensure_valid(frame: InformationFrame) -> FrameReport:
    """Validate once; raise InvalidStructureError when the frame fails."""
    report = frame._report if frame._report is not None else validate_frame(frame)
    if not report.valid:
        raise InvalidStructureError(
            "frame is not valid: " + ", ".join(str(v) for v in report.violations), report)
    return report


def check_derived_lemmas(frame: InformationFrame) -> ValidationReport:
    """
    Verify strong cut, both local interpolation rules and the soundness corollary.

    Raises:
        DerivedLemmaViolated: on any counterexample; never expected on valid frames
    """
    ensure_valid(frame)
    t = frame.tokens
    show = frame.show
    for i in range(frame.n):
        for X in frame.consistent_sets(i):
            entailed = frame.closure(i, X)

            # X ⊢_i {j} ∪ Y and Y ⊢_j a give X ⊢_i a
            for j in members(entailed):
                for Y in frame.consistent_sets(j):
                    gained = frame.closure(j, Y) & ~entailed
                    if Y & ~entailed == 0 and gained:
                        raise DerivedLemmaViolated(
                            "strong cut fails", t[i], show(X), t[j], show(Y), t[members(gained)[0]])

            if not any(
                Z & ~entailed == 0 and entailed & ~frame.closure(i, Z) == 0
                for Z in frame.consistent_sets(i)
            ):
                raise DerivedLemmaViolated("local interpolation (1) fails", t[i], show(X))

            if not any(entailed in frame.con[e] for e in members(entailed)):
                raise DerivedLemmaViolated("local interpolation (2) fails", t[i], show(X))

            for a in members(entailed):
                if bit(a) not in frame.con[i]:
                    raise DerivedLemmaViolated("soundness corollary fails", t[i], show(X), t[a])

    report = ValidationReport(subject="derived-lemmas")
    report.flags['checked'] = ["strong-cut", "local-interpolation-1", "local-interpolation-2",
                               "soundness-corollary"]
    return report


def restrict(frame: InformationFrame, keep: int) -> InformationFrame:
    """The sub-frame on the tokens in keep, dropping sets that mention other tokens."""
    kept = members(keep)
    position = {old: new for new, old in enumerate(kept)}

    def remap(mask: int) -> int:
        return mask_of(position[k] for k in members(mask & keep))

    families = []
    tables = []
    for old in kept:
        family = [X for X in frame.con[old] if X & ~keep == 0]
        families.append([remap(X) for X in family])
        tables.append({remap(X): remap(frame.closure(old, X)) for X in family})
    truth = frame.truth if frame.truth is not None and frame.index[frame.truth] in position else None
    return InformationFrame([frame.tokens[k] for k in kept], families, tables, truth=truth)


__all__ = [
    "InformationFrame", "FrameReport", "FrameProperties", "FRAME_CONDITIONS", "accessibility",
    "validate_frame", "classify_frame", "check_derived_lemmas", "truth_elements",
    "ensure_valid", "restrict",
]
