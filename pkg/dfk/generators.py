"""
Exhaustive and seeded-random generation of small structures, plus shrinking.

Every stream is deterministic: the exhaustive streams follow a fixed nesting
order and the random streams draw from a seeded xoshiro256** generator.
Candidate consistent sets are limited to at most two tokens during frame
enumeration, so the frame sweeps cover that slice of the frame space only.
"""
import itertools
import logging
from dataclasses import dataclass, fields
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, TypeVar, Union

import numpy as np

from .config import Config, default_config
from .errors import BoundExceededError, DFKError
from .frames import InformationFrame, accessibility, restrict, validate_frame
from .morphisms.mappings import ApproximableMapping, validate_mapping
from .morphisms.relations import CFRelation, validate_cf_relation
from .order import FinitePoset, MonotoneMap, constant_map
from .rough import CFSpace, validate_cf_space
from .utils.bitsets import bit, members, popcount, sorted_masks, submasks
from .utils.prng import Xoshiro256

logger = logging.getLogger(__name__)

T = TypeVar("T")

# Rejection-sampling budget per requested random structure
ATTEMPTS_PER_ITEM = 200

# Largest consistent set tried while enumerating frames
MAX_CANDIDATE_SET = 2

# Frames (tokens) and CF-spaces (universe and family) up to this size get
# every morphism enumerated
MAX_EXHAUSTIVE_MORPHISM = 2


@dataclass
class GenBounds:
    """Caps and mode for a generation run."""

    max_tokens: int = 2
    max_elements: int = 3
    max_family: int = 2
    max_universe: int = 2
    max_con: int = 4
    seed: int = 0
    mode: str = "exhaustive"
    count: int = 10
    raw: bool = False
    order_elements: Optional[int] = None

    _KEYS = {
        'tokens': 'max_tokens',
        'elements': 'max_elements',
        'order': 'order_elements',
        'family': 'max_family',
        'universe': 'max_universe',
        'con': 'max_con',
    }

    @classmethod
    def acceptance(cls) -> "GenBounds":
        """
        Bounds for the full equivalence sweep: frames up to three tokens, posets
        up to five elements (four for the way-below collapse), CF-spaces up to
        three points and 200 random morphisms per law.
        """
        return cls(max_tokens=3, max_elements=5, order_elements=4, max_family=3,
                   max_universe=3, max_con=4, count=200)

    @classmethod
    def parse(cls, text: str, base: Optional["GenBounds"] = None, **overrides) -> "GenBounds":
        """
        Parse ``tokens=2,elements=3,family=2,universe=2,con=4``; missing keys keep
        the values of `base` (the defaults when omitted).

        Raises:
            DFKError: on an unknown key or a non-integer value
        """
        values: Dict[str, object] = base.as_dict() if base is not None else {}
        for part in filter(None, (chunk.strip() for chunk in (text or "").split(","))):
            key, _, value = part.partition("=")
            key = key.strip()
            if key not in cls._KEYS:
                raise DFKError(f"unknown bound {key!r}; expected one of {sorted(cls._KEYS)}")
            try:
                values[cls._KEYS[key]] = int(value)
            except ValueError:
                raise DFKError(f"bound {key} needs an integer, got {value!r}") from None
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)

    def check(self, config: Optional[Config] = None):
        """
        Raises:
            BoundExceededError: when a cap is below its floor or above its hard limit
        """
        config = config or default_config()
        caps = {
            'max_tokens': config.limit('frame_tokens'),
            'max_con': config.limit('con_size'),
            'max_elements': config.limit('poset_elements'),
            'max_universe': config.limit('universe'),
            'max_family': config.limit('family'),
        }
        for name, cap in caps.items():
            value = getattr(self, name)
            # Con_i always holds the empty set and {i}
            low = 2 if name == 'max_con' else 1
            if not low <= value <= cap:
                raise BoundExceededError(f"{name} = {value} is outside {low}..{cap}", name, value)
        if self.order_elements is not None and not 1 <= self.order_elements <= caps['max_elements']:
            raise BoundExceededError(
                f"order_elements = {self.order_elements} is outside 1..{caps['max_elements']}",
                'order_elements', self.order_elements)
        if self.mode not in ("exhaustive", "random"):
            raise DFKError(f"unknown generation mode {self.mode!r}")
        if self.mode == "random" and self.count < 1:
            raise BoundExceededError("random mode needs a positive count", self.count)

    def as_dict(self) -> Dict[str, object]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @property
    def largest_poset(self) -> int:
        return max(self.max_elements, self.order_elements or 0)


def token_names(n: int) -> List[str]:
    return ["t"] if n == 1 else [f"t{k}" for k in range(n)]


def universe_names(n: int) -> List[str]:
    return ["u"] if n == 1 else [f"u{k}" for k in range(n)]


# Posets

def _extensions(down: Sequence[int], up: Sequence[int]) -> Iterator[Tuple[int, int]]:
    """(D, U) for a new top index: D down-closed, U up-closed, disjoint, D below U."""
    k = len(down)
    for D in range(1 << k):
        if any(down[d] & ~D for d in members(D)):
            continue
        for U in range(1 << k):
            if D & U:
                continue
            if any(up[u] & ~U for u in members(U)):
                continue
            if all(U & ~up[d] == 0 for d in members(D)):
                yield D, U


def _extend(down: Tuple[int, ...], up: Tuple[int, ...], D: int, U: int):
    k = len(down)
    new = bit(k)
    grown_down = tuple(down[x] | (D | new if x in members(U) else 0) for x in range(k)) + (D | new,)
    grown_up = tuple(up[x] | (U | new if x in members(D) else 0) for x in range(k)) + (U | new,)
    return grown_down, grown_up


def _poset_from_down(down: Sequence[int]) -> FinitePoset:
    n = len(down)
    leq = np.zeros((n, n), dtype=bool)
    for y in range(n):
        for x in members(down[y]):
            leq[x, y] = True
    return FinitePoset([str(k) for k in range(n)], leq)


def _check_poset_size(n: int, config: Optional[Config]):
    cap = (config or default_config()).limit('poset_elements')
    if not 1 <= n <= cap:
        raise BoundExceededError(f"posets are enumerated for 1..{cap} elements, got {n}", n)


def enum_posets(n: int, config: Optional[Config] = None) -> Iterator[FinitePoset]:
    """
    Every partial order on the labelled elements "0".."n-1".

    Each poset is built by adding element k on top of a poset on 0..k-1 with a
    down-closed set D below it and an up-closed set U above it, so every order is
    produced exactly once.

    Raises:
        BoundExceededError: when n is outside 1..poset_elements
    """
    _check_poset_size(n, config)

    def grow(down, up):
        if len(down) == n:
            yield _poset_from_down(down)
            return
        for D, U in _extensions(down, up):
            yield from grow(*_extend(down, up, D, U))

    yield from grow((), ())


def random_poset(n: int, seed: int, config: Optional[Config] = None) -> FinitePoset:
    """A labelled poset on n elements, one random extension step per element."""
    _check_poset_size(n, config)
    rng = Xoshiro256(seed)
    down: Tuple[int, ...] = ()
    up: Tuple[int, ...] = ()
    while len(down) < n:
        D, U = rng.choice(list(_extensions(down, up)))
        down, up = _extend(down, up, D, U)
    return _poset_from_down(down)


# Relations and CF-spaces

def _relation_matrix(n: int, code: int) -> np.ndarray:
    bits = [(code >> k) & 1 for k in range(n * n)]
    return np.array(bits, dtype=bool).reshape(n, n)


def _transitive(succ: Sequence[int]) -> bool:
    return all(succ[y] & ~succ[x] == 0 for x in range(len(succ)) for y in members(succ[x]))


def enum_relations(n: int) -> Iterator[np.ndarray]:
    """All 2^(n*n) relations on n elements; bit x*n+y of the code is xΘy."""
    for code in range(1 << (n * n)):
        yield _relation_matrix(n, code)


def enum_transitive_relations(n: int) -> Iterator[np.ndarray]:
    row = (1 << n) - 1
    for code in range(1 << (n * n)):
        succ = [(code >> (x * n)) & row for x in range(n)]
        if _transitive(succ):
            yield _relation_matrix(n, code)


def _families(n: int, max_family: int) -> Iterator[Tuple[int, ...]]:
    subsets = sorted_masks(range(1 << n))
    for size in range(1, max_family + 1):
        yield from itertools.combinations(subsets, size)


def enum_cf_spaces(bounds: GenBounds, config: Optional[Config] = None) -> Iterator[CFSpace]:
    """
    CF-spaces with |U| ≤ max_universe and 1..max_family family members.

    Raw mode yields every relation and family without the validate_cf_space filter.

    Raises:
        BoundExceededError: when the bounds exceed the caps
    """
    bounds.check(config)
    if bounds.mode == "random":
        yield from _random_cf_spaces(bounds, config)
        return
    for n in range(1, bounds.max_universe + 1):
        names = universe_names(n)
        relations = enum_relations(n) if bounds.raw else enum_transitive_relations(n)
        for theta in relations:
            for family in _families(n, bounds.max_family):
                space = CFSpace(names, theta, family)
                if bounds.raw or validate_cf_space(space, config).valid:
                    yield space


def _transitive_closure(theta: np.ndarray) -> np.ndarray:
    closed = theta.copy()
    for k in range(len(closed)):
        closed |= np.outer(closed[:, k], closed[k, :])
    return closed


def _random_cf_spaces(bounds: GenBounds, config: Optional[Config]) -> Iterator[CFSpace]:
    rng = Xoshiro256(bounds.seed)
    emitted = 0
    for _ in range(bounds.count * ATTEMPTS_PER_ITEM):
        if emitted == bounds.count:
            return
        n = 1 + rng.below(bounds.max_universe)
        theta = np.array([rng.chance(1, 2) for _ in range(n * n)], dtype=bool).reshape(n, n)
        if not bounds.raw:
            theta = _transitive_closure(theta)
        size = 1 + rng.below(bounds.max_family)
        family = {rng.below(1 << n) for _ in range(size)}
        space = CFSpace(universe_names(n), theta, family)
        if bounds.raw or validate_cf_space(space, config).valid:
            emitted += 1
            yield space
    logger.warning("random cfspace generation stopped after %d of %d structures", emitted, bounds.count)


# Frames

def _con_options(n: int, i: int, max_con: int) -> List[Tuple[int, ...]]:
    """Down-closed families over sets of at most two tokens containing ∅ and {i}."""
    candidates = [X for X in sorted_masks(range(1 << n))
                  if 0 < popcount(X) <= MAX_CANDIDATE_SET and X != bit(i)]
    options = []
    for size in range(0, max_con - 1):
        for extra in itertools.combinations(candidates, size):
            family = {0, bit(i), *extra}
            if all(Y in family for X in family for Y in submasks(X)):
                options.append(tuple(sorted_masks(family)))
    return options


def _closure_options(i: int, family: Sequence[int]) -> List[Dict[int, int]]:
    """Entailment tables on one token satisfying soundness, weakening, cut and local interpolation."""
    inside = set(family)
    targets = [X for X in family if X]
    options = []
    for choice in itertools.product(targets, repeat=len(family)):
        table = dict(zip(family, choice))
        if not _locally_sound(table, inside):
            continue
        options.append(table)
    return options


def _locally_sound(table: Dict[int, int], inside) -> bool:
    for X, closed in table.items():
        for Y, other in table.items():
            if X & ~Y == 0 and closed & ~other:
                return False
            if Y & ~closed == 0 and other & ~closed:
                return False
        if not any(Z & ~closed == 0 and closed & ~table[Z] == 0 for Z in inside):
            return False
    return True


def _reaches(cons: Sequence[Sequence[int]]) -> List[Tuple[int, int]]:
    n = len(cons)
    return [(i, j) for i, j in itertools.product(range(n), repeat=2)
            if i != j and bit(i) in cons[j]]


def _transfers_consistency(cons: Sequence[Sequence[int]]) -> bool:
    return all(set(cons[i]) <= set(cons[j]) for i, j in _reaches(cons))


def _transfers_entailment(cons, tables) -> bool:
    return all(tables[i][X] & ~tables[j][X] == 0 for i, j in _reaches(cons) for X in cons[i])


def _finish_frame(tokens: List[str], cons, tables, raw: bool) -> Optional[InformationFrame]:
    frame = InformationFrame(tokens, cons, tables)
    if raw:
        return frame
    report = validate_frame(frame)
    if not report.valid:
        return None
    truth = report.properties.truth
    if truth:
        frame = frame.with_truth(truth[0])
        validate_frame(frame)
    return frame


def enum_frames(bounds: GenBounds, config: Optional[Config] = None) -> Iterator[InformationFrame]:
    """
    Valid frames with 1..max_tokens tokens and |Con_i| ≤ max_con.

    Consistency families are pruned by consistency transfer and entailment tables
    by entailment transfer before validate_frame filters the rest. Each emitted
    frame designates its first truth element, if any. Raw mode skips the global
    pruning and the filter.

    Raises:
        BoundExceededError: when the bounds exceed the caps
    """
    bounds.check(config)
    if bounds.mode == "random":
        yield from _random_frames(bounds)
        return
    for n in range(1, bounds.max_tokens + 1):
        tokens = token_names(n)
        per_token = [_con_options(n, i, bounds.max_con) for i in range(n)]
        for cons in itertools.product(*per_token):
            if not bounds.raw and not _transfers_consistency(cons):
                continue
            closures = [_closure_options(i, cons[i]) for i in range(n)]
            for tables in itertools.product(*closures):
                if not bounds.raw and not _transfers_entailment(cons, tables):
                    continue
                frame = _finish_frame(tokens, cons, tables, bounds.raw)
                if frame is not None:
                    yield frame


def _random_frames(bounds: GenBounds) -> Iterator[InformationFrame]:
    rng = Xoshiro256(bounds.seed)
    emitted = 0
    for _ in range(bounds.count * ATTEMPTS_PER_ITEM):
        if emitted == bounds.count:
            return
        n = 1 + rng.below(bounds.max_tokens)
        cons = [rng.choice(_con_options(n, i, bounds.max_con)) for i in range(n)]
        if not bounds.raw and not _transfers_consistency(cons):
            continue
        tables = []
        for i in range(n):
            options = _closure_options(i, cons[i])
            if not options:
                break
            tables.append(rng.choice(options))
        if len(tables) < n:
            continue
        frame = _finish_frame(token_names(n), cons, tables, bounds.raw)
        if frame is not None:
            emitted += 1
            yield frame
    logger.warning("random frame generation stopped after %d of %d structures", emitted, bounds.count)


def generate(kind: str, bounds: GenBounds,
             config: Optional[Config] = None) -> Iterator[Union[FinitePoset, InformationFrame, CFSpace]]:
    """Dispatch for the `generate` command: kind is frame, poset or cfspace."""
    if kind == "frame":
        return enum_frames(bounds, config)
    if kind == "cfspace":
        return enum_cf_spaces(bounds, config)
    if kind == "poset":
        return _generate_posets(bounds, config)
    raise DFKError(f"unknown structure kind {kind!r}")


def _generate_posets(bounds: GenBounds, config: Optional[Config]) -> Iterator[FinitePoset]:
    bounds.check(config)
    if bounds.mode == "random":
        rng = Xoshiro256(bounds.seed)
        for _ in range(bounds.count):
            yield random_poset(1 + rng.below(bounds.max_elements), rng.next(), config)
        return
    for n in range(1, bounds.max_elements + 1):
        yield from enum_posets(n, config)


# Morphisms

def random_monotone_map(source: FinitePoset, target: FinitePoset, seed: int) -> MonotoneMap:
    """
    A monotone map chosen element by element in order of |↓x|, each image above
    the images of everything below. Falls back to a constant map when a choice
    runs out of upper bounds.
    """
    rng = Xoshiro256(seed)
    order = sorted(range(source.n), key=lambda x: (popcount(source._down[x]), x))
    for _ in range(ATTEMPTS_PER_ITEM):
        graph: Dict[int, int] = {}
        for x in order:
            below = [graph[y] for y in members(source._down[x]) if y != x]
            candidates = [z for z in range(target.n) if all(target.leq[b, z] for b in below)]
            if not candidates:
                break
            graph[x] = rng.choice(candidates)
        else:
            return MonotoneMap(source, target, [target.elements[graph[x]] for x in range(source.n)])
    return constant_map(source, target, target.elements[rng.below(target.n)])


def _close_mapping(src: InformationFrame, tgt: InformationFrame, tables: List[Dict[int, int]]):
    """Close a relation family under conditions (a) to (d) in place."""
    reach = [(i, j) for i, j in itertools.product(range(src.n), repeat=2) if bit(i) in src.con[j]]

    def grow(i: int, X: int, extra: int):
        if X in tables[i]:
            tables[i][X] |= extra

    before = None
    while before != tables:
        before = [dict(table) for table in tables]
        for i in range(src.n):
            for X in src.consistent_sets(i):
                image = tables[i][X]
                for k in members(image):
                    for Y in tgt.consistent_sets(k):
                        if Y & ~image == 0:
                            grow(i, X, tgt.closure(k, Y))
                for X2 in src.consistent_sets(i):
                    if X & ~X2 == 0:
                        grow(i, X2, tables[i][X])
                    if X2 & ~src.closure(i, X) == 0:
                        grow(i, X, tables[i][X2])
        for i, j in reach:
            for X in src.consistent_sets(i):
                grow(j, X, tables[i][X])


def random_mapping(source: InformationFrame, target: InformationFrame,
                   seed: int) -> Optional[ApproximableMapping]:
    """
    Close a random nonempty seed relation under (a) to (d) and keep it when (e) holds.

    Returns None when the closed candidate is not approximable.
    """
    rng = Xoshiro256(seed)
    tables = [{X: 0 for X in source.consistent_sets(i)} for i in range(source.n)]
    premises = [(i, X) for i in range(source.n) for X in source.consistent_sets(i)]
    i, X = rng.choice(premises)
    tables[i][X] |= bit(rng.below(target.n))
    for i, X in premises:
        if rng.chance(1, 4):
            tables[i][X] |= bit(rng.below(target.n))

    _close_mapping(source, target, tables)
    mapping = ApproximableMapping(source, target, tables)
    if not validate_mapping(mapping).valid:
        return None
    return mapping


def random_cf_relation(source: CFSpace, target: CFSpace, seed: int) -> Optional[CFRelation]:
    """
    Relate every source member to a random target member, close under (2) and (3),
    and keep the result when (4) and (5) hold. Returns None otherwise.
    """
    if not source.family or not target.family:
        return None
    rng = Xoshiro256(seed)
    pairs = set()
    for F in source.family:
        pairs.add((F, rng.choice(target.family)))
        if rng.chance(1, 4):
            pairs.add((F, rng.choice(target.family)))

    up = {F: source.upper(F) for F in source.family}
    up_t = {G: target.upper(G) for G in target.family}
    changed = True
    while changed:
        grown = set(pairs)
        for F, G in pairs:
            grown.update((F2, G) for F2 in source.family if F & ~up[F2] == 0)
            grown.update((F, G2) for G2 in target.family if G2 & ~up_t[G] == 0)
        changed = grown != pairs
        pairs = grown

    relation = CFRelation(source, target, pairs)
    if not validate_cf_relation(relation).valid:
        return None
    return relation


def _closed_sets(frame: InformationFrame) -> List[int]:
    """Token sets Y with ⊢_k V ⊆ Y whenever k ∈ Y and V ⊆ Y is in Con_k."""
    return [
        Y for Y in range(1 << frame.n)
        if all(frame.closure(k, V) & ~Y == 0
               for k in members(Y) for V in frame.consistent_sets(k) if V & ~Y == 0)
    ]


def _inclusions(frame: InformationFrame,
                premises: List[Tuple[int, int]]) -> List[List[Tuple[Optional[int], bool]]]:
    """
    Image inclusions forced by (b), (c) and (d), attached to the later premise.

    Entry (p, True) at slot q means image(p) ⊆ image(q); (p, False) means the
    reverse. A premise missing from Con_j under (d) gets (None, False), an empty
    image.
    """
    slot = {premise: k for k, premise in enumerate(premises)}
    reach = accessibility(frame)
    forced: List[List[Tuple[Optional[int], bool]]] = [[] for _ in premises]

    def require(small: int, large: int):
        if small != large:
            later = max(small, large)
            forced[later].append((min(small, large), later == large))

    for (i, X), p in slot.items():
        entailed = frame.closure(i, X)
        for X2 in frame.consistent_sets(i):
            if X & ~X2 == 0:
                require(p, slot[(i, X2)])
            if X2 & ~entailed == 0:
                require(slot[(i, X2)], p)
        for j in range(frame.n):
            if j != i and reach[i, j]:
                if (j, X) in slot:
                    require(p, slot[(j, X)])
                else:
                    forced[p].append((None, False))
    return forced


def _check_morphism_size(what: str, size: int):
    if size > MAX_EXHAUSTIVE_MORPHISM:
        raise BoundExceededError(
            f"morphisms are enumerated up to {what} {MAX_EXHAUSTIVE_MORPHISM}, got {size}", what, size)


def enum_mappings(source: InformationFrame, target: InformationFrame) -> Iterator[ApproximableMapping]:
    """
    Every approximable mapping between two frames of at most two tokens.

    Images are drawn from the deductively closed target sets, which settles (a);
    (b) to (d) prune the search as each premise is assigned, and validate_mapping
    decides (e) on the complete candidates.

    Raises:
        BoundExceededError: when either frame has more than two tokens
    """
    _check_morphism_size("tokens", max(source.n, target.n))
    closed = _closed_sets(target)
    premises = [(i, X) for i in range(source.n) for X in source.consistent_sets(i)]
    forced = _inclusions(source, premises)

    def fits(k: int, Y: int, images: List[int]) -> bool:
        for other, below in forced[k]:
            image = 0 if other is None else images[other]
            if below and image & ~Y:
                return False
            if not below and Y & ~image:
                return False
        return True

    def assign(images: List[int]) -> Iterator[ApproximableMapping]:
        k = len(images)
        if k == len(premises):
            tables: List[Dict[int, int]] = [dict() for _ in range(source.n)]
            for (i, X), image in zip(premises, images):
                tables[i][X] = image
            mapping = ApproximableMapping(source, target, tables)
            if validate_mapping(mapping).valid:
                yield mapping
            return
        for Y in closed:
            if fits(k, Y, images):
                yield from assign(images + [Y])

    yield from assign([])


def enum_cf_relations(source: CFSpace, target: CFSpace) -> Iterator[CFRelation]:
    """
    Every CF-approximable relation between two spaces with at most two points
    and two family members, as the subsets of 𝔉 × 𝔊 passing validate_cf_relation.

    Raises:
        BoundExceededError: when either space is larger than that
    """
    for space in (source, target):
        _check_morphism_size("universe", space.n)
        _check_morphism_size("family", len(space.family))
    candidates = list(itertools.product(source.family, target.family))
    for size in range(len(candidates) + 1):
        for pairs in itertools.combinations(candidates, size):
            relation = CFRelation(source, target, pairs)
            if validate_cf_relation(relation).valid:
                yield relation


# Shrinking

Case = TypeVar("Case", InformationFrame, FinitePoset)


def _holds(still_fails: Callable[[T], bool], candidate: T) -> bool:
    try:
        return bool(still_fails(candidate))
    except DFKError:
        return False


def _frame_steps(frame: InformationFrame) -> Iterator[InformationFrame]:
    full = (1 << frame.n) - 1
    if frame.n > 1:
        for k in range(frame.n):
            yield restrict(frame, full & ~bit(k))
    for i in range(frame.n):
        for X in frame.consistent_sets(i):
            for a in members(frame.closure(i, X)):
                tables = [dict(table) for table in frame.ent]
                tables[i][X] &= ~bit(a)
                truth = frame.truth
                yield InformationFrame(frame.tokens, frame.con, tables, truth=truth)


def _poset_steps(poset: FinitePoset) -> Iterator[FinitePoset]:
    full = (1 << poset.n) - 1
    if poset.n > 1:
        for k in range(poset.n):
            yield poset.restrict(full & ~bit(k))
    for x, y in poset.covers():
        leq = poset.leq.copy()
        leq[poset.index[x], poset.index[y]] = False
        yield FinitePoset(poset.elements, leq)


def shrink(case: Case, still_fails: Callable[[Case], bool]) -> Case:
    """
    Greedily shrink a failing frame or poset while still_fails keeps holding.

    Frames lose whole tokens first, then single entailment pairs; posets lose
    elements, then cover pairs. The first accepted step restarts the scan, so the
    result depends only on the input.

    Raises:
        DFKError: for a case that is neither a frame nor a poset
    """
    if isinstance(case, InformationFrame):
        steps = _frame_steps
    elif isinstance(case, FinitePoset):
        steps = _poset_steps
    else:
        raise DFKError(f"cannot shrink a {type(case).__name__}")

    current = case
    improved = True
    while improved:
        improved = False
        for candidate in steps(current):
            if _holds(still_fails, candidate):
                current = candidate
                improved = True
                break
    return current


__all__ = [
    "GenBounds", "enum_posets", "random_poset", "enum_relations", "enum_transitive_relations",
    "enum_cf_spaces", "enum_frames", "enum_mappings", "enum_cf_relations", "generate",
    "random_mapping", "random_cf_relation",
    "random_monotone_map", "shrink",
    "token_names", "universe_names",
]
