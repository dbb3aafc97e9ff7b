"""Generalized approximation spaces and CF-approximation spaces."""
import itertools
import logging
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .config import Config, default_config
from .errors import DFKError, SizeExceededError, UnknownElementError
from .reports import ValidationReport
from .utils.bitsets import bit, format_set, mask_of, members, popcount, set_key, sorted_masks, submasks

logger = logging.getLogger(__name__)


class GASpace:
    """A finite universe U with an arbitrary binary relation Θ (``theta[x, y]`` is xΘy)."""

    def __init__(self, universe: Sequence[str], theta):
        universe = tuple(str(u) for u in universe)
        if len(set(universe)) != len(universe):
            raise DFKError(f"duplicate universe ids in {universe}")
        theta = np.array(theta, dtype=bool).reshape(len(universe), len(universe))
        theta.flags.writeable = False

        self.universe: Tuple[str, ...] = universe
        self.theta = theta
        self.n = len(universe)
        self.index = {u: k for k, u in enumerate(universe)}
        self._succ = tuple(mask_of(int(y) for y in np.flatnonzero(theta[x])) for x in range(self.n))
        self._pred = tuple(mask_of(int(x) for x in np.flatnonzero(theta[:, y])) for y in range(self.n))

    @classmethod
    def from_pairs(cls, universe: Sequence[str], pairs: Iterable[Tuple[str, str]]) -> "GASpace":
        universe = list(universe)
        index = {u: k for k, u in enumerate(universe)}
        theta = np.zeros((len(universe), len(universe)), dtype=bool)
        for x, y in pairs:
            for u in (x, y):
                if u not in index:
                    raise UnknownElementError(u)
            theta[index[x], index[y]] = True
        return cls(universe, theta)

    def position(self, u: str) -> int:
        try:
            return self.index[u]
        except KeyError:
            raise UnknownElementError(u) from None

    def mask(self, ids: Iterable[str]) -> int:
        return mask_of(self.position(u) for u in ids)

    def labels(self, mask: int) -> Tuple[str, ...]:
        return tuple(self.universe[k] for k in members(mask))

    def show(self, mask: int) -> str:
        return format_set(mask, self.universe)

    def successors(self, x: int) -> int:
        return self._succ[x]

    def upper(self, X: int) -> int:
        """Θ̄(X): elements with a successor in X."""
        result = 0
        for y in members(X):
            result |= self._pred[y]
        return result

    def lower(self, X: int) -> int:
        """Θ̲(X): elements whose successors all lie in X."""
        return mask_of(x for x in range(self.n) if self._succ[x] & ~X == 0)

    def is_reflexive(self) -> bool:
        return bool(np.diag(self.theta).all())

    def is_transitive(self) -> bool:
        return self.transitivity_failure() is None

    def transitivity_failure(self) -> Optional[Tuple[int, int, int]]:
        for x in range(self.n):
            for y in members(self._succ[x]):
                missing = self._succ[y] & ~self._succ[x]
                if missing:
                    return (x, y, members(missing)[0])
        return None

    def pairs(self) -> List[Tuple[str, str]]:
        return [(self.universe[x], self.universe[y]) for x, y in np.argwhere(self.theta)]

    def _key(self):
        return (self.universe, self.theta.tobytes())

    def __eq__(self, other) -> bool:
        if not isinstance(other, GASpace) or type(self) is not type(other):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"GASpace({list(self.universe)}, theta={self.pairs()})"


class CFSpace(GASpace):
    """A GA-space with a family 𝔉 of subsets, kept sorted by (size, lexicographic)."""

    def __init__(self, universe: Sequence[str], theta, family: Iterable[int]):
        super().__init__(universe, theta)
        full = (1 << self.n) - 1
        family = sorted_masks(int(F) for F in family)
        for F in family:
            if F & ~full or F < 0:
                raise DFKError(f"family member {F:#b} leaves the universe")
        self.family: Tuple[int, ...] = tuple(family)

    @classmethod
    def from_sets(cls, universe: Sequence[str], pairs: Iterable[Tuple[str, str]],
                  family: Iterable[Iterable[str]]) -> "CFSpace":
        base = GASpace.from_pairs(universe, pairs)
        return cls(base.universe, base.theta, [base.mask(F) for F in family])

    def _key(self):
        return (self.universe, self.theta.tobytes(), self.family)

    def __repr__(self) -> str:
        return f"CFSpace({list(self.universe)}, family={[self.show(F) for F in self.family]})"


def theta_s(space: GASpace, x: str) -> FrozenSet[str]:
    """Θ_s(x) = { y : xΘy }."""
    return frozenset(space.labels(space.successors(space.position(x))))


def lower_approx(space: GASpace, X: Iterable[str]) -> FrozenSet[str]:
    return frozenset(space.labels(space.lower(space.mask(X))))


def upper_approx(space: GASpace, X: Iterable[str]) -> FrozenSet[str]:
    return frozenset(space.labels(space.upper(space.mask(X))))


def _check_size(space: GASpace, config: Optional[Config]):
    cap = (config or default_config()).limit('exhaustive_universe')
    if space.n > cap:
        raise SizeExceededError(f"|U| = {space.n} exceeds the exhaustive cap {cap}")


def check_operator_laws(space: GASpace, config: Optional[Config] = None) -> ValidationReport:
    """
    Verify the upper-operator laws by quantifying over every X ⊆ U.

    Checked: monotonicity with Θ̄(∅) = ∅; reflexive ⇔ X ⊆ Θ̄(X); transitive ⇔
    Θ̄Θ̄(X) ⊆ Θ̄(X); for transitive Θ, Y ⊆ Θ̄(X) ⇒ Θ̄(Y) ⊆ Θ̄(X); and the duality
    Θ̲(X) = U \\ Θ̄(U \\ X).
    """
    _check_size(space, config)
    report = ValidationReport(subject="operator-laws")
    n = space.n
    full = (1 << n) - 1

    upper = [0] * (1 << n)
    for X in range(1, 1 << n):
        low = X & -X
        upper[X] = upper[X ^ low] | space._pred[low.bit_length() - 1]

    if upper[0]:
        report.add("empty", space.show(upper[0]))
    for X, y in itertools.product(range(1 << n), range(n)):
        if upper[X] & ~upper[X | bit(y)]:
            report.add("monotone", space.show(X), space.universe[y])
            break

    reflexive = space.is_reflexive()
    if reflexive != all(X & ~upper[X] == 0 for X in range(1 << n)):
        report.add("reflexivity", reflexive)

    transitive = space.is_transitive()
    if transitive != all(upper[upper[X]] & ~upper[X] == 0 for X in range(1 << n)):
        report.add("transitivity", transitive)

    if transitive:
        for X in range(1 << n):
            broken = next((Y for Y in submasks(upper[X]) if upper[Y] & ~upper[X]), None)
            if broken is not None:
                report.add("upper-absorption", space.show(X), space.show(broken))
                break

    for X in range(1 << n):
        if space.lower(X) != full & ~upper[full & ~X]:
            report.add("duality", space.show(X))
            break

    report.flags.update({'reflexive': reflexive, 'transitive': transitive})
    return report


def _cf_failure(space: CFSpace, F: int, config: Optional[Config]) -> Optional[int]:
    """Smallest K ⊆ Θ̄(F) lacking a G ∈ 𝔉 with K ⊆ Θ̄(G) and G ⊆ Θ̄(F), or None."""
    upper_F = space.upper(F)
    covers = [space.upper(G) for G in space.family if G & ~upper_F == 0]
    # a smaller K is easier to cover, so K = Θ̄(F) decides every K
    if any(upper_F & ~cover == 0 for cover in covers):
        return None
    cap = (config or default_config()).limit('exhaustive_universe')
    if popcount(upper_F) > cap:
        raise SizeExceededError(
            f"cf witness search over {popcount(upper_F)} elements exceeds the exhaustive cap {cap}",
            space.show(F))
    for K in sorted(submasks(upper_F), key=set_key):
        if not any(K & ~cover == 0 for cover in covers):
            return K
    return upper_F


def m_witnesses(space: CFSpace) -> List[int]:
    """Members T of 𝔉 with T ⊆ Θ̄(F) for every F ∈ 𝔉."""
    uppers = [space.upper(F) for F in space.family]
    return [T for T in space.family if all(T & ~up == 0 for up in uppers)]


def validate_cf_space(space: CFSpace, config: Optional[Config] = None) -> ValidationReport:
    """
    Check transitivity and (CF), and report the topological and (M) flags.

    Flags: transitive, topological, has_M, m_witnesses (as formatted sets).

    Raises:
        SizeExceededError: when (CF) fails and locating the smallest uncovered K
            would enumerate more than exhaustive_universe elements
    """
    report = ValidationReport(subject="cfspace")
    if not space.family:
        logger.warning("EmptyFamily: the family is empty, so C(U) has no tokens")

    failure = space.transitivity_failure()
    if failure is not None:
        report.add("transitivity", *(space.universe[k] for k in failure))

    for F in space.family:
        K = _cf_failure(space, F, config)
        if K is not None:
            report.add("cf", space.show(F), space.show(K))
            break

    witnesses = m_witnesses(space)
    report.flags.update({
        'transitive': failure is None,
        'topological': space.is_reflexive(),
        'has_M': bool(witnesses),
        'm_witnesses': [space.show(T) for T in witnesses],
    })
    return report


__all__ = [
    "GASpace", "CFSpace", "theta_s", "lower_approx", "upper_approx", "check_operator_laws",
    "validate_cf_space", "m_witnesses",
]
