"""Core EquivalenceVerifier class: the verify suites."""
import itertools
import logging
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

from .config import Config
from .errors import InternalInconsistencyError
from .fixtures import f_unit, p_chain2, p_diamond, u_empty_f, u_unit
from .frames import InformationFrame, check_derived_lemmas, classify_frame, validate_frame
from .functors.cfspaces import (
    C_on_morphism,
    C_on_object,
    E_on_morphism,
    E_on_object,
    check_delta_naturality,
    check_gamma_naturality,
    delta,
    gamma,
)
from .functors.domains import (
    D_on_morphism,
    F_on_morphism,
    F_on_object,
    check_eta_naturality,
    check_tau_naturality,
    eta,
    tau,
)
from .generators import (
    MAX_EXHAUSTIVE_MORPHISM,
    GenBounds,
    enum_cf_relations,
    enum_cf_spaces,
    enum_frames,
    enum_mappings,
    enum_posets,
    enum_relations,
    random_cf_relation,
    random_mapping,
    random_monotone_map,
    shrink,
    universe_names,
)
from .morphisms.base import BaseMorphism
from .morphisms.mappings import check_mapping_lemmas, identity_mapping, validate_mapping
from .morphisms.relations import identity_cf, validate_cf_relation
from .order import FinitePoset, check_way_below_laws, identity_map, is_algebraic, poset_isomorphic
from .reports import ValidationReport
from .rough import CFSpace, GASpace, check_operator_laws, validate_cf_space
from .states import approx_by_entailment, domain_properties, enumerate_states, induced_domain
from .structure_io import parse, serialize
from .utils.prng import Xoshiro256
from .utils.tracking import CheckTracker

logger = logging.getLogger(__name__)

Outcome = Union[bool, ValidationReport]
Case = Union[InformationFrame, FinitePoset]


class EquivalenceVerifier:
    """
    Runs the property sweeps behind `dfk verify`.

    Each check instance is recorded in a CheckTracker; a failing instance keeps
    its first witness. Internal inconsistencies raised by the library count as
    failures of the check that triggered them. The first failing frame or poset
    of a check is shrunk before it is recorded.
    """

    SUITES = ("order", "frames", "functors", "rough", "equivalence")

    def __init__(
        self,
        bounds: Optional[GenBounds] = None,
        config: Optional[Dict[str, Any]] = None,
        relation_size: int = 4,
    ):
        """
        Initialize EquivalenceVerifier.

        Args:
            bounds: Generation caps, seed and random sample count
            config: Additional configuration dictionary
            relation_size: Largest carrier for the exhaustive relation sweep
        """
        self.config = Config(config or {})
        self.bounds = bounds or GenBounds()
        self.bounds.check(self.config)
        self.relation_size = relation_size
        self.tracker = CheckTracker()
        self.emitted: List[BaseMorphism] = []
        self._frames: Optional[List[InformationFrame]] = None
        self._posets: Optional[List[FinitePoset]] = None
        self._spaces: Optional[List[CFSpace]] = None
        logger.info("verifier ready: bounds %s", self.bounds.as_dict())

    # Populations

    @property
    def frames(self) -> List[InformationFrame]:
        if self._frames is None:
            self._frames = list(enum_frames(self.bounds, self.config))
            logger.info("generated %d frames", len(self._frames))
        return self._frames

    @property
    def all_posets(self) -> List[FinitePoset]:
        if self._posets is None:
            self._posets = [
                poset
                for n in range(1, self.bounds.largest_poset + 1)
                for poset in enum_posets(n, self.config)
            ]
            logger.info("generated %d posets", len(self._posets))
        return self._posets

    @property
    def posets(self) -> List[FinitePoset]:
        """Posets for the functor sweeps, up to max_elements."""
        return [poset for poset in self.all_posets if poset.n <= self.bounds.max_elements]

    @property
    def order_posets(self) -> List[FinitePoset]:
        """Posets for the way-below sweep, up to order_elements when it is set."""
        size = self.bounds.order_elements or self.bounds.max_elements
        return [poset for poset in self.all_posets if poset.n <= size]

    @property
    def spaces(self) -> List[CFSpace]:
        if self._spaces is None:
            self._spaces = list(enum_cf_spaces(self.bounds, self.config))
            logger.info("generated %d cfspaces", len(self._spaces))
        return self._spaces

    # Recording

    @staticmethod
    def _run(test: Callable[[], Outcome], witness: Any) -> Tuple[bool, Any]:
        detail = witness
        try:
            outcome = test()
            if isinstance(outcome, ValidationReport):
                passed = outcome.valid
                if not passed:
                    detail = f"{witness}: " + ", ".join(str(v) for v in outcome.violations)
            else:
                passed = bool(outcome)
        except InternalInconsistencyError as error:
            passed = False
            detail = f"{witness}: {error} {error.witness}"
        return passed, detail

    def check(self, name: str, test: Callable[[], Outcome], witness: Any = None) -> bool:
        """
        Run one check instance and record it.

        Args:
            name: Check name in the summary
            test: Returns a bool or a ValidationReport
            witness: Shown for a failing instance when the test gives no detail
        """
        passed, detail = self._run(test, witness)
        self.tracker.log(name, passed, None if passed else detail)
        return passed

    def check_case(self, name: str, law: Callable[[Case], Outcome], case: Case) -> bool:
        """
        Run `law` on a frame or poset and record it; the first failure of a check
        is shrunk to a smaller valid case on which the law still fails.
        """
        passed, detail = self._run(lambda: law(case), case)
        if not passed and self.tracker.get_failures(name) == 0:
            smaller = shrink(case, lambda candidate: _valid_case(candidate)
                             and not self._run(lambda: law(candidate), candidate)[0])
            if smaller is not case:
                logger.info("%s: shrunk a counterexample", name)
                _, detail = self._run(lambda: law(smaller), smaller)
        self.tracker.log(name, passed, None if passed else detail)
        return passed

    def run(self, suite: str) -> Dict[str, Any]:
        """
        Run a suite and return the tracker summary.

        Raises:
            ValueError: for an unknown suite name
        """
        runners = {
            'order': self.verify_order,
            'frames': self.verify_frames,
            'functors': self.verify_functors,
            'rough': self.verify_rough,
            'equivalence': self.verify_equivalence,
        }
        if suite not in runners:
            raise ValueError(f"unknown suite {suite!r}; expected one of {self.SUITES}")
        runners[suite]()
        summary = self.tracker.get_summary()
        logger.info("suite %s: %d instances, %d failures", suite,
                    summary['total_instances'], summary['total_failures'])
        return summary

    # Suites

    def verify_order(self):
        """Way-below collapses to the order and keeps its laws on every small poset."""
        for poset in self.order_posets:
            self.check_case("way-below-collapse",
                            lambda p: bool((p.approximation == p.leq).all()), poset)
            self.check_case("way-below-laws", check_way_below_laws, poset)
            self.check_case("algebraic", is_algebraic, poset)

    def verify_frames(self):
        """Derived lemmas, states and the induced domain on every generated frame."""
        for frame in self.frames:
            self.check_case("derived-lemmas", check_derived_lemmas, frame)
            self.check_case("induced-domain", lambda f: induced_domain(f) is not None, frame)
            self.check_case("approx-by-entailment", _approximation_agrees, frame)
            self.check_case("domain-properties",
                            lambda f: domain_properties(induced_domain(f)) is not None, frame)

    def verify_functors(self):
        """η and τ roundtrips, functor laws of D and F, η/τ naturality and associativity."""
        for frame in self.frames:
            self.check_case("eta-roundtrip", lambda f: eta(f).check(), frame)
            self.check_case("D-identity", lambda f: D_on_morphism(identity_mapping(f))
                            == identity_map(induced_domain(f).poset), frame)

        conservative = 0
        for poset in self.posets:
            conservative += _classify(F_on_object(poset)).conservative
            self.check_case("tau-roundtrip", lambda p: tau(p).check(), poset)
            self.check_case("F-strong", _lift_is_strong, poset)
            self.check_case("F-identity", lambda p: F_on_morphism(identity_map(p))
                            == identity_mapping(F_on_object(p)), poset)
            self.check_case("D-F-isomorphic", lambda p: poset_isomorphic(
                induced_domain(F_on_object(p)).poset, p) is not None, poset)
        self.tracker.note("conservative F(D) frames", f"{conservative} of {len(self.posets)}")

        rng = Xoshiro256(self.bounds.seed)
        rejected = 0
        for _ in range(self.bounds.count):
            a, b, c, d = (rng.choice(self.frames) for _ in range(4))
            g = random_mapping(a, b, rng.next())
            h = random_mapping(b, c, rng.next())
            k = random_mapping(c, d, rng.next())
            if g is None or h is None or k is None:
                rejected += 1
                continue
            self.emitted.extend((g, h, k))
            self.check("D-composition", lambda: D_on_morphism(g.then(h))
                       == D_on_morphism(g).then(D_on_morphism(h)), g)
            self.check("eta-naturality", lambda: check_eta_naturality(g), g)
            self.check("mapping-associativity",
                       lambda: g.then(h).then(k) == g.then(h.then(k)), g)

        for _ in range(self.bounds.count):
            p, q, r = (rng.choice(self.posets) for _ in range(3))
            f = random_monotone_map(p, q, rng.next())
            k = random_monotone_map(q, r, rng.next())
            self.check("F-composition", lambda: F_on_morphism(f.then(k))
                       == F_on_morphism(f).then(F_on_morphism(k)), f)
            self.check("tau-naturality", lambda: check_tau_naturality(f), f)
        self.tracker.note("rejected random mapping chains", rejected)

    def verify_rough(self):
        """Upper and lower operator laws for every relation on small carriers."""
        for n in range(1, self.relation_size + 1):
            names = universe_names(n)
            for theta in enum_relations(n):
                space = GASpace(names, theta)
                self.check("operator-laws", lambda: check_operator_laws(space, self.config), space)

    def verify_equivalence(self):
        """Every suite, then CF transport, δ/γ, C/E laws, small morphisms, fixtures and file roundtrips."""
        self.verify_order()
        self.verify_frames()
        self.verify_functors()
        self.verify_rough()
        self._verify_cf_transport()
        self._verify_cf_morphisms()
        self._verify_small_morphisms()
        self._verify_fixtures()
        self._verify_io()

    def _verify_cf_transport(self):
        for space in self.spaces:
            report = validate_cf_space(space, self.config)
            self.check("C-strong", lambda: self._c_transport(space, report.flags), space)
            self.check("delta-roundtrip", lambda: delta(space, self.config).check(), space)
            self.check("C-identity", lambda: C_on_morphism(identity_cf(space))
                       == identity_mapping(C_on_object(space)), space)
            if space.family:
                self.check("D-of-C", lambda: _domain_of_C(space), space)

        for frame in self.frames:
            self.check_case("E-cf", self._e_transport, frame)
            self.check_case("gamma-roundtrip", lambda f: gamma(f, self.config).check(), frame)
            self.check_case("E-identity", lambda f: E_on_morphism(identity_mapping(f))
                            == identity_cf(E_on_object(f)), frame)

    def _c_transport(self, space: CFSpace, flags: Dict[str, Any]) -> bool:
        frame = C_on_object(space)
        report = validate_frame(frame)
        if not report.valid or not report.properties.strong:
            return False
        if flags['topological'] and not report.properties.algebraic:
            return False
        return not flags['has_M'] or bool(report.properties.truth)

    def _e_transport(self, frame: InformationFrame) -> bool:
        properties = _classify(frame)
        report = validate_cf_space(E_on_object(frame), self.config)
        if not report.valid:
            return False
        if report.flags['topological'] != properties.algebraic:
            return False
        return not properties.truth or report.flags['has_M']

    def _verify_cf_morphisms(self):
        rng = Xoshiro256(self.bounds.seed ^ 0x5DEECE66D)
        rejected_relations = 0
        for _ in range(self.bounds.count):
            u, v, w, x = (rng.choice(self.spaces) for _ in range(4))
            d = random_cf_relation(u, v, rng.next())
            e = random_cf_relation(v, w, rng.next())
            o = random_cf_relation(w, x, rng.next())
            if d is None or e is None or o is None:
                rejected_relations += 1
                continue
            self.emitted.extend((d, e, o))
            self.check("C-composition", lambda: C_on_morphism(d.then(e))
                       == C_on_morphism(d).then(C_on_morphism(e)), d)
            self.check("delta-naturality", lambda: check_delta_naturality(d, self.config), d)
            self.check("cf-associativity", lambda: d.then(e).then(o) == d.then(e.then(o)), d)

        rejected_mappings = 0
        for _ in range(self.bounds.count):
            a, b, c = (rng.choice(self.frames) for _ in range(3))
            g = random_mapping(a, b, rng.next())
            h = random_mapping(b, c, rng.next())
            if g is None or h is None:
                rejected_mappings += 1
                continue
            self.emitted.extend((g, h))
            self.check("E-composition", lambda: E_on_morphism(g.then(h))
                       == E_on_morphism(g).then(E_on_morphism(h)), g)
            self.check("gamma-naturality", lambda: check_gamma_naturality(g, self.config), g)
        self.tracker.note("rejected random cf relation chains", rejected_relations)
        self.tracker.note("rejected random mapping pairs for E", rejected_mappings)

    def _verify_small_morphisms(self):
        """Every morphism between the smallest frames and spaces, through the laws that take one morphism."""
        frames = [frame for frame in self.frames if frame.n <= MAX_EXHAUSTIVE_MORPHISM]
        mappings = 0
        for a, b in itertools.product(frames, repeat=2):
            for h in enum_mappings(a, b):
                mappings += 1
                self.emitted.append(h)
                self.check("exhaustive-mapping-lemmas", lambda: check_mapping_lemmas(h), h)
                self.check("exhaustive-mapping-identity", lambda: identity_mapping(a).then(h) == h
                           and h.then(identity_mapping(b)) == h, h)
                self.check("exhaustive-eta-naturality", lambda: check_eta_naturality(h), h)
                self.check("exhaustive-E-relation",
                           lambda: validate_cf_relation(E_on_morphism(h)), h)
                self.check("exhaustive-gamma-naturality",
                           lambda: check_gamma_naturality(h, self.config), h)

        spaces = [space for space in self.spaces
                  if space.n <= MAX_EXHAUSTIVE_MORPHISM and len(space.family) <= MAX_EXHAUSTIVE_MORPHISM]
        relations = 0
        for u, v in itertools.product(spaces, repeat=2):
            for d in enum_cf_relations(u, v):
                relations += 1
                self.emitted.append(d)
                self.check("exhaustive-cf-identity", lambda: identity_cf(u).then(d) == d
                           and d.then(identity_cf(v)) == d, d)
                self.check("exhaustive-C-mapping", lambda: validate_mapping(C_on_morphism(d)), d)
                self.check("exhaustive-delta-naturality",
                           lambda: check_delta_naturality(d, self.config), d)
        self.tracker.note("exhaustive mappings", mappings)
        self.tracker.note("exhaustive cf relations", relations)

    def _verify_fixtures(self):
        self.check("fixture F_unit states", lambda: len(enumerate_states(f_unit())) == 1)
        self.check("fixture F(P_chain2) states",
                   lambda: len(enumerate_states(F_on_object(p_chain2()))) == 2)
        self.check("fixture F(P_diamond) states",
                   lambda: len(enumerate_states(F_on_object(p_diamond()))) == 4)
        unit = validate_cf_space(u_unit(), self.config)
        self.check("fixture U_unit flags", lambda: unit.valid and unit.flags['topological']
                   and unit.flags['has_M'])
        empty = validate_cf_space(u_empty_f(), self.config)
        self.check("fixture U_emptyF flags", lambda: empty.valid and empty.flags['has_M']
                   and not empty.flags['topological'])

    def _verify_io(self):
        population = [*self.all_posets, *self.frames, *self.spaces, *self.emitted]
        for structure in population:
            self.check("io-roundtrip", lambda: _roundtrips(structure), structure)


def _classify(frame: InformationFrame):
    """classify_frame on a frame that may not have been validated yet."""
    if not frame.validated:
        validate_frame(frame)
    return classify_frame(frame)


def _valid_case(case: Case) -> bool:
    return not isinstance(case, InformationFrame) or validate_frame(case).valid


def _approximation_agrees(frame: InformationFrame) -> bool:
    domain = induced_domain(frame)
    for x in domain.states:
        for y in domain.states:
            approx_by_entailment(domain, x, y)
    return True


def _lift_is_strong(poset: FinitePoset) -> bool:
    lifted = F_on_object(poset)
    return validate_frame(lifted).valid and classify_frame(lifted).strong


def _domain_of_C(space: CFSpace) -> bool:
    """D(C(U)) exists and is an algebraic domain."""
    domain = induced_domain(C_on_object(space))
    return domain_properties(domain).algebraic


def _roundtrips(structure) -> bool:
    text = serialize(structure, "S")
    parsed = parse(text).get("S")
    return parsed == structure and serialize(parsed, "S") == text


__all__ = ["EquivalenceVerifier"]
