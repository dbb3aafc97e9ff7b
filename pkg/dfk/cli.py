"""
Command-line entry point: ``dfk check|states|apply|roundtrip|generate|verify``.

Exit codes: 0 when every check passed, 1 when violations were found (witnesses
go to standard output), 2 on usage, parse and IO errors.
"""
import argparse
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .config import Config
from .core import EquivalenceVerifier
from .errors import DFKError, InvalidStructureError, OrderAxiomError
from .frames import validate_frame
from .functors.cfspaces import C_on_morphism, C_on_object, E_on_morphism, E_on_object, delta, gamma
from .functors.domains import F_on_object, eta, tau
from .generators import GenBounds, generate
from .morphisms.mappings import validate_mapping
from .morphisms.relations import validate_cf_relation
from .order import is_algebraic, is_L_domain, is_pointed
from .reports import ValidationReport
from .rough import validate_cf_space
from .states import induced_domain
from .structure_io import Document, Structure, kind_of, load, serialize
from .utils.formatting import ReportFormatter, violation_lines

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_ERROR = 2

_PREFIXES = {'frame': "F", 'poset': "P", 'cfspace': "U"}

# structure kind accepted by each functor, and what it produces
_FUNCTORS = {
    'D': {'frame': lambda s, cfg: induced_domain(s).poset},
    'F': {'poset': lambda s, cfg: F_on_object(s)},
    'C': {'cfspace': lambda s, cfg: C_on_object(s), 'cfrelation': lambda s, cfg: C_on_morphism(s)},
    'E': {'frame': lambda s, cfg: E_on_object(s), 'mapping': lambda s, cfg: E_on_morphism(s)},
}

# (input kind, --via) -> (builder, label of backward-then-forward, label of forward-then-backward)
_ROUNDTRIPS = {
    ('cfspace', 'frames'): (lambda s, cfg: delta(s, cfg), "Υ∘Γ", "Γ∘Υ"),
    ('frame', 'cfspaces'): (lambda s, cfg: gamma(s, cfg), "Q∘P", "P∘Q"),
    ('frame', 'domains'): (lambda s, cfg: eta(s), "S∘T", "T∘S"),
    ('poset', 'frames'): (lambda s, cfg: tau(s), "st∘sp", "sp∘st"),
}


class UsageError(DFKError):
    """A verb received arguments it cannot work with."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dfk",
        description="Check domains, information frames and CF-approximation spaces.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--json", action="store_true", help="Print a JSON mirror of the report")
    parser.add_argument("--no-timestamp", action="store_true",
                        help="Omit the Time line so identical runs give identical reports")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log progress to stderr")
    verbs = parser.add_subparsers(dest="verb", required=True)

    check = verbs.add_parser("check", help="Validate every structure in a file")
    check.add_argument("file")

    states = verbs.add_parser("states", help="List the states of a frame and their order")
    states.add_argument("file")

    apply = verbs.add_parser("apply", help="Apply a functor and write the result")
    apply.add_argument("functor", choices=sorted(_FUNCTORS))
    apply.add_argument("file")
    apply.add_argument("-o", "--output", required=True, help="Output structure file")

    roundtrip = verbs.add_parser("roundtrip", help="Check a natural isomorphism on a structure")
    roundtrip.add_argument("file")
    roundtrip.add_argument("--via", required=True, choices=["frames", "domains", "cfspaces"])

    gen = verbs.add_parser("generate", help="Write generated structures to a file")
    gen.add_argument("--kind", required=True, choices=sorted(_PREFIXES))
    gen.add_argument("--bounds", default="", help="e.g. tokens=2,elements=3,family=2,universe=2,con=4")
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--count", type=int, default=None, help="Sample count in random mode")
    gen.add_argument("--mode", choices=["exhaustive", "random"], default=None)
    gen.add_argument("--raw", action="store_true", help="Keep candidates that fail validation")
    gen.add_argument("-o", "--output", default=None, help="Output file (standard output if omitted)")

    verify = verbs.add_parser("verify", help="Run a verification suite")
    verify.add_argument("--suite", required=True, choices=list(EquivalenceVerifier.SUITES))
    verify.add_argument("--bounds", default="",
                        help="e.g. tokens=2,elements=3,order=4; "
                             "equivalence starts from its acceptance bounds")
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--count", type=int, default=None, help="Random morphism samples per law")
    return parser


# check

def _describe(structure: Structure, config: Config) -> Tuple[ValidationReport, List[str]]:
    """Validation report plus the summary words shown after valid/invalid."""
    kind = kind_of(structure)
    if kind == "poset":
        flags = [name for name, on in (("pointed", is_pointed(structure)),
                                       ("algebraic", is_algebraic(structure)),
                                       ("L-domain", is_L_domain(structure))) if on]
        return ValidationReport(subject="poset"), [" ".join(flags)]
    if kind == "frame":
        report = validate_frame(structure)
        if not report.valid:
            return report, []
        properties = report.properties
        truth = ", ".join(properties.truth) or "none"
        return report, [" ".join(properties.names()), f"truth: {truth}"]
    if kind == "cfspace":
        report = validate_cf_space(structure, config)
        names = [name for name in ("transitive", "topological") if report.flags[name]]
        if report.flags['has_M']:
            names.append("M")
        witnesses = " ".join(report.flags['m_witnesses']) or "none"
        return report, [" ".join(names), f"M witnesses: {witnesses}"]
    if kind == "mapping":
        report = validate_mapping(structure)
        truth = report.flags.get('respects_truth')
        return report, [] if truth is None else [f"respects truth: {'yes' if truth else 'no'}"]
    return validate_cf_relation(structure), []


def run_check(args: argparse.Namespace, config: Config) -> Tuple[int, str]:
    doc = load(args.file)
    entries: List[Dict[str, Any]] = []
    for name, structure in doc:
        report, summary = _describe(structure, config)
        entries.append({
            'kind': kind_of(structure),
            'name': name,
            'valid': report.valid,
            'summary': summary,
            'violations': violation_lines(report.violations),
        })
    code = EXIT_OK if all(entry['valid'] for entry in entries) else EXIT_VIOLATIONS
    if args.json:
        return code, ReportFormatter.to_json({'verb': "check", 'structures': entries}, _stamp(args))
    return code, ReportFormatter.format_check(entries, _stamp(args))


# states

def run_states(args: argparse.Namespace, config: Config) -> Tuple[int, str]:
    name, frame = load(args.file).first("frame")
    domain = induced_domain(frame)
    states = [(domain.label(state), str(state)) for state in domain.states]
    edges = domain.hasse_edges()
    if args.json:
        payload = {
            'verb': "states",
            'frame': name,
            'states': [{'label': label, 'members': members} for label, members in states],
            'edges': [list(edge) for edge in edges],
        }
        return EXIT_OK, ReportFormatter.to_json(payload, _stamp(args))
    return EXIT_OK, ReportFormatter.format_states(name, states, edges, _stamp(args))


# apply

def _single(doc: Document, kinds: Sequence[str], verb: str) -> Tuple[str, Structure]:
    """The morphism of the file if there is one, else its first structure of kinds."""
    morphisms = [k for k in kinds if k in ("mapping", "cfrelation")]
    for group in (morphisms, kinds):
        if not group:
            continue
        try:
            return doc.first(*group)
        except DFKError:
            continue
    raise UsageError(f"{verb} needs a {' or '.join(kinds)} block")


def run_apply(args: argparse.Namespace, config: Config) -> Tuple[int, str]:
    table = _FUNCTORS[args.functor]
    name, structure = _single(load(args.file), list(table), f"apply {args.functor}")
    produced = table[kind_of(structure)](structure, config)
    out_name = f"{args.functor}_{name}"
    with open(args.output, "w", encoding="utf-8") as handle:
        handle.write(serialize(produced, out_name))
    logger.info("wrote %s %s to %s", kind_of(produced), out_name, args.output)
    if args.json:
        payload = {'verb': "apply", 'functor': args.functor, 'input': name,
                   'output': args.output, 'kind': kind_of(produced)}
        return EXIT_OK, ReportFormatter.to_json(payload, _stamp(args))
    return EXIT_OK, ReportFormatter.format_apply(
        args.functor, f"{kind_of(structure)} {name}", f"{kind_of(produced)} {out_name} -> {args.output}",
        _stamp(args))


# roundtrip

def run_roundtrip(args: argparse.Namespace, config: Config) -> Tuple[int, str]:
    doc = load(args.file)
    kinds = [kind for kind, via in _ROUNDTRIPS if via == args.via]
    name, structure = _single(doc, kinds, f"roundtrip --via {args.via}")
    build, backward_label, forward_label = _ROUNDTRIPS[(kind_of(structure), args.via)]
    report = build(structure, config).check()
    failed = set(report.conditions())
    results = [
        (backward_label, "backward-then-forward" not in failed),
        (forward_label, "forward-then-backward" not in failed),
    ]
    code = EXIT_OK if report.valid else EXIT_VIOLATIONS
    violations = violation_lines(report.violations)
    if args.json:
        payload = {'verb': "roundtrip", 'structure': name, 'via': args.via,
                   'results': {label: held for label, held in results}, 'violations': violations}
        return code, ReportFormatter.to_json(payload, _stamp(args))
    return code, ReportFormatter.format_roundtrip(name, args.via, results, violations, _stamp(args))


# generate

def run_generate(args: argparse.Namespace, config: Config) -> Tuple[int, str]:
    bounds = GenBounds.parse(args.bounds, seed=_seed(args, config), count=args.count,
                             mode=args.mode, raw=args.raw or None)
    doc = Document()
    prefix = _PREFIXES[args.kind]
    for k, structure in enumerate(generate(args.kind, bounds, config)):
        doc.add(f"{prefix}{k:04d}", structure)
    text = serialize(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    if args.json:
        payload = {'verb': "generate", 'kind': args.kind, 'count': len(doc),
                   'output': args.output, 'bounds': bounds.as_dict()}
        return EXIT_OK, ReportFormatter.to_json(payload, _stamp(args))
    if not args.output:
        return EXIT_OK, ""
    return EXIT_OK, ReportFormatter.format_generate(args.kind, len(doc), args.output, _stamp(args))


# verify

def run_verify(args: argparse.Namespace, config: Config) -> Tuple[int, str]:
    base = GenBounds.acceptance() if args.suite == "equivalence" else None
    bounds = GenBounds.parse(args.bounds, base, seed=_seed(args, config), count=args.count)
    verifier = EquivalenceVerifier(bounds, config.config)
    summary = verifier.run(args.suite)
    code = EXIT_OK if summary['total_failures'] == 0 else EXIT_VIOLATIONS
    if args.json:
        payload = dict(summary, verb="verify", suite=args.suite, bounds=bounds.as_dict())
        return code, ReportFormatter.to_json(payload, _stamp(args))
    return code, ReportFormatter.format_summary(args.suite, summary, _stamp(args))


def _seed(args: argparse.Namespace, config: Config) -> Optional[int]:
    return args.seed if args.seed is not None else config.get('seed')


def _stamp(args: argparse.Namespace) -> bool:
    return not args.no_timestamp


_VERBS = {
    'check': run_check,
    'states': run_states,
    'apply': run_apply,
    'roundtrip': run_roundtrip,
    'generate': run_generate,
    'verify': run_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one verb and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return EXIT_OK if exit_.code == 0 else EXIT_ERROR

    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        config = Config()
        if config.get('no_timestamp'):
            args.no_timestamp = True
        code, text = _VERBS[args.verb](args, config)
    except OrderAxiomError as error:
        print(f"✗ {error}")
        return EXIT_VIOLATIONS
    except InvalidStructureError as error:
        print(f"✗ {error}")
        return EXIT_VIOLATIONS
    except DFKError as error:
        print(f"✗ {error}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as error:
        print(f"✗ {error}", file=sys.stderr)
        return EXIT_ERROR

    if text:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
