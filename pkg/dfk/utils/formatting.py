"""Report formatting for the command line."""
import json
from typing import Any, Dict, List, Optional, Sequence, Tuple
from datetime import datetime


def _time_line() -> str:
    return f"Time: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}"


class ReportFormatter:
    """Formats verification results as stable ``KEY: value`` text."""

    @staticmethod
    def format_check(entries: Sequence[Dict[str, Any]], timestamp: bool = True) -> str:
        """
        Format `check` results, one entry per structure in the file.

        Each entry has kind, name, valid, summary (flag text) and violations.
        """
        lines = [_time_line()] if timestamp else []
        for entry in entries:
            status = "valid" if entry['valid'] else "invalid"
            text = "; ".join(part for part in [status] + list(entry.get('summary', [])) if part)
            lines.append(f"{entry['kind']} {entry['name']}: {text}")
            for violation in entry.get('violations', []):
                lines.append(f"  ✗ {violation}")
        return "\n".join(lines)

    @staticmethod
    def format_states(name: str, states: Sequence[Tuple[str, str]],
                      edges: Sequence[Tuple[str, str]], timestamp: bool = True) -> str:
        """Format the states of a frame and the Hasse edges of their inclusion order."""
        lines = [_time_line()] if timestamp else []
        lines.append(f"FRAME: {name}")
        lines.append(f"STATES: {len(states)}")
        for label, members in states:
            lines.append(f"  {label} = {members}")
        lines.append(f"EDGES: {len(edges)}")
        for lower, upper in edges:
            lines.append(f"  {lower} < {upper}")
        return "\n".join(lines)

    @staticmethod
    def format_roundtrip(name: str, via: str, results: Sequence[Tuple[str, bool]],
                         violations: Sequence[str] = (), timestamp: bool = True) -> str:
        """Format roundtrip identities such as ``Υ∘Γ = Id``."""
        lines = [_time_line()] if timestamp else []
        lines.append(f"STRUCTURE: {name}")
        lines.append(f"VIA: {via}")
        lines.append("RESULT: " + ", ".join(
            f"{label} {'=' if held else '≠'} Id" for label, held in results))
        for violation in violations:
            lines.append(f"  ✗ {violation}")
        return "\n".join(lines)

    @staticmethod
    def format_apply(functor: str, source: str, produced: str, timestamp: bool = True) -> str:
        lines = [_time_line()] if timestamp else []
        lines.extend([
            f"FUNCTOR: {functor}",
            f"INPUT: {source}",
            f"OUTPUT: {produced}",
        ])
        return "\n".join(lines)

    @staticmethod
    def format_generate(kind: str, count: int, output: Optional[str], timestamp: bool = True) -> str:
        lines = [_time_line()] if timestamp else []
        lines.extend([
            f"KIND: {kind}",
            f"COUNT: {count}",
            f"OUTPUT: {output or '-'}",
        ])
        return "\n".join(lines)

    @staticmethod
    def format_summary(suite: str, summary: Dict[str, Any], timestamp: bool = True) -> str:
        """Format a verification suite summary from CheckTracker.get_summary()."""
        lines = [_time_line()] if timestamp else []
        lines.extend([
            f"SUITE: {suite}",
            f"CHECKS: {summary.get('total_checks', 0)}",
            f"INSTANCES: {summary.get('total_instances', 0)}",
            f"COUNTEREXAMPLES: {summary.get('total_failures', 0)}",
        ])
        if timestamp:
            lines.append(f"ELAPSED: {summary.get('elapsed_time_formatted', 'N/A')}")
        lines.append("")

        for check_name, info in summary.get('checks', {}).items():
            mark = "✓" if not info['failed'] else "✗"
            lines.append(f"{mark} {check_name}: {info['passed']} passed, {info['failed']} failed")
            if info['failed']:
                lines.append(f"    witness: {info['witness']}")

        if summary.get('notes'):
            lines.append("")
            lines.append("Notes:")
            for key, value in summary['notes'].items():
                lines.append(f"  {key}: {value}")

        return "\n".join(lines)

    @staticmethod
    def to_json(payload: Dict[str, Any], timestamp: bool = True) -> str:
        """JSON mirror of a report; keys sorted."""
        body = dict(payload)
        if timestamp:
            body['time'] = datetime.now().strftime('%Y-%m-%d %H:%M:%S')
        else:
            body.pop('elapsed_time', None)
            body.pop('elapsed_time_formatted', None)
        return json.dumps(body, sort_keys=True, indent=2, default=str, ensure_ascii=False)


def violation_lines(violations: Sequence[Any]) -> List[str]:
    return [str(violation) for violation in violations]
