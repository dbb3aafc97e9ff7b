"""Report dataclasses shared by the validators."""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple


@dataclass(frozen=True)
class Violation:
    """One failed condition and the minimal witness found for it."""

    condition: str
    witness: Tuple[Any, ...] = ()

    def __str__(self) -> str:
        inner = ", ".join(str(part) for part in self.witness)
        return f"{self.condition}({inner})"


@dataclass
class ValidationReport:
    """Outcome of an exhaustive check. Valid exactly when there are no violations."""

    subject: str
    violations: List[Violation] = field(default_factory=list)
    flags: Dict[str, Any] = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return not self.violations

    def add(self, condition: str, *witness: Any):
        self.violations.append(Violation(condition, tuple(witness)))

    def conditions(self) -> List[str]:
        return [violation.condition for violation in self.violations]

    def merge(self, other: "ValidationReport", prefix: str = ""):
        for violation in other.violations:
            self.violations.append(Violation(prefix + violation.condition, violation.witness))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'subject': self.subject,
            'valid': self.valid,
            'violations': [
                {'condition': v.condition, 'witness': [str(part) for part in v.witness]}
                for v in self.violations
            ],
            'flags': {key: _jsonable(value) for key, value in self.flags.items()},
        }


def _jsonable(value: Any) -> Any:
    if isinstance(value, (list, tuple, set, frozenset)):
        return [_jsonable(item) for item in value]
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    return str(value)
