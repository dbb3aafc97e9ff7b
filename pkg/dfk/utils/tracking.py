"""Check tracking for verification suites."""
from typing import Dict, List, Any, Optional
import time


class CheckTracker:
    """Tracks named checks and their counterexamples over a suite run."""

    def __init__(self):
        self.checks: Dict[str, Dict[str, int]] = {}
        self.order: List[str] = []
        self.failures: Dict[str, Any] = {}
        self.notes: Dict[str, Any] = {}
        self.start_time = time.time()

    def log(self, check_name: str, passed: bool, witness: Optional[Any] = None):
        """
        Record one instance of a check.

        Args:
            check_name: Name of the check
            passed: Whether this instance held
            witness: What failed, kept for the first failure only
        """
        if check_name not in self.checks:
            self.checks[check_name] = {'passed': 0, 'failed': 0}
            self.order.append(check_name)

        if passed:
            self.checks[check_name]['passed'] += 1
        else:
            self.checks[check_name]['failed'] += 1
            self.failures.setdefault(check_name, witness)

    def note(self, key: str, value: Any):
        """Record an exploratory statistic that is reported but never asserted."""
        self.notes[key] = value

    def get_count(self, check_name: str) -> int:
        """Total instances recorded for a check."""
        counts = self.checks.get(check_name, {'passed': 0, 'failed': 0})
        return counts['passed'] + counts['failed']

    def get_failures(self, check_name: str) -> int:
        return self.checks.get(check_name, {}).get('failed', 0)

    def first_witness(self, check_name: str) -> Optional[Any]:
        return self.failures.get(check_name)

    @property
    def all_passed(self) -> bool:
        return not self.failures

    def get_summary(self) -> Dict[str, Any]:
        """Get summary of all checks."""
        elapsed_time = time.time() - self.start_time

        summary = {
            'total_checks': len(self.checks),
            'total_instances': sum(self.get_count(name) for name in self.order),
            'total_failures': sum(self.get_failures(name) for name in self.order),
            'elapsed_time': elapsed_time,
            'elapsed_time_formatted': self._format_time(elapsed_time),
            'checks': {},
            'notes': dict(self.notes),
        }

        for check_name in self.order:
            summary['checks'][check_name] = {
                'passed': self.checks[check_name]['passed'],
                'failed': self.checks[check_name]['failed'],
                'witness': self.failures.get(check_name),
            }

        return summary

    @staticmethod
    def _format_time(seconds: float) -> str:
        """Format seconds into human-readable string."""
        hours = int(seconds // 3600)
        minutes = int((seconds % 3600) // 60)
        secs = int(seconds % 60)

        if hours > 0:
            return f"{hours}h {minutes}m {secs}s"
        elif minutes > 0:
            return f"{minutes}m {secs}s"
        else:
            return f"{secs}s"
