"""Utility modules for dfk."""
from .formatting import ReportFormatter
from .prng import Xoshiro256
from .tracking import CheckTracker

__all__ = ["ReportFormatter", "Xoshiro256", "CheckTracker"]
