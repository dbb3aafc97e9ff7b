"""Exception hierarchy for dfk."""
from typing import Any, Tuple


class DFKError(Exception):
    """Base class for every error raised by dfk."""

    def __init__(self, message: str, *witness: Any):
        super().__init__(message)
        self.witness: Tuple[Any, ...] = tuple(witness)


# Order theory

class EmptyPosetError(DFKError):
    """Raised when a poset with no elements is constructed."""


class OrderAxiomError(DFKError):
    """A raw relation fails one of the partial-order axioms."""


class NotReflexiveError(OrderAxiomError):
    def __init__(self, x: str):
        super().__init__(f"not reflexive at {x}", x)


class NotAntisymmetricError(OrderAxiomError):
    def __init__(self, x: str, y: str):
        super().__init__(f"not antisymmetric: {x} <= {y} and {y} <= {x}", x, y)


class NotTransitiveError(OrderAxiomError):
    def __init__(self, x: str, y: str, z: str):
        super().__init__(f"not transitive: {x} <= {y} <= {z} but not {x} <= {z}", x, y, z)


class InvalidBasisError(DFKError):
    def __init__(self, element: str):
        super().__init__(f"basis property fails at {element}", element)


class UnknownElementError(DFKError):
    def __init__(self, element: str):
        super().__init__(f"unknown element {element!r}", element)


# Frames and states

class FrameTypeError(DFKError):
    """Frame data is not well typed (e.g. an entailment premise outside Con_i)."""


class NotValidatedError(DFKError):
    """A frame must pass validate_frame before this operation."""


class NotConsistentError(DFKError):
    """A token set is not in the consistency family it was used with."""


class EmptyStateSpaceError(DFKError):
    """A valid frame has no states, so it induces no domain."""


class InvalidStructureError(DFKError):
    """An operation that needs a valid structure received an invalid one."""

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report


# Morphisms

class FrameMismatchError(DFKError):
    """Composed mappings do not share the middle frame."""


class SpaceMismatchError(DFKError):
    """Composed CF-relations do not share the middle space."""


class NotContinuousError(DFKError):
    """A map handed to F is not Scott continuous."""


# Configuration

class ConfigError(DFKError):
    """An environment variable holds a value dfk cannot use."""


# Rough sets and caps

class EmptyFamilyError(DFKError):
    """C(U) needs a nonempty family."""


class SizeExceededError(DFKError):
    """A construction would exceed the configured hard caps."""


class BoundExceededError(DFKError):
    """Generator bounds exceed the configured hard caps."""


# Internal consistency

class InternalInconsistencyError(DFKError):
    """Two independent computations disagree. Always a bug."""


class DerivedLemmaViolated(InternalInconsistencyError):
    pass


class TheoremViolated(InternalInconsistencyError):
    pass


# structure_io

class ParseError(DFKError):
    def __init__(self, line: int, column: int, expected: str, found: str = ""):
        found_text = f", found {found!r}" if found else ""
        super().__init__(f"line {line}, column {column}: expected {expected}{found_text}",
                         line, column, expected)
        self.line = line
        self.column = column
        self.expected = expected


class UnknownTokenError(DFKError):
    def __init__(self, token: str, line: int = 0, column: int = 0):
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(f"{where}unknown token {token!r}", token, line, column)
        self.token = token
        self.line = line
        self.column = column


class DuplicateSectionError(DFKError):
    def __init__(self, section: str, line: int = 0, column: int = 0):
        super().__init__(f"line {line}, column {column}: duplicate section {section!r}",
                         section, line, column)
        self.section = section
        self.line = line
        self.column = column
