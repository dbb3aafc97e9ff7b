"""Base morphism class."""
from abc import ABC, abstractmethod
from typing import Any, Hashable

from ..reports import ValidationReport


class BaseMorphism(ABC):
    """Abstract base class for morphisms between finite structures."""

    def __init__(self, source: Any, target: Any):
        """
        Initialize the morphism.

        Args:
            source: Domain structure
            target: Codomain structure
        """
        self.source = source
        self.target = target

    @abstractmethod
    def validate(self) -> ValidationReport:
        """
        Check the defining conditions exhaustively.

        Returns:
            Report listing every violated condition with a witness
        """
        pass

    @abstractmethod
    def then(self, other: "BaseMorphism") -> "BaseMorphism":
        """Compose diagrammatically: self first, then other."""
        pass

    @abstractmethod
    def extension(self) -> Hashable:
        """Canonical extensional content used for equality."""
        pass

    def __eq__(self, other) -> bool:
        if not isinstance(other, BaseMorphism) or type(self) is not type(other):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.extension() == other.extension())

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.source, self.target, self.extension()))
