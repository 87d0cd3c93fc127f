"""Exception types shared across the package."""
from __future__ import annotations

__all__ = [
    "CapabilityError",
    "DimensionError",
    "DomainError",
    "GuaranteeError",
    "ParseError",
    "ResourceLimitError",
]


class DimensionError(ValueError):
    """Operands have incompatible lengths."""


class DomainError(ValueError):
    """Argument lies outside the domain an operation is defined on."""


class ParseError(ValueError):
    """Malformed permutation text.  Carries the character offset."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (offset {position})"
        super().__init__(message)
        self.position = position


class CapabilityError(ValueError):
    """Operation not implemented for this input kind."""


class ResourceLimitError(RuntimeError):
    """Work would exceed a configured cap."""


class GuaranteeError(RuntimeError):
    """An internal guarantee failed; indicates a bug, not bad input."""
