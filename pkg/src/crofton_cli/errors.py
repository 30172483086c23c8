"""Exception types shared by the crofton services and the CLI."""
from __future__ import annotations

from typing import Any


class CroftonError(Exception):
    """Base class for every error raised on purpose by this package."""


class InvalidArgumentError(CroftonError, ValueError):
    pass


class DegenerateLineError(CroftonError, ValueError):
    """Raised when a deviation is requested on a line in the exceptional set."""

    def __init__(self, line: Any, message: str | None = None) -> None:
        self.line = line
        super().__init__(message or f"Line {line} is degenerate for this set; perturb or skip it")


class ResourceLimitError(CroftonError, RuntimeError):
    def __init__(self, what: str, requested: int, cap: int) -> None:
        self.what = what
        self.requested = requested
        self.cap = cap
        super().__init__(f"{what}: {requested} exceeds the configured cap of {cap}")


class SetFormatError(CroftonError, ValueError):
    pass


__all__ = [
    "CroftonError",
    "InvalidArgumentError",
    "DegenerateLineError",
    "ResourceLimitError",
    "SetFormatError",
]
