"""Domain error type shared across the package.

Every recoverable failure carries a stable machine-readable code
(``E_NO_TABLETS``, ``E_RAGGED_ROW``, ...) plus whatever positional
details the caller needs (tablet index, pick index, line number).
"""

from __future__ import annotations


class DomainError(Exception):
    """An error with a stable code and structured details."""

    def __init__(self, code: str, message: str, **details):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message
        self.details = details

    def __repr__(self):
        return f"DomainError({self.code!r}, {self.message!r}, {self.details!r})"
