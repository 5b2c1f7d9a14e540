"""Shared error types.

Every raised error carries a stable machine ``code`` so CLI and HTTP layers
can surface it without string matching.
"""

from __future__ import annotations


class HookforgeError(Exception):
    """Base for all domain errors."""

    code = "HOOKFORGE_ERROR"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict:
        out = {"code": self.code, "message": self.message}
        if self.details:
            out.update(self.details)
        return out


class PreconditionError(HookforgeError):
    """An operation was invoked on input that fails its preconditions."""

    code = "PRECONDITION_FAILED"
