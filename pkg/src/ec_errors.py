#!/usr/bin/env python3
"""
Error Types

Exceptions raised by the toolkit. Everything derives from ``CodeError`` (a
``ValueError``) so callers can catch the whole family at once.
"""

from typing import Optional


class CodeError(ValueError):
    """Base class for every error raised by the toolkit."""


class FieldError(CodeError):
    """Invalid field order, modulus, context mismatch or zero inversion."""


class ParameterError(CodeError):
    """A code parameter violates one of its invariants."""

    def __init__(self, message: str, invariant: str = "", nearest: Optional[int] = None):
        super().__init__(message)
        self.invariant = invariant
        self.nearest = nearest


class DecodeError(CodeError):
    """The surviving symbols do not determine a unique message."""

    def __init__(self, message: str, status=None):
        super().__init__(message)
        self.status = status


class RepairError(CodeError):
    """A repair request does not meet the protocol's preconditions."""
