# === File: src/exceptions.py ===

"""
Error hierarchy for the polar curve analyzer.

Every error carries the process exit code the CLI uses for it.
"""

from typing import Optional


class PolaresError(Exception):
    """Base class for all analyzer errors."""
    exit_code = 1


class CurveSyntaxError(PolaresError, ValueError):
    """Raised when an input expression does not follow the grammar."""
    exit_code = 2

    def __init__(self, message: str, position: int, text: Optional[str] = None):
        self.position = position
        self.text = text
        super().__init__(f"{message} (at position {position})")


class CurveValidationError(PolaresError, ValueError):
    """Raised when a parsed curve breaks the standing hypotheses."""
    exit_code = 2


class MisuseError(PolaresError, ValueError):
    """Raised when an operation is called outside its precondition."""
    exit_code = 2


class UndefinedGcdError(MisuseError):
    """Raised for gcd(0, 0)."""


class TheoremViolation(PolaresError, ArithmeticError):
    """Raised when a guarded theorem fails; signals an internal contradiction."""
    exit_code = 3


class OutputError(PolaresError, OSError):
    """Raised when an output file cannot be written."""
    exit_code = 2
