"""Exception types shared by every module.

Library code raises these; the workflow layer turns them into result
dictionaries and exit codes.
"""

from __future__ import annotations

from typing import Any, Dict, List, Optional


class ParadoxError(Exception):
    """Base class for all errors raised by the paradox toolkit."""


class ZeroDivisionInFieldError(ParadoxError, ArithmeticError):
    """Division by zero in Q, Q(sqrt2) or on real algebraic numbers."""


class NotInFieldError(ParadoxError, ValueError):
    """A value required to lie in Q(sqrt2) does not."""


class DegreeBoundError(ParadoxError, ValueError):
    """A real algebraic number would exceed the supported degree."""


class IsolationError(ParadoxError, ValueError):
    """An isolating interval does not isolate exactly one root."""


class DeterminantError(ParadoxError, ValueError):
    """A matrix cannot be normalized to determinant one over Q(sqrt2)."""


class PoleInIntervalError(ParadoxError, ValueError):
    """The pole -d/c of a projective map lies in the interval being acted on."""

    def __init__(self, message: str, pole: Any = None):
        super().__init__(message)
        self.pole = pole


class ClassificationError(ParadoxError, ValueError):
    """The identity has no elliptic/parabolic/hyperbolic type."""


class ContinuityError(ParadoxError, ValueError):
    """Adjacent pieces of a piecewise map disagree at their breakpoint."""

    def __init__(self, message: str, breakpoint: Any = None):
        super().__init__(message)
        self.breakpoint = breakpoint


class MonotonicityError(ParadoxError, ValueError):
    """A piece is not an increasing homeomorphism of its interval."""

    def __init__(self, message: str, breakpoint: Any = None):
        super().__init__(message)
        self.breakpoint = breakpoint


class UnknownGeneratorError(ParadoxError, KeyError):
    """No builtin generator family or generator pair has the requested name."""


class LiftPreconditionError(ParadoxError, ValueError):
    """A matrix cannot be spliced into a piecewise map over the interval."""


class WordSearchExhausted(ParadoxError):
    """The translating-word search ran out of candidates."""

    def __init__(self, message: str, statistics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.statistics = statistics or {}


class PreconditionError(ParadoxError, ValueError):
    """One or more preconditions failed; every failure is listed."""

    def __init__(self, message: str, failures: Optional[List[str]] = None):
        super().__init__(message)
        self.failures = failures or []


class PigeonholeFailure(ParadoxError, RuntimeError):
    """The coverage computation contradicts its own verified integral bound."""


class SchemaError(ParadoxError, ValueError):
    """Serialized data does not match the expected schema."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


class ConfigError(ParadoxError, ValueError):
    """Invalid configuration file or flag combination."""


class ConstructionError(ParadoxError):
    """A built translating set fails one of its own invariants."""

    def __init__(self, message: str, failures: Optional[List[str]] = None):
        super().__init__(message)
        self.failures = failures or []
