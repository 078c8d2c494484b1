"""Working-precision settings and the error types shared by every module."""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass, replace

import mpmath as mp


class PrecisionUnreachable(ArithmeticError):
    """The requested digits cannot be reached within the configured term budget."""


class QuadratureNonconvergent(ArithmeticError):
    """Successive tanh-sinh levels did not agree before the level cap."""


class TableBudgetExceeded(MemoryError):
    """An exact table request would exceed its configured size budget."""


class InvalidParameters(ValueError):
    """Parameters fall outside the domain on which an identity is claimed."""


class NoClosedForm(LookupError):
    """The identity has no stored closed form at the requested parameters."""


@dataclass(frozen=True)
class EvaluationContext:
    """Precision and budget knobs threaded through all analytic evaluation.

    ``target_digits`` is what callers ask for; arithmetic runs at
    ``target_digits + guard_digits``.
    """

    target_digits: int = 30
    guard_digits: int = 15
    max_terms: int = 10**6
    max_quadrature_level: int = 12

    def __post_init__(self):
        if self.target_digits < 1:
            raise ValueError("target_digits must be >= 1")
        if self.guard_digits < 5:
            raise ValueError("guard_digits must be >= 5")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if self.max_quadrature_level < 1:
            raise ValueError("max_quadrature_level must be >= 1")

    @property
    def dps(self) -> int:
        return self.target_digits + self.guard_digits

    @property
    def bits(self) -> int:
        return int(math.ceil(self.dps * math.log2(10))) + 8

    @property
    def eps(self) -> mp.mpf:
        """Relative resolution of the target precision, 10**-target_digits."""
        with mp.workdps(self.dps):
            return mp.mpf(10) ** (-self.target_digits)

    def workdps(self):
        return mp.workdps(self.dps)

    def with_(self, **changes) -> "EvaluationContext":
        return replace(self, **changes)

    def refined(self, extra_digits: int) -> "EvaluationContext":
        """Same context with ``extra_digits`` more guard digits."""
        return replace(self, guard_digits=self.guard_digits + extra_digits)

    @contextmanager
    def higher(self, extra_digits: int):
        """Temporarily raise the working precision by ``extra_digits``."""
        with mp.workdps(self.dps + extra_digits):
            yield


DEFAULT_CONTEXT = EvaluationContext()
