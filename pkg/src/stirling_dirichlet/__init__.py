"""Stirling-number representations of Dirichlet series, evaluated to high precision."""

from .context import (
    DEFAULT_CONTEXT,
    EvaluationContext,
    InvalidParameters,
    NoClosedForm,
    PrecisionUnreachable,
    QuadratureNonconvergent,
    TableBudgetExceeded,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_CONTEXT",
    "EvaluationContext",
    "InvalidParameters",
    "NoClosedForm",
    "PrecisionUnreachable",
    "QuadratureNonconvergent",
    "TableBudgetExceeded",
]
