"""Registry of series identities and the pipeline that verifies them."""

from .expressions import Expr
from .records import REGISTRY, IdentityRecord, Parameter, Special, get_record, resolve
from .sides import Side
from .generating import CASES, ThreeWayReport, three_way
from .verification import (
    STATUSES,
    TIER_FLOOR,
    IdentitySummary,
    VerificationReport,
    closed_form,
    closed_form_expr,
    default_grid,
    evaluate_side,
    list_identities,
    report_all,
    summarize,
    verify,
    verify_symmetry,
)

__all__ = [
    "CASES",
    "REGISTRY",
    "STATUSES",
    "TIER_FLOOR",
    "Expr",
    "IdentityRecord",
    "IdentitySummary",
    "Parameter",
    "Side",
    "Special",
    "ThreeWayReport",
    "VerificationReport",
    "closed_form",
    "closed_form_expr",
    "default_grid",
    "evaluate_side",
    "get_record",
    "list_identities",
    "report_all",
    "resolve",
    "summarize",
    "three_way",
    "verify",
    "verify_symmetry",
]
