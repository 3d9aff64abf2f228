"""Composite verification run in deterministic order.

Sections, in order: every registered identity over its full parameter
domain, the specialization-coherence checks, the three-way enumeration
check, pair closure (defining-relation checks for every constructed
pair and transform), and the two-parameter lemma grid.  Diagnostic
checks (remark claims and the as-printed variants of the corrected
displays) are tallied separately and never affect the exit code.
"""

from __future__ import annotations

from typing import Iterator

from . import identities
from .bailey import (
    andrews_pair,
    bailey_lemma_check,
    thm23_pair,
    transform_s2,
    transform_s5,
    unit_pair,
    verify_pair,
)
from .partitions import theorem_1_1_check
from .report import VerificationReport
from .series import MonomialSpec

_NEG_QH = MonomialSpec(-1, None, 0, 1)
_NEG_ONE = MonomialSpec(-1)
_ONE = MonomialSpec(1)


def closure_pairs():
    """The pair-closure roster: (pair, n_max, order)."""
    base = [
        (unit_pair(), 8, 60),
        (andrews_pair(_ONE, MonomialSpec(0)), 8, 60),
        (andrews_pair(_ONE, _NEG_ONE), 8, 60),
        (andrews_pair(_ONE, _NEG_QH), 8, 60),
        (andrews_pair(_ONE, "symbolic"), 8, 60),
        (thm23_pair("first", "symbolic"), 8, 60),
        (thm23_pair("second", "symbolic"), 8, 60),
    ]
    transforms = [
        (transform_s2(unit_pair()), 6, 60),
        (transform_s5(unit_pair()), 6, 60),
        (transform_s2(andrews_pair(_ONE, _NEG_ONE)), 6, 60),
        (transform_s5(andrews_pair(_ONE, _NEG_ONE)), 6, 60),
        (transform_s2(transform_s2(unit_pair())), 6, 60),
    ]
    return base + transforms


def lemma_grid():
    """(pair, M, L, order) combinations for the two-parameter identity."""
    pairs = [unit_pair(), transform_s2(unit_pair()), thm23_pair("first", _NEG_ONE)]
    out = []
    for pair in pairs:
        for M in (1, 2, 3):
            for L in (1, 2, 3):
                out.append((pair, M, L, 60))
    return out


def run_suite(order=None, n_max: int = 40) -> Iterator[VerificationReport]:
    """Yield every suite report in deterministic order.

    order overrides the per-identity default truncation order (the exact
    polynomial checks ignore it).
    """
    for case in identities.list_identities():
        for binding in identities.iter_bindings(case):
            yield identities.check_identity(case.id, binding, order)
    yield from identities.coherence_checks(60 if order is None else order)
    yield theorem_1_1_check(n_max)
    for pair, nm, o in closure_pairs():
        yield verify_pair(pair, nm, o if order is None else order)
    for pair, M, L, o in lemma_grid():
        yield bailey_lemma_check(pair, M, L, o if order is None else order)
    yield from identities.asprinted_checks(40)


def is_diagnostic(report: VerificationReport) -> bool:
    if report.id.startswith("asprinted:"):
        return True
    case = identities.REGISTRY.get(report.id)
    return case is not None and case.diagnostic


def summarize(reports: list[VerificationReport]) -> dict:
    """Split into checked / diagnostic tallies and compute the exit code."""
    checked = [r for r in reports if not is_diagnostic(r)]
    diags = [r for r in reports if is_diagnostic(r)]
    n_error = sum(1 for r in checked if r.status == "error")
    n_fail = sum(1 for r in checked if r.status == "fail")
    exit_code = 3 if n_error else (1 if n_fail else 0)
    return {
        "checked": len(checked),
        "passed": sum(1 for r in checked if r.status == "pass"),
        "failed": n_fail,
        "errors": n_error,
        "diagnostics": len(diags),
        "diagnostics_passed": sum(1 for r in diags if r.status == "pass"),
        "exit_code": exit_code,
    }
