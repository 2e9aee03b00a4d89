"""
Eigensteps Logic Block
======================
Sequences of eigensteps from alpha to lambda with lengths mu, built
backwards one chop at a time.

A table holds rows P = 0..N; row 0 is alpha, row N is lambda, row P has
trace sum(alpha) + mu_1 + ... + mu_P, and each row interlaces over the
one before it. Stepping back from row P to row P-1 removes mu_P units of
"stone" from the part of each lambda_m block not covered by lambda_{m+1},
taking it first from where the foundation alpha is buried deepest.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

from .errors import HypothesisViolated, IndexRange, Infeasible, InternalError, LengthMismatch
from .rationals import ZERO, format_ratio
from .spectra import Spectrum, completion_feasible, interlaces_over

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EigenstepsTable:
    """Rows P = 0..N of an eigenstep sequence, plus the data it connects."""

    rows: Tuple[Spectrum, ...]
    alpha: Spectrum
    lam: Spectrum
    mu: Spectrum

    @property
    def count(self) -> int:
        return len(self.rows) - 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "alpha": self.alpha.to_strings(),
            "lambda": self.lam.to_strings(),
            "mu": self.mu.to_strings(),
            "rows": [row.to_strings() for row in self.rows],
        }


@dataclass(frozen=True)
class ChopResult:
    """
    One backward step: kappa lies between chopped spectra p and p+1 and
    carries the trace sigma.
    """

    p: int
    eta_p: Spectrum
    eta_p_plus_1: Spectrum
    kappa: Spectrum
    interpolation_t: Fraction


def chopped_spectrum(lam: Spectrum, alpha: Spectrum, p: int) -> Spectrum:
    """
    The p-th chopped spectrum of lam over alpha:
    eta_{p;m} = max{lam_{m+1}, min{lam_m, alpha_{m-p+1}}},
    with lam_{M+1} := 0 and alpha_m := +inf for m <= 0.

    Raises:
        LengthMismatch: If lam and alpha differ in length
        IndexRange: Unless 1 <= p <= M + 1
    """
    if len(lam) != len(alpha):
        raise LengthMismatch(f"chopped_spectrum: lengths {len(lam)} and {len(alpha)} differ")
    size = len(lam)
    if not 1 <= p <= size + 1:
        raise IndexRange(f"Chop index p={p} outside 1..{size + 1}")

    values = []
    for m in range(1, size + 1):
        above = lam[m] if m < size else ZERO
        foundation = m - p + 1
        # alpha_{m-p+1} is +inf when its index is <= 0, so the min is lam_m
        capped = min(lam[m - 1], alpha[foundation - 1]) if foundation >= 1 else lam[m - 1]
        values.append(max(above, capped))
    return Spectrum(tuple(values))


def backward_step(lam: Spectrum, alpha: Spectrum, mu_list: Spectrum) -> ChopResult:
    """
    Take one eigenstep backwards from lam, removing mu_N.

    Picks the smallest p with tau_p <= sigma <= tau_{p+1}, where tau_q is
    the trace of the q-th chopped spectrum and sigma = sum(lam) - mu_N, and
    interpolates kappa linearly between eta_p and eta_{p+1}.

    Raises:
        HypothesisViolated: If (alpha, lam, mu_list) is not feasible or mu_list is empty
        InternalError: If a guaranteed postcondition fails
    """
    if len(mu_list) == 0:
        raise HypothesisViolated("backward_step needs at least one length")
    if len(lam) != len(alpha):
        raise HypothesisViolated(f"lambda has length {len(lam)}, alpha has length {len(alpha)}")
    report = completion_feasible(alpha, lam, mu_list)
    if not report.feasible:
        raise HypothesisViolated(
            f"Step input is not a completion (gap {format_ratio(report.equality_gap)}, "
            f"violated {list(report.violated_indices)})"
        )

    size = len(lam)
    last = mu_list[len(mu_list) - 1]
    remaining = mu_list.prefix(len(mu_list) - 1)
    sigma = lam.trace - last

    chops = [chopped_spectrum(lam, alpha, p) for p in range(1, size + 2)]
    traces = [chop.trace for chop in chops]

    p = next((q for q in range(1, size + 1) if traces[q - 1] <= sigma <= traces[q]), None)
    if p is None:
        raise InternalError(f"Target trace {format_ratio(sigma)} is not bracketed by chopped traces")

    low, high = chops[p - 1], chops[p]
    span = traces[p] - traces[p - 1]
    t = (sigma - traces[p - 1]) / span if span != 0 else ZERO
    kappa = Spectrum(tuple(lo + (hi - lo) * t for lo, hi in zip(low, high)))

    if not interlaces_over(lam, kappa):
        raise InternalError("lambda does not interlace over the stepped spectrum")
    if not completion_feasible(alpha, kappa, remaining).feasible:
        raise InternalError("Stepped spectrum is not a completion of the remaining lengths")
    if len(remaining) == 0 and kappa != alpha:
        raise InternalError("Final backward step did not land on alpha")

    return ChopResult(p=p, eta_p=low, eta_p_plus_1=high, kappa=kappa, interpolation_t=t)


def eigensteps_sequence(alpha: Spectrum, lam: Spectrum, mu: Spectrum) -> EigenstepsTable:
    """
    Build eigensteps from alpha to lam with lengths mu.

    Row N is lam; rows N-1, ..., 0 come from repeated backward steps,
    each using the lengths mu_1..mu_P.

    Raises:
        Infeasible: If lam is not an (alpha, mu)-completion
    """
    if len(alpha) != len(lam):
        raise LengthMismatch(f"alpha has length {len(alpha)}, lambda has length {len(lam)}")
    report = completion_feasible(alpha, lam, mu)
    if not report.feasible:
        raise Infeasible("Target spectrum is not an (alpha, mu)-completion", report=report)

    rows = [lam]
    current = lam
    for count in range(len(mu), 0, -1):
        step = backward_step(current, alpha, mu.prefix(count))
        logger.debug("row %d: chop p=%d t=%s", count - 1, step.p, format_ratio(step.interpolation_t))
        current = step.kappa
        rows.append(current)
    rows.reverse()

    return EigenstepsTable(rows=tuple(rows), alpha=alpha, lam=lam, mu=mu)


# =============================================================================
# VALIDATION
# =============================================================================

CONDITIONS = ("initial", "final", "trace", "interlacing")


@dataclass(frozen=True)
class ConditionResult:
    passed: bool
    first_offense: Optional[Tuple[int, int]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "first_offense": list(self.first_offense) if self.first_offense else None,
        }


@dataclass(frozen=True)
class ValidationReport:
    """Pass/fail per condition; offenses are (P, m) with m = 0 for whole-row faults."""

    conditions: Dict[str, ConditionResult] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.conditions.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "conditions": {name: self.conditions[name].to_dict() for name in CONDITIONS},
        }


def _first_entry_difference(row: Spectrum, expected: Spectrum) -> Optional[int]:
    if len(row) != len(expected):
        return 0
    return next((m for m in range(1, len(row) + 1) if row[m - 1] != expected[m - 1]), None)


def _first_interlacing_fault(upper: Spectrum, lower: Spectrum) -> Optional[int]:
    if len(upper) != len(lower):
        return 0
    size = len(upper)
    for m in range(1, size + 1):
        below = upper[m] if m < size else ZERO
        if not below <= lower[m - 1] <= upper[m - 1]:
            return m
    return None


def validate_eigensteps(table: EigenstepsTable) -> ValidationReport:
    """
    Check the four eigenstep conditions exactly: row 0 is alpha, row N is
    lambda, row traces grow by mu_P, consecutive rows interlace.
    """
    rows = table.rows
    count = len(table.mu)
    results: Dict[str, ConditionResult] = {}

    if not rows:
        return ValidationReport({name: ConditionResult(False, (0, 0)) for name in CONDITIONS})

    m = _first_entry_difference(rows[0], table.alpha)
    results["initial"] = ConditionResult(m is None, None if m is None else (0, m))

    if len(rows) != count + 1:
        results["final"] = ConditionResult(False, (len(rows) - 1, 0))
    else:
        m = _first_entry_difference(rows[count], table.lam)
        results["final"] = ConditionResult(m is None, None if m is None else (count, m))

    base = table.alpha.trace
    running = ZERO
    trace_offense = None
    for P, row in enumerate(rows):
        if P > 0:
            running += table.mu[P - 1] if P - 1 < count else ZERO
        if row.trace != base + running:
            trace_offense = (P, 0)
            break
    results["trace"] = ConditionResult(trace_offense is None, trace_offense)

    interlace_offense = None
    for P in range(1, len(rows)):
        m = _first_interlacing_fault(rows[P], rows[P - 1])
        if m is not None:
            interlace_offense = (P, m)
            break
    results["interlacing"] = ConditionResult(interlace_offense is None, interlace_offense)

    return ValidationReport(results)
