"""
Optimizer Logic Block
=====================
Majorization-minimal (alpha, mu)-completion by recursive water filling.

The optimal spectrum beta is built from the top level down:
beta_M first, then beta_{M-1}, ..., beta_1. At level k, with
beta_{k+1..M} fixed, the water level t raises every alpha_m (m <= k) that
lies below it, and beta_k is the largest t for which the first k tail
constraints of the completion test still hold:

    beta_k = min_j b_{k;j},  b_{k;j} = max{ t : f_{k;j}(t) <= nu_j }
    f_{k;j}(t) = sum_{m=j..k} (t - alpha_{m-j+1})^+
               + sum_{m=k+1..M} (beta_m - alpha_{m-j+1})^+
    nu_j = sum_{n=j..N} mu_n

Two implementations share that definition: `optimal_completion` walks the
linear pieces of each f_{k;j} and records diagnostics, and
`optimal_completion_fast` locates the piece from a precomputed breakpoint
table.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .errors import InternalError
from .rationals import ZERO, exact_sum, format_ratio, format_ratios, positive_part, prefix_sums, tail_sums
from .spectra import Spectrum

logger = logging.getLogger(__name__)


# =============================================================================
# CONSTRAINT FUNCTIONS
# =============================================================================

@dataclass(frozen=True)
class ConstraintFunction:
    """
    The j-th constraint at level k, t -> f_{k;j}(t), with its bound nu_j.

    Continuous, piecewise linear and nondecreasing in t; its breakpoints
    are alpha_1..alpha_{k-j+1}.
    """

    k: int
    j: int
    alpha: Spectrum
    beta_tail: Tuple[Fraction, ...]
    offset: Fraction
    nu_j: Fraction

    @classmethod
    def build(
        cls,
        k: int,
        j: int,
        alpha: Spectrum,
        beta_tail: Sequence[Fraction],
        nu_j: Fraction,
    ) -> "ConstraintFunction":
        """beta_tail holds beta_{k+1}..beta_M."""
        offset = exact_sum(
            positive_part(beta_tail[m - k - 1] - alpha[m - j])
            for m in range(k + 1, len(alpha) + 1)
        )
        return cls(k=k, j=j, alpha=alpha, beta_tail=tuple(beta_tail), offset=offset, nu_j=nu_j)

    @property
    def breakpoints(self) -> Tuple[Fraction, ...]:
        return self.alpha.values[: self.k - self.j + 1]

    def max_preimage(self) -> Fraction:
        """
        b_{k;j}: the largest t with f_{k;j}(t) <= nu_j.

        Walks the pieces in increasing t. Below the smallest breakpoint f is
        constant at `offset`, so a plateau at nu_j resolves to its right end.
        """
        budget = self.nu_j - self.offset
        if budget < 0:
            raise InternalError(
                f"Empty preimage for f_{{{self.k};{self.j}}}: "
                f"offset {format_ratio(self.offset)} exceeds {format_ratio(self.nu_j)}"
            )

        points = sorted(self.breakpoints)
        active_sum = ZERO
        for active in range(1, len(points) + 1):
            active_sum += points[active - 1]
            if active < len(points) and active * points[active] - active_sum <= budget:
                continue
            return (budget + active_sum) / active
        raise InternalError(f"f_{{{self.k};{self.j}}} has no breakpoints")


def constraint_value(cf: ConstraintFunction, t: Fraction) -> Fraction:
    """Exact value of f_{k;j}(t)."""
    return exact_sum(positive_part(t - a) for a in cf.breakpoints) + cf.offset


def water_filled_spectrum(
    alpha: Spectrum,
    beta_tail: Sequence[Fraction],
    k: int,
    t: Fraction,
) -> List[Fraction]:
    """
    The k-th intermediate spectrum gamma_k(t): max{alpha_m, t} for m <= k,
    beta_m above level k.
    """
    filled = [max(alpha[m], t) for m in range(k)]
    return filled + list(beta_tail)


def pad_lengths(mu: Spectrum, dimension: int) -> Spectrum:
    """Pad mu with zeros to at least `dimension` entries."""
    return mu.padded(dimension)


# =============================================================================
# NAIVE RECURSION WITH DIAGNOSTICS
# =============================================================================

@dataclass(frozen=True)
class LevelTrace:
    """Per-level diagnostics: every b_{k;j}, the binding set J(k) and j(k)."""

    k: int
    b_values: Tuple[Fraction, ...]
    binding_set: Tuple[int, ...]

    @property
    def beta_k(self) -> Fraction:
        return min(self.b_values)

    @property
    def j_of_k(self) -> int:
        return self.binding_set[0]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "b": format_ratios(self.b_values),
            "binding_set": list(self.binding_set),
            "j_of_k": self.j_of_k,
        }


@dataclass(frozen=True)
class OptimizerTrace:
    """Level traces ordered k = 1..M."""

    levels: Tuple[LevelTrace, ...]

    def level(self, k: int) -> LevelTrace:
        return self.levels[k - 1]

    def to_dict(self) -> List[Dict[str, Any]]:
        return [lt.to_dict() for lt in self.levels]


def solve_level(
    k: int,
    alpha: Spectrum,
    mu: Spectrum,
    beta_tail: Sequence[Fraction],
) -> Tuple[Fraction, LevelTrace]:
    """
    Compute beta_k from beta_{k+1..M}.

    Args:
        k: Level, 1..M
        alpha: Initial spectrum
        mu: Lengths, already padded to at least M entries
        beta_tail: beta_{k+1}..beta_M

    Returns:
        (beta_k, level trace)
    """
    tails = tail_sums(list(mu), len(alpha))
    b_values = tuple(
        ConstraintFunction.build(k, j, alpha, beta_tail, tails[j - 1]).max_preimage()
        for j in range(1, k + 1)
    )
    beta_k = min(b_values)
    binding = tuple(j for j, b in enumerate(b_values, start=1) if b == beta_k)
    return beta_k, LevelTrace(k=k, b_values=b_values, binding_set=binding)


def _check_trailing_constraints(
    alpha: Spectrum,
    mu: Spectrum,
    beta_tail: Sequence[Fraction],
    k: int,
    beta_k: Fraction,
) -> None:
    """Assert the last M - k constraints hold for gamma_k(beta_k)."""
    size = len(alpha)
    tails = tail_sums(list(mu), size)
    gamma = water_filled_spectrum(alpha, beta_tail, k, beta_k)
    for j in range(k + 1, size + 1):
        lhs = exact_sum(positive_part(gamma[m - 1] - alpha[m - j]) for m in range(j, size + 1))
        if lhs > tails[j - 1]:
            raise InternalError(f"Trailing constraint j={j} fails at level k={k}")


def check_trace(trace: OptimizerTrace, alpha: Spectrum, mu: Spectrum, beta: Spectrum) -> None:
    """
    Validate the level diagnostics of a finished run.

    Checks that beta_k = min_j b_{k;j}, that every binding constraint is
    tight (f_{k;j}(beta_k) = nu_j), that alpha_{k-j(k)+1} <= beta_k and
    that j(k) is nondecreasing in k.

    Raises:
        InternalError: On the first failed check
    """
    size = len(alpha)
    padded = pad_lengths(mu, size)
    tails = tail_sums(list(padded), size)
    previous_j: Optional[int] = None

    for k in range(1, size + 1):
        level = trace.level(k)
        beta_k = beta[k - 1]
        if level.beta_k != beta_k:
            raise InternalError(f"Level {k}: beta_k is not the minimum interval endpoint")

        beta_tail = beta.values[k:]
        for j in level.binding_set:
            cf = ConstraintFunction.build(k, j, alpha, beta_tail, tails[j - 1])
            if constraint_value(cf, beta_k) != cf.nu_j:
                raise InternalError(f"Level {k}: binding constraint j={j} is not tight")

        if alpha[k - level.j_of_k] > beta_k:
            raise InternalError(f"Level {k}: alpha_(k-j(k)+1) exceeds beta_k")

        if previous_j is not None and previous_j > level.j_of_k:
            raise InternalError(f"j(k) decreases between levels {k - 1} and {k}")
        previous_j = level.j_of_k


def optimal_completion(
    alpha: Spectrum,
    mu: Spectrum,
    check_trailing: bool = False,
) -> Tuple[Spectrum, OptimizerTrace]:
    """
    The unique majorization-minimal (alpha, mu)-completion, with diagnostics.

    mu is padded with zeros to length M internally when N < M.

    Args:
        alpha: Initial spectrum, length M >= 1
        mu: Lengths, any N >= 0
        check_trailing: Also assert the M - k constraints not imposed at level k

    Returns:
        (beta, trace)
    """
    size = len(alpha)
    padded = pad_lengths(mu, size)

    beta_tail: List[Fraction] = []
    levels: List[LevelTrace] = []
    for k in range(size, 0, -1):
        beta_k, level = solve_level(k, alpha, padded, beta_tail)
        if check_trailing:
            _check_trailing_constraints(alpha, padded, beta_tail, k, beta_k)
        logger.debug("level %d: b=%s beta_k=%s", k, format_ratios(level.b_values), format_ratio(beta_k))
        beta_tail.insert(0, beta_k)
        levels.insert(0, level)

    beta = Spectrum(tuple(beta_tail))
    trace = OptimizerTrace(levels=tuple(levels))
    check_trace(trace, alpha, mu, beta)
    return beta, trace


# =============================================================================
# BREAKPOINT-TABLE IMPLEMENTATION
# =============================================================================

@dataclass(frozen=True)
class BreakpointTable:
    """
    Out-of-loop data for the fast optimizer.

    g[m-1][i-1] = g_m(alpha_i) = sum_{l=1..m} (alpha_i - alpha_l)^+,
    tail_mu[j-1] = sum_{n=j..N} mu_n, and alpha_prefix[i] = alpha_1 + ... + alpha_i.
    """

    g: Tuple[Tuple[Fraction, ...], ...]
    tail_mu: Tuple[Fraction, ...]
    alpha_prefix: Tuple[Fraction, ...]


def build_breakpoint_table(alpha: Spectrum, mu: Spectrum) -> BreakpointTable:
    """O(M^2) table of g_m at the breakpoints plus O(N) tail sums of mu."""
    size = len(alpha)
    rows: List[Tuple[Fraction, ...]] = []
    row = [ZERO] * size
    for m in range(size):
        row = [row[i] + positive_part(alpha[i] - alpha[m]) for i in range(size)]
        rows.append(tuple(row))
    return BreakpointTable(
        g=tuple(rows),
        tail_mu=tuple(tail_sums(list(mu), size)),
        alpha_prefix=tuple(prefix_sums(alpha)),
    )


def _first_index_at_most(row: Tuple[Fraction, ...], upto: int, bound: Fraction) -> int:
    """Smallest 1-based i <= upto with row[i-1] <= bound; row is nonincreasing."""
    lo, hi = 1, upto
    if row[hi - 1] > bound:
        raise InternalError("No breakpoint satisfies the level budget")
    while lo < hi:
        mid = (lo + hi) // 2
        if row[mid - 1] <= bound:
            hi = mid
        else:
            lo = mid + 1
    return lo


def optimal_completion_fast(alpha: Spectrum, mu: Spectrum) -> Spectrum:
    """
    Same spectrum as `optimal_completion`, from the breakpoint table.

    For each (k, j): delta = nu_j - sum_{m>k} (beta_m - alpha_{m-j+1})^+;
    the smallest i with g_{k-j+1}(alpha_i) <= delta puts the answer in
    [alpha_i, alpha_{i-1}), where g_{k-j+1}(t) = sum_{l=i..k-j+1} (t - alpha_l)
    is a single linear piece. The tail sums over beta are carried across
    levels instead of recomputed.
    """
    size = len(alpha)
    table = build_breakpoint_table(alpha, pad_lengths(mu, size))

    # offsets[j-1] = sum_{m=k+1..M} (beta_m - alpha_{m-j+1})^+ for the current k
    offsets = [ZERO] * size
    beta = [ZERO] * size
    for k in range(size, 0, -1):
        best: Optional[Fraction] = None
        for j in range(1, k + 1):
            delta = table.tail_mu[j - 1] - offsets[j - 1]
            width = k - j + 1
            i = _first_index_at_most(table.g[width - 1], width, delta)
            level = (delta + table.alpha_prefix[width] - table.alpha_prefix[i - 1]) / (width - i + 1)
            if best is None or level < best:
                best = level
        beta[k - 1] = best
        for j in range(1, k):
            offsets[j - 1] += positive_part(best - alpha[k - j])

    return Spectrum(tuple(beta))
