"""
Spectra Logic Block
===================
Exact spectrum type, the majorization order, and the completion
feasibility tests.

Indexing: the math is written with 1-based indices (alpha_1 >= ... >= alpha_M);
Python sequences are 0-based, so alpha_m lives at alpha[m - 1].
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import accumulate
from typing import Any, Dict, Iterable, Iterator, List, Optional, Tuple

from .errors import DimensionOrder, InternalError, LengthMismatch, Negative, NotSorted
from .rationals import (
    ZERO,
    RationalLike,
    exact_sum,
    format_ratio,
    format_ratios,
    parse_ratio,
    positive_part,
    tail_sums,
)


@dataclass(frozen=True)
class Spectrum:
    """
    A finite nonincreasing sequence of nonnegative exact rationals.

    Houses the initial spectrum alpha, targets lambda, the optimal
    completion beta and the lengths mu.
    """

    values: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        values = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", values)
        for i, v in enumerate(values):
            if v < 0:
                raise Negative(f"Spectrum value at index {i + 1} is negative: {format_ratio(v)}")
        for i in range(len(values) - 1):
            if values[i] < values[i + 1]:
                raise NotSorted(
                    f"Spectrum increases at index {i + 1}: "
                    f"{format_ratio(values[i])} < {format_ratio(values[i + 1])}"
                )

    @classmethod
    def zeros(cls, length: int) -> "Spectrum":
        return cls((ZERO,) * length)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    def __getitem__(self, index):
        return self.values[index]

    @property
    def trace(self) -> Fraction:
        return exact_sum(self.values)

    def prefix(self, count: int) -> "Spectrum":
        """The first `count` entries (still nonincreasing)."""
        return Spectrum(self.values[:count])

    def padded(self, length: int) -> "Spectrum":
        """Append zeros up to `length`; never truncates."""
        if len(self.values) >= length:
            return self
        return Spectrum(self.values + (ZERO,) * (length - len(self.values)))

    def shifted(self, amount: Fraction) -> "Spectrum":
        return Spectrum(tuple(v + amount for v in self.values))

    def to_strings(self) -> List[str]:
        return format_ratios(self.values)

    def __repr__(self) -> str:
        return f"Spectrum([{', '.join(self.to_strings())}])"


@dataclass(frozen=True)
class CompletionProblem:
    """Initial spectrum alpha (length M) and new squared-lengths mu (length N)."""

    alpha: Spectrum
    mu: Spectrum

    @property
    def dimension(self) -> int:
        return len(self.alpha)

    @property
    def count(self) -> int:
        return len(self.mu)


@dataclass(frozen=True)
class FeasibilityReport:
    """
    Outcome of the generalized Schur-Horn test for (alpha, lambda, mu).

    violated_indices holds the 1-based j whose tail inequality fails.
    """

    feasible: bool
    equality_gap: Fraction
    violated_indices: Tuple[int, ...] = field(default_factory=tuple)
    dominance_ok: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "feasible": self.feasible,
            "equality_gap": format_ratio(self.equality_gap),
            "violated_indices": [str(j) for j in self.violated_indices],
            "dominance_ok": self.dominance_ok,
        }


def make_spectrum(values: Iterable[RationalLike]) -> Spectrum:
    """
    Build a Spectrum from rationals, ints or rational strings.

    Raises:
        NotSorted: If the values increase somewhere
        Negative: If some value is below zero
    """
    return Spectrum(tuple(parse_ratio(v) for v in values))


def _require_same_length(first: Spectrum, second: Spectrum, what: str) -> None:
    if len(first) != len(second):
        raise LengthMismatch(f"{what}: lengths {len(first)} and {len(second)} differ")


def majorizes(big: Spectrum, small: Spectrum) -> bool:
    """
    True iff big majorizes small: equal totals and every prefix sum of
    small is at most the matching prefix sum of big.
    """
    _require_same_length(big, small, "majorizes")
    if big.trace != small.trace:
        return False
    return all(s <= b for b, s in zip(accumulate(big), accumulate(small)))


def completion_feasible(alpha: Spectrum, lam: Spectrum, mu: Spectrum) -> FeasibilityReport:
    """
    Decide whether lam is an (alpha, mu)-completion.

    Checks the trace equality sum(lam - alpha) = sum(mu) and, for each
    j = 1..M, sum_{m=j..M} (lam_m - alpha_{m-j+1})^+ <= sum_{n=j..N} mu_n,
    with the right side zero when j > N. No ordering between M and N is
    assumed.
    """
    _require_same_length(alpha, lam, "completion_feasible(alpha, lambda)")
    size = len(alpha)
    tails = tail_sums(list(mu), size)

    gap = exact_sum(lam[m] - alpha[m] for m in range(size)) - mu.trace

    violated = []
    for j in range(1, size + 1):
        lhs = exact_sum(positive_part(lam[m - 1] - alpha[m - j]) for m in range(j, size + 1))
        if lhs > tails[j - 1]:
            violated.append(j)

    dominance_ok = all(lam[m] >= alpha[m] for m in range(size))

    # The j = 1 inequality together with the trace equality forces lam >= alpha.
    if gap == 0 and not violated and not dominance_ok:
        raise InternalError("Completion conditions hold but lambda fails to dominate alpha")

    return FeasibilityReport(
        feasible=gap == 0 and not violated and dominance_ok,
        equality_gap=gap,
        violated_indices=tuple(violated),
        dominance_ok=dominance_ok,
    )


def classical_schur_horn_feasible(lam: Spectrum, mu: Spectrum) -> bool:
    """
    Classical Schur-Horn test: a frame with squared-lengths mu and frame
    operator spectrum lam exists iff sum(mu) = sum(lam) and each of the
    first M prefix sums of mu is bounded by that of lam.

    Raises:
        DimensionOrder: If len(lam) > len(mu)
    """
    if len(lam) > len(mu):
        raise DimensionOrder(f"Need M <= N, got M={len(lam)} and N={len(mu)}")
    if lam.trace != mu.trace:
        return False
    return all(s <= b for b, s in zip(accumulate(lam), accumulate(mu)))


def interlaces_over(upper: Spectrum, lower: Spectrum) -> bool:
    """upper[m+1] <= lower[m] <= upper[m] for every m, with upper[M+1] := 0."""
    _require_same_length(upper, lower, "interlaces_over")
    size = len(upper)
    for m in range(size):
        below = upper[m + 1] if m + 1 < size else ZERO
        if not below <= lower[m] <= upper[m]:
            return False
    return True


def frame_metrics(spectrum: Spectrum) -> Dict[str, Optional[str]]:
    """
    Schur-convex tightness measures of a frame operator spectrum.

    frame_potential = sum(l^2), mse = sum(1/l), condition_number = l_1/l_M.
    The last two are None when the smallest eigenvalue is zero.
    """
    if len(spectrum) == 0:
        return {"trace": "0", "frame_potential": "0", "mse": None, "condition_number": None}

    smallest = spectrum[len(spectrum) - 1]
    invertible = smallest > 0
    return {
        "trace": format_ratio(spectrum.trace),
        "frame_potential": format_ratio(exact_sum(v * v for v in spectrum)),
        "mse": format_ratio(exact_sum(1 / v for v in spectrum)) if invertible else None,
        "condition_number": format_ratio(spectrum[0] / smallest) if invertible else None,
    }
