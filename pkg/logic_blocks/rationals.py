"""
Rationals Logic Block
=====================
Exact scalar helpers over fractions.Fraction.

Every spectrum value in the solver is a Fraction, which is always kept in
lowest terms with a positive denominator and supports exact +, -, *, /,
comparison, min and max. This module only adds parsing, formatting and the
positive-part / summation helpers the algorithms are written in.
"""

import re
from fractions import Fraction
from itertools import accumulate
from typing import Iterable, List, Union

RationalLike = Union[Fraction, int, str]

RATIONAL_PATTERN = re.compile(r"^-?[0-9]+(/[0-9]+)?$")

ZERO = Fraction(0)


def parse_ratio(value: RationalLike) -> Fraction:
    """
    Parse a rational string such as "7/4", "-3" or "0".

    Ints and Fractions pass through. Floats are rejected: exact fields
    never travel as binary floating point.

    Raises:
        ValueError: If the string does not match -?[0-9]+(/[0-9]+)?
            or has a zero denominator
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"Not a rational value: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ValueError(f"Not a rational value: {value!r}")

    text = value.strip()
    if not RATIONAL_PATTERN.match(text):
        raise ValueError(f"Not a rational string: {value!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"Zero denominator in rational string: {value!r}")


def format_ratio(value: Fraction) -> str:
    """Render a Fraction as "p/q", or "p" when the denominator is one."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_ratios(values: Iterable[Fraction]) -> List[str]:
    return [format_ratio(v) for v in values]


def positive_part(value: Fraction) -> Fraction:
    """(x)^+ = max{x, 0}."""
    return value if value > 0 else ZERO


def exact_sum(values: Iterable[Fraction]) -> Fraction:
    """Sum that returns an exact zero on an empty sequence."""
    return sum(values, ZERO)


def prefix_sums(values: Iterable[Fraction]) -> List[Fraction]:
    """[0, v1, v1+v2, ...]; entry i is the sum of the first i values."""
    return list(accumulate(values, initial=ZERO))


def tail_sums(values: List[Fraction], length: int) -> List[Fraction]:
    """
    Tail sums t[j] = values[j] + values[j+1] + ... for j = 0..length-1.

    Indices past the end of values give zero, so `length` may exceed
    len(values). One backward pass.
    """
    total = ZERO
    tails = [ZERO] * max(length, len(values))
    for j in range(len(values) - 1, -1, -1):
        total += values[j]
        tails[j] = total
    return tails[:length]
