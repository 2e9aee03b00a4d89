"""Shared fixtures: sample problems and seeded random exact instances."""

import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, List, Tuple

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from logic_blocks.spectra import Spectrum, make_spectrum

EXAMPLE_ALPHA = ["7/4", "3/4", "1/2", "1/2"]
EXAMPLE_MU = ["2", "1", "1/4", "1/4", "1/4"]
EXAMPLE_BETA = ["5/2", "7/4", "3/2", "3/2"]


def _random_values(rng: np.random.Generator, length: int, max_value: int, max_denominator: int) -> List[Fraction]:
    values = []
    for _ in range(length):
        denominator = int(rng.integers(1, max_denominator + 1))
        numerator = int(rng.integers(0, max_value * denominator + 1))
        values.append(Fraction(numerator, denominator))
    return values


@pytest.fixture
def example_problem() -> Tuple[Spectrum, Spectrum]:
    return make_spectrum(EXAMPLE_ALPHA), make_spectrum(EXAMPLE_MU)


@pytest.fixture
def example_beta() -> Spectrum:
    return make_spectrum(EXAMPLE_BETA)


@pytest.fixture
def random_spectrum() -> Callable[..., Spectrum]:
    """Factory: a sorted spectrum with entries in [0, max_value], denominators <= max_denominator."""

    def build(rng: np.random.Generator, length: int, max_value: int = 4, max_denominator: int = 16) -> Spectrum:
        values = _random_values(rng, length, max_value, max_denominator)
        return Spectrum(tuple(sorted(values, reverse=True)))

    return build


@pytest.fixture
def random_problems(random_spectrum) -> Callable[..., List[Tuple[Spectrum, Spectrum]]]:
    """Factory: `count` seeded (alpha, mu) pairs with 1 <= M <= max_m and 0 <= N <= max_n."""

    def build(seed: int, count: int, max_m: int = 8, max_n: int = 12, **kwargs) -> List[Tuple[Spectrum, Spectrum]]:
        rng = np.random.default_rng(seed)
        problems = []
        for _ in range(count):
            size = int(rng.integers(1, max_m + 1))
            count_n = int(rng.integers(0, max_n + 1))
            problems.append((random_spectrum(rng, size, **kwargs), random_spectrum(rng, count_n, **kwargs)))
        return problems

    return build


@pytest.fixture
def problem_file(tmp_path) -> Callable[..., Path]:
    """Factory: write a problem document to tmp_path and return its path."""

    def write(document, name: str = "problem.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return path

    return write
