"""Tests for logic_blocks/optimizer.py."""

import time
from fractions import Fraction

import numpy as np
import pytest

from logic_blocks.errors import InternalError
from logic_blocks.optimizer import (
    ConstraintFunction,
    LevelTrace,
    OptimizerTrace,
    build_breakpoint_table,
    check_trace,
    constraint_value,
    optimal_completion,
    optimal_completion_fast,
    water_filled_spectrum,
)
from logic_blocks.rationals import exact_sum, positive_part, tail_sums
from logic_blocks.spectra import Spectrum, completion_feasible, make_spectrum

F = Fraction


def S(*values) -> Spectrum:
    return make_spectrum([str(v) for v in values])


class TestExampleGolden:
    def test_beta(self, example_problem, example_beta):
        alpha, mu = example_problem
        beta, _ = optimal_completion(alpha, mu)
        assert beta == example_beta
        assert beta.to_strings() == ["5/2", "7/4", "3/2", "3/2"]

    def test_fast_beta(self, example_problem, example_beta):
        alpha, mu = example_problem
        assert optimal_completion_fast(alpha, mu) == example_beta

    @pytest.mark.parametrize(
        "k, endpoints",
        [
            (4, (F(29, 16), F(3, 2), F(3, 2), F(9, 4))),
            (3, (F(23, 12), F(3, 2), F(7, 4))),
            (2, (F(17, 8), F(7, 4))),
            (1, (F(5, 2),)),
        ],
    )
    def test_interval_endpoints(self, example_problem, k, endpoints):
        alpha, mu = example_problem
        _, trace = optimal_completion(alpha, mu)
        assert trace.level(k).b_values == endpoints

    def test_binding_sets(self, example_problem):
        alpha, mu = example_problem
        _, trace = optimal_completion(alpha, mu)
        assert [trace.level(k).binding_set for k in range(1, 5)] == [(1,), (2,), (2,), (2, 3)]
        assert [trace.level(k).j_of_k for k in range(1, 5)] == [1, 2, 2, 2]

    def test_trace_to_dict(self, example_problem):
        alpha, mu = example_problem
        _, trace = optimal_completion(alpha, mu)
        top = trace.to_dict()[3]
        assert top == {"k": 4, "b": ["29/16", "3/2", "3/2", "9/4"], "binding_set": [2, 3], "j_of_k": 2}

    def test_runtime(self, example_problem):
        alpha, mu = example_problem
        start = time.perf_counter()
        optimal_completion_fast(alpha, mu)
        assert time.perf_counter() - start < 0.01


class TestSmallCases:
    def test_unit_norm_tight_frame(self):
        beta, _ = optimal_completion(S(0, 0), S(1, 1, 1))
        assert beta == S("3/2", "3/2")
        assert optimal_completion_fast(S(0, 0), S(1, 1, 1)) == S("3/2", "3/2")

    def test_no_lengths_returns_alpha(self, example_problem):
        alpha, _ = example_problem
        assert optimal_completion(alpha, S())[0] == alpha
        assert optimal_completion_fast(alpha, S()) == alpha

    def test_zero_lengths_return_alpha(self, example_problem):
        alpha, _ = example_problem
        assert optimal_completion_fast(alpha, S(0, 0, 0)) == alpha

    def test_one_dimension(self):
        assert optimal_completion(S(1), S(3, 2))[0] == S(6)
        assert optimal_completion_fast(S(1), S(3, 2)) == S(6)

    def test_fewer_vectors_than_dimensions(self):
        # one vector fills the largest eigenvalue no further than it must
        beta, _ = optimal_completion(S(1, 0, 0), S(1))
        assert beta == optimal_completion_fast(S(1, 0, 0), S(1))
        assert completion_feasible(S(1, 0, 0), beta, S(1)).feasible

    def test_check_trailing(self, random_problems):
        for alpha, mu in random_problems(seed=3, count=40, max_m=6, max_n=8):
            beta, _ = optimal_completion(alpha, mu, check_trailing=True)
            assert completion_feasible(alpha, beta, mu).feasible


class TestConstraintFunctions:
    def test_binding_value_hits_bound(self, example_problem, example_beta):
        alpha, mu = example_problem
        tails = tail_sums(list(mu), len(alpha))
        cf = ConstraintFunction.build(4, 2, alpha, (), tails[1])
        assert cf.breakpoints == (F(7, 4), F(3, 4), F(1, 2))
        b = cf.max_preimage()
        assert b == F(3, 2)
        assert constraint_value(cf, b) == cf.nu_j

    def test_plateau_resolves_to_right_end(self, example_problem):
        alpha, mu = example_problem
        tails = tail_sums(list(mu), len(alpha))
        cf = ConstraintFunction.build(2, 2, alpha, (F(3, 2), F(3, 2)), tails[1])
        assert cf.offset == cf.nu_j
        assert cf.max_preimage() == F(7, 4)

    def test_empty_preimage(self, example_problem):
        alpha, _ = example_problem
        cf = ConstraintFunction.build(1, 1, alpha, (F(9), F(9), F(9)), F(1))
        with pytest.raises(InternalError):
            cf.max_preimage()

    def test_water_filled_spectra_respect_leading_constraints(self, example_problem, example_beta):
        alpha, mu = example_problem
        size = len(alpha)
        tails = tail_sums(list(mu), size)
        for k in range(1, size + 1):
            gamma = water_filled_spectrum(alpha, example_beta.values[k:], k, example_beta[k - 1])
            for j in range(1, k + 1):
                lhs = exact_sum(positive_part(gamma[m - 1] - alpha[m - j]) for m in range(j, size + 1))
                assert lhs <= tails[j - 1]
        assert water_filled_spectrum(alpha, example_beta.values[1:], 1, example_beta[0]) == list(example_beta)


class TestCheckTrace:
    def test_tampered_binding_set(self, example_problem):
        alpha, mu = example_problem
        beta, trace = optimal_completion(alpha, mu)
        top = trace.level(4)
        forged = LevelTrace(k=4, b_values=top.b_values, binding_set=(1,))
        with pytest.raises(InternalError):
            check_trace(OptimizerTrace(levels=trace.levels[:3] + (forged,)), alpha, mu, beta)

    def test_wrong_beta(self, example_problem):
        alpha, mu = example_problem
        _, trace = optimal_completion(alpha, mu)
        with pytest.raises(InternalError):
            check_trace(trace, alpha, mu, S("11/4", "3/2", "3/2", "3/2"))


class TestBreakpointTable:
    def test_example_table(self, example_problem):
        alpha, mu = example_problem
        table = build_breakpoint_table(alpha, mu)
        assert table.g[0] == (0, 0, 0, 0)
        assert table.g[3][0] == F(7, 2)
        assert table.g[3][3] == 0
        assert table.tail_mu == (F(15, 4), F(7, 4), F(3, 4), F(1, 2))
        assert table.alpha_prefix[4] == F(7, 2)

    def test_rows_nonincreasing(self, random_problems):
        for alpha, mu in random_problems(seed=5, count=20):
            for row in build_breakpoint_table(alpha, mu).g:
                assert all(row[i] >= row[i + 1] for i in range(len(row) - 1))


class TestFastMatchesNaive:
    def test_random_instances(self, random_problems):
        problems = random_problems(seed=2024, count=200, max_m=8, max_n=12)
        for alpha, mu in problems:
            naive, _ = optimal_completion(alpha, mu)
            assert optimal_completion_fast(alpha, mu) == naive, (alpha, mu)

    def test_large_instance(self, random_spectrum):
        rng = np.random.default_rng(200400)
        alpha = random_spectrum(rng, 200, max_denominator=4)
        mu = random_spectrum(rng, 400, max_denominator=4)
        start = time.perf_counter()
        beta = optimal_completion_fast(alpha, mu)
        assert time.perf_counter() - start < 5.0
        assert len(beta) == 200
        assert beta.trace == alpha.trace + mu.trace
