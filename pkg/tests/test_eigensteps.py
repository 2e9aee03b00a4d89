"""Tests for logic_blocks/eigensteps.py."""

from fractions import Fraction

import pytest

from logic_blocks.eigensteps import (
    EigenstepsTable,
    backward_step,
    chopped_spectrum,
    eigensteps_sequence,
    validate_eigensteps,
)
from logic_blocks.errors import HypothesisViolated, IndexRange, Infeasible, LengthMismatch
from logic_blocks.optimizer import optimal_completion_fast
from logic_blocks.spectra import Spectrum, completion_feasible, interlaces_over, make_spectrum


def S(*values) -> Spectrum:
    return make_spectrum([str(v) for v in values])


class TestChoppedSpectrum:
    def test_first_chop_sits_on_foundation(self, example_problem, example_beta):
        alpha, _ = example_problem
        assert chopped_spectrum(example_beta, alpha, 1) == S("7/4", "3/2", "3/2", "1/2")

    def test_last_chop_is_lambda(self, example_problem, example_beta):
        alpha, _ = example_problem
        assert chopped_spectrum(example_beta, alpha, 5) == example_beta

    def test_traces_nondecreasing(self, example_problem, example_beta):
        alpha, _ = example_problem
        traces = [chopped_spectrum(example_beta, alpha, p).trace for p in range(1, 6)]
        assert traces == sorted(traces)

    def test_index_range(self, example_problem, example_beta):
        alpha, _ = example_problem
        with pytest.raises(IndexRange):
            chopped_spectrum(example_beta, alpha, 0)
        with pytest.raises(IndexRange):
            chopped_spectrum(example_beta, alpha, 6)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            chopped_spectrum(S(1, 1), S(1), 1)

    def test_random_monotone_and_bracketing(self, random_problems):
        for alpha, mu in random_problems(seed=321, count=80, max_m=6, max_n=8):
            if len(mu) == 0:
                continue
            table = eigensteps_sequence(alpha, optimal_completion_fast(alpha, mu), mu)
            size = len(alpha)
            for P in range(len(mu), 0, -1):
                lam = table.rows[P]
                chops = [chopped_spectrum(lam, alpha, p) for p in range(1, size + 2)]
                for lower, upper in zip(chops, chops[1:]):
                    assert all(a <= b for a, b in zip(lower, upper))
                sigma = lam.trace - mu[P - 1]
                assert chops[0].trace <= sigma <= chops[-1].trace


class TestBackwardStep:
    def test_tight_frame_step(self):
        step = backward_step(S("3/2", "3/2"), S(0, 0), S(1, 1, 1))
        assert step.p == 2
        assert step.interpolation_t == Fraction(1, 3)
        assert step.kappa == S("3/2", "1/2")

    def test_single_length_lands_on_alpha(self):
        for lam in (S(2, 0), S(1, 1), S("3/2", "1/2")):
            assert backward_step(lam, S(1, 0), S(1)).kappa == S(1, 0)

    def test_empty_lengths(self):
        with pytest.raises(HypothesisViolated):
            backward_step(S(1), S(1), S())

    def test_infeasible_input(self):
        with pytest.raises(HypothesisViolated):
            backward_step(S(1, 1), S(0, 0), S(2))

    def test_random_postconditions(self, random_problems):
        for alpha, mu in random_problems(seed=654, count=80, max_m=6, max_n=8):
            if len(mu) == 0:
                continue
            lam = optimal_completion_fast(alpha, mu)
            kappa = backward_step(lam, alpha, mu).kappa
            assert kappa.trace == alpha.trace + mu.prefix(len(mu) - 1).trace
            assert interlaces_over(lam, kappa)
            assert all(k >= a for k, a in zip(kappa, alpha))
            assert completion_feasible(alpha, kappa, mu.prefix(len(mu) - 1)).feasible


class TestEigenstepsSequence:
    def test_tight_frame_rows(self):
        table = eigensteps_sequence(S(0, 0), S("3/2", "3/2"), S(1, 1, 1))
        assert [row.to_strings() for row in table.rows] == [
            ["0", "0"],
            ["1", "0"],
            ["3/2", "1/2"],
            ["3/2", "3/2"],
        ]

    def test_example_table(self, example_problem, example_beta):
        alpha, mu = example_problem
        table = eigensteps_sequence(alpha, example_beta, mu)
        assert len(table.rows) == 6
        assert table.count == 5
        assert table.rows[0] == alpha
        assert table.rows[-1] == example_beta
        assert validate_eigensteps(table).passed

    def test_no_lengths(self, example_problem):
        alpha, _ = example_problem
        table = eigensteps_sequence(alpha, alpha, S())
        assert table.rows == (alpha,)
        assert validate_eigensteps(table).passed

    def test_infeasible_target(self, example_problem):
        alpha, mu = example_problem
        with pytest.raises(Infeasible) as excinfo:
            eigensteps_sequence(alpha, S(100, 0, 0, 0), mu)
        assert excinfo.value.report is not None
        assert not excinfo.value.report.feasible

    def test_feasible_iff_sequence_exists(self, random_problems):
        for alpha, mu in random_problems(seed=246, count=80, max_m=6, max_n=8):
            aligned = Spectrum((alpha[0] + mu.trace,) + alpha.values[1:])
            for lam in (optimal_completion_fast(alpha, mu), aligned):
                assert completion_feasible(alpha, lam, mu).feasible
                assert validate_eigensteps(eigensteps_sequence(alpha, lam, mu)).passed

            broken = [Spectrum((aligned[0] + Fraction(1, 8),) + aligned.values[1:])]
            size = len(alpha)
            if size >= 2 and alpha[size - 1] > 0:
                # same trace, but lam_M sinks below alpha_M
                drop = min(alpha[size - 1], Fraction(1, 8))
                broken.append(Spectrum((aligned[0] + drop,) + aligned.values[1:size - 1] + (aligned[size - 1] - drop,)))
            for lam in broken:
                assert not completion_feasible(alpha, lam, mu).feasible
                with pytest.raises(Infeasible):
                    eigensteps_sequence(alpha, lam, mu)

    def test_to_dict(self):
        table = eigensteps_sequence(S(0, 0), S("3/2", "3/2"), S(1, 1, 1))
        document = table.to_dict()
        assert document["lambda"] == ["3/2", "3/2"]
        assert document["rows"][2] == ["3/2", "1/2"]


class TestValidateEigensteps:
    def _valid(self) -> EigenstepsTable:
        return eigensteps_sequence(S(0, 0), S("3/2", "3/2"), S(1, 1, 1))

    def test_valid_table(self):
        report = validate_eigensteps(self._valid())
        assert report.passed
        assert report.to_dict()["conditions"]["interlacing"] == {"passed": True, "first_offense": None}

    def test_broken_interlacing(self):
        table = self._valid()
        rows = (table.rows[0], S(1, 0), S(2, 0), table.rows[3])
        report = validate_eigensteps(EigenstepsTable(rows=rows, alpha=table.alpha, lam=table.lam, mu=table.mu))
        assert not report.passed
        assert not report.conditions["interlacing"].passed
        assert report.conditions["interlacing"].first_offense == (3, 1)

    def test_broken_trace(self):
        table = self._valid()
        rows = (table.rows[0], S(1, 0), S(1, "1/2"), table.rows[3])
        report = validate_eigensteps(EigenstepsTable(rows=rows, alpha=table.alpha, lam=table.lam, mu=table.mu))
        assert report.conditions["trace"].first_offense == (2, 0)
        assert report.conditions["initial"].passed
        assert report.conditions["final"].passed

    def test_wrong_initial_row(self):
        table = self._valid()
        rows = (S(1, 0),) + table.rows[1:]
        report = validate_eigensteps(EigenstepsTable(rows=rows, alpha=table.alpha, lam=table.lam, mu=table.mu))
        assert report.conditions["initial"].first_offense == (0, 1)

    def test_round_trip_random(self, random_problems):
        for alpha, mu in random_problems(seed=77, count=100, max_m=6, max_n=8):
            beta = optimal_completion_fast(alpha, mu)
            table = eigensteps_sequence(alpha, beta, mu)
            assert validate_eigensteps(table).passed
            assert table.rows[0] == alpha
            if len(mu) == 1:
                assert backward_step(beta, alpha, mu).kappa == alpha
