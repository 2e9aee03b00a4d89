"""Tests for the pipeline agents."""

import io
import json

import numpy as np
import pytest

from agents import (
    CompletionAgent,
    EigenstepsAgent,
    FeasibilityAgent,
    ProblemParserAgent,
    ReportAgent,
    SynthesisAgent,
)
from conftest import EXAMPLE_ALPHA, EXAMPLE_BETA, EXAMPLE_MU
from logic_blocks.errors import InternalError, LengthMismatch, PathDisagreement, ProblemFileError
from logic_blocks.spectra import make_spectrum


@pytest.fixture
def example_document():
    return {"alpha": list(EXAMPLE_ALPHA), "mu": list(EXAMPLE_MU)}


class TestProblemParserAgent:
    def test_parse_dict(self, example_document):
        problem = ProblemParserAgent().parse(example_document)
        assert problem.alpha.to_strings() == EXAMPLE_ALPHA
        assert problem.mu.to_strings() == EXAMPLE_MU
        assert problem.lam is None and problem.matrix is None

    def test_parse_path_and_stream(self, example_document, problem_file):
        agent = ProblemParserAgent()
        from_path = agent.parse(problem_file(example_document))
        from_stream = agent.parse(io.StringIO(json.dumps(example_document)))
        assert from_path == from_stream

    def test_mu_is_sorted(self):
        problem = ProblemParserAgent().parse({"alpha": ["0"], "mu": ["1/4", "2", "1"]})
        assert problem.mu.to_strings() == ["2", "1", "1/4"]

    @pytest.mark.parametrize(
        "document",
        [
            {"mu": ["1"]},
            {"alpha": [], "mu": []},
            {"alpha": ["1.5"], "mu": []},
            {"alpha": [1], "mu": []},
            {"alpha": ["0", "1"], "mu": []},
            {"alpha": ["1"], "mu": ["-1"]},
            {"alpha": ["1", "0"], "mu": ["1"], "lambda": ["2"]},
            {"alpha": ["1"], "mu": [], "matrix": [[1.0, 0.0], [0.0, 1.0]]},
            {"alpha": ["2", "0"], "mu": [], "matrix": [[1.0, 0.0], [0.0, 1.0]]},
            {"alpha": ["1", "1"], "mu": [], "matrix": [[1.0, 0.5], [0.0, 1.0]]},
        ],
    )
    def test_invalid_documents(self, document):
        with pytest.raises(ProblemFileError):
            ProblemParserAgent().parse(document)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ProblemFileError):
            ProblemParserAgent().parse(tmp_path / "absent.json")

    def test_bad_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{ not json", encoding="utf-8")
        with pytest.raises(ProblemFileError):
            ProblemParserAgent().parse(path)

    @pytest.mark.parametrize("bad", [float("nan"), float("inf")])
    def test_non_finite_matrix(self, bad):
        with pytest.raises(ProblemFileError):
            ProblemParserAgent().parse({"alpha": ["1", "0"], "mu": ["1"], "matrix": [[bad, 0.0], [0.0, 0.0]]})

    def test_matrix_accepted(self):
        problem = ProblemParserAgent().parse(
            {"alpha": ["3", "1"], "mu": ["1"], "matrix": [[2.0, 1.0], [1.0, 2.0]]}
        )
        assert problem.matrix.dimension == 2
        assert problem.to_dict()["matrix"] == [[2.0, 1.0], [1.0, 2.0]]


class TestFeasibilityAgent:
    def test_feasible(self, example_document):
        agent = FeasibilityAgent()
        problem = ProblemParserAgent().parse(example_document)
        report = agent.check(problem, make_spectrum(EXAMPLE_BETA))
        assert report.feasible
        assert agent.describe(report) == "Target is a valid completion"

    def test_describe_infeasible(self, example_document):
        agent = FeasibilityAgent()
        problem = ProblemParserAgent().parse(example_document)
        summary = agent.describe(agent.check(problem, make_spectrum(["100", "0", "0", "0"])))
        assert "trace gap" in summary

    def test_length_mismatch(self, example_document):
        problem = ProblemParserAgent().parse(example_document)
        with pytest.raises(LengthMismatch):
            FeasibilityAgent().check(problem, make_spectrum(["1"]))


class TestCompletionAgent:
    @pytest.mark.parametrize("mode", ["fast", "naive", "both"])
    def test_modes_agree(self, example_document, mode):
        problem = ProblemParserAgent().parse(example_document)
        result = CompletionAgent(mode=mode).complete(problem)
        assert result.beta.to_strings() == EXAMPLE_BETA
        assert (result.trace is None) == (mode == "fast")
        assert result.to_dict()["metrics"]["condition_number"] == "5/3"

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            CompletionAgent(mode="fastest")

    def test_disagreement(self, example_document, monkeypatch):
        monkeypatch.setattr(
            "agents.completion_agent.optimal_completion_fast",
            lambda alpha, mu: make_spectrum(["11/4", "3/2", "3/2", "3/2"]),
        )
        problem = ProblemParserAgent().parse(example_document)
        with pytest.raises(PathDisagreement) as excinfo:
            CompletionAgent(mode="both").complete(problem)
        assert excinfo.value.naive.to_strings() == EXAMPLE_BETA


class TestSynthesisAgent:
    def test_example_pipeline(self, example_document):
        problem = ProblemParserAgent().parse(example_document)
        table, validation = EigenstepsAgent().build(problem, make_spectrum(EXAMPLE_BETA))
        assert validation.passed

        result = SynthesisAgent(seed=4).synthesize(problem, table)
        assert result.verification.passed
        assert result.gram_consistent
        document = result.to_dict()
        assert len(document["vectors"]) == 5
        assert document["matrix"] == np.diag([1.75, 0.75, 0.5, 0.5]).tolist()

    def test_construct_initial(self, example_document):
        problem = ProblemParserAgent().parse(example_document)
        table, _ = EigenstepsAgent().build(problem, make_spectrum(EXAMPLE_BETA))
        result = SynthesisAgent(construct_initial=True).synthesize(problem, table)
        assert result.construct_initial
        assert result.verification.passed

    def test_reverify_loaded_vectors(self, example_document):
        problem = ProblemParserAgent().parse(example_document)
        table, _ = EigenstepsAgent().build(problem, make_spectrum(EXAMPLE_BETA))
        agent = SynthesisAgent()
        result = agent.synthesize(problem, table)
        document = json.loads(json.dumps(result.to_dict()))

        vectors = SynthesisAgent.load_vectors(document["vectors"], problem.mu)
        initial = SynthesisAgent.initial_operator(problem)
        assert agent.verify(initial, vectors, make_spectrum(EXAMPLE_BETA)).passed


class TestReportAgent:
    def test_templates_loaded(self):
        assert sorted(ReportAgent().list_templates()) == ["check", "complete", "eigensteps", "synthesize", "verify"]

    def test_render_stamps_name_and_version(self):
        document = ReportAgent().render("verify", {
            "problem": {"alpha": ["1"], "mu": []},
            "target": ["1"],
            "verification": {
                "passed": True,
                "max_spectrum_deviation": 0.0,
                "max_norm_deviation": 0.0,
                "tolerance": 1e-8,
            },
        })
        assert document["report"] == "verification"
        assert document["version"] == "1.0"

    def test_render_rejects_bad_document(self):
        with pytest.raises(InternalError):
            ReportAgent().render("complete", {"problem": {"alpha": ["1"], "mu": []}})

    def test_write_stream(self):
        stream = io.StringIO()
        agent = ReportAgent()
        agent.write({"report": "x"}, stream=stream)
        assert json.loads(stream.getvalue()) == {"report": "x"}

    def test_write_file(self, tmp_path):
        path = tmp_path / "nested" / "report.json"
        ReportAgent().write({"report": "x"}, output=path)
        assert json.loads(path.read_text(encoding="utf-8")) == {"report": "x"}

    def test_floats_carry_seventeen_digits(self):
        text = ReportAgent().dumps({"vectors": [[0.1, 2.0, -0.0]], "tolerance": 1e-8, "count": 3})
        assert "0.10000000000000001" in text
        assert "2.0," in text
        assert "1.0000000000000000e-08" in text
        document = json.loads(text)
        assert document["vectors"] == [[0.1, 2.0, -0.0]]
        assert document["count"] == 3
        assert isinstance(document["vectors"][0][1], float)
