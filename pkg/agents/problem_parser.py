"""
ProblemParserAgent
==================
Agent 1: Load, validate and normalize a completion problem document.

Responsibility:
- Read the problem JSON from a file path, an open stream or a dict
- Validate it against PROBLEM_INPUT_SCHEMA
- Convert rational strings into exact spectra
- Sort mu into nonincreasing order
- Check an optional initial operator against alpha

Input: Problem JSON {"alpha": [...], "mu": [...], "lambda"?: [...], "matrix"?: [[...]]}
Output: ProblemFile
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, TextIO, Union

import numpy as np
from jsonschema import ValidationError, validate

import sys
sys.path.append(str(Path(__file__).parent.parent))
from config import INPUT_SPECTRUM_TOL, PROBLEM_INPUT_SCHEMA
from logic_blocks.errors import FrameCompletionError, ProblemFileError
from logic_blocks.rationals import parse_ratio
from logic_blocks.spectra import CompletionProblem, Spectrum, make_spectrum
from logic_blocks.synthesis import SymmetricMatrix, sym_eigen

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProblemFile:
    """A parsed problem: alpha, mu, and the optional target and operator."""

    problem: CompletionProblem
    lam: Optional[Spectrum] = None
    matrix: Optional[SymmetricMatrix] = None

    @property
    def alpha(self) -> Spectrum:
        return self.problem.alpha

    @property
    def mu(self) -> Spectrum:
        return self.problem.mu

    def to_dict(self) -> Dict[str, Any]:
        doc: Dict[str, Any] = {
            "alpha": self.alpha.to_strings(),
            "mu": self.mu.to_strings(),
        }
        if self.lam is not None:
            doc["lambda"] = self.lam.to_strings()
        if self.matrix is not None:
            doc["matrix"] = self.matrix.to_list()
        return doc


class ProblemParserAgent:
    """
    Agent responsible for turning a problem document into exact spectra.

    Every failure surfaces as ProblemFileError so the orchestrator can map
    it to the input-error exit code.
    """

    def __init__(self, spectrum_tol: float = INPUT_SPECTRUM_TOL):
        """Initialize the ProblemParserAgent."""
        self.name = "ProblemParserAgent"
        self.input_schema = PROBLEM_INPUT_SCHEMA
        self.spectrum_tol = spectrum_tol

    def parse(self, input_data: Union[str, Path, Dict, TextIO]) -> ProblemFile:
        """
        Parse and normalize a problem document.

        Args:
            input_data: A file path, an open text stream, or a dictionary

        Returns:
            ProblemFile

        Raises:
            ProblemFileError: If the document is missing, malformed or inconsistent
        """
        raw = self._load_data(input_data)
        self._validate_input(raw)
        return self._normalize(raw)

    def _load_data(self, input_data: Union[str, Path, Dict, TextIO]) -> Dict[str, Any]:
        """Load data from a path or stream, or return a dict directly."""
        if isinstance(input_data, dict):
            return input_data
        try:
            if hasattr(input_data, "read"):
                return json.load(input_data)
            file_path = Path(input_data)
            if not file_path.exists():
                raise ProblemFileError(f"Input file not found: {file_path}")
            with open(file_path, "r", encoding="utf-8") as f:
                return json.load(f)
        except json.JSONDecodeError as e:
            raise ProblemFileError(f"Input is not valid JSON: {e}")

    def _validate_input(self, data: Dict[str, Any]) -> None:
        """Validate input data against schema."""
        try:
            validate(instance=data, schema=self.input_schema)
        except ValidationError as e:
            raise ProblemFileError(f"Invalid problem document: {e.message}")

    def _normalize(self, raw: Dict[str, Any]) -> ProblemFile:
        """Exact spectra from rational strings; mu sorted; operator checked."""
        try:
            alpha = make_spectrum(raw["alpha"])
            mu_values = sorted((parse_ratio(v) for v in raw["mu"]), reverse=True)
            if list(mu_values) != [parse_ratio(v) for v in raw["mu"]]:
                logger.info("mu was reordered into nonincreasing order")
            mu = make_spectrum(mu_values)
            lam = make_spectrum(raw["lambda"]) if "lambda" in raw else None
        except (FrameCompletionError, ValueError) as e:
            raise ProblemFileError(f"Invalid spectrum: {e}")

        if lam is not None and len(lam) != len(alpha):
            raise ProblemFileError(f"lambda has length {len(lam)}, alpha has length {len(alpha)}")

        matrix = self._parse_matrix(raw["matrix"], alpha) if "matrix" in raw else None
        return ProblemFile(problem=CompletionProblem(alpha=alpha, mu=mu), lam=lam, matrix=matrix)

    def _parse_matrix(self, rows: Any, alpha: Spectrum) -> SymmetricMatrix:
        """Build the initial operator and check its spectrum is alpha."""
        try:
            entries = np.array(rows, dtype=float)
        except ValueError as e:
            raise ProblemFileError(f"matrix rows are ragged: {e}")
        if entries.shape != (len(alpha), len(alpha)):
            raise ProblemFileError(
                f"matrix has shape {entries.shape}, expected {(len(alpha), len(alpha))}"
            )
        try:
            matrix = SymmetricMatrix(entries)
            values, _ = sym_eigen(matrix)
        except FrameCompletionError as e:
            raise ProblemFileError(f"Invalid matrix: {e}")

        expected = np.array([float(v) for v in alpha])
        deviation = float(np.max(np.abs(values - expected)))
        if not deviation <= self.spectrum_tol:
            raise ProblemFileError(f"matrix spectrum differs from alpha by {deviation:.3e}")
        return matrix

    def __repr__(self) -> str:
        return f"<{self.name}>"


# =============================================================================
# STANDALONE EXECUTION (for testing)
# =============================================================================

if __name__ == "__main__":
    sample = {
        "alpha": ["7/4", "3/4", "1/2", "1/2"],
        "mu": ["2", "1", "1/4", "1/4", "1/4"],
    }

    agent = ProblemParserAgent()
    result = agent.parse(sample)

    print("ProblemParserAgent Test")
    print("=" * 50)
    print(json.dumps(result.to_dict(), indent=2))
