"""
SynthesisAgent
==============
Agent 5: Construct frame vectors along an eigenstep table and verify them.

Responsibility:
- Pick the initial operator: the problem's matrix, diag(alpha), or one
  built from the zero operator along lifted eigensteps
- Append one vector per eigenstep row
- Independently recompute and verify the final operator

Input: ProblemFile + EigenstepsTable
Output: SynthesisResult
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List

import numpy as np

import sys
sys.path.append(str(Path(__file__).parent.parent))
from config import DEFAULT_SEED, FRAME_TOL, NORM_REL_TOL, SYNTHESIS_MAX_RETRIES
from logic_blocks.eigensteps import EigenstepsTable
from logic_blocks.spectra import Spectrum
from logic_blocks.synthesis import (
    CompletionVerification,
    SymmetricMatrix,
    VectorSet,
    complete_frame,
    gram_spectrum_agrees,
    lifted_frame,
    verify_completion,
)
from agents.problem_parser import ProblemFile


@dataclass
class SynthesisResult:
    initial: SymmetricMatrix
    vectors: VectorSet
    verification: CompletionVerification
    construct_initial: bool = False
    gram_consistent: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "matrix": self.initial.to_list(),
            "vectors": self.vectors.to_list(),
            "construct_initial": self.construct_initial,
            "gram_consistent": self.gram_consistent,
            "verification": self.verification.to_dict(),
        }


class SynthesisAgent:
    """
    Agent responsible for explicit vectors.

    Vector entries are double precision; every appended vector is checked
    against its eigenstep row before the next one is built.
    """

    def __init__(
        self,
        tol: float = FRAME_TOL,
        seed: int = DEFAULT_SEED,
        construct_initial: bool = False,
    ):
        """Initialize the SynthesisAgent."""
        self.name = "SynthesisAgent"
        self.tol = tol
        self.seed = seed
        self.construct_initial = construct_initial

    def synthesize(self, problem: ProblemFile, table: EigenstepsTable) -> SynthesisResult:
        """
        Vectors realizing table.lam from the initial operator.

        Raises:
            SpectrumMismatch: If the given matrix does not have spectrum alpha
            PostVerificationFailed: If a step misses its eigenstep row
        """
        rng = np.random.default_rng(self.seed)
        if self.construct_initial:
            initial, vectors = lifted_frame(table, rng=rng, tol=self.tol, max_retries=SYNTHESIS_MAX_RETRIES)
        else:
            initial = self.initial_operator(problem)
            vectors = complete_frame(
                initial, table, rng=rng, tol=self.tol,
                norm_rel_tol=NORM_REL_TOL, max_retries=SYNTHESIS_MAX_RETRIES,
            )
        verification = verify_completion(initial, vectors, table.lam, self.tol)
        gram_ok = gram_spectrum_agrees(vectors, initial.dimension)
        return SynthesisResult(initial, vectors, verification, self.construct_initial, gram_ok)

    def verify(
        self,
        initial: SymmetricMatrix,
        vectors: VectorSet,
        target: Spectrum,
    ) -> CompletionVerification:
        """Re-verify previously emitted vectors."""
        return verify_completion(initial, vectors, target, self.tol)

    @staticmethod
    def load_vectors(rows: List[List[float]], mu: Spectrum) -> VectorSet:
        """Rebuild a VectorSet from report rows (one list per vector)."""
        return VectorSet(vectors=[np.array(row, dtype=float) for row in rows], target_norms_sq=mu)

    @staticmethod
    def initial_operator(problem: ProblemFile) -> SymmetricMatrix:
        """The problem's matrix, or diag(alpha) when none was given."""
        if problem.matrix is not None:
            return problem.matrix
        return SymmetricMatrix.diagonal(problem.alpha)

    def __repr__(self) -> str:
        return f"<{self.name} tol={self.tol} seed={self.seed}>"


# =============================================================================
# STANDALONE EXECUTION (for testing)
# =============================================================================

if __name__ == "__main__":
    from agents.eigensteps_agent import EigenstepsAgent
    from agents.problem_parser import ProblemParserAgent
    from logic_blocks.spectra import make_spectrum

    problem = ProblemParserAgent().parse({"alpha": ["0", "0"], "mu": ["1", "1", "1"]})
    table, _ = EigenstepsAgent().build(problem, make_spectrum(["3/2", "3/2"]))
    result = SynthesisAgent().synthesize(problem, table)

    print("SynthesisAgent Test")
    print("=" * 50)
    print(json.dumps(result.to_dict(), indent=2))
