"""
CompletionAgent
===============
Agent 3: Compute the majorization-minimal completion beta.

Responsibility:
- Run the naive optimizer (with per-level diagnostics), the
  breakpoint-table optimizer, or both
- In "both" mode, require bit-exact agreement of the two paths
- Attach tightness metrics of beta

Input: ProblemFile
Output: CompletionResult
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

import sys
sys.path.append(str(Path(__file__).parent.parent))
from config import CHECK_TRAILING_CONSTRAINTS, COMPLETION_MODES, DEFAULT_COMPLETION_MODE
from logic_blocks.errors import PathDisagreement
from logic_blocks.optimizer import OptimizerTrace, optimal_completion, optimal_completion_fast
from logic_blocks.spectra import Spectrum, frame_metrics
from agents.problem_parser import ProblemFile

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CompletionResult:
    beta: Spectrum
    mode: str
    trace: Optional[OptimizerTrace] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mode": self.mode,
            "beta": self.beta.to_strings(),
            "metrics": frame_metrics(self.beta),
            "trace": self.trace.to_dict() if self.trace is not None else None,
        }


class CompletionAgent:
    """
    Agent responsible for the optimal (alpha, mu)-completion.

    Modes:
        fast  - breakpoint-table optimizer only
        naive - piece-walking optimizer with diagnostics
        both  - run both and raise PathDisagreement on any difference
    """

    def __init__(self, mode: str = DEFAULT_COMPLETION_MODE, check_trailing: bool = CHECK_TRAILING_CONSTRAINTS):
        """Initialize the CompletionAgent."""
        if mode not in COMPLETION_MODES:
            raise ValueError(f"Unknown completion mode: {mode}")
        self.name = "CompletionAgent"
        self.mode = mode
        self.check_trailing = check_trailing

    def complete(self, problem: ProblemFile) -> CompletionResult:
        """
        Compute beta for the problem.

        Raises:
            PathDisagreement: In "both" mode, if the optimizers disagree
        """
        alpha, mu = problem.alpha, problem.mu

        if self.mode == "fast":
            return CompletionResult(beta=optimal_completion_fast(alpha, mu), mode=self.mode)

        beta, trace = optimal_completion(alpha, mu, check_trailing=self.check_trailing)
        if self.mode == "both":
            fast = optimal_completion_fast(alpha, mu)
            if fast != beta:
                raise PathDisagreement(
                    f"Naive {beta!r} and fast {fast!r} completions differ", naive=beta, fast=fast
                )
            logger.debug("naive and fast optimizers agree on %r", beta)
        return CompletionResult(beta=beta, mode=self.mode, trace=trace)

    def __repr__(self) -> str:
        return f"<{self.name} mode={self.mode}>"


# =============================================================================
# STANDALONE EXECUTION (for testing)
# =============================================================================

if __name__ == "__main__":
    from agents.problem_parser import ProblemParserAgent

    problem = ProblemParserAgent().parse({
        "alpha": ["7/4", "3/4", "1/2", "1/2"],
        "mu": ["2", "1", "1/4", "1/4", "1/4"],
    })
    result = CompletionAgent(mode="both").complete(problem)

    print("CompletionAgent Test")
    print("=" * 50)
    print(json.dumps(result.to_dict(), indent=2))
