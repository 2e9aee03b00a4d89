"""
FeasibilityAgent
================
Agent 2: Decide whether a target spectrum is an (alpha, mu)-completion.

Responsibility:
- Run the generalized Schur-Horn test on (alpha, lambda, mu)
- Summarize the verdict for the console

Input: ProblemFile + target spectrum
Output: FeasibilityReport
"""

import json
from pathlib import Path

import sys
sys.path.append(str(Path(__file__).parent.parent))
from logic_blocks.errors import LengthMismatch
from logic_blocks.rationals import format_ratio
from logic_blocks.spectra import (
    FeasibilityReport,
    Spectrum,
    completion_feasible,
    make_spectrum,
)
from agents.problem_parser import ProblemFile


class FeasibilityAgent:
    """
    Agent that checks completion feasibility.

    This agent is a thin facade over the spectra logic block; all
    arithmetic is exact.
    """

    def __init__(self):
        """Initialize the FeasibilityAgent."""
        self.name = "FeasibilityAgent"

    def check(self, problem: ProblemFile, lam: Spectrum) -> FeasibilityReport:
        """
        Test lam against the problem's alpha and mu.

        Raises:
            LengthMismatch: If lam and alpha differ in length
        """
        if len(lam) != len(problem.alpha):
            raise LengthMismatch(f"lambda has length {len(lam)}, alpha has length {len(problem.alpha)}")
        return completion_feasible(problem.alpha, lam, problem.mu)

    def describe(self, report: FeasibilityReport) -> str:
        """One-line console summary."""
        if report.feasible:
            return "Target is a valid completion"
        reasons = []
        if report.equality_gap != 0:
            reasons.append(f"trace gap {format_ratio(report.equality_gap)}")
        if report.violated_indices:
            reasons.append(f"inequalities violated at j={list(report.violated_indices)}")
        if not report.dominance_ok:
            reasons.append("lambda does not dominate alpha")
        return "Target is not a completion: " + "; ".join(reasons)

    def __repr__(self) -> str:
        return f"<{self.name}>"


# =============================================================================
# STANDALONE EXECUTION (for testing)
# =============================================================================

if __name__ == "__main__":
    from agents.problem_parser import ProblemParserAgent

    problem = ProblemParserAgent().parse({
        "alpha": ["7/4", "3/4", "1/2", "1/2"],
        "mu": ["2", "1", "1/4", "1/4", "1/4"],
    })
    agent = FeasibilityAgent()
    report = agent.check(problem, make_spectrum(["5/2", "7/4", "3/2", "3/2"]))

    print("FeasibilityAgent Test")
    print("=" * 50)
    print(json.dumps(report.to_dict(), indent=2))
    print(agent.describe(report))
