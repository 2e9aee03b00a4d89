"""
EigenstepsAgent
===============
Agent 4: Build and validate eigensteps from alpha to a target spectrum.

Responsibility:
- Construct the eigenstep table by backward chopping
- Validate all four eigenstep conditions exactly

Input: ProblemFile + target spectrum
Output: (EigenstepsTable, ValidationReport)
"""

import json
from pathlib import Path
from typing import Tuple

import sys
sys.path.append(str(Path(__file__).parent.parent))
from logic_blocks.eigensteps import (
    EigenstepsTable,
    ValidationReport,
    eigensteps_sequence,
    validate_eigensteps,
)
from logic_blocks.spectra import Spectrum, make_spectrum
from agents.problem_parser import ProblemFile


class EigenstepsAgent:
    """Agent that turns a feasible target into a validated eigenstep table."""

    def __init__(self):
        """Initialize the EigenstepsAgent."""
        self.name = "EigenstepsAgent"

    def build(self, problem: ProblemFile, target: Spectrum) -> Tuple[EigenstepsTable, ValidationReport]:
        """
        Eigensteps from alpha to target with the problem's lengths.

        Raises:
            Infeasible: If target is not an (alpha, mu)-completion
        """
        table = eigensteps_sequence(problem.alpha, target, problem.mu)
        return table, validate_eigensteps(table)

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
    table, report = EigenstepsAgent().build(problem, make_spectrum(["5/2", "7/4", "3/2", "3/2"]))

    print("EigenstepsAgent Test")
    print("=" * 50)
    print(json.dumps({"table": table.to_dict(), "validation": report.to_dict()}, indent=2))
