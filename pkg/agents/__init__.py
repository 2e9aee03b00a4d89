"""
Frame Completion Solver - Agents Package
========================================
Pipeline stages of the frame completion solver
"""

from .problem_parser import ProblemFile, ProblemParserAgent
from .feasibility_agent import FeasibilityAgent
from .completion_agent import CompletionAgent, CompletionResult
from .eigensteps_agent import EigenstepsAgent
from .synthesis_agent import SynthesisAgent, SynthesisResult
from .report_agent import ReportAgent

__all__ = [
    "ProblemFile",
    "ProblemParserAgent",
    "FeasibilityAgent",
    "CompletionAgent",
    "CompletionResult",
    "EigenstepsAgent",
    "SynthesisAgent",
    "SynthesisResult",
    "ReportAgent",
]
