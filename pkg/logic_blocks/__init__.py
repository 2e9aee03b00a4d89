"""
Frame Completion - Logic Blocks Package
=======================================
Pure solver functions: spectra, optimal completion, eigensteps, synthesis.
"""

from .spectra import (
    Spectrum,
    CompletionProblem,
    FeasibilityReport,
    make_spectrum,
    majorizes,
    completion_feasible,
    classical_schur_horn_feasible,
    interlaces_over,
    frame_metrics,
)
from .optimizer import (
    ConstraintFunction,
    OptimizerTrace,
    BreakpointTable,
    constraint_value,
    solve_level,
    optimal_completion,
    build_breakpoint_table,
    optimal_completion_fast,
    water_filled_spectrum,
    check_trace,
)
from .eigensteps import (
    EigenstepsTable,
    ChopResult,
    ValidationReport,
    chopped_spectrum,
    backward_step,
    eigensteps_sequence,
    validate_eigensteps,
)
from .synthesis import (
    SymmetricMatrix,
    VectorSet,
    LiftedProblem,
    CompletionVerification,
    lift_problem,
    residue_norms,
    append_vector,
    complete_frame,
    sym_eigen,
    verify_completion,
    lifted_frame,
    gram_spectrum_agrees,
)

__all__ = [
    "Spectrum",
    "CompletionProblem",
    "FeasibilityReport",
    "make_spectrum",
    "majorizes",
    "completion_feasible",
    "classical_schur_horn_feasible",
    "interlaces_over",
    "frame_metrics",
    "ConstraintFunction",
    "OptimizerTrace",
    "BreakpointTable",
    "constraint_value",
    "solve_level",
    "optimal_completion",
    "build_breakpoint_table",
    "optimal_completion_fast",
    "water_filled_spectrum",
    "check_trace",
    "EigenstepsTable",
    "ChopResult",
    "ValidationReport",
    "chopped_spectrum",
    "backward_step",
    "eigensteps_sequence",
    "validate_eigensteps",
    "SymmetricMatrix",
    "VectorSet",
    "LiftedProblem",
    "CompletionVerification",
    "lift_problem",
    "residue_norms",
    "append_vector",
    "complete_frame",
    "sym_eigen",
    "verify_completion",
    "lifted_frame",
    "gram_spectrum_agrees",
]
