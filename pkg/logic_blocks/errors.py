"""
Errors
======
Exception hierarchy shared by every logic block and agent.

Input-shaped problems derive from ValueError, computation faults from
RuntimeError, and everything derives from FrameCompletionError so the
orchestrator can map a single family onto exit codes.
"""


class FrameCompletionError(Exception):
    """Base class for all solver errors."""


# =============================================================================
# INPUT ERRORS
# =============================================================================

class NotSorted(FrameCompletionError, ValueError):
    """A spectrum increases somewhere."""


class Negative(FrameCompletionError, ValueError):
    """A spectrum holds a negative value."""


class LengthMismatch(FrameCompletionError, ValueError):
    """Two sequences that must have equal length do not."""


class DimensionOrder(FrameCompletionError, ValueError):
    """The classical Schur-Horn test needs at least as many lengths as eigenvalues."""


class IndexRange(FrameCompletionError, ValueError):
    """An index lies outside its admissible range."""


class HypothesisViolated(FrameCompletionError, ValueError):
    """A backward eigenstep was requested on an infeasible triple."""


class Infeasible(FrameCompletionError, ValueError):
    """The target spectrum is not an (alpha, mu)-completion."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class InterlacingViolated(FrameCompletionError, ValueError):
    """Consecutive spectra fail to interlace."""


class InvalidTable(FrameCompletionError, ValueError):
    """An eigensteps table fails validation."""


class NotSymmetric(FrameCompletionError, ValueError):
    """A matrix is not square and symmetric within tolerance."""


class DimensionMismatch(FrameCompletionError, ValueError):
    """Matrix, vector and spectrum dimensions disagree."""


class SpectrumMismatch(FrameCompletionError, ValueError):
    """An operator's computed spectrum differs from the one claimed for it."""


class ProblemFileError(FrameCompletionError, ValueError):
    """A problem document is malformed."""


# =============================================================================
# COMPUTATION ERRORS
# =============================================================================

class InternalError(FrameCompletionError, RuntimeError):
    """A guaranteed-by-theory condition failed; signals an implementation bug."""


class PostVerificationFailed(FrameCompletionError, RuntimeError):
    """A synthesized operator's spectrum deviates from its eigenstep row."""


class NotConverged(FrameCompletionError, RuntimeError):
    """The Jacobi eigensolver ran out of sweeps."""


class PathDisagreement(FrameCompletionError, RuntimeError):
    """The naive and breakpoint-table optimizers returned different spectra."""

    def __init__(self, message: str, naive=None, fast=None):
        super().__init__(message)
        self.naive = naive
        self.fast = fast
