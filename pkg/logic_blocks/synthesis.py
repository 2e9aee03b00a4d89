"""
Synthesis Logic Block
=====================
Explicit frame vectors from eigensteps, and numerical verification.

Spectra stay exact; vectors live in double precision because the
component norms are square roots of rationals. Adding phi to an operator
S with spectrum `prev` produces spectrum `next` when, for each distinct
eigenvalue l of S, the component of phi in that eigenspace has squared
norm

    -lim_{x -> l} (x - l) prod_m (x - next_m) / prod_m (x - prev_m),

which `residue_norms` evaluates exactly by cancelling equal factors.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .eigensteps import EigenstepsTable, validate_eigensteps
from .errors import (
    DimensionMismatch,
    InternalError,
    InterlacingViolated,
    InvalidTable,
    NotConverged,
    NotSymmetric,
    PostVerificationFailed,
    SpectrumMismatch,
)
from .rationals import ZERO, format_ratio
from .spectra import Spectrum, interlaces_over

logger = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-12
SPECTRUM_TOL = 1e-8
NORM_REL_TOL = 1e-9
JACOBI_MAX_SWEEPS = 64
JACOBI_REL_OFFDIAG = 1e-14
TINY_LENGTH = float(np.finfo(float).tiny)


# =============================================================================
# MATRIX TYPES
# =============================================================================

@dataclass(frozen=True, eq=False)
class SymmetricMatrix:
    """Real symmetric M x M operator in double precision."""

    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise NotSymmetric(f"Matrix of shape {entries.shape} is not square")
        if not np.all(np.isfinite(entries)):
            raise NotSymmetric("Matrix has non-finite entries")
        if entries.size and not np.max(np.abs(entries - entries.T)) <= SYMMETRY_TOL:
            raise NotSymmetric("Matrix is not symmetric within tolerance")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def diagonal(cls, values: Sequence) -> "SymmetricMatrix":
        return cls(np.diag([float(v) for v in values]))

    @classmethod
    def zeros(cls, dimension: int) -> "SymmetricMatrix":
        return cls(np.zeros((dimension, dimension)))

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    @property
    def norm(self) -> float:
        """Spectral-norm bound used to scale tolerances (Frobenius norm)."""
        return float(np.linalg.norm(self.entries))

    def plus_outer(self, phi: np.ndarray) -> "SymmetricMatrix":
        updated = self.entries + np.outer(phi, phi)
        return SymmetricMatrix((updated + updated.T) / 2)

    def to_list(self) -> List[List[float]]:
        return self.entries.tolist()


@dataclass
class VectorSet:
    """Column vectors phi_1..phi_N and their prescribed squared norms mu."""

    vectors: List[np.ndarray]
    target_norms_sq: Spectrum

    @property
    def count(self) -> int:
        return len(self.vectors)

    def synthesis_matrix(self, dimension: int) -> np.ndarray:
        """M x N matrix with the vectors as columns."""
        if not self.vectors:
            return np.zeros((dimension, 0))
        return np.column_stack(self.vectors)

    def frame_operator(self, dimension: int) -> np.ndarray:
        phi = self.synthesis_matrix(dimension)
        return phi @ phi.T

    def to_list(self) -> List[List[float]]:
        return [v.tolist() for v in self.vectors]


@dataclass(frozen=True)
class LiftedProblem:
    """
    Eigensteps from the zero spectrum to lambda + shift with lengths
    (alpha_1 + shift, ..., alpha_M + shift, mu_1, ..., mu_N).
    """

    beta_shift: Fraction
    lifted_steps: EigenstepsTable
    lifted_lengths: Spectrum


# =============================================================================
# EIGENSOLVER
# =============================================================================

def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Zero a[p, q] with one Jacobi rotation, in place."""
    apq = a[p, q]
    if apq == 0.0:
        return
    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c

    col_p, col_q = a[:, p].copy(), a[:, q].copy()
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q
    row_p, row_q = a[p, :].copy(), a[q, :].copy()
    a[p, :] = c * row_p - s * row_q
    a[q, :] = s * row_p + c * row_q
    a[p, q] = a[q, p] = 0.0

    vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
    v[:, p] = c * vec_p - s * vec_q
    v[:, q] = s * vec_p + c * vec_q


def _off_diagonal_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def sym_eigen(
    s: SymmetricMatrix,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
    rel_offdiag: float = JACOBI_REL_OFFDIAG,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Cyclic Jacobi eigendecomposition.

    Sweeps every (p, q) pair in row order until the off-diagonal Frobenius
    mass is below rel_offdiag * ||S||_F.

    Returns:
        (values sorted descending, orthonormal eigenvectors as columns)

    Raises:
        NotSymmetric: If s is not a SymmetricMatrix
        NotConverged: After max_sweeps sweeps without convergence
    """
    if not isinstance(s, SymmetricMatrix):
        s = SymmetricMatrix(np.asarray(s, dtype=float))
    a = s.entries.copy()
    n = a.shape[0]
    v = np.eye(n)
    threshold = rel_offdiag * np.linalg.norm(a)
    if not np.isfinite(threshold):
        raise NotConverged("Matrix norm overflows double precision")

    for _ in range(max_sweeps):
        off = _off_diagonal_norm(a)
        if off <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, v, p, q)
    else:
        off = _off_diagonal_norm(a)
        if not off <= threshold:
            raise NotConverged(f"Jacobi did not converge in {max_sweeps} sweeps (off={off:.3e})")

    values = np.diag(a).copy()
    order = np.argsort(-values, kind="stable")
    return values[order], v[:, order]


def sorted_spectrum(s: SymmetricMatrix) -> np.ndarray:
    return sym_eigen(s)[0]


# =============================================================================
# RESIDUES AND VECTOR APPENDING
# =============================================================================

def residue_norms(prev: Spectrum, next_: Spectrum) -> Dict[Fraction, Fraction]:
    """
    Squared norm of phi's component in each distinct eigenspace of prev.

    Equal factors (x - l) are cancelled between numerator and denominator
    as multisets before taking the limit, so no 0/0 arises.

    Raises:
        InterlacingViolated: If next_ does not interlace over prev
    """
    if len(prev) != len(next_) or not interlaces_over(next_, prev):
        raise InterlacingViolated("Next spectrum does not interlace over the previous one")

    numerator = Counter(next_.values)
    denominator = Counter(prev.values)
    common = numerator & denominator
    numerator -= common
    denominator -= common

    residues: Dict[Fraction, Fraction] = {}
    for value in dict.fromkeys(prev.values):
        order = denominator[value]
        if order == 0:
            residues[value] = ZERO
            continue
        if order > 1:
            raise InterlacingViolated(f"Eigenvalue {format_ratio(value)} loses more than one multiplicity")
        top = Fraction(1)
        for root, mult in numerator.items():
            top *= (value - root) ** mult
        bottom = Fraction(1)
        for root, mult in denominator.items():
            bottom *= (value - root) ** (mult - 1 if root == value else mult)
        residues[value] = -top / bottom

    if any(r < 0 for r in residues.values()):
        raise InternalError("Negative residue despite interlacing")
    if sum(residues.values(), ZERO) != next_.trace - prev.trace:
        raise InternalError("Residues do not sum to the trace gap")
    return residues


def _eigenspaces(prev: Spectrum, vectors: np.ndarray) -> List[Tuple[Fraction, np.ndarray]]:
    """Group eigenvector columns by distinct value of prev, orthonormalized in index order."""
    groups: Dict[Fraction, List[int]] = {}
    for index, value in enumerate(prev.values):
        groups.setdefault(value, []).append(index)

    spaces = []
    for value, indices in groups.items():
        basis, upper = np.linalg.qr(vectors[:, indices])
        # fix signs so the basis follows the eigensolver's orientation
        signs = np.sign(np.diag(upper))
        signs[signs == 0] = 1.0
        spaces.append((value, basis * signs))
    return spaces


def _spectrum_deviation(s: SymmetricMatrix, target: Spectrum) -> float:
    computed = sorted_spectrum(s)
    expected = np.array([float(v) for v in target])
    return float(np.max(np.abs(computed - expected))) if expected.size else 0.0


def _norm_deviation(norm_sq: float, target: float) -> float:
    """Relative error of a squared norm; a zero target only accepts the zero vector."""
    return abs(norm_sq - target) / max(target, TINY_LENGTH)


def append_vector(
    s: SymmetricMatrix,
    prev: Spectrum,
    next_: Spectrum,
    rng: Optional[np.random.Generator] = None,
    tol: float = SPECTRUM_TOL,
    max_retries: int = 8,
) -> Tuple[np.ndarray, SymmetricMatrix]:
    """
    Append one vector so that S + phi phi^T has spectrum next_.

    phi = sum over distinct l of sqrt(residue_l) * u_l, u_l the first
    orthonormal basis vector of the l-eigenspace. If the updated spectrum
    misses next_, random unit directions inside each eigenspace are tried
    (logged) before giving up.

    Raises:
        SpectrumMismatch: If S does not have spectrum prev
        PostVerificationFailed: If no direction reproduces next_
    """
    if s.dimension != len(prev) or len(prev) != len(next_):
        raise DimensionMismatch(
            f"Operator dimension {s.dimension}, spectra lengths {len(prev)} and {len(next_)}"
        )
    values, vectors = sym_eigen(s)
    scale = max(1.0, s.norm)
    expected = np.array([float(v) for v in prev])
    if expected.size and not np.max(np.abs(values - expected)) <= tol * scale:
        raise SpectrumMismatch("Operator spectrum does not match the previous eigenstep row")

    residues = residue_norms(prev, next_)
    spaces = _eigenspaces(prev, vectors)

    attempts = max_retries + 1
    for attempt in range(attempts):
        phi = np.zeros(s.dimension)
        for value, basis in spaces:
            weight = residues[value]
            if weight == 0:
                continue
            if attempt == 0:
                direction = basis[:, 0]
            else:
                if rng is None:
                    rng = np.random.default_rng(0)
                mix = rng.standard_normal(basis.shape[1])
                direction = basis @ (mix / np.linalg.norm(mix))
            phi += np.sqrt(float(weight)) * direction

        updated = s.plus_outer(phi)
        deviation = _spectrum_deviation(updated, next_)
        if deviation <= tol * max(1.0, updated.norm):
            return phi, updated
        logger.warning(
            "Appended vector missed target spectrum by %.3e (attempt %d/%d); retrying with a new direction",
            deviation, attempt + 1, attempts,
        )

    raise PostVerificationFailed(
        f"Updated operator spectrum deviates from [{', '.join(next_.to_strings())}]"
    )


def complete_frame(
    a: SymmetricMatrix,
    table: EigenstepsTable,
    rng: Optional[np.random.Generator] = None,
    tol: float = SPECTRUM_TOL,
    norm_rel_tol: float = NORM_REL_TOL,
    max_retries: int = 8,
) -> VectorSet:
    """
    Vectors phi_1..phi_N walking the eigensteps from A's spectrum to lambda.

    Raises:
        SpectrumMismatch: If A's spectrum differs from table.alpha
        PostVerificationFailed: If a step or a vector norm misses its target
    """
    if a.dimension != len(table.alpha):
        raise DimensionMismatch(f"Operator dimension {a.dimension} vs alpha length {len(table.alpha)}")
    if not _spectrum_deviation(a, table.alpha) <= tol * max(1.0, a.norm):
        raise SpectrumMismatch("Initial operator spectrum does not match alpha")

    current = a
    vectors: List[np.ndarray] = []
    for P in range(1, len(table.rows)):
        phi, current = append_vector(current, table.rows[P - 1], table.rows[P], rng, tol, max_retries)
        target = float(table.mu[P - 1])
        norm_sq = float(phi @ phi)
        if not _norm_deviation(norm_sq, target) <= norm_rel_tol:
            raise PostVerificationFailed(f"Vector {P} has squared norm {norm_sq!r}, expected {target!r}")
        logger.debug("vector %d appended, squared norm %.17g", P, norm_sq)
        vectors.append(phi)

    return VectorSet(vectors=vectors, target_norms_sq=table.mu)


# =============================================================================
# LIFTING
# =============================================================================

def lift_problem(table: EigenstepsTable) -> LiftedProblem:
    """
    Re-express eigensteps from alpha as eigensteps from zero.

    With shift = max{0, mu_1 - alpha_M}, the lifted rows are
    kappa_{P;m} = 0 for P < m, alpha_m + shift for m <= P <= M, and
    lambda_{P-M;m} + shift for P > M; the lifted lengths are
    alpha_n + shift (n <= M) followed by mu.

    Raises:
        InvalidTable: If the input table is not a valid eigenstep sequence
    """
    if not validate_eigensteps(table).passed:
        raise InvalidTable("Cannot lift an invalid eigensteps table")

    alpha, mu = table.alpha, table.mu
    size = len(alpha)
    first_length = mu[0] if len(mu) else ZERO
    smallest = alpha[size - 1] if size else ZERO
    shift = max(ZERO, first_length - smallest)

    rows = []
    for P in range(0, size + 1):
        rows.append(Spectrum(tuple(alpha[m] + shift if m < P else ZERO for m in range(size))))
    for row in table.rows[1:]:
        rows.append(row.shifted(shift))

    lengths = Spectrum(tuple(v + shift for v in alpha) + mu.values)
    lifted = EigenstepsTable(
        rows=tuple(rows),
        alpha=Spectrum.zeros(size),
        lam=table.lam.shifted(shift),
        mu=lengths,
    )
    if not validate_eigensteps(lifted).passed:
        raise InternalError("Lifted eigensteps are invalid")
    return LiftedProblem(beta_shift=shift, lifted_steps=lifted, lifted_lengths=lengths)


def lifted_frame(
    table: EigenstepsTable,
    rng: Optional[np.random.Generator] = None,
    tol: float = SPECTRUM_TOL,
    max_retries: int = 8,
) -> Tuple[SymmetricMatrix, VectorSet]:
    """
    Build both A and the new vectors from the zero operator.

    Walks the lifted eigensteps to get psi_1..psi_{M+N}; then
    A = sum_{n<=M} psi_n psi_n^T - shift * I has spectrum alpha and
    phi_n = psi_{M+n}.
    """
    lifted = lift_problem(table)
    size = len(table.alpha)

    current = SymmetricMatrix.zeros(size)
    psi: List[np.ndarray] = []
    steps = lifted.lifted_steps.rows
    for P in range(1, len(steps)):
        vector, current = append_vector(current, steps[P - 1], steps[P], rng, tol, max_retries)
        psi.append(vector)

    initial = np.zeros((size, size))
    for vector in psi[:size]:
        initial += np.outer(vector, vector)
    initial -= float(lifted.beta_shift) * np.eye(size)
    a = SymmetricMatrix((initial + initial.T) / 2)
    return a, VectorSet(vectors=psi[size:], target_norms_sq=table.mu)


# =============================================================================
# VERIFICATION
# =============================================================================

@dataclass
class CompletionVerification:
    """Independent recomputation of A + sum phi phi^T against a target."""

    passed: bool
    max_spectrum_deviation: float
    max_norm_deviation: float
    tolerance: float
    computed_spectrum: List[float] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "max_spectrum_deviation": self.max_spectrum_deviation,
            "max_norm_deviation": self.max_norm_deviation,
            "tolerance": self.tolerance,
            "computed_spectrum": self.computed_spectrum,
        }


def verify_completion(
    a: SymmetricMatrix,
    vs: VectorSet,
    target: Spectrum,
    tol: float = SPECTRUM_TOL,
) -> CompletionVerification:
    """
    Recompute A + sum phi phi^T; compare its sorted spectrum with target and
    each ||phi_n||^2 with mu_n. Both deviations are scaled: spectra by
    max(1, ||operator||), norms relative to mu_n (a zero mu_n needs a zero vector).

    Raises:
        DimensionMismatch: If dimensions disagree
    """
    size = a.dimension
    if len(target) != size:
        raise DimensionMismatch(f"Target has length {len(target)}, operator dimension {size}")
    if len(vs.target_norms_sq) != vs.count:
        raise DimensionMismatch(f"{vs.count} vectors but {len(vs.target_norms_sq)} prescribed lengths")
    for index, phi in enumerate(vs.vectors, start=1):
        if np.shape(phi) != (size,):
            raise DimensionMismatch(f"Vector {index} has shape {np.shape(phi)}, expected ({size},)")

    total = SymmetricMatrix(a.entries + vs.frame_operator(size))
    computed = sorted_spectrum(total)
    expected = np.array([float(v) for v in target])
    spectrum_dev = float(np.max(np.abs(computed - expected))) / max(1.0, total.norm) if size else 0.0

    deviations = [_norm_deviation(float(phi @ phi), float(mu_n)) for phi, mu_n in zip(vs.vectors, vs.target_norms_sq)]
    norm_dev = float(np.max(deviations)) if deviations else 0.0

    return CompletionVerification(
        passed=bool(spectrum_dev <= tol and norm_dev <= tol),
        max_spectrum_deviation=spectrum_dev,
        max_norm_deviation=norm_dev,
        tolerance=tol,
        computed_spectrum=computed.tolist(),
    )


def gram_spectrum_agrees(vs: VectorSet, dimension: int, tol: float = NORM_REL_TOL) -> bool:
    """Nonzero eigenvalues of the Gram matrix match those of the frame operator."""
    phi = vs.synthesis_matrix(dimension)
    frame = sorted_spectrum(SymmetricMatrix(phi @ phi.T))
    gram = sorted_spectrum(SymmetricMatrix(phi.T @ phi)) if vs.count else np.zeros(0)
    shared = min(len(frame), len(gram))
    scale = max(1.0, float(np.max(np.abs(frame))) if frame.size else 0.0)
    if shared and np.max(np.abs(frame[:shared] - gram[:shared])) > tol * scale:
        return False
    rest = np.concatenate([frame[shared:], gram[shared:]])
    return bool(rest.size == 0 or np.max(np.abs(rest)) <= tol * scale)
