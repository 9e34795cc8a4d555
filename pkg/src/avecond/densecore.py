"""Dense linear-algebra kernels and matrix-class predicates.

Matrices and vectors are plain float ndarrays (row-major, finite entries).
Everything here is a pure function; nothing mutates its inputs.
"""

import warnings
from dataclasses import dataclass
from itertools import combinations

import numpy as np
import scipy.linalg

from .config import DEFAULT_TOLS, Tolerances
from .errors import (
    DimensionTooLargeError,
    NoConvergenceError,
    SingularMatrixError,
)

__all__ = [
    "NormSpec",
    "MatrixClass",
    "SpectralResult",
    "as_matrix",
    "as_square",
    "as_vector",
    "norm_inf",
    "vector_norm",
    "induced_norm",
    "invert",
    "solve",
    "sigma_min",
    "sigma_max",
    "spectral_radius_nonneg",
    "comparison_matrix",
    "classify",
]


def as_matrix(a) -> np.ndarray:
    """Validate and return a 2-D float array with finite entries."""
    m = np.asarray(a, dtype=float)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise ValueError("matrix entries must be finite")
    return m


def as_square(a) -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def as_vector(a) -> np.ndarray:
    v = np.asarray(a, dtype=float)
    if v.ndim != 1 or v.size < 1:
        raise ValueError(f"expected a 1-D vector, got shape {v.shape}")
    if not np.isfinite(v).all():
        raise ValueError("vector entries must be finite")
    return v


def norm_inf(a) -> float:
    """Max absolute row sum for matrices, max magnitude for vectors."""
    a = np.asarray(a, dtype=float)
    if a.ndim == 1:
        return float(np.abs(a).max())
    return float(np.abs(a).sum(axis=1).max())


@dataclass(eq=False)
class NormSpec:
    """A (possibly diagonally scaled) p-norm, p in {1, 2, inf}.

    ``||x|| = ||diag(scaling) @ x||_p``; the induced matrix norm is then
    ``||D A D^{-1}||_p``.  A weighted 1-norm ``v^T |x|`` is the special case
    ``p=1, scaling=v``, and ``||diag(r)^{-1} x||_inf`` is ``p=inf,
    scaling=1/r``.
    """

    p: float
    scaling: np.ndarray | None = None

    def __post_init__(self):
        if self.p not in (1, 2, np.inf):
            raise ValueError(f"p must be 1, 2 or inf, got {self.p}")
        self.p = float(self.p)
        if self.scaling is not None:
            s = as_vector(self.scaling)
            if (s <= 0).any():
                raise ValueError("norm scaling must be strictly positive")
            self.scaling = s

    @classmethod
    def one(cls) -> "NormSpec":
        return cls(1)

    @classmethod
    def two(cls) -> "NormSpec":
        return cls(2)

    @classmethod
    def inf(cls) -> "NormSpec":
        return cls(np.inf)

    @classmethod
    def weighted_one(cls, weights) -> "NormSpec":
        """The norm v^T |x| for a positive weight vector v."""
        return cls(1, scaling=weights)

    @classmethod
    def scaled_inf(cls, radii) -> "NormSpec":
        """The norm ||diag(r)^{-1} x||_inf for positive radii r."""
        return cls(np.inf, scaling=1.0 / as_vector(radii))

    @property
    def is_scaled(self) -> bool:
        return self.scaling is not None

    def label(self) -> str:
        base = {1.0: "one", 2.0: "two", np.inf: "inf"}[self.p]
        return f"scaled-{base}" if self.is_scaled else base


def vector_norm(x, spec: NormSpec) -> float:
    x = as_vector(x)
    if spec.scaling is not None:
        x = spec.scaling * x
    if spec.p == 1:
        return float(np.abs(x).sum())
    if spec.p == 2:
        return float(np.linalg.norm(x))
    return float(np.abs(x).max())


def _apply_scaling(A: np.ndarray, spec: NormSpec) -> np.ndarray:
    if spec.scaling is None:
        return A
    d = spec.scaling
    return A * d[:, None] / d[None, :]


def induced_norm(A, spec: NormSpec) -> float:
    """Operator norm of a square matrix induced by ``spec``."""
    A = as_square(A)
    B = _apply_scaling(A, spec)
    if spec.p == 1:
        return float(np.abs(B).sum(axis=0).max())
    if spec.p == np.inf:
        return float(np.abs(B).sum(axis=1).max())
    return float(np.linalg.svd(B, compute_uv=False)[0])


def _lu(A: np.ndarray, tols: Tolerances):
    """LU with partial pivoting plus the singularity gate on pivot size."""
    thr = tols.pivot_rel * norm_inf(A)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
            lu, piv = scipy.linalg.lu_factor(A, check_finite=False)
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover - exact zeros
        raise SingularMatrixError(str(exc)) from exc
    pivots = np.abs(np.diag(lu))
    if (pivots <= thr).any():
        raise SingularMatrixError(
            f"pivot {pivots.min():.3e} below threshold {thr:.3e}"
        )
    return lu, piv


def invert(A, tols: Tolerances = DEFAULT_TOLS) -> np.ndarray:
    """Inverse of a square matrix; raises SingularMatrixError on tiny pivots."""
    A = as_square(A)
    lu, piv = _lu(A, tols)
    return scipy.linalg.lu_solve((lu, piv), np.eye(A.shape[0]), check_finite=False)


def solve(A, b, tols: Tolerances = DEFAULT_TOLS) -> np.ndarray:
    """Solve A x = b with the same singularity gate as :func:`invert`."""
    A = as_square(A)
    b = as_vector(b)
    if b.size != A.shape[0]:
        raise ValueError("dimension mismatch between matrix and right-hand side")
    lu, piv = _lu(A, tols)
    return scipy.linalg.lu_solve((lu, piv), b, check_finite=False)


def sigma_min(A) -> float:
    """Smallest singular value (0 for numerically singular matrices)."""
    return float(np.linalg.svd(as_square(A), compute_uv=False)[-1])


def sigma_max(A) -> float:
    return float(np.linalg.svd(as_square(A), compute_uv=False)[0])


@dataclass
class SpectralResult:
    value: float
    vector: np.ndarray


def spectral_radius_nonneg(B, tols: Tolerances = DEFAULT_TOLS) -> SpectralResult:
    """Perron root and a nonnegative eigenvector of an entrywise-nonnegative B.

    Power iteration from the all-ones vector; iterating on B + I (same
    eigenvectors, spectrum shifted by one) removes the oscillation that
    cyclic zero patterns would otherwise cause.  Convergence is declared
    when successive Rayleigh quotients differ by less than ``power_tol``.
    """
    B = as_square(B)
    if (B < 0).any():
        raise ValueError("spectral_radius_nonneg requires an entrywise nonnegative matrix")
    n = B.shape[0]
    x = np.full(n, 1.0 / np.sqrt(n))
    rq_prev = np.inf
    for _ in range(tols.power_max_iter):
        z = B @ x
        rq = float(x @ z)
        if abs(rq - rq_prev) < tols.power_tol:
            return SpectralResult(max(rq, 0.0), x)
        rq_prev = rq
        y = z + x  # the +I shift; y > 0 wherever x > 0
        x = y / np.linalg.norm(y)
    raise NoConvergenceError(
        f"power iteration did not converge in {tols.power_max_iter} iterations"
    )


def comparison_matrix(A) -> np.ndarray:
    """|a_ii| on the diagonal, -|a_ij| off it."""
    A = as_square(A)
    C = -np.abs(A)
    np.fill_diagonal(C, np.abs(np.diag(A)))
    return C


@dataclass
class MatrixClass:
    is_symmetric: bool
    is_M_matrix: bool
    is_H_matrix: bool
    is_inverse_nonnegative: bool
    is_P_matrix: bool | None
    tolerance: float


def _inverse_nonneg(A: np.ndarray, tols: Tolerances) -> bool:
    try:
        inv = invert(A, tols)
    except SingularMatrixError:
        return False
    return bool((inv >= -tols.nonneg_slack).all())


def _is_m_matrix(A: np.ndarray, tols: Tolerances) -> bool:
    off = A[~np.eye(A.shape[0], dtype=bool)]
    if (off > tols.nonneg_slack).any():
        return False
    return _inverse_nonneg(A, tols)


def _is_p_matrix(A: np.ndarray, tols: Tolerances) -> bool:
    n = A.shape[0]
    for r in range(1, n + 1):
        for idx in combinations(range(n), r):
            sub = A[np.ix_(idx, idx)]
            if np.linalg.det(sub) <= tols.minor_min:
                return False
    return True


def classify(A, tols: Tolerances = DEFAULT_TOLS, include_p: bool = True) -> MatrixClass:
    """Symmetry / M / H / P / inverse-nonnegativity flags.

    The P-matrix test enumerates all 2^n - 1 principal minors and is
    therefore capped at ``pmatrix_max_n``; pass ``include_p=False`` to skip
    it for larger matrices.
    """
    A = as_square(A)
    n = A.shape[0]
    if include_p and n > tols.pmatrix_max_n:
        raise DimensionTooLargeError(
            f"P-matrix test needs 2^{n} principal minors; cap is n <= {tols.pmatrix_max_n}"
        )
    is_sym = norm_inf(A - A.T) <= tols.symmetry_abs
    inv_nonneg = _inverse_nonneg(A, tols)
    is_m = _is_m_matrix(A, tols)
    is_h = is_m or _is_m_matrix(comparison_matrix(A), tols)
    is_p = _is_p_matrix(A, tols) if include_p else None
    return MatrixClass(
        is_symmetric=bool(is_sym),
        is_M_matrix=is_m,
        is_H_matrix=is_h,
        is_inverse_nonnegative=inv_nonneg,
        is_P_matrix=is_p,
        tolerance=tols.nonneg_slack,
    )
