"""Bridge between linear complementarity problems and absolute value equations.

An LCP (find z >= 0 with w = Mz + q >= 0, z^T w = 0) maps to the equation
A x - b = |x| with A = (M+I)(M-I)^{-1}, b = 2 (M-I)^{-1} q under the
encoding x = w - z, z = (|x|-x)/2, w = (|x|+x)/2.  The map is exact in both
directions, which makes the sign-enumeration solver an LCP oracle, and the
condition-number machinery applies to the transformed matrix.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._enum import binary_chunks, shifted_batch, sign_chunks
from .avesolve import AveProblem
from .condnum import (
    BoundMethod,
    CondResult,
    Kind,
    Tag,
    _batch_induced_norms,
    _not_applicable,
)
from .config import DEFAULT_TOLS, Tolerances
from .densecore import (
    NormSpec,
    as_square,
    as_vector,
    classify,
    comparison_matrix,
    induced_norm,
    invert,
    norm_inf,
)
from .errors import (
    DimensionTooLargeError,
    IdentityMismatchError,
    NotPMatrixError,
    OneIsEigenvalueError,
)
from .regularity import Verdict, regularity_exact

__all__ = [
    "LcpProblem",
    "LcpSolution",
    "LcpAveBridge",
    "lcp_to_ave",
    "ave_to_lcp_solution",
    "natural_residual",
    "chen_xiang_constant",
    "lcp_cond_M_matrix",
    "lcp_cond_H_matrix",
    "lcp_inf_enclosure",
    "lcp_chen_upper",
    "pmatrix_equivalence_check",
]


def _check_one_not_eigenvalue(M: np.ndarray, tols: Tolerances) -> None:
    n = M.shape[0]
    thr = tols.det_rel * max(norm_inf(M), 1.0) ** n
    if abs(np.linalg.det(M - np.eye(n))) <= thr:
        raise OneIsEigenvalueError("1 is (numerically) an eigenvalue of M")


@dataclass
class LcpProblem:
    """An instance (M, q); requires 1 not to be an eigenvalue of M so the
    transform to an absolute value equation exists."""

    M: np.ndarray
    q: np.ndarray

    def __post_init__(self):
        self.M = as_square(self.M)
        self.q = as_vector(self.q)
        if self.q.size != self.M.shape[0]:
            raise ValueError("q length must match the matrix dimension")
        _check_one_not_eigenvalue(self.M, DEFAULT_TOLS)

    @property
    def n(self) -> int:
        return self.M.shape[0]


@dataclass
class LcpSolution:
    z: np.ndarray
    w: np.ndarray
    complementarity_gap: float


@dataclass
class LcpAveBridge:
    """Transformed problem plus both direction maps."""

    ave: AveProblem
    M_minus_I_inv: np.ndarray

    def to_ave_point(self, z, w) -> np.ndarray:
        return as_vector(w) - as_vector(z)

    def to_lcp_solution(self, x) -> LcpSolution:
        return ave_to_lcp_solution(x)


def lcp_to_ave(lp: LcpProblem, tols: Tolerances = DEFAULT_TOLS) -> LcpAveBridge:
    """A = (M+I)(M-I)^{-1}, b = 2 (M-I)^{-1} q.

    x solves the transformed equation iff (z, w) = ((|x|-x)/2, (|x|+x)/2)
    solves the complementarity problem.
    """
    n = lp.n
    I = np.eye(n)
    _check_one_not_eigenvalue(lp.M, tols)
    inv = invert(lp.M - I, tols)
    A = (lp.M + I) @ inv
    b = 2.0 * inv @ lp.q
    return LcpAveBridge(AveProblem(A, b), inv)


def ave_to_lcp_solution(x) -> LcpSolution:
    """z = (|x|-x)/2 >= 0, w = (|x|+x)/2 >= 0; z^T w = 0 in exact arithmetic."""
    x = as_vector(x)
    ax = np.abs(x)
    z = 0.5 * (ax - x)
    w = 0.5 * (ax + x)
    return LcpSolution(z, w, float(z @ w))


def natural_residual(lp: LcpProblem, x) -> np.ndarray:
    """min(Mx + q, x) entrywise; zero exactly at LCP solutions."""
    x = as_vector(x)
    if x.size != lp.n:
        raise ValueError("dimension mismatch")
    return np.minimum(lp.M @ x + lp.q, x)


def _max_pivot_norm(M: np.ndarray, spec: NormSpec) -> float:
    """max over 0/1 diagonal D of ||(I - D + D M)^{-1}||."""
    n = M.shape[0]
    I = np.eye(n)
    best = -math.inf
    for bits in binary_chunks(n):
        # rows of I - D + D M: row i of I where bit 0, row i of M where bit 1
        mats = np.where(bits[:, :, None] > 0.5, M[None, :, :], I[None, :, :])
        vals = _batch_induced_norms(np.linalg.inv(mats), spec)
        best = max(best, float(vals.max()))
    return best


def chen_xiang_constant(
    lp: LcpProblem, spec: NormSpec, tols: Tolerances = DEFAULT_TOLS
) -> float:
    """max over 0 <= D <= I of ||(I - D + D M)^{-1}|| for a P-matrix M.

    Computed twice: directly over the 2^n binary-diagonal vertices, and
    through the equivalent diagonal-shift form
    2 max ||(I-M)^{-1} ((I+M)(I-M)^{-1} - diag(d))^{-1}||; the two routes
    must agree to ``route_agree_rel`` or IdentityMismatchError is raised.
    """
    n = lp.n
    if n > tols.enum_max_n:
        raise DimensionTooLargeError(f"vertex enumeration capped at n <= {tols.enum_max_n}")
    cls = classify(lp.M, tols)
    if not cls.is_P_matrix:
        raise NotPMatrixError("chen_xiang_constant requires a P-matrix")
    direct = _max_pivot_norm(lp.M, spec)

    I = np.eye(n)
    left = invert(I - lp.M, tols)
    A_hat = (I + lp.M) @ left
    best = -math.inf
    for D in sign_chunks(n):
        invs = np.linalg.inv(shifted_batch(A_hat, D))
        vals = _batch_induced_norms(left[None, :, :] @ invs, spec)
        best = max(best, float(vals.max()))
    via_shift = 2.0 * best

    if abs(direct - via_shift) > tols.route_agree_rel * max(abs(direct), 1.0):
        raise IdentityMismatchError(
            f"pivot route {direct:.12g} vs shift route {via_shift:.12g}"
        )
    return direct


def _diag_at_most_one(M: np.ndarray, tols: Tolerances, lower_zero: bool) -> bool:
    d = np.diag(M)
    if (d > 1.0 + tols.nonneg_slack).any():
        return False
    if lower_zero and (d < -tols.nonneg_slack).any():
        return False
    return True


def lcp_cond_M_matrix(
    lp: LcpProblem, spec: NormSpec, tols: Tolerances = DEFAULT_TOLS
) -> CondResult:
    """Exact condition number of the transform for M-matrices with diag <= 1:
    c((M+I)(M-I)^{-1}) = 0.5 ||I - M^{-1}||, attained at the all-minus vertex."""
    M = lp.M
    n = lp.n
    if not classify(M, tols, include_p=False).is_M_matrix:
        return _not_applicable(Tag.LCP_M_MATRIX, spec, "M is not an M-matrix")
    if not _diag_at_most_one(M, tols, lower_zero=False):
        return _not_applicable(Tag.LCP_M_MATRIX, spec, "Diag(M) <= e fails")
    value = 0.5 * induced_norm(np.eye(n) - invert(M, tols), spec)
    return CondResult(
        value, BoundMethod(Tag.LCP_M_MATRIX), Kind.EXACT, -np.ones(n), spec
    )


def lcp_cond_H_matrix(
    lp: LcpProblem, spec: NormSpec, tols: Tolerances = DEFAULT_TOLS
) -> CondResult:
    """Upper bound 0.5 ||<M>^{-1} - I|| for H-matrices with 0 <= diag <= 1."""
    M = lp.M
    n = lp.n
    if not classify(M, tols, include_p=False).is_H_matrix:
        return _not_applicable(Tag.LCP_H_MATRIX, spec, "M is not an H-matrix")
    if not _diag_at_most_one(M, tols, lower_zero=True):
        return _not_applicable(Tag.LCP_H_MATRIX, spec, "0 <= Diag(M) <= e fails")
    value = 0.5 * induced_norm(invert(comparison_matrix(M), tols) - np.eye(n), spec)
    return CondResult(value, BoundMethod(Tag.LCP_H_MATRIX), Kind.UPPER_BOUND, None, spec)


def lcp_inf_enclosure(lp: LcpProblem, tols: Tolerances = DEFAULT_TOLS) -> float:
    """Entrywise-enclosure estimate of the inf-norm pivot maximum for
    M-matrices with diag <= 1.

    Sums per-entry extremes of (I-M)^{-1}_{ik} * X_{kj} with X at the
    endpoints I - M and M^{-1} - I, then takes ||max(|B_low|, |B_high|)||_inf.
    The claim that this EQUALS the pivot maximum does not hold in
    general (the entrywise extremes mix endpoint choices no single shift
    realizes); the value is an upper bound, and for applicable M-matrices
    the true maximum is ||M^{-1}||_inf.
    """
    M = lp.M
    n = lp.n
    if not classify(M, tols, include_p=False).is_M_matrix:
        raise NotPMatrixError("lcp_inf_enclosure requires an M-matrix")
    if not _diag_at_most_one(M, tols, lower_zero=False):
        raise NotPMatrixError("lcp_inf_enclosure requires Diag(M) <= e")
    I = np.eye(n)
    left = invert(I - M, tols)
    upper_end = invert(M, tols) - I
    lower_end = I - M
    p_low = left[:, :, None] * lower_end[None, :, :]
    p_high = left[:, :, None] * upper_end[None, :, :]
    B_low = np.minimum(p_low, p_high).sum(axis=1)
    B_high = np.maximum(p_low, p_high).sum(axis=1)
    return induced_norm(np.maximum(np.abs(B_low), np.abs(B_high)), NormSpec.inf())


def lcp_chen_upper(
    lp: LcpProblem, spec: NormSpec, tols: Tolerances = DEFAULT_TOLS
) -> float:
    """Bound ||<M>^{-1}|| on the pivot maximum for H-matrices with
    0 <= diag <= 1."""
    M = lp.M
    if not classify(M, tols, include_p=False).is_H_matrix:
        raise NotPMatrixError("lcp_chen_upper requires an H-matrix")
    if not _diag_at_most_one(M, tols, lower_zero=True):
        raise NotPMatrixError("lcp_chen_upper requires 0 <= Diag(M) <= e")
    return induced_norm(invert(comparison_matrix(M), tols), spec)


def pmatrix_equivalence_check(M, tols: Tolerances = DEFAULT_TOLS) -> bool:
    """True iff the P-matrix property of M coincides with regularity of the
    shift family of the transformed matrix (M+I)(M-I)^{-1}."""
    M = as_square(M)
    n = M.shape[0]
    if n > tols.pmatrix_max_n:
        raise DimensionTooLargeError(
            f"P-matrix test capped at n <= {tols.pmatrix_max_n}"
        )
    _check_one_not_eigenvalue(M, tols)
    I = np.eye(n)
    A = (M + I) @ invert(M - I, tols)
    is_p = classify(M, tols).is_P_matrix
    regular = regularity_exact(A, tols).verdict is Verdict.REGULAR
    return bool(is_p) == regular
