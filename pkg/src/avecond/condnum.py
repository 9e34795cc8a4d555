"""Condition numbers for Ax - b = |x|.

The central quantity is ``max ||(A - diag(d))^{-1}||`` over ``||d||_inf <= 1``;
the maximum is attained at one of the 2^n sign vertices, so small problems
are settled by exhaustive enumeration (:func:`cond_exact`).  The remaining
functions are the closed forms and upper bounds available for special
matrix classes; each returns a :class:`CondResult` that records whether it
is exact, an upper bound, or not applicable to the given matrix.
"""

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from ._enum import shifted_batch, sign_chunks
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
    sigma_min,
    spectral_radius_nonneg,
)
from .errors import DimensionTooLargeError, NotRegularError, SingularMatrixError
from .regularity import Verdict, regularity_exact

__all__ = [
    "Kind",
    "Tag",
    "BoundMethod",
    "CondResult",
    "ShiftedNorm",
    "cond_exact",
    "cond_symmetric2",
    "cond_sigma_upper",
    "cond_diagdom2",
    "cond_inv_nonneg_inf",
    "cond_hmatrix_inf",
    "cond_neumann_upper",
    "cond_enclosure_inf",
    "cond_scaled_dd",
    "cond_coldd_1",
    "cond_scaled1_gamma",
    "max_shifted_norm",
    "cond_relative",
]


class Kind(str, enum.Enum):
    EXACT = "exact"
    UPPER_BOUND = "upper_bound"
    NOT_APPLICABLE = "not_applicable"


class Tag(str, enum.Enum):
    VERTEX_ENUM = "VertexEnum"
    SYMMETRIC2 = "Symmetric2"
    DIAG_DOM2 = "DiagDom2"
    INV_NONNEG_INF = "InvNonnegInf"
    M_MATRIX_INF = "MmatrixInf"
    H_MATRIX_INF = "HmatrixInf"
    NEUMANN_MONOTONE = "NeumannMonotone"
    SIGMA_MIN2 = "SigmaMin2"
    ENCLOSURE_INF = "EnclosureInf"
    SCALED_INF_DIAG_DOM = "ScaledInfDiagDom"
    ROW_DIAG_DOM_INF = "RowDiagDomInf"
    COL_DIAG_DOM_1 = "ColDiagDom1"
    SCALED_ONE_NORM_GAMMA = "ScaledOneNormGamma"
    LCP_M_MATRIX = "LcpMmatrix"
    LCP_H_MATRIX = "LcpHmatrix"
    RELATIVE = "Relative"


@dataclass
class BoundMethod:
    tag: Tag
    params: dict = field(default_factory=dict)


@dataclass
class CondResult:
    value: float
    method: BoundMethod
    kind: Kind
    witness_d: np.ndarray | None
    norm: NormSpec
    note: str = ""

    @property
    def applicable(self) -> bool:
        return self.kind is not Kind.NOT_APPLICABLE


def _not_applicable(tag: Tag, norm: NormSpec, note: str, **params) -> CondResult:
    return CondResult(math.nan, BoundMethod(tag, params), Kind.NOT_APPLICABLE, None, norm, note)


def _batch_induced_norms(invs: np.ndarray, spec: NormSpec) -> np.ndarray:
    """Induced norms of a stack of matrices."""
    B = invs
    if spec.scaling is not None:
        d = spec.scaling
        B = B * d[None, :, None] / d[None, None, :]
    if spec.p == 1:
        return np.abs(B).sum(axis=1).max(axis=1)
    if spec.p == np.inf:
        return np.abs(B).sum(axis=2).max(axis=1)
    return np.linalg.svd(B, compute_uv=False)[:, 0]


def cond_exact(
    A,
    spec: NormSpec,
    tols: Tolerances = DEFAULT_TOLS,
    check_regularity: bool = True,
) -> CondResult:
    """Exhaustive maximum of ||(A - diag(d))^{-1}|| over the 2^n sign vertices.

    Requires the shift family to be regular (checked by vertex determinants
    unless the caller already did).  Ties in the argmax resolve to the
    earliest vertex in enumeration order, i.e. the one with the most
    leading +1 entries.
    """
    A = as_square(A)
    n = A.shape[0]
    if n > tols.enum_max_n:
        raise DimensionTooLargeError(f"vertex enumeration capped at n <= {tols.enum_max_n}")
    if check_regularity:
        report = regularity_exact(A, tols)
        if report.verdict is not Verdict.REGULAR:
            raise NotRegularError("shift family [A-I, A+I] is not regular", report)
    plain_two = spec.p == 2 and spec.scaling is None
    best = -math.inf
    witness = None
    for D in sign_chunks(n):
        mats = shifted_batch(A, D)
        if plain_two:
            # ||M^{-1}||_2 = 1 / sigma_min(M): no explicit inversion needed
            vals = 1.0 / np.linalg.svd(mats, compute_uv=False)[:, -1]
        else:
            vals = _batch_induced_norms(np.linalg.inv(mats), spec)
        k = int(np.argmax(vals))
        if vals[k] > best:
            best = float(vals[k])
            witness = D[k].copy()
    return CondResult(best, BoundMethod(Tag.VERTEX_ENUM), Kind.EXACT, witness, spec)


def cond_symmetric2(A, tols: Tolerances = DEFAULT_TOLS) -> CondResult:
    """Exact 2-norm value 1/(sigma_min(A) - 1) for symmetric A."""
    A = as_square(A)
    spec = NormSpec.two()
    if norm_inf(A - A.T) > tols.symmetry_abs:
        return _not_applicable(Tag.SYMMETRIC2, spec, "matrix is not symmetric")
    lam = np.linalg.eigvalsh(A)
    k = int(np.argmin(np.abs(lam)))
    smin = abs(lam[k])
    if smin <= 1.0 + tols.strict_margin:
        return _not_applicable(Tag.SYMMETRIC2, spec, f"sigma_min = {smin:.6g} <= 1")
    witness = np.full(A.shape[0], 1.0 if lam[k] >= 0 else -1.0)
    return CondResult(
        1.0 / (smin - 1.0), BoundMethod(Tag.SYMMETRIC2), Kind.EXACT, witness, spec
    )


def cond_sigma_upper(A, tols: Tolerances = DEFAULT_TOLS) -> CondResult:
    """Upper bound 1/(sigma_min(A) - 1) for the 2-norm, any A with sigma_min > 1."""
    A = as_square(A)
    spec = NormSpec.two()
    smin = sigma_min(A)
    if smin <= 1.0 + tols.strict_margin:
        return _not_applicable(Tag.SIGMA_MIN2, spec, f"sigma_min = {smin:.6g} <= 1")
    return CondResult(
        1.0 / (smin - 1.0),
        BoundMethod(Tag.SIGMA_MIN2, {"sigma_min": smin}),
        Kind.UPPER_BOUND,
        None,
        spec,
    )


def _row_col_gaps(B: np.ndarray) -> np.ndarray:
    absB = np.abs(B)
    diag = np.abs(np.diag(B))
    r = absB.sum(axis=1) - diag
    c = absB.sum(axis=0) - diag
    return diag - 0.5 * (r + c)


def cond_diagdom2(A, permutation=None, tols: Tolerances = DEFAULT_TOLS) -> CondResult:
    """2-norm value at the diagonal-sign vertex of B = A P, for strongly
    two-sided diagonally dominant B (alpha > 1).

    Reported with kind Exact per the defining formula.  Caution: the
    underlying equality claim fails on matrices whose maximizing vertex
    mixes signs (see the companion upper bound 1/(alpha - 1) in params,
    which is always valid); the exhaustive oracle disagrees with this
    formula on such inputs.
    """
    A = as_square(A)
    spec = NormSpec.two()
    if permutation is not None:
        P = as_square(permutation)
        is_perm = (
            P.shape == A.shape
            and ((P == 0) | (P == 1)).all()
            and (P.sum(axis=0) == 1).all()
            and (P.sum(axis=1) == 1).all()
        )
        if not is_perm:
            raise ValueError("permutation must be a 0/1 permutation matrix")
        B = A @ P
    else:
        B = A
    alpha = float(_row_col_gaps(B).min())
    if alpha <= 1.0 + tols.strict_margin:
        return _not_applicable(Tag.DIAG_DOM2, spec, f"alpha = {alpha:.6g} <= 1", alpha=alpha)
    dbar = np.sign(np.diag(B))
    value = induced_norm(invert(B - np.diag(dbar), tols), spec)
    params = {"alpha": alpha, "alpha_bound": 1.0 / (alpha - 1.0)}
    if permutation is not None:
        params["permuted"] = True
    return CondResult(value, BoundMethod(Tag.DIAG_DOM2, params), Kind.EXACT, dbar, spec)


def cond_inv_nonneg_inf(A, tols: Tolerances = DEFAULT_TOLS) -> CondResult:
    """Exact inf-norm value ||(A-I)^{-1} e||_inf when the whole shift family
    is inverse nonnegative (both (A-I)^{-1} >= 0 and (A+I)^{-1} >= 0), or
    when A is an M-matrix with rho(A^{-1}) < 1 (which implies the former)."""
    A = as_square(A)
    n = A.shape[0]
    spec = NormSpec.inf()
    tag = Tag.INV_NONNEG_INF
    I = np.eye(n)
    try:
        inv_minus = invert(A - I, tols)
        inv_plus = invert(A + I, tols)
    except SingularMatrixError:
        return _not_applicable(tag, spec, "A - I or A + I is singular")
    slack = -tols.nonneg_slack
    if not ((inv_minus >= slack).all() and (inv_plus >= slack).all()):
        cls = classify(A, tols, include_p=False)
        if not cls.is_M_matrix:
            return _not_applicable(tag, spec, "shift endpoints are not inverse nonnegative")
        rho = spectral_radius_nonneg(np.abs(invert(A, tols)), tols).value
        if rho >= 1.0 - tols.strict_margin:
            return _not_applicable(Tag.M_MATRIX_INF, spec, f"rho(A^-1) = {rho:.6g} >= 1")
        tag = Tag.M_MATRIX_INF
    value = float(np.abs(inv_minus @ np.ones(n)).max())
    return CondResult(value, BoundMethod(tag), Kind.EXACT, np.ones(n), spec)


def cond_hmatrix_inf(A, tols: Tolerances = DEFAULT_TOLS) -> CondResult:
    """Upper bound ||(<A> - I)^{-1} e||_inf for H-matrices with rho(<A>^{-1}) < 1."""
    A = as_square(A)
    n = A.shape[0]
    spec = NormSpec.inf()
    cls = classify(A, tols, include_p=False)
    if not cls.is_H_matrix:
        return _not_applicable(Tag.H_MATRIX_INF, spec, "matrix is not an H-matrix")
    comp = comparison_matrix(A)
    rho = spectral_radius_nonneg(np.abs(invert(comp, tols)), tols).value
    if rho >= 1.0 - tols.strict_margin:
        return _not_applicable(Tag.H_MATRIX_INF, spec, f"rho(<A>^-1) = {rho:.6g} >= 1")
    value = float(np.abs(invert(comp - np.eye(n), tols) @ np.ones(n)).max())
    return CondResult(
        value, BoundMethod(Tag.H_MATRIX_INF, {"rho": rho}), Kind.UPPER_BOUND, None, spec
    )


def cond_neumann_upper(A, spec: NormSpec, tols: Tolerances = DEFAULT_TOLS) -> CondResult:
    """Neumann-series bound ||A^{-1}|| / (1 - |||A^{-1}|||), any monotone norm."""
    A = as_square(A)
    inv = invert(A, tols)
    denom = induced_norm(np.abs(inv), spec)
    if denom >= 1.0 - tols.strict_margin:
        return _not_applicable(
            Tag.NEUMANN_MONOTONE, spec, f"|| |A^-1| || = {denom:.6g} >= 1"
        )
    value = induced_norm(inv, spec) / (1.0 - denom)
    return CondResult(
        value,
        BoundMethod(Tag.NEUMANN_MONOTONE, {"abs_inv_norm": denom}),
        Kind.UPPER_BOUND,
        None,
        spec,
    )


def cond_enclosure_inf(A, tols: Tolerances = DEFAULT_TOLS) -> CondResult:
    """Inf-norm bound from an entrywise enclosure of every shifted inverse.

    With H = (I - |A^{-1}|)^{-1} and T = (2 diag(Diag(H)) - I)^{-1}, two
    candidate matrices per endpoint bracket all (A - diag(d))^{-1}; the
    bound is the inf-norm of the entrywise max of their magnitudes.
    Needs rho(|A^{-1}|) < 1.
    """
    A = as_square(A)
    n = A.shape[0]
    spec = NormSpec.inf()
    inv = invert(A, tols)
    abs_inv = np.abs(inv)
    rho = spectral_radius_nonneg(abs_inv, tols).value
    if rho >= 1.0 - tols.strict_margin:
        return _not_applicable(Tag.ENCLOSURE_INF, spec, f"rho(|A^-1|) = {rho:.6g} >= 1")
    I = np.eye(n)
    H = invert(I - abs_inv, tols)
    T = invert(2.0 * np.diag(np.diag(H)) - I, tols)
    low = -H @ abs_inv + T @ (inv + abs_inv)
    B1 = np.minimum(low, T @ low)
    high = H @ abs_inv + T @ (inv - abs_inv)
    B2 = np.maximum(high, T @ high)
    value = induced_norm(np.maximum(np.abs(B1), np.abs(B2)), spec)
    return CondResult(
        value, BoundMethod(Tag.ENCLOSURE_INF, {"rho": rho}), Kind.UPPER_BOUND, None, spec
    )


def cond_scaled_dd(A, r, tols: Tolerances = DEFAULT_TOLS) -> CondResult:
    """Bound 1/alpha in the norm ||diag(r)^{-1} x||_inf, from weighted row
    diagonal dominance alpha = min_i {|a_ii| - 1 - r_i^{-1} sum_j r_j |a_ij|}.

    With r = e this is the plain inf-norm row-dominance bound 1/(alpha'-1),
    alpha' = min_i {|a_ii| - r_i(A)}.
    """
    A = as_square(A)
    r = as_vector(r)
    if (r <= 0).any():
        raise ValueError("scaling radii must be strictly positive")
    if r.size != A.shape[0]:
        raise ValueError("radii length must match the matrix dimension")
    absA = np.abs(A)
    weighted = (absA * r[None, :]).sum(axis=1) - absA.diagonal() * r
    alpha = float((np.abs(np.diag(A)) - 1.0 - weighted / r).min())
    plain = bool((r == r[0]).all())
    tag = Tag.ROW_DIAG_DOM_INF if plain else Tag.SCALED_INF_DIAG_DOM
    spec = NormSpec.inf() if plain and r[0] == 1.0 else NormSpec.scaled_inf(r)
    if alpha <= tols.strict_margin:
        return _not_applicable(tag, spec, f"alpha = {alpha:.6g} <= 0", alpha=alpha)
    return CondResult(
        1.0 / alpha,
        BoundMethod(tag, {"alpha": alpha, "r": r.tolist()}),
        Kind.UPPER_BOUND,
        None,
        spec,
    )


def cond_coldd_1(A, tols: Tolerances = DEFAULT_TOLS) -> CondResult:
    """1-norm column-dominance bound 1/(beta - 1), beta = min_j {|a_jj| - cl_j(A)}.

    Computed as the row version on A^T, reusing the tested code path.
    """
    A = as_square(A)
    res = cond_scaled_dd(A.T, np.ones(A.shape[0]), tols)
    spec = NormSpec.one()
    if not res.applicable:
        return _not_applicable(Tag.COL_DIAG_DOM_1, spec, res.note, **res.method.params)
    beta = res.method.params["alpha"] + 1.0
    return CondResult(
        res.value,
        BoundMethod(Tag.COL_DIAG_DOM_1, {"beta": beta}),
        Kind.UPPER_BOUND,
        None,
        spec,
    )


def cond_scaled1_gamma(
    A, gamma: float, tols: Tolerances = DEFAULT_TOLS
) -> tuple[CondResult, np.ndarray | None]:
    """Weighted 1-norm bound gamma/(1-gamma) valid when rho(|A^{-1}|) < gamma < 1.

    Constructs B = |A^{-1}| + tau * ee^T with tau found by bisection so that
    rho(B) = gamma, then takes the weight vector v as the Perron vector of
    B^T (the left eigenvector of B, which is what makes the induced weighted
    1-norm of B equal rho(B)).  Returns the bound together with v, v_1 = 1.
    """
    A = as_square(A)
    n = A.shape[0]
    if not 0.0 < gamma < 1.0:
        return (
            _not_applicable(Tag.SCALED_ONE_NORM_GAMMA, NormSpec.one(), "gamma must lie in (0, 1)"),
            None,
        )
    abs_inv = np.abs(invert(A, tols))
    rho0 = spectral_radius_nonneg(abs_inv, tols).value
    if rho0 >= gamma:
        return (
            _not_applicable(
                Tag.SCALED_ONE_NORM_GAMMA,
                NormSpec.one(),
                f"rho(|A^-1|) = {rho0:.6g} >= gamma = {gamma:.6g}",
            ),
            None,
        )
    ones = np.ones((n, n))
    lo, hi = 0.0, gamma / n  # rho(|A^-1| + (gamma/n) ee^T) >= gamma by monotonicity
    while True:
        mid = 0.5 * (lo + hi)
        rho_mid = spectral_radius_nonneg(abs_inv + mid * ones, tols).value
        if abs(rho_mid - gamma) <= tols.bisect_tol:
            tau = mid
            break
        if rho_mid < gamma:
            lo = mid
        else:
            hi = mid
    B = abs_inv + tau * ones
    v = spectral_radius_nonneg(B.T, tols).vector  # left Perron vector of B
    v = v / v[0]
    spec = NormSpec.weighted_one(v)
    result = CondResult(
        gamma / (1.0 - gamma),
        BoundMethod(Tag.SCALED_ONE_NORM_GAMMA, {"gamma": gamma, "tau": tau}),
        Kind.UPPER_BOUND,
        None,
        spec,
    )
    return result, v


class ShiftedNorm(NamedTuple):
    value: float
    exact: bool


def max_shifted_norm(A, spec: NormSpec, tols: Tolerances = DEFAULT_TOLS) -> ShiftedNorm:
    """max ||A - diag(d)|| over ||d||_inf <= 1.

    Equals |||A| + I|| exactly for the (scaled) 1- and inf-norms; for the
    2-norm the value ||A||_2 + 1 is an upper bound, exact when A is
    symmetric and unscaled.
    """
    A = as_square(A)
    if spec.p in (1.0, np.inf):
        return ShiftedNorm(induced_norm(np.abs(A) + np.eye(A.shape[0]), spec), True)
    value = induced_norm(A, spec) + 1.0
    exact = spec.scaling is None and norm_inf(A - A.T) <= tols.symmetry_abs
    return ShiftedNorm(value, exact)


def cond_relative(
    A, spec: NormSpec, base: CondResult, tols: Tolerances = DEFAULT_TOLS
) -> CondResult:
    """Relative condition number: base value times max ||A - diag(d)||.

    Exact only when both factors are; the witness of the base factor is
    carried through.
    """
    A = as_square(A)
    if not base.applicable:
        return _not_applicable(Tag.RELATIVE, spec, f"base not applicable: {base.note}")
    shifted = max_shifted_norm(A, spec, tols)
    kind = Kind.EXACT if (base.kind is Kind.EXACT and shifted.exact) else Kind.UPPER_BOUND
    return CondResult(
        base.value * shifted.value,
        BoundMethod(
            Tag.RELATIVE,
            {"base": base.method.tag.value, "shifted_norm": shifted.value,
             "shifted_exact": shifted.exact},
        ),
        kind,
        base.witness_d,
        spec,
    )
