"""Request handlers shared by the FastAPI endpoints and the CLI.

Each handler turns a request model into a response model using the core
library.  Mathematical inapplicability (a not-regular shift family, a
formula whose preconditions fail) is reported inside the response, never
as an exception; genuine usage errors (bad dimensions, caps exceeded)
propagate as library exceptions for the caller to map.
"""

import math

import numpy as np

from .. import condnum as cn
from ..avesolve import AveProblem, solve_exact
from ..condnum import CondResult, Kind, NormSpec, Tag
from ..config import DEFAULT_TOLS, Tolerances
from ..densecore import as_square, as_vector, vector_norm
from ..errorbound import certify_abs, certify_rel
from ..errors import (
    DimensionTooLargeError,
    NoConvergenceError,
    NotPMatrixError,
    NotRegularError,
    NotSymmetricError,
    SingularMatrixError,
)
from ..lcpbridge import (
    LcpProblem,
    chen_xiang_constant,
    lcp_chen_upper,
    lcp_cond_H_matrix,
    lcp_cond_M_matrix,
    lcp_inf_enclosure,
    lcp_to_ave,
)
from ..regularity import (
    regularity_exact,
    regularity_sufficient,
    regularity_symmetric,
)
from ..selftest import run_selftest
from . import schemas as sc

_P_BY_NAME = {"one": 1.0, "two": 2.0, "inf": np.inf}
_NAME_BY_P = {1.0: "one", 2.0: "two", np.inf: "inf"}

#: method names accepted by condnum/certify, beyond "auto" and "exact"
METHOD_NAMES = (
    "symmetric2",
    "diagdom2",
    "sigma_min",
    "inv_nonneg",
    "hmatrix",
    "neumann",
    "enclosure",
    "row_dd",
    "col_dd",
    "scaled1_gamma",
)


def norm_spec_from(model: sc.NormIn) -> NormSpec:
    scaling = None if model.scaling is None else np.asarray(model.scaling, dtype=float)
    return NormSpec(_P_BY_NAME[model.p], scaling=scaling)


def norm_out(spec: NormSpec) -> sc.NormOut:
    scaling = None if spec.scaling is None else [float(v) for v in spec.scaling]
    return sc.NormOut(p=_NAME_BY_P[spec.p], scaling=scaling)


def _finite_or_none(x: float | None) -> float | None:
    if x is None or not math.isfinite(x):
        return None
    return float(x)


def _dispatch_single(
    A: np.ndarray,
    spec: NormSpec,
    method: str,
    req: sc.CondnumRequest,
    tols: Tolerances,
) -> CondResult:
    if method == "symmetric2":
        return cn.cond_symmetric2(A, tols)
    if method == "diagdom2":
        P = None
        if req.permutation is not None:
            P = np.zeros((A.shape[0], A.shape[0]))
            P[np.asarray(req.permutation, dtype=int), np.arange(A.shape[0])] = 1.0
        return cn.cond_diagdom2(A, P, tols)
    if method == "sigma_min":
        return cn.cond_sigma_upper(A, tols)
    if method == "inv_nonneg":
        return cn.cond_inv_nonneg_inf(A, tols)
    if method == "hmatrix":
        return cn.cond_hmatrix_inf(A, tols)
    if method == "neumann":
        return cn.cond_neumann_upper(A, spec, tols)
    if method == "enclosure":
        return cn.cond_enclosure_inf(A, tols)
    if method == "row_dd":
        r = np.ones(A.shape[0]) if req.radii is None else np.asarray(req.radii, dtype=float)
        return cn.cond_scaled_dd(A, r, tols)
    if method == "col_dd":
        return cn.cond_coldd_1(A, tols)
    if method == "scaled1_gamma":
        gamma = 0.9 if req.gamma is None else req.gamma
        result, _ = cn.cond_scaled1_gamma(A, gamma, tols)
        return result
    raise ValueError(f"unknown method {method!r}")


def _auto_cond(
    A: np.ndarray, spec: NormSpec, enum_limit: int, tols: Tolerances
) -> CondResult:
    """Fixed-order automatic selection.

    1. exact class formulas for the requested norm (symmetric 2-norm
       formula; inverse-nonnegative inf-norm formula, also through the
       transpose for the 1-norm);
    2. the cheap upper bounds that apply (Neumann, sigma-based, H-matrix,
       row/column dominance), keeping the smallest;
    3. exhaustive enumeration when n is within the limit;
    4. otherwise the best bound from step 2, or not-applicable.

    The known-unsound diagonal-dominance 2-norm equality is deliberately
    not part of the chain.
    """
    n = A.shape[0]

    def attempt(fn, *args):
        # a spectral-radius gate that hits its iteration cap means "cannot
        # certify applicability": skip the method rather than fail the chain
        try:
            return fn(*args)
        except (NoConvergenceError, SingularMatrixError):
            return None

    if spec.scaling is None:
        if spec.p == 2.0:
            res = attempt(cn.cond_symmetric2, A, tols)
            if res is not None and res.applicable:
                return res
        elif spec.p == np.inf:
            res = attempt(cn.cond_inv_nonneg_inf, A, tols)
            if res is not None and res.applicable:
                return res
        elif spec.p == 1.0:
            res = attempt(cn.cond_inv_nonneg_inf, A.T, tols)
            if res is not None and res.applicable:
                # c_1(A) = c_inf(A^T)
                return CondResult(
                    res.value, res.method, res.kind, res.witness_d, spec,
                    note="via transpose",
                )
    bounds = [attempt(cn.cond_neumann_upper, A, spec, tols)]
    if spec.scaling is None:
        if spec.p == 2.0:
            bounds.append(attempt(cn.cond_sigma_upper, A, tols))
        elif spec.p == np.inf:
            bounds.append(attempt(cn.cond_hmatrix_inf, A, tols))
            bounds.append(attempt(cn.cond_scaled_dd, A, np.ones(n), tols))
        elif spec.p == 1.0:
            bounds.append(attempt(cn.cond_coldd_1, A, tols))
    applicable = [b for b in bounds if b is not None and b.applicable]
    if n <= min(enum_limit, tols.enum_max_n):
        return cn.cond_exact(A, spec, tols)
    if applicable:
        return min(applicable, key=lambda b: b.value)
    return cn._not_applicable(
        Tag.NEUMANN_MONOTONE, spec, "no closed form applies and n exceeds the enumeration limit"
    )


def compute_cond(
    A: np.ndarray,
    spec: NormSpec,
    method: str,
    req: sc.CondnumRequest,
    tols: Tolerances,
) -> tuple[CondResult, str]:
    """Returns (result, note) where note records a not-regular diagnosis."""
    try:
        if method == "exact":
            return cn.cond_exact(A, spec, tols), ""
        if method == "auto":
            return _auto_cond(A, spec, req.enum_limit, tols), ""
        return _dispatch_single(A, spec, method, req, tols), ""
    except NotRegularError as exc:
        witness = None if exc.report is None else exc.report.witness
        result = CondResult(
            math.nan,
            cn.BoundMethod(Tag.VERTEX_ENUM),
            Kind.NOT_APPLICABLE,
            witness,
            spec,
            note="shift family [A-I, A+I] is not regular",
        )
        return result, result.note


def handle_condnum(
    req: sc.CondnumRequest, tols: Tolerances = DEFAULT_TOLS
) -> sc.CondnumResponse:
    A = as_square(np.asarray(req.matrix, dtype=float))
    spec = norm_spec_from(req.norm)
    result, _ = compute_cond(A, spec, req.method, req, tols)
    witness = None if result.witness_d is None else [float(v) for v in result.witness_d]
    return sc.CondnumResponse(
        n=A.shape[0],
        norm=norm_out(result.norm),
        method=result.method.tag.value,
        kind=result.kind.value,
        value=_finite_or_none(result.value),
        witness=witness,
        params={k: v for k, v in result.method.params.items()},
        note=result.note,
    )


def handle_certify(
    req: sc.CertifyRequest, tols: Tolerances = DEFAULT_TOLS
) -> sc.CertifyResponse:
    A = as_square(np.asarray(req.matrix, dtype=float))
    b = as_vector(np.asarray(req.rhs, dtype=float))
    x = as_vector(np.asarray(req.candidate, dtype=float))
    spec = norm_spec_from(req.norm)
    problem = AveProblem(A, b)
    cond_req = sc.CondnumRequest(
        matrix=req.matrix, norm=req.norm, method=req.method, enum_limit=req.enum_limit
    )
    cond, note = compute_cond(A, spec, req.method, cond_req, tols)
    if not cond.applicable:
        return sc.CertifyResponse(
            n=A.shape[0],
            norm=norm_out(spec),
            method=cond.method.tag.value,
            kind=cond.kind.value,
            cond_value=None,
            residual_norm=None,
            abs_bound=None,
            rel_bound_upper=None,
            rel_bound_lower=None,
            note=note or cond.note,
        )
    report = certify_abs(problem, x, spec, cond, tols)
    rel_upper = rel_lower = None
    if vector_norm(b, spec) > tols.zero_rhs:
        rel = certify_rel(problem, x, spec, tols, cond=cond)
        rel_upper, rel_lower = rel.rel_bound_upper, rel.rel_bound_lower
    return sc.CertifyResponse(
        n=A.shape[0],
        norm=norm_out(spec),
        method=cond.method.tag.value,
        kind=cond.kind.value,
        cond_value=float(cond.value),
        residual_norm=float(report.residual_norm),
        abs_bound=float(report.abs_bound),
        rel_bound_upper=rel_upper,
        rel_bound_lower=rel_lower,
        note=cond.note,
    )


def handle_regularity(
    req: sc.RegularityRequest, tols: Tolerances = DEFAULT_TOLS
) -> sc.RegularityResponse:
    A = as_square(np.asarray(req.matrix, dtype=float))
    n = A.shape[0]
    method = req.method
    note = ""
    if method == "auto":
        method = "exact" if n <= min(req.enum_limit, tols.enum_max_n) else "sufficient"
    if method == "exact":
        report = regularity_exact(A, tols)
    elif method == "sufficient":
        report = regularity_sufficient(A, tols)
    elif method == "symmetric":
        try:
            report = regularity_symmetric(A, tols)
        except NotSymmetricError as exc:
            raise ValueError(str(exc)) from exc
    else:
        raise ValueError(f"unknown regularity method {req.method!r}")
    witness = None if report.witness is None else [float(v) for v in report.witness]
    return sc.RegularityResponse(
        n=n,
        method=report.method.value,
        verdict=report.verdict.value,
        witness=witness,
        note=note,
    )


def handle_solve(req: sc.SolveRequest, tols: Tolerances = DEFAULT_TOLS) -> sc.SolveResponse:
    A = as_square(np.asarray(req.matrix, dtype=float))
    b = as_vector(np.asarray(req.rhs, dtype=float))
    result = solve_exact(AveProblem(A, b), tols)
    return sc.SolveResponse(
        n=A.shape[0],
        count=len(result.solutions),
        solutions=[
            sc.SolutionOut(
                x=[float(v) for v in s.x],
                signs=[float(v) for v in s.signs],
                residual_norm_inf=float(s.residual_norm_inf),
            )
            for s in result.solutions
        ],
        singular_signs=[[float(v) for v in s] for s in result.singular_signs],
    )


def handle_lcp(req: sc.LcpRequest, tols: Tolerances = DEFAULT_TOLS) -> sc.LcpResponse:
    M = as_square(np.asarray(req.m_matrix, dtype=float))
    q = as_vector(np.asarray(req.q, dtype=float))
    spec = norm_spec_from(req.norm)
    lp = LcpProblem(M, q)
    bridge = lcp_to_ave(lp, tols)
    notes: list[str] = []
    n = lp.n

    from ..densecore import classify

    try:
        cls = classify(M, tols)
        is_p = cls.is_P_matrix
    except DimensionTooLargeError:
        cls = classify(M, tols, include_p=False)
        is_p = None
        notes.append("P-matrix test skipped: dimension exceeds the minor-enumeration cap")

    mm = lcp_cond_M_matrix(lp, spec, tols)
    hm = lcp_cond_H_matrix(lp, spec, tols)
    if not mm.applicable:
        notes.append(f"M-matrix formula: {mm.note}")
    if not hm.applicable:
        notes.append(f"H-matrix bound: {hm.note}")

    chen = chen_upper = enclosure = exact_val = None
    if is_p and n <= min(req.enum_limit, tols.enum_max_n):
        chen = chen_xiang_constant(lp, spec, tols)
    elif is_p is not None and not is_p:
        notes.append("pivot-maximum constant skipped: M is not a P-matrix")
    try:
        chen_upper = lcp_chen_upper(lp, spec, tols)
    except NotPMatrixError as exc:
        notes.append(f"comparison-inverse bound: {exc}")
    try:
        enclosure = lcp_inf_enclosure(lp, tols)
    except NotPMatrixError as exc:
        notes.append(f"inf-norm enclosure: {exc}")
    if n <= min(req.enum_limit, tols.enum_max_n):
        try:
            exact_val = cn.cond_exact(bridge.ave.A, spec, tols).value
        except NotRegularError:
            notes.append("transform shift family is not regular")
    return sc.LcpResponse(
        n=n,
        norm=norm_out(spec),
        ave_matrix=[[float(v) for v in row] for row in bridge.ave.A],
        ave_rhs=[float(v) for v in bridge.ave.b],
        is_m_matrix=cls.is_M_matrix,
        is_h_matrix=cls.is_H_matrix,
        is_p_matrix=is_p,
        m_matrix_value=_finite_or_none(mm.value) if mm.applicable else None,
        h_matrix_bound=_finite_or_none(hm.value) if hm.applicable else None,
        chen_xiang=chen,
        chen_upper_bound=chen_upper,
        inf_enclosure_bound=enclosure,
        transform_cond_exact=exact_val,
        notes=notes,
    )


def handle_selftest(tols: Tolerances = DEFAULT_TOLS) -> sc.SelftestResponse:
    checks = run_selftest(tols)
    return sc.SelftestResponse(
        passed=all(c.passed for c in checks),
        checks=[
            sc.SelftestCheck(
                name=c.name,
                passed=c.passed,
                value=c.value,
                expected=c.expected,
                tolerance=c.tolerance,
            )
            for c in checks
        ],
    )
