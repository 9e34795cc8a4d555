"""Certified a posteriori error bounds for candidate solutions.

The residual phi(x) = Ax - b - |x| times a condition number bounds the
distance to the true solution; the true solution itself is only ever taken
from the sign-enumeration oracle, never from an iterative method, so the
certificates are checked against an independent reference.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .avesolve import AveProblem, concave_feasible, residual, solve_exact
from .condnum import CondResult, Kind, cond_exact, cond_relative
from .config import DEFAULT_TOLS, Tolerances
from .densecore import NormSpec, as_square, as_vector, vector_norm
from .errors import ZeroRightHandSideError

__all__ = [
    "CertReport",
    "WeakSharpResult",
    "certify_abs",
    "certify_rel",
    "stability_gap",
    "weak_sharp_check",
]


@dataclass
class CertReport:
    abs_bound: float
    rel_bound_upper: float | None
    rel_bound_lower: float | None
    residual_norm: float
    cond_used: CondResult
    norm: NormSpec


def certify_abs(
    problem: AveProblem,
    x,
    spec: NormSpec,
    cond: CondResult,
    tols: Tolerances = DEFAULT_TOLS,
) -> CertReport:
    """Absolute bound cond.value * ||phi(x)||; guaranteed to dominate the
    true error whenever the shift family is regular and ``cond`` is exact
    or an upper bound for (A, spec)."""
    if cond.kind is Kind.NOT_APPLICABLE:
        raise ValueError(f"condition result is not applicable: {cond.note}")
    res_norm = vector_norm(residual(problem, x), spec)
    return CertReport(
        abs_bound=cond.value * res_norm,
        rel_bound_upper=None,
        rel_bound_lower=None,
        residual_norm=res_norm,
        cond_used=cond,
        norm=spec,
    )


def certify_rel(
    problem: AveProblem,
    x,
    spec: NormSpec,
    tols: Tolerances = DEFAULT_TOLS,
    cond: CondResult | None = None,
) -> CertReport:
    """Two-sided relative bounds via the relative condition number.

    ``(1/c*) ||phi||/||b|| <= ||x - x*||/||x*|| <= c* ||phi||/||b||``.
    ``cond`` may supply a precomputed condition number for (A, spec);
    the default is the exhaustive one.
    """
    b_norm = vector_norm(problem.b, spec)
    if b_norm <= tols.zero_rhs:
        raise ZeroRightHandSideError("relative bounds need a nonzero right-hand side")
    if cond is None:
        cond = cond_exact(problem.A, spec, tols)
    cstar = cond_relative(problem.A, spec, cond, tols)
    res_norm = vector_norm(residual(problem, x), spec)
    ratio = res_norm / b_norm
    return CertReport(
        abs_bound=cstar.value * res_norm,
        rel_bound_upper=cstar.value * ratio,
        rel_bound_lower=ratio / cstar.value,
        residual_norm=res_norm,
        cond_used=cstar,
        norm=spec,
    )


def stability_gap(
    A, b1, b2, spec: NormSpec, tols: Tolerances = DEFAULT_TOLS
) -> tuple[float, float]:
    """Distance between the solutions for two right-hand sides, with its
    certified Lipschitz bound cond * ||b1 - b2||.  Returns (gap, bound)."""
    A = as_square(A)
    b1 = as_vector(b1)
    b2 = as_vector(b2)
    cond = cond_exact(A, spec, tols)
    x1 = solve_exact(AveProblem(A, b1), tols).unique().x
    x2 = solve_exact(AveProblem(A, b2), tols).unique().x
    gap = vector_norm(x1 - x2, spec)
    bound = cond.value * vector_norm(b1 - b2, spec)
    if gap > bound + 1e-9:
        raise RuntimeError(
            f"stability bound violated: gap {gap:.12g} > bound {bound:.12g}"
        )
    return gap, bound


class WeakSharpResult(NamedTuple):
    ok: bool
    tested: int


def weak_sharp_check(
    problem: AveProblem,
    samples: int,
    seed: int = 0,
    tols: Tolerances = DEFAULT_TOLS,
) -> WeakSharpResult:
    """Sample the box x* +- 2||x*||_inf and verify the linear-growth
    inequality ||x - x*||_2 / c_2 <= e^T phi(x) on every feasible draw.

    Infeasible draws are discarded; ``tested`` reports how many feasible
    points were actually checked.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    x_star = solve_exact(problem, tols).unique().x
    c2 = cond_exact(problem.A, NormSpec.two(), tols).value
    radius = 2.0 * float(np.abs(x_star).max())
    ones = np.ones(problem.n)
    tested = 0
    ok = True
    for _ in range(samples):
        x = x_star + radius * rng.uniform(-1.0, 1.0, problem.n)
        if not concave_feasible(problem, x, tols):
            continue
        tested += 1
        lhs = float(np.linalg.norm(x - x_star)) / c2
        rhs = float(ones @ residual(problem, x))
        if lhs > rhs + 1e-9:
            ok = False
    return WeakSharpResult(ok, tested)
