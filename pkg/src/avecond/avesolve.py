"""Exact solution of Ax - b = |x| by sign-pattern enumeration.

On the orthant where sign(x) = s the equation is linear:
(A - diag(s)) x = b.  Enumerating all 2^n patterns and keeping the
sign-consistent roots yields every solution, which makes this the test
oracle for everything built on top.  A Picard iteration is included only
to manufacture realistic approximate iterates for certification tests.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from ._enum import shifted_batch, sign_chunks
from .config import DEFAULT_TOLS, Tolerances
from .densecore import _lu, as_square, as_vector, norm_inf
from .errors import (
    DimensionTooLargeError,
    MultipleSolutionsError,
    NoSolutionError,
)

__all__ = [
    "AveProblem",
    "AveSolution",
    "AveSolveResult",
    "residual",
    "solve_exact",
    "concave_feasible",
    "picard_iterate",
]


@dataclass
class AveProblem:
    """An instance (A, b) of Ax - b = |x|."""

    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        self.A = as_square(self.A)
        self.b = as_vector(self.b)
        if self.b.size != self.A.shape[0]:
            raise ValueError("right-hand side length must match the matrix dimension")

    @property
    def n(self) -> int:
        return self.A.shape[0]


@dataclass
class AveSolution:
    x: np.ndarray
    signs: np.ndarray
    residual_norm_inf: float


@dataclass
class AveSolveResult:
    """All sign-consistent solutions, plus the sign patterns whose linear
    system was (numerically) singular and therefore not searchable."""

    solutions: list[AveSolution] = field(default_factory=list)
    singular_signs: list[np.ndarray] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.solutions)

    def unique(self) -> AveSolution:
        if not self.solutions:
            raise NoSolutionError("no sign pattern admits a consistent solution")
        if len(self.solutions) > 1:
            raise MultipleSolutionsError(
                f"{len(self.solutions)} distinct solutions found",
                solutions=self.solutions,
            )
        return self.solutions[0]


def residual(problem: AveProblem, x) -> np.ndarray:
    """phi(x) = Ax - b - |x|; zero exactly at solutions."""
    x = as_vector(x)
    return problem.A @ x - problem.b - np.abs(x)


def solve_exact(problem: AveProblem, tols: Tolerances = DEFAULT_TOLS) -> AveSolveResult:
    """Enumerate sign patterns in fixed order and collect all solutions.

    A component equal to zero is consistent with either sign, so the slack
    ``s_i x_i >= -sign_slack`` accepts it under both; duplicates that differ
    only in the sign label are merged by x-value.
    """
    A, b, n = problem.A, problem.b, problem.n
    if n > tols.enum_max_n:
        raise DimensionTooLargeError(f"sign enumeration capped at n <= {tols.enum_max_n}")
    det_thr = tols.det_rel * (norm_inf(A) + 1.0) ** n
    result = AveSolveResult()
    for S in sign_chunks(n):
        mats = shifted_batch(A, S)
        dets = np.linalg.det(mats)
        ok = np.abs(dets) > det_thr
        for s in S[~ok]:
            result.singular_signs.append(s.copy())
        if not ok.any():
            continue
        mats_ok, signs_ok = mats[ok], S[ok]
        rhs = np.broadcast_to(b, (mats_ok.shape[0], n))
        try:
            X = np.linalg.solve(mats_ok, rhs[..., None])[..., 0]
            # one step of iterative refinement keeps residuals near machine eps
            R = rhs - np.einsum("mij,mj->mi", mats_ok, X)
            X = X + np.linalg.solve(mats_ok, R[..., None])[..., 0]
        except np.linalg.LinAlgError:
            X = np.stack([np.linalg.lstsq(M, b, rcond=None)[0] for M in mats_ok])
        consistent = (signs_ok * X >= -tols.sign_slack).all(axis=1)
        for s, x in zip(signs_ok[consistent], X[consistent]):
            if any(np.abs(x - sol.x).max() < tols.dedup_abs for sol in result.solutions):
                continue
            r = residual(problem, x)
            result.solutions.append(AveSolution(x, s.copy(), norm_inf(r)))
    return result


def concave_feasible(problem: AveProblem, x, tols: Tolerances = DEFAULT_TOLS) -> bool:
    """Feasibility for the linear relaxation (A+I)x >= b, (A-I)x >= b."""
    x = as_vector(x)
    Ax = problem.A @ x
    slack = tols.feasible_slack
    return bool(
        (Ax + x >= problem.b - slack).all() and (Ax - x >= problem.b - slack).all()
    )


def picard_iterate(
    problem: AveProblem,
    x0,
    max_iter: int,
    tols: Tolerances = DEFAULT_TOLS,
) -> np.ndarray:
    """Fixed-point iteration x <- A^{-1}(|x| + b).

    Contracts whenever ||A^{-1}|| < 1; used to generate imperfect iterates,
    not as a production solver.  Returns the iterate after ``max_iter``
    steps or once consecutive iterates differ by less than ``picard_step``.
    """
    x = as_vector(x0).copy()
    lu_piv = _lu(problem.A, tols)
    for _ in range(max_iter):
        x_next = scipy.linalg.lu_solve(lu_piv, np.abs(x) + problem.b, check_finite=False)
        if norm_inf(x_next - x) < tols.picard_step:
            return x_next
        x = x_next
    return x
