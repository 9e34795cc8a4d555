"""Built-in regression checks on the worked reference instances.

Covers the 2x2 singular-value identities, the rotation-times-diagonal
family where the sigma-based bound is arbitrarily loose while the true
2-norm condition number stays below 6, and the complementarity bridge
instance whose transform has condition number one half by three routes.
"""

from dataclasses import dataclass

import numpy as np

from .condnum import cond_exact, cond_sigma_upper
from .config import DEFAULT_TOLS, Tolerances
from .densecore import NormSpec, sigma_min
from .lcpbridge import LcpProblem, lcp_cond_H_matrix, lcp_cond_M_matrix, lcp_to_ave

__all__ = ["SelfCheck", "run_selftest"]


@dataclass
class SelfCheck:
    name: str
    passed: bool
    value: float
    expected: float
    tolerance: float


def _close(name: str, value: float, expected: float, tol: float) -> SelfCheck:
    return SelfCheck(name, bool(abs(value - expected) <= tol), float(value), expected, tol)


def _at_most(name: str, value: float, cap: float) -> SelfCheck:
    return SelfCheck(name, bool(value <= cap), float(value), cap, 0.0)


def run_selftest(tols: Tolerances = DEFAULT_TOLS) -> list[SelfCheck]:
    checks: list[SelfCheck] = []
    two = NormSpec.two()
    inf = NormSpec.inf()

    A = np.array([[2.0, 1.0], [-2.0, 1.0]])
    I = np.eye(2)
    E = np.diag([0.0, 1.0])
    checks.append(_close("sigma_min(A) = sqrt(2)", sigma_min(A), np.sqrt(2.0), 1e-8))
    checks.append(
        _close(
            "mean of sigma_min(A+I), sigma_min(A-I) = 1.541",
            0.5 * (sigma_min(A + I) + sigma_min(A - I)),
            1.541,
            5e-3,
        )
    )
    checks.append(
        _close(
            "mean of sigma_min(A+E), sigma_min(A-E) = 1.34",
            0.5 * (sigma_min(A + E) + sigma_min(A - E)),
            1.34,
            5e-3,
        )
    )

    rot = (np.sqrt(2.0) / 2.0) * np.array([[1.0, -1.0], [1.0, 1.0]])
    for eps in (0.1, 0.01, 0.001):
        B = rot @ np.diag([5.0, 1.0 + eps])
        checks.append(_at_most(f"c2 <= 6 at eps={eps}", cond_exact(B, two, tols).value, 6.0))
        checks.append(
            _close(
                f"sigma bound = 1/eps at eps={eps}",
                cond_sigma_upper(B, tols).value,
                1.0 / eps,
                1e-4 / eps,
            )
        )

    M = np.array([[1.0, -0.5], [-0.5, 1.0]])
    lp = LcpProblem(M, np.zeros(2))
    bridge = lcp_to_ave(lp, tols)
    target = np.array([[1.0, -4.0], [-4.0, 1.0]])
    checks.append(
        _close(
            "bridge matrix equals [[1,-4],[-4,1]]",
            float(np.abs(bridge.ave.A - target).max()),
            0.0,
            1e-12,
        )
    )
    enum_val = cond_exact(bridge.ave.A, inf, tols).value
    checks.append(_close("bridge c_inf by enumeration = 0.5", enum_val, 0.5, 1e-10))
    checks.append(
        _close(
            "bridge c_inf by M-matrix formula = 0.5",
            lcp_cond_M_matrix(lp, inf, tols).value,
            0.5,
            1e-10,
        )
    )
    checks.append(
        _close(
            "bridge c_inf by H-matrix formula = 0.5",
            lcp_cond_H_matrix(lp, inf, tols).value,
            0.5,
            1e-10,
        )
    )
    return checks
