"""Centralized numerical tolerances.

Every routine that makes a tolerance-dependent decision takes a
:class:`Tolerances` record (defaulting to :data:`DEFAULT_TOLS`) so test
suites can tighten or loosen the whole artifact uniformly.
"""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    # factorization / inversion
    pivot_rel: float = 1e-12          # singularity: |pivot| <= pivot_rel * ||A||_inf
    inverse_residual_rel: float = 1e-10

    # spectra
    power_tol: float = 1e-12          # Rayleigh-quotient stagnation threshold
    power_max_iter: int = 10_000

    # classification
    nonneg_slack: float = 1e-12       # entrywise nonnegativity slack
    minor_min: float = 1e-12          # principal minor counted positive above this
    symmetry_abs: float = 1e-12       # ||A - A^T||_inf for symmetry
    pmatrix_max_n: int = 12

    # exhaustive enumeration
    det_rel: float = 1e-12            # vertex determinant zero test, scaled by ||A||_inf^n
    enum_max_n: int = 20

    # strict inequalities in applicability gates
    strict_margin: float = 1e-10

    # sign-pattern solver
    sign_slack: float = 1e-12         # s_i * x_i >= -sign_slack
    dedup_abs: float = 1e-10          # solutions closer than this coincide

    # iterations
    picard_step: float = 1e-14
    bisect_tol: float = 1e-10

    # feasibility / certification
    feasible_slack: float = 1e-10
    zero_rhs: float = 1e-14

    # route cross-checks
    route_agree_rel: float = 1e-8

    def scaled(self, factor: float) -> "Tolerances":
        """Uniformly rescale every float tolerance (caps stay fixed)."""
        updates = {
            name: getattr(self, name) * factor
            for name in (
                "pivot_rel", "inverse_residual_rel", "power_tol", "nonneg_slack",
                "minor_min", "symmetry_abs", "det_rel", "strict_margin",
                "sign_slack", "dedup_abs", "picard_step", "bisect_tol",
                "feasible_slack", "zero_rhs", "route_agree_rel",
            )
        }
        return replace(self, **updates)


DEFAULT_TOLS = Tolerances()
