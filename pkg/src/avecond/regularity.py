"""Regularity of the diagonal-shift family {A - diag(d) : ||d||_inf <= 1}.

Regularity (every member nonsingular) is exactly the condition under which
the equation ``Ax - b = |x|`` has one solution for every b.  The family is
checked either exhaustively through its 2^n vertex determinants or via two
cheap sufficient conditions.
"""

import enum
from dataclasses import dataclass

import numpy as np

from ._enum import shifted_batch, sign_chunks
from .config import DEFAULT_TOLS, Tolerances
from .densecore import (
    as_square,
    invert,
    norm_inf,
    sigma_min,
    spectral_radius_nonneg,
)
from .errors import DimensionTooLargeError, NotSymmetricError

__all__ = [
    "Verdict",
    "RegularityMethod",
    "RegularityReport",
    "regularity_exact",
    "regularity_sufficient",
    "regularity_symmetric",
]


class Verdict(str, enum.Enum):
    REGULAR = "regular"
    NOT_REGULAR = "not_regular"
    UNKNOWN = "unknown"


class RegularityMethod(str, enum.Enum):
    VERTEX_DETERMINANT = "vertex_determinant"
    SIGMA_MIN = "sigma_min"
    SPECTRAL_RADIUS_INVERSE = "spectral_radius_inverse"
    SYMMETRIC_EIGEN = "symmetric_eigen"


@dataclass
class RegularityReport:
    verdict: Verdict
    method: RegularityMethod
    witness: np.ndarray | None = None


def regularity_exact(A, tols: Tolerances = DEFAULT_TOLS) -> RegularityReport:
    """Decide regularity by checking all 2^n vertex determinants.

    Regular iff every det(A - diag(d)), |d| = e, clears the scaled zero
    threshold and all dets share one sign.  The witness on failure is the
    first vertex (in enumeration order) whose determinant vanishes, or
    failing that the first one whose sign disagrees with the leading
    vertex.
    """
    A = as_square(A)
    n = A.shape[0]
    if n > tols.enum_max_n:
        raise DimensionTooLargeError(f"vertex enumeration capped at n <= {tols.enum_max_n}")
    thr = tols.det_rel * norm_inf(A) ** n
    ref_sign = 0.0
    flip_witness = None
    for D in sign_chunks(n):
        dets = np.linalg.det(shifted_batch(A, D))
        near_zero = np.abs(dets) <= thr
        if near_zero.any():
            w = D[int(np.argmax(near_zero))]
            return RegularityReport(Verdict.NOT_REGULAR, RegularityMethod.VERTEX_DETERMINANT, w)
        if ref_sign == 0.0:
            ref_sign = np.sign(dets[0])
        mismatch = np.sign(dets) != ref_sign
        if mismatch.any() and flip_witness is None:
            flip_witness = D[int(np.argmax(mismatch))].copy()
    if flip_witness is not None:
        return RegularityReport(
            Verdict.NOT_REGULAR, RegularityMethod.VERTEX_DETERMINANT, flip_witness
        )
    return RegularityReport(Verdict.REGULAR, RegularityMethod.VERTEX_DETERMINANT)


def regularity_sufficient(A, tols: Tolerances = DEFAULT_TOLS) -> RegularityReport:
    """Cheap one-sided tests: sigma_min(A) > 1 or rho(|A^-1|) < 1.

    Either condition certifies regularity; when neither fires the verdict
    is Unknown (never NotRegular).  Inversion failures propagate as
    SingularMatrixError.
    """
    A = as_square(A)
    if sigma_min(A) > 1.0 + tols.strict_margin:
        return RegularityReport(Verdict.REGULAR, RegularityMethod.SIGMA_MIN)
    rho = spectral_radius_nonneg(np.abs(invert(A, tols)), tols).value
    if rho < 1.0 - tols.strict_margin:
        return RegularityReport(Verdict.REGULAR, RegularityMethod.SPECTRAL_RADIUS_INVERSE)
    return RegularityReport(Verdict.UNKNOWN, RegularityMethod.SPECTRAL_RADIUS_INVERSE)


def regularity_symmetric(A, tols: Tolerances = DEFAULT_TOLS) -> RegularityReport:
    """Exact criterion for symmetric A: every eigenvalue exceeds 1 in magnitude.

    On failure the witness is the sign pattern of the eigenvector whose
    eigenvalue sits inside [-1, 1].
    """
    A = as_square(A)
    if norm_inf(A - A.T) > tols.symmetry_abs:
        raise NotSymmetricError("regularity_symmetric requires a symmetric matrix")
    lam, vecs = np.linalg.eigh(A)
    k = int(np.argmin(np.abs(lam)))
    if abs(lam[k]) > 1.0 + tols.strict_margin:
        return RegularityReport(Verdict.REGULAR, RegularityMethod.SYMMETRIC_EIGEN)
    witness = np.where(vecs[:, k] >= 0.0, 1.0, -1.0)
    return RegularityReport(Verdict.NOT_REGULAR, RegularityMethod.SYMMETRIC_EIGEN, witness)
