"""avecond: condition numbers and certified error bounds for Ax - b = |x|,
with a bridge from linear complementarity problems."""

from . import errors
from .avesolve import (
    AveProblem,
    AveSolution,
    AveSolveResult,
    concave_feasible,
    picard_iterate,
    residual,
    solve_exact,
)
from .condnum import (
    BoundMethod,
    CondResult,
    Kind,
    Tag,
    cond_coldd_1,
    cond_diagdom2,
    cond_enclosure_inf,
    cond_exact,
    cond_hmatrix_inf,
    cond_inv_nonneg_inf,
    cond_neumann_upper,
    cond_relative,
    cond_scaled1_gamma,
    cond_scaled_dd,
    cond_sigma_upper,
    cond_symmetric2,
    max_shifted_norm,
)
from .config import DEFAULT_TOLS, Tolerances
from .densecore import (
    MatrixClass,
    NormSpec,
    classify,
    comparison_matrix,
    induced_norm,
    invert,
    sigma_min,
    spectral_radius_nonneg,
    vector_norm,
)
from .errorbound import (
    CertReport,
    WeakSharpResult,
    certify_abs,
    certify_rel,
    stability_gap,
    weak_sharp_check,
)
from .lcpbridge import (
    LcpAveBridge,
    LcpProblem,
    LcpSolution,
    ave_to_lcp_solution,
    chen_xiang_constant,
    lcp_chen_upper,
    lcp_cond_H_matrix,
    lcp_cond_M_matrix,
    lcp_inf_enclosure,
    lcp_to_ave,
    natural_residual,
    pmatrix_equivalence_check,
)
from .regularity import (
    RegularityMethod,
    RegularityReport,
    Verdict,
    regularity_exact,
    regularity_sufficient,
    regularity_symmetric,
)

__version__ = "0.1.0"
