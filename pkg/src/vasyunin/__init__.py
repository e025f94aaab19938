"""Exponentially-averaged Vasyunin formula: closed forms, quadrature oracles and
Nyman-Beurling distances."""

from vasyunin.special import (
    EULER_GAMMA,
    LOG_TWO_PI,
    C_CLOSED,
    ReducedRational,
    KernelValue,
    Constants,
    eval_kernel,
    kernel,
    frac_exp_mean,
    constant_C,
    chi_inner_rho,
    chi_inner_R,
)
from vasyunin.quadrature import (
    IntegralEstimate,
    BreakpointPlan,
    integrate_smooth_semiinf,
    integrate_piecewise,
    oracle_exp_inner,
    oracle_det_inner,
)
from vasyunin.cotangent import (
    CotangentSumReport,
    cot_at_reduced,
    plain_cot_sum,
    weighted_cot_sum,
    weighted_cot_sum_general,
    bettin_c,
    inv_cos_gap_sum,
    arctan_integral_closed,
)
from vasyunin.autocorrelation import (
    ClosedFormBreakdown,
    exp_inner_closed,
    exp_autocorr,
    det_inner_closed,
    I_closed,
    J_closed,
    reciprocity_g,
)
from vasyunin.gram import (
    GramSystem,
    DistanceReport,
    gram_entry,
    build_gram,
    nb_distance,
    distance_sequence,
)
from vasyunin.stochastic import (
    McEstimate,
    sample_exponential,
    mc_frac_exp_mean,
    mc_exp_inner,
)

__version__ = "0.1.0"
