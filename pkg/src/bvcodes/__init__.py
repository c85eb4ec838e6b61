"""Exact rational-polynomial Cauchy codes for bounded-variation functions.

A function of bounded variation is represented by a finite prefix of
rational polynomials converging in L1 at rate 2^-k together with a rational
bound on every entry's variation; all invariants, error bounds and
selection certificates are decided in exact rational arithmetic.
"""

__version__ = "0.1.0"

from .codes import (
    BVCode,
    L1Code,
    ModulusFn,
    NormInterval,
    bvcode_from_modulus,
    bvcode_from_poly,
    bvcode_linear_comb,
    bvcode_new,
    bvcode_norm_l1,
    bvcode_reindex,
    bvcode_step,
    l1code_new,
)
from .dual import (
    DualInterval,
    Pi01Gadget,
    TestFn,
    cantor_sum,
    decode_pi01,
    dual_eval_c0,
    jordan_poly,
    reversal_gadget,
)
from .errors import (
    BoundaryViolation,
    BVCodesError,
    DepthExhausted,
    DimensionTooSmall,
    GapTooSmall,
    GridTooCoarse,
    HypothesisViolation,
    NotAGadgetCode,
    PrecisionExhausted,
    ProjectionBudgetExceeded,
    RateViolation,
    VariationViolation,
    ZeroPolynomial,
)
from .mollify import (
    Bump,
    IndicatorApproximation,
    MollifyCertificate,
    ScaledBump,
    bump,
    mollify_code,
    mollify_poly,
    mollify_sup_bounds,
    project_to_poly,
    scaled_bump,
    smooth_indicator,
)
from .piecewise import (
    PiecewisePoly,
    pw_integral_abs,
    pw_integral_abs_le,
    pw_sup_bound,
    pw_variation,
)
from .poly import (
    Poly,
    RootBoxes,
    integral_abs,
    integral_abs_info,
    integral_abs_le,
    integral_abs_upper,
    isolate_roots,
    poly_antiderivative,
    poly_derivative,
    poly_eval,
    poly_variation,
    poly_variation_le,
    poly_variation_upper,
)
from .selection import (
    EquiFamily,
    FinSeq,
    HellyResult,
    HSTInstance,
    ProductPoint,
    RateCertificate,
    SelectionCertificate,
    aa_diagonal_select,
    bw_product_select,
    bw_select,
    bw_to_hst_instance,
    equi_family,
    helly_postprocess,
    helly_select,
    hst_to_bw_instance,
    verify_uniform_contract,
)
