"""Computable Serstnev probabilistic normed spaces at desk scale."""

from .distfn import (
    LevyDistance,
    StepDF,
    StepQuantile,
    df_eval,
    df_scale,
    is_proper,
    levy_condition,
    levy_metric,
    qf_add,
    qf_eval,
    qf_scale,
    quasi_inverse,
    unit_step,
)
from .triangle import TNormKind, tau_inf_conv, tau_sup_conv, tconorm_eval, tnorm_eval
from .pnspace import (
    Band,
    NormKind,
    PNSpace,
    SeminormFamily,
    WeightedNorm,
    product_space,
    seminorm_eval,
    single_band_space,
    validate_pn_axioms,
)
from .operators import (
    LinearOperator,
    bound_check,
    compose,
    functional_norm,
    graph_norm,
    norm_equivalence_constants,
    norm_profile,
    open_mapping_check,
    open_mapping_delta,
    operator_norm_exact,
    operator_norm_mc,
    uniform_bound,
)

__version__ = "0.1.0"
