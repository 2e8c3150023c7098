"""p-adic Hardy operators and weak/central Morrey norms on radial step functions."""

from .hardy import HardyParams, RadialHardyImage, dilation_covariance_check, hardy_apply, pointwise_upper_bound_check
from .norms import (
    NormKind,
    NormResult,
    NormSpec,
    SuperlevelGeometry,
    central_morrey_norm,
    lq_norm,
    norm,
    superlevel_geometry,
    weak_central_morrey_norm,
    weak_lq_norm,
    weak_norm_grid_oracle,
)
from .padic import (
    PAdicParams,
    WeightSpec,
    ball_measure,
    ball_weighted_measure,
    padic_norm,
    padic_valuation,
    sphere_measure,
    sphere_weighted_measure,
    vector_norm,
)
from .radial import (
    MassProfile,
    RadialStepFunction,
    RandomConfig,
    cumulative_mass,
    dilate,
    evaluate,
    l1_norm,
    random_function,
)
from .scalar import (
    DEFAULT_DIGITS,
    DivergenceError,
    DomainError,
    PowExpr,
    Scalar,
    geometric_tail_sum,
    parse_rational,
    pow_rational,
)
from .verification import (
    EndpointConfig,
    MorreyConfig,
    VerificationReport,
    endpoint_sharp_constant,
    sharpness_search,
    verify_endpoint,
    verify_morrey,
)

__version__ = "0.1.0"
