"""Hilbert projective metric, Birkhoff contraction, and simplex geometry."""

from .core import (
    ExtendedDistance,
    INFINITE,
    LogDensityVector,
    PositiveVector,
    SimplexPoint,
    beta,
    comparable,
    hilbert_distance,
    hilbert_from_log_densities,
    log_beta,
    normalize,
    t_distance,
    theta_seminorm,
)
from .contraction import (
    ContractionReport,
    GridKernel,
    MarkovRun,
    MarkovStep,
    NonnegMatrix,
    birkhoff_phi,
    birkhoff_tau,
    grid_kernel_phi,
    grid_kernel_tau,
    kernel_apply,
    markov_converge,
    projective_diameter,
    verify_contraction,
)
from .simplex import (
    BallPolytope,
    RenderStyle,
    ThetaVector,
    View,
    ball_contains,
    ball_vertices,
    hilbert_via_theta,
    render_svg,
    theta_chart,
    theta_inverse,
    tile,
)
from .bounds import (
    BoundReport,
    ConvexFunctionSpec,
    F_CHI2,
    F_HELLINGER,
    F_KL,
    F_TV_HALF,
    atar_zeitouni_bound,
    f_divergence,
    f_divergence_envelope,
    kl_divergence,
    moment_gap_bound,
    sharpness_witness,
    subset_sup_bound,
    t_upper_from_tv,
    tv_distance,
    tv_from_t_bound,
    vertex_l1_bound,
    w1_bound_from_h,
    w1_exact_1d,
)
from .errors import (
    CoordinateRangeError,
    DimensionError,
    DomainError,
    HilbertConeError,
    UnsupportedDimensionError,
    ValidationError,
)

__version__ = "0.1.0"
