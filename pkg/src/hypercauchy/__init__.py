"""Hyper-Cauchy laws, Cauchy-type solutions of higher-order Laplace equations,
their samplers, and a verification harness for the closed-form identities.

Set ``HYPERCAUCHY_DISABLE_NUMBA=1`` before import to use the pure-numpy
kernels.
"""

from ._kernels import BACKEND
from .distributions import (
    AsymCauchyParams,
    ComponentSpec,
    HyperCauchyParams,
    asym_cauchy_cdf,
    asym_cauchy_pdf,
    cauchy_cdf,
    cauchy_pdf,
    component_pdf,
    disturbance_g,
    find_modes,
    folded_pdf,
    hyper_cauchy_cdf,
    hyper_cauchy_cf,
    hyper_cauchy_pdf,
    hyper_cauchy_pdf_complex,
    hyper_cauchy_pdf_product,
    make_law,
    p6_pdf,
    third_order_cf,
    third_order_pdf,
)
from .errors import (
    BracketError,
    ConsistencyError,
    DomainError,
    HyperCauchyError,
    NumericError,
    RangeError,
    TruncationError,
)
from .numerics import (
    GridSpec,
    QuadratureResult,
    finite_difference,
    find_local_max,
    integrate_half_line,
    integrate_real_line,
    ks_statistic,
)
from .sampling import (
    RngState,
    SampleBatch,
    draw_batch,
    sample_asym_cauchy,
    sample_cauchy,
    sample_component_exact,
    sample_folded,
    sample_hyper_cauchy,
    sample_stable13,
    sample_symmetrized,
    sample_third_order,
)
from .special import (
    SeriesControl,
    StableParams,
    airy_ai,
    bessel_i,
    bessel_k_third,
    stable13_subordinator_pdf,
    stable_density_series,
    third_order_kernel,
)
from .verification import CheckReport, run_suite

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
