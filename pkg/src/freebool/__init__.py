"""Exact free and Boolean probability transforms for *-distributions of one
non-selfadjoint variable, with eta-diagonal and R-diagonal parametrizations,
KMS identities and free multiplicative convolution of R-diagonal laws."""

from .diagonal import (
    DeterminingPair,
    DiagonalDistribution,
    ProductTransforms,
    check_eta_diagonal_moments,
    is_infdiv_r_diagonal,
    kms_check,
    kms_tau,
    make_eta_diagonal,
    make_r_diagonal,
    phi,
    product_eta,
    product_r,
    psi,
    bbp_product_transforms,
)
from .gaussian import GaussianRational, I, coeff
from .multconv import CompositionUnavailable, boxtimes_determining
from .partitions import ORACLE_CAP, OracleCapExceeded, SetPartition
from .series import NcSeries, OrderMismatch, PowerSeries
from .transforms import (
    AtomicMeasure,
    FreePoissonParams,
    StarDistribution,
    bbp,
    bbp1,
    boolean_convolve,
    complexify,
    convolution_power,
    decomplexify,
    eta_from_moments,
    free_convolve,
    free_mult_convolve,
    in_E_plus_truncated,
    moments_from_eta,
    moments_from_r,
    r_from_moments,
    s_transform,
    stieltjes_truncated,
)
from .verdict import Verdict

__version__ = "0.1.0"
