"""Square-full integers: exact counts, variance statistics, and path diagnostics."""

__version__ = "0.1.0"

from .errors import (
    CapacityError,
    ConvergenceError,
    DomainError,
    EstimationError,
    SqfullError,
)
from .sieves import PrimeWindow, SieveTables, build_sieves, is_squarefree, mobius, primes_in_window
from .squarefull import (
    CountReport,
    SquareFullWindow,
    count_pairs_23,
    count_squarefull,
    d23,
    delta_23,
    delta_Q,
    f_of,
    is_squarefull,
    main_term_Q,
    r_of,
    r_sum,
    squarefull_in_window,
    squarefull_via_convolution,
)
from .constants import (
    ConstantCReport,
    ZetaValue,
    constant_c,
    euler_product_C,
    weight_integral,
    weight_W,
    zeta,
    zeta_real,
)
from .variance_short import (
    VarianceReport,
    divisor23_variance,
    exponent_fit,
    fourier_decay_check,
    h_err,
    hyperbola_psi_decomposition,
    main_diff,
    psi,
    psi_tilde,
    short_interval_variance,
)
from .variance_ap import (
    APVarianceReport,
    ResidueHistogram,
    a_ql_empirical,
    a_ql_estimate,
    ap_main_bracket,
    ap_variance,
    count_squarefull_ap,
    legendre,
    n2_count,
    residue_histogram,
    smallest_qnr,
)
from .paths import (
    HurstEstimate,
    PathSeries,
    hurst_estimate,
    prime_path,
    squarefull_path,
)
