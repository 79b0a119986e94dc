"""Numerical laboratory for homogeneous symmetric bivariate means.

Build means from a small expression language, construct invariant means by
Gauss iteration, estimate lower/upper orders at zero and check the
invariance-order law ``ord(K) = ord(N) / (1 - ord(M) + ord(N))``.
"""

from .errors import DomainError, MeanError, NonConvergence, ParseError
from .evaluate import LogPoint, eval_log, eval_mean, probe_points
from .expr import (
    Compose, Envelope, EnvelopeSpec, Gini, Invariant, LogMean, MaxMean, MinMean,
    format_mean, parse_mean,
)
from .grid import GridSpec
from .invariant import (
    ContractionReport, IterationResult, contraction_check, gauss_iterate,
    gauss_iterate_log, invariance_residual, ratio_bound,
)
from .orders import (
    OrderEstimate, PowerGrowthReport, classify_power_growth, estimate_orders,
    known_order, monotonicity_check, order_at_infinity, sample_phi,
)
from .theory import (
    OrderTuple, cor28_bounds, dl_leq, emain_bounds, gini_order,
    invariant_order_formula, pales_leq, pales_m, pales_mu, witkowski_condition,
)
from .verify import VerificationReport, verify_invariance_order

__version__ = "0.1.0"
