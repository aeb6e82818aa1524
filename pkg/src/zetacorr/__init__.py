"""Pair correlation of zeta zeros and of ordinate sums: numerical experiments."""

from .exceptions import (
    ConfigError,
    ConvergenceError,
    CoverageError,
    DomainError,
    MemoryBudgetError,
    MissedZeroError,
    MonotonicityError,
    ParseError,
    PoleError,
    QuadratureDisagreement,
    StanzaError,
    ZetacorrError,
)
from .reports import AsymptoticReport, make_report
from .weights import WeightParams, general_weight, lorentzian_kernel, montgomery_weight
from .zeros import ZeroCatalog, find_zeros, ingest_zeros, load_zeros, synthetic_catalog

__version__ = "0.1.0"
