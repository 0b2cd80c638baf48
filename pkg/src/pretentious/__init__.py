"""Pretentious-distance machinery for automorphic L-functions.

Coefficient data for representations and Rankin-Selberg pairs, truncated Euler
sums for -L'/L, the distance D_sigma and the D*_sigma quantity, archimedean and
conductor bounds, the Hadamard inequality against zero tables, and the
zero-free-region constants ledger.
"""

from .arithmetic import NumberField, PlaceKind, character_group, kronecker_symbol, omega, prime_ideals_up_to
from .errors import (
    CoverageError,
    DivergenceError,
    DomainError,
    NoContradictionError,
    PoleError,
    PretentiousError,
    ZeroTableParseError,
)
from .eulersum import TruncatedValue, log_derivative_rs, log_derivative_standard
from .metric import MetricPoint, distance, dstar_sq
from .repdata import (
    AutomorphicRepData,
    RankinSelbergPair,
    contragredient,
    from_character,
    rankin_selberg,
    trivial_rep,
)
from .zfr import case_ledger, region_width

__version__ = "0.1.0"
