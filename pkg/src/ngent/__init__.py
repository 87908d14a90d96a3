"""Non-Gaussian two-mode entangled number states and moment-based separability tests."""

from ._backend import BACKEND
from .closed_form import analytic_moments, cross_check
from .errors import MissingMomentError, OrderOverflowError, ParameterError, SerializationError
from .fock_core import (
    CovarianceMatrix,
    FockState,
    MomentTable,
    covariance_matrix,
    inner_product,
    moment,
    moment_table,
    partial_transpose,
    partial_transpose_moment,
)
from .operators import LadderMonomial, LadderPoly
from .states import BSN, TMSN, build_bsn, build_state, build_tms_vacuum, build_tmsn, schmidt_profile
from .survey import enumerate_blind_pairs, bsn_hz_region, tmsn_region
from .witnesses import (
    evaluate_table,
    full_report,
    hz_criterion,
    simon_criterion,
    sun_condition_A,
    sun_condition_B,
    sun_condition_fourth,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BSN",
    "CovarianceMatrix",
    "FockState",
    "LadderMonomial",
    "LadderPoly",
    "MissingMomentError",
    "MomentTable",
    "OrderOverflowError",
    "ParameterError",
    "SerializationError",
    "TMSN",
    "__version__",
    "analytic_moments",
    "bsn_hz_region",
    "build_bsn",
    "build_state",
    "build_tms_vacuum",
    "build_tmsn",
    "covariance_matrix",
    "cross_check",
    "enumerate_blind_pairs",
    "evaluate_table",
    "full_report",
    "hz_criterion",
    "inner_product",
    "moment",
    "moment_table",
    "partial_transpose",
    "partial_transpose_moment",
    "schmidt_profile",
    "simon_criterion",
    "sun_condition_A",
    "sun_condition_B",
    "sun_condition_fourth",
    "tmsn_region",
]
