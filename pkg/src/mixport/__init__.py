from .config import set_warnings
from .core import simulate, help
from .exceptions import (
    MixportError,
    NotHermitianError,
    DimensionMismatchError,
    InvalidStateError,
    NotBipartiteError,
    WrongShapeError,
    InvalidParamsError,
    OutOfRangeError,
    DegenerateOutcomeError,
    ChannelSpecError,
    ConfigError,
    MixportWarning,
    ChannelRangeWarning,
    DegenerateOutcomeWarning,
)
from .density import DensityMatrix, QubitState, partial_trace, partial_transpose
from .channels import ChannelSpec, build, parse, catalog, werner_to_mems_p1, mems_p1_to_werner
from .teleport import BellOutcome, TeleportOutcome, TeleportRun, run
from .entanglement import concurrence, min_pt_eigenvalue, linear_entropy
from .metrics import hs_distance_sq, closed_form, crossing_y2, werner_average_distortion, sweep
from .blockprops import PropertyReport, check_p1, check_p2, check_p3, run_suite
from .serializer import ReportSerializer, dumps

__all__ = [
    "simulate", "help", "set_warnings",
    "MixportError", "NotHermitianError", "DimensionMismatchError", "InvalidStateError",
    "NotBipartiteError", "WrongShapeError", "InvalidParamsError", "OutOfRangeError",
    "DegenerateOutcomeError", "ChannelSpecError", "ConfigError",
    "MixportWarning", "ChannelRangeWarning", "DegenerateOutcomeWarning",
    "DensityMatrix", "QubitState", "partial_trace", "partial_transpose",
    "ChannelSpec", "build", "parse", "catalog", "werner_to_mems_p1", "mems_p1_to_werner",
    "BellOutcome", "TeleportOutcome", "TeleportRun", "run",
    "concurrence", "min_pt_eigenvalue", "linear_entropy",
    "hs_distance_sq", "closed_form", "crossing_y2", "werner_average_distortion", "sweep",
    "PropertyReport", "check_p1", "check_p2", "check_p3", "run_suite",
    "ReportSerializer", "dumps",
]
