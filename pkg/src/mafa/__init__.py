"""Joint position and beamforming design for movable antenna arrays."""

from .array_model import beamforming_gain, pattern_sweep, steering_vector
from .errors import (
    InvalidArgumentError,
    MafaError,
    NoSolutionError,
    NumericFailureError,
    UnsupportedSizeError,
)
from .firefly import FaConfig, RunResult, count_operations, initialize_population, move_firefly, run
from .problem import (
    Candidate,
    FeasibilityReport,
    PenaltyWeights,
    Scenario,
    brightness,
    evaluate_feasibility,
    min_intended_gain,
    penalty,
)

__version__ = "0.1.0"
