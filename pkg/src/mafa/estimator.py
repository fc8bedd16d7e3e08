"""scikit-learn style wrapper around the firefly search.

``fit`` takes a :class:`~mafa.problem.Scenario` (or its JSON dict) and
learns a weight vector and an antenna placement; ``predict`` maps angles
to beamforming gains of the learned design::

    >>> est = FireflyBeamformer(population=20, max_generations=100, random_state=0)
    >>> est.fit({"n_antennas": 4, "segment_length_wl": 4.0, "min_spacing_wl": 0.5,
    ...          "intended_deg": [60.0], "unintended_deg": [], "interference_threshold": 0.1})
    FireflyBeamformer(max_generations=100, population=20, random_state=0)
    >>> est.predict([60.0]).shape
    (1,)
"""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .array_model import gains
from .errors import InvalidArgumentError
from .firefly import FaConfig, run
from .problem import Candidate, Scenario, evaluate_feasibility, min_intended_gain
from .validation import check_angles


def _as_scenario(X):
    if isinstance(X, Scenario):
        return X
    if isinstance(X, dict):
        return Scenario.from_dict(X)
    raise InvalidArgumentError("X must be a Scenario or a scenario dict")


class FireflyBeamformer(BaseEstimator):
    """Jointly choose positions and receive weights for a movable array.

    Parameters mirror :class:`~mafa.firefly.FaConfig`; ``random_state``
    seeds the run (``None`` draws a fresh seed on every fit).

    Attributes
    ----------
    weights_ : ndarray of complex, shape (n_antennas,)
    positions_ : ndarray of float, shape (n_antennas,)
        Element positions in wavelengths.
    best_min_gain_ : float
    feasibility_ : FeasibilityReport
    trace_ : tuple of GenerationTrace
    n_evaluations_ : int
    scenario_ : Scenario
    """

    def __init__(self, population=40, max_generations=500, beta0=1.0, gamma=1.0, alpha0=0.07,
                 alpha_decay=0.989, penalty_schedule="n_squared", randomization="uniform",
                 position_noise_scale=1.0, random_state=None):
        self.population = population
        self.max_generations = max_generations
        self.beta0 = beta0
        self.gamma = gamma
        self.alpha0 = alpha0
        self.alpha_decay = alpha_decay
        self.penalty_schedule = penalty_schedule
        self.randomization = randomization
        self.position_noise_scale = position_noise_scale
        self.random_state = random_state

    def _config(self):
        seed = self.random_state
        if seed is None:
            seed = int(np.random.SeedSequence().generate_state(1, dtype=np.uint64)[0])
        elif isinstance(seed, np.random.Generator):
            seed = int(seed.integers(0, 2**63))
        return FaConfig(
            population=self.population,
            max_generations=self.max_generations,
            beta0=self.beta0,
            gamma=self.gamma,
            alpha0=self.alpha0,
            alpha_decay=self.alpha_decay,
            penalty_schedule=self.penalty_schedule,
            rng_seed=seed,
            randomization=self.randomization,
            position_noise_scale=self.position_noise_scale,
        )

    def fit(self, X, y=None):
        scenario = _as_scenario(X)
        result = run(scenario, self._config())
        self.scenario_ = scenario
        self.weights_ = np.array(result.best.w)
        self.positions_ = np.array(result.best.d)
        self.best_min_gain_ = result.best_min_gain
        self.feasibility_ = result.feasibility
        self.trace_ = result.trace
        self.n_evaluations_ = result.evaluations
        return self

    def predict(self, X):
        """Beamforming gain of the fitted design at each angle in ``X`` (degrees)."""
        check_is_fitted(self, "weights_")
        angles = check_angles(X, name="X", allow_empty=False)
        return gains(self.weights_, self.positions_, angles)

    def score(self, X=None, y=None):
        """Min intended gain of the fitted design on scenario ``X`` (default: the fit scenario)."""
        check_is_fitted(self, "weights_")
        scenario = self.scenario_ if X is None else _as_scenario(X)
        return min_intended_gain(Candidate(w=self.weights_, d=self.positions_), scenario)

    def audit(self, X=None):
        check_is_fitted(self, "weights_")
        scenario = self.scenario_ if X is None else _as_scenario(X)
        return evaluate_feasibility(Candidate(w=self.weights_, d=self.positions_), scenario)
