"""Firefly search over weights and positions of a movable array.

A firefly is a pair ``(w, d)``. Each generation, every firefly ``j`` is
compared against every ``k``; when ``k`` is brighter, ``j`` moves toward it
with attractiveness ``beta0 * exp(-gamma * r**2)`` (computed separately for
the weight and position parts) plus a random step scaled by
``alpha0 * alpha_decay**n``. Penalty weights grow with the generation
index, by default as ``n**2``.
"""

import csv
import math
import numbers
from dataclasses import asdict, dataclass

import numpy as np

from . import _kernels
from .errors import InvalidArgumentError, NumericFailureError
from .problem import Candidate, PenaltyWeights, Scenario, evaluate_feasibility, min_intended_gain
from .validation import check_int, check_positive

TRACE_COLUMNS = ("generation", "best_brightness", "best_min_gain", "best_feasible", "alpha", "penalty_weight")

_RANDOMIZATION = {"uniform": "uniform", "uniform_centered": "uniform", "gaussian": "gaussian"}
_CONFIG_KEYS = (
    "population", "max_generations", "beta0", "gamma", "alpha0", "alpha_decay",
    "penalty_schedule", "rng_seed", "randomization", "position_noise_scale",
)
_MAX_INIT_ATTEMPTS = 1000


@dataclass(frozen=True)
class FaConfig:
    """Hyperparameters of one firefly run.

    ``penalty_schedule`` is either ``"n_squared"`` or a fixed non-negative
    number used for every generation. ``position_noise_scale`` multiplies
    the random position step (in wavelengths).
    """

    population: int = 40
    max_generations: int = 500
    beta0: float = 1.0
    gamma: float = 1.0
    alpha0: float = 0.07
    alpha_decay: float = 0.989
    penalty_schedule: object = "n_squared"
    rng_seed: int = 0
    randomization: str = "uniform"
    position_noise_scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "population", check_int(self.population, "population", 2))
        object.__setattr__(self, "max_generations", check_int(self.max_generations, "max_generations", 1))
        object.__setattr__(self, "beta0", check_positive(self.beta0, "beta0"))
        object.__setattr__(self, "gamma", check_positive(self.gamma, "gamma"))
        alpha0 = check_positive(self.alpha0, "alpha0", strict=False)
        if alpha0 > 1:
            raise InvalidArgumentError(f"alpha0 must lie in [0, 1], got {alpha0}")
        object.__setattr__(self, "alpha0", alpha0)
        decay = check_positive(self.alpha_decay, "alpha_decay")
        if decay > 1:
            raise InvalidArgumentError(f"alpha_decay must lie in (0, 1], got {decay}")
        object.__setattr__(self, "alpha_decay", decay)
        schedule = self.penalty_schedule
        if schedule != "n_squared":
            if isinstance(schedule, str):
                raise InvalidArgumentError(
                    f"penalty_schedule must be 'n_squared' or a number, got {schedule!r}"
                )
            schedule = check_positive(schedule, "penalty_schedule", strict=False)
        object.__setattr__(self, "penalty_schedule", schedule)
        if isinstance(self.rng_seed, bool) or not isinstance(self.rng_seed, numbers.Integral):
            raise InvalidArgumentError(f"rng_seed must be an integer, got {self.rng_seed!r}")
        if not 0 <= int(self.rng_seed) < 2**64:
            raise InvalidArgumentError("rng_seed must be a non-negative 64-bit integer")
        object.__setattr__(self, "rng_seed", int(self.rng_seed))
        if self.randomization not in _RANDOMIZATION:
            raise InvalidArgumentError(
                f"randomization must be 'uniform' or 'gaussian', got {self.randomization!r}"
            )
        object.__setattr__(self, "randomization", _RANDOMIZATION[self.randomization])
        object.__setattr__(
            self, "position_noise_scale",
            check_positive(self.position_noise_scale, "position_noise_scale", strict=False),
        )

    def alpha(self, n):
        """Randomization factor at generation ``n``."""
        return self.alpha0 * self.alpha_decay**n

    def penalty_weight(self, n):
        """Common penalty coefficient at generation ``n``."""
        if self.penalty_schedule == "n_squared":
            return float(n * n)
        return float(self.penalty_schedule)

    def replace(self, **changes):
        params = asdict(self)
        params.update(changes)
        return FaConfig(**params)

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise InvalidArgumentError("config must be a JSON object")
        unknown = sorted(set(data) - set(_CONFIG_KEYS))
        if unknown:
            raise InvalidArgumentError(f"config has unknown key '{unknown[0]}'")
        try:
            return cls(**data)
        except InvalidArgumentError as exc:
            msg = str(exc)
            key = next((k for k in _CONFIG_KEYS if msg.startswith(k)), None)
            if key is None:
                raise
            raise InvalidArgumentError(f"config key '{key}': {msg}") from None


@dataclass(frozen=True)
class GenerationTrace:
    generation: int
    best_brightness: float
    best_min_gain: float
    best_feasible: bool
    alpha: float
    penalty_weight: float


@dataclass(frozen=True)
class RunResult:
    """Outcome of :func:`run`. ``best`` is returned as found, never repaired."""

    best: Candidate
    best_min_gain: float
    best_brightness: float
    feasibility: object
    trace: tuple
    evaluations: int

    @property
    def feasible(self):
        return self.feasibility.feasible

    def to_dict(self):
        return {
            "best": self.best.to_dict(),
            "best_min_gain": self.best_min_gain,
            "best_brightness": self.best_brightness,
            "feasibility": self.feasibility.to_dict(),
            "evaluations": self.evaluations,
            "generations": len(self.trace),
        }


def _draw(rng, shape, kind):
    if kind == "gaussian":
        return rng.standard_normal(shape)
    return rng.uniform(-0.5, 0.5, shape)


def _sample_positions(s, rng):
    n, L, L0 = s.n_antennas, s.segment_length, s.min_spacing
    for _ in range(_MAX_INIT_ATTEMPTS):
        d = np.sort(rng.uniform(0.0, L, n))
        for i in range(1, n):
            d[i] = max(d[i], d[i - 1] + L0)
        if d[-1] <= L:
            return d
    # Tight geometry: sample the slack instead, which is always feasible.
    slack = np.sort(rng.uniform(0.0, L - (n - 1) * L0, n))
    return np.minimum(slack + L0 * np.arange(n), L)


def _initial_arrays(s, cfg, rng):
    omega, n = cfg.population, s.n_antennas
    D = np.empty((omega, n))
    for k in range(omega):
        D[k] = _sample_positions(s, rng)
    W = rng.standard_normal((omega, n)) + 1j * rng.standard_normal((omega, n))
    W /= np.linalg.norm(W, axis=1, keepdims=True)
    return W, D


def initialize_population(s, cfg, rng):
    """Random feasible starting population of ``cfg.population`` fireflies.

    Positions are sorted uniform draws on ``[0, L]`` shifted right to honour
    the minimum spacing (resampled on overflow); weights are complex
    Gaussian, scaled to unit norm.
    """
    W, D = _initial_arrays(s, cfg, rng)
    return [Candidate(w=w, d=d) for w, d in zip(W, D)]


def move_firefly(mover, target, alpha_n, cfg, rng):
    """Return ``mover`` after one attraction step toward ``target``."""
    if mover.n_antennas != target.n_antennas:
        raise InvalidArgumentError(
            f"mover has {mover.n_antennas} antennas, target has {target.n_antennas}"
        )
    n = mover.n_antennas
    noise_w = _draw(rng, n, cfg.randomization) + 1j * _draw(rng, n, cfg.randomization)
    noise_d = _draw(rng, n, cfg.randomization) * cfg.position_noise_scale
    attraction_w = cfg.beta0 * np.exp(-cfg.gamma * np.sum(np.abs(target.w - mover.w) ** 2))
    attraction_d = cfg.beta0 * np.exp(-cfg.gamma * np.sum((target.d - mover.d) ** 2))
    w = mover.w + attraction_w * (target.w - mover.w) + alpha_n * noise_w
    d = mover.d + attraction_d * (target.d - mover.d) + alpha_n * noise_d
    return Candidate(w=w, d=d)


def count_operations(s, cfg):
    """Predicted dominant work ``R * (Omega**2 * N_A + Omega * ceil(log2 Omega))``."""
    omega = cfg.population
    return cfg.max_generations * (omega * omega * s.n_antennas + omega * math.ceil(math.log2(omega)))


def _kernel_weights(pw):
    return (
        pw.beta1,
        pw.beta2,
        np.asarray(pw.beta3, dtype=np.float64),
        np.asarray(pw.rho, dtype=np.float64),
        pw.lambda_w,
    )


def _check_finite(B, n):
    if not np.all(np.isfinite(B)):
        raise NumericFailureError(f"non-finite brightness at generation {n}", generation=n)


def _sort(W, D, B, G):
    order = np.argsort(-B, kind="stable")
    return W[order], D[order], B[order], G[order]


def run(s, cfg, callback=None):
    """Run the firefly search on scenario ``s``.

    Parameters
    ----------
    s : Scenario
    cfg : FaConfig
    callback : callable, optional
        Called after every generation as ``callback(n, brightness, best)``
        with a copy of the population brightness (sorted, descending) and
        the incumbent brightness, all under generation ``n``'s weights.

    Returns
    -------
    RunResult

    Raises
    ------
    NumericFailureError
        If a brightness value becomes non-finite.
    """
    if not isinstance(s, Scenario):
        raise InvalidArgumentError("s must be a Scenario")
    if not isinstance(cfg, FaConfig):
        raise InvalidArgumentError("cfg must be a FaConfig")
    rng = np.random.default_rng(cfg.rng_seed)
    omega, n_ant = cfg.population, s.n_antennas
    cos_t = np.cos(np.deg2rad(np.asarray(s.intended, dtype=np.float64)))
    cos_p = np.cos(np.deg2rad(np.asarray(s.unintended, dtype=np.float64)))
    geometry = (s.segment_length, s.min_spacing, s.interference_threshold)

    W, D = _initial_arrays(s, cfg, rng)
    B = np.empty(omega)
    G = np.empty(omega)
    weight = cfg.penalty_weight(1)
    kw = _kernel_weights(PenaltyWeights.uniform(weight, s))
    _kernels.evaluate_all(W, D, B, G, cos_t, cos_p, *geometry, *kw)
    evaluations = omega
    _check_finite(B, 0)
    W, D, B, G = _sort(W, D, B, G)

    trace = []
    shape = (omega, omega, n_ant)
    for n in range(1, cfg.max_generations + 1):
        new_weight = cfg.penalty_weight(n)
        if new_weight != weight:
            weight = new_weight
            kw = _kernel_weights(PenaltyWeights.uniform(weight, s))
            _kernels.evaluate_all(W, D, B, G, cos_t, cos_p, *geometry, *kw)
            evaluations += omega
            _check_finite(B, n)
        # The incumbent is the unmoved leader of the sorted population, so
        # its brightness under the new weights is B[0].
        inc_w = W[0].copy()
        inc_d = D[0].copy()
        inc = np.array([B[0], G[0]])
        alpha = cfg.alpha(n)
        noise_w = _draw(rng, shape, cfg.randomization) + 1j * _draw(rng, shape, cfg.randomization)
        noise_d = _draw(rng, shape, cfg.randomization)
        if cfg.position_noise_scale != 1.0:
            noise_d *= cfg.position_noise_scale
        evaluations += _kernels.generation(
            W, D, B, G, inc_w, inc_d, inc, cos_t, cos_p, *geometry, *kw,
            cfg.beta0, cfg.gamma, alpha, noise_w, noise_d,
        )
        _check_finite(B, n)
        W, D, B, G = _sort(W, D, B, G)
        # End-of-generation refresh: the sorted leader becomes the incumbent.
        best = Candidate(w=W[0], d=D[0])
        trace.append(
            GenerationTrace(
                generation=n,
                best_brightness=float(B[0]),
                best_min_gain=float(G[0]),
                best_feasible=evaluate_feasibility(best, s).feasible,
                alpha=alpha,
                penalty_weight=weight,
            )
        )
        if callback is not None:
            callback(n, B.copy(), float(inc[0]))

    best = Candidate(w=W[0], d=D[0])
    return RunResult(
        best=best,
        best_min_gain=min_intended_gain(best, s),
        best_brightness=float(B[0]),
        feasibility=evaluate_feasibility(best, s),
        trace=tuple(trace),
        evaluations=evaluations,
    )


def write_trace_csv(trace, fh):
    """Write ``trace`` to an open text file as CSV."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(TRACE_COLUMNS)
    for t in trace:
        writer.writerow([
            t.generation, repr(t.best_brightness), repr(t.best_min_gain),
            "true" if t.best_feasible else "false", repr(t.alpha), repr(t.penalty_weight),
        ])
