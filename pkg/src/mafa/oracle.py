"""Exhaustive grid solver for tiny instances (two or three antennas).

Used as an independent reference for the firefly search: it enumerates
every grid placement satisfying the bound and spacing constraints and
every grid weight vector (amplitudes times phases, unit norm, first phase
pinned to zero), keeping the best min gain that meets the interference
cap exactly.
"""

import itertools
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import InvalidArgumentError, NoSolutionError, UnsupportedSizeError
from .problem import Candidate, Scenario, evaluate_feasibility, min_intended_gain
from .validation import check_int, check_positive

MAX_ANTENNAS = 3
DEFAULT_MAX_EVALUATIONS = 10**8


@dataclass(frozen=True)
class GridSpec:
    position_step: float = 0.05
    phase_step: float = math.pi / 36
    amplitude_levels: int = 8
    max_evaluations: int = DEFAULT_MAX_EVALUATIONS

    def __post_init__(self):
        object.__setattr__(self, "position_step", check_positive(self.position_step, "position_step"))
        object.__setattr__(self, "phase_step", check_positive(self.phase_step, "phase_step"))
        object.__setattr__(self, "amplitude_levels", check_int(self.amplitude_levels, "amplitude_levels", 1))
        object.__setattr__(self, "max_evaluations", check_int(self.max_evaluations, "max_evaluations", 1))

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        unknown = sorted(set(data) - {"position_step", "phase_step", "amplitude_levels", "max_evaluations"})
        if unknown:
            raise InvalidArgumentError(f"grid has unknown key '{unknown[0]}'")
        return cls(**data)


def position_grid(s, g):
    count = int(math.floor(s.segment_length / g.position_step + 1e-9)) + 1
    return g.position_step * np.arange(count)


def position_tuples(s, g):
    """Lexicographically ordered grid placements meeting bounds and spacing."""
    points = position_grid(s, g)
    out = []
    for combo in itertools.combinations(range(points.size), s.n_antennas):
        d = points[list(combo)]
        if d[0] >= 0.0 and d[-1] <= s.segment_length and np.all(np.diff(d) >= s.min_spacing):
            out.append(d)
    return out


def weight_grid(n, g):
    """All grid weight vectors, rows in lexicographic (amplitudes, phases) order."""
    levels = np.arange(1, g.amplitude_levels + 1) / g.amplitude_levels
    n_phase = int(math.ceil(2 * math.pi / g.phase_step - 1e-9))
    phases = g.phase_step * np.arange(n_phase)
    amps = np.array(list(itertools.product(levels, repeat=n)))
    rel = np.array(list(itertools.product(phases, repeat=n - 1))).reshape(-1, n - 1)
    rel = np.hstack([np.zeros((rel.shape[0], 1)), rel])
    W = (amps[:, None, :] * np.exp(1j * rel)[None, :, :]).reshape(-1, n)
    W /= np.linalg.norm(W, axis=1, keepdims=True)
    # Keep the rounded norm at or below one so the norm constraint holds exactly.
    over = np.linalg.norm(W, axis=1) > 1.0
    while np.any(over):
        W[over] *= 1.0 - 2.0**-52
        over = np.linalg.norm(W, axis=1) > 1.0
    return W


def grid_size(s, g):
    """Number of (placement, weight) pairs the enumeration visits."""
    n_phase = int(math.ceil(2 * math.pi / g.phase_step - 1e-9))
    return len(position_tuples(s, g)) * g.amplitude_levels**s.n_antennas * n_phase ** (s.n_antennas - 1)


def brute_force_solve(s, g=None):
    """Best feasible grid point for scenario ``s``.

    Returns
    -------
    (Candidate, float)
        The maximizing candidate and its min intended gain. Ties go to the
        lexicographically smallest grid index.

    Raises
    ------
    UnsupportedSizeError
        If ``s.n_antennas > 3``.
    InvalidArgumentError
        If the grid would exceed ``g.max_evaluations`` gain evaluations.
    NoSolutionError
        If no grid point satisfies every constraint.
    """
    if not isinstance(s, Scenario):
        raise InvalidArgumentError("s must be a Scenario")
    g = GridSpec() if g is None else g
    if s.n_antennas > MAX_ANTENNAS:
        raise UnsupportedSizeError(f"oracle supports at most {MAX_ANTENNAS} antennas, got {s.n_antennas}")
    placements = position_tuples(s, g)
    n_phase = int(math.ceil(2 * math.pi / g.phase_step - 1e-9))
    n_weights = g.amplitude_levels**s.n_antennas * n_phase ** (s.n_antennas - 1)
    cost = len(placements) * n_weights * (s.n_intended + s.n_unintended)
    if cost > g.max_evaluations:
        raise InvalidArgumentError(f"grid needs {cost} gain evaluations, cap is {g.max_evaluations}")
    if not placements:
        raise NoSolutionError("no grid placement satisfies the bound and spacing constraints")

    W = weight_grid(s.n_antennas, g)
    Wc = W.conj()
    cos_t = np.cos(np.deg2rad(s.intended))
    cos_p = np.cos(np.deg2rad(s.unintended))
    best_value = -np.inf
    best = None
    for d in placements:
        St = np.exp(2j * np.pi * np.outer(d, cos_t))
        value = np.min(np.abs(Wc @ St) ** 2, axis=1)
        if s.n_unintended:
            Sp = np.exp(2j * np.pi * np.outer(d, cos_p))
            ok = np.all(np.abs(Wc @ Sp) ** 2 <= s.interference_threshold, axis=1)
            value = np.where(ok, value, -np.inf)
        while True:
            idx = int(np.argmax(value))
            if not value[idx] > best_value:
                break
            cand = Candidate(w=W[idx], d=d)
            # Re-audit with the reference path; rounding can differ at the cap.
            if evaluate_feasibility(cand, s, tol=0.0).feasible:
                best_value = float(value[idx])
                best = cand
                break
            value[idx] = -np.inf
    if best is None:
        raise NoSolutionError("no grid point satisfies the interference constraints")
    return best, min_intended_gain(best, s)


def fixture_dict(s, g, candidate, value):
    return {
        "scenario": s.to_dict(),
        "grid": g.to_dict(),
        "best": candidate.to_dict(),
        "value": value,
    }
