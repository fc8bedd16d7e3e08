"""Max-min beamforming problem for a movable linear array.

The constrained problem jointly chooses weights ``w`` and positions ``d``
to maximize the smallest gain over the intended directions, subject to

* ``d[0] >= 0`` and ``d[-1] <= L`` (segment bounds),
* ``d[i] - d[i-1] >= L0`` (minimum spacing, evaluated in index order),
* gain at every unintended direction ``<= I0``,
* ``||w||_2 <= 1``.

For the firefly search the constraints are folded into a quadratic
exterior penalty and the fitness ("brightness") is
``min intended gain - penalty``.
"""

from dataclasses import dataclass, field

import numpy as np

from .array_model import gains
from .errors import InvalidArgumentError
from .validation import check_angles, check_int, check_positions, check_positive, check_weights

#: Absolute tolerance used for the boolean ``feasible`` flag.
FEASIBILITY_TOL = 1e-6

_SCENARIO_KEYS = (
    "n_antennas",
    "segment_length_wl",
    "min_spacing_wl",
    "intended_deg",
    "unintended_deg",
    "interference_threshold",
)


@dataclass(frozen=True)
class Scenario:
    """A problem instance. Lengths are in wavelengths, angles in degrees."""

    n_antennas: int
    segment_length: float
    min_spacing: float
    intended: tuple
    unintended: tuple = ()
    interference_threshold: float = 0.1
    wavelength: float = 1.0

    def __post_init__(self):
        n = check_int(self.n_antennas, "n_antennas", 2)
        L = check_positive(self.segment_length, "segment_length")
        L0 = check_positive(self.min_spacing, "min_spacing")
        if (n - 1) * L0 > L * (1 + 1e-12):
            raise InvalidArgumentError(
                f"no feasible placement: (n_antennas - 1) * min_spacing = {(n - 1) * L0} "
                f"exceeds segment_length = {L}"
            )
        intended = tuple(float(a) for a in check_angles(self.intended, "intended", allow_empty=False))
        unintended = tuple(float(a) for a in check_angles(self.unintended, "unintended"))
        overlap = set(intended) & set(unintended)
        if overlap:
            raise InvalidArgumentError(f"intended and unintended directions overlap: {sorted(overlap)}")
        object.__setattr__(self, "n_antennas", n)
        object.__setattr__(self, "segment_length", L)
        object.__setattr__(self, "min_spacing", L0)
        object.__setattr__(self, "intended", intended)
        object.__setattr__(self, "unintended", unintended)
        object.__setattr__(
            self, "interference_threshold",
            check_positive(self.interference_threshold, "interference_threshold", strict=False),
        )
        object.__setattr__(self, "wavelength", check_positive(self.wavelength, "wavelength"))

    @property
    def n_intended(self):
        return len(self.intended)

    @property
    def n_unintended(self):
        return len(self.unintended)

    def replace(self, **changes):
        params = dict(
            n_antennas=self.n_antennas,
            segment_length=self.segment_length,
            min_spacing=self.min_spacing,
            intended=self.intended,
            unintended=self.unintended,
            interference_threshold=self.interference_threshold,
            wavelength=self.wavelength,
        )
        params.update(changes)
        return Scenario(**params)

    def to_dict(self):
        return {
            "n_antennas": self.n_antennas,
            "segment_length_wl": self.segment_length,
            "min_spacing_wl": self.min_spacing,
            "intended_deg": list(self.intended),
            "unintended_deg": list(self.unintended),
            "interference_threshold": self.interference_threshold,
            "wavelength": self.wavelength,
        }

    @classmethod
    def from_dict(cls, data):
        """Build a scenario from its JSON object form.

        Missing or ill-typed keys raise :class:`InvalidArgumentError` whose
        message names the key.
        """
        if not isinstance(data, dict):
            raise InvalidArgumentError("scenario must be a JSON object")
        missing = [k for k in _SCENARIO_KEYS if k not in data]
        if missing:
            raise InvalidArgumentError(f"scenario is missing key '{missing[0]}'")
        unknown = set(data) - set(_SCENARIO_KEYS) - {"wavelength"}
        if unknown:
            raise InvalidArgumentError(f"scenario has unknown key '{sorted(unknown)[0]}'")
        for key in ("intended_deg", "unintended_deg"):
            if not isinstance(data[key], list):
                raise InvalidArgumentError(f"scenario key '{key}' must be an array of degrees")
        fields = {
            "n_antennas": ("n_antennas", data["n_antennas"]),
            "segment_length": ("segment_length_wl", data["segment_length_wl"]),
            "min_spacing": ("min_spacing_wl", data["min_spacing_wl"]),
            "intended": ("intended_deg", data["intended_deg"]),
            "unintended": ("unintended_deg", data["unintended_deg"]),
            "interference_threshold": ("interference_threshold", data["interference_threshold"]),
            "wavelength": ("wavelength", data.get("wavelength", 1.0)),
        }
        try:
            return cls(**{name: value for name, (_, value) in fields.items()})
        except InvalidArgumentError as exc:
            # Map the dataclass field back to the JSON key for the message.
            msg = str(exc)
            for name, (key, _) in sorted(fields.items(), key=lambda kv: -len(kv[0])):
                if msg.startswith(name):
                    raise InvalidArgumentError(f"scenario key '{key}': {msg}") from None
            raise


@dataclass(frozen=True, eq=False)
class Candidate:
    """One firefly: complex weights ``w`` paired with real positions ``d``."""

    w: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        d = check_positions(self.d, name="d")
        w = check_weights(self.w, n=d.size, name="w")
        w.setflags(write=False)
        d.setflags(write=False)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "d", d)

    @property
    def n_antennas(self):
        return self.d.size

    def __eq__(self, other):
        if not isinstance(other, Candidate):
            return NotImplemented
        return np.array_equal(self.w, other.w) and np.array_equal(self.d, other.d)

    def to_dict(self):
        return {
            "w_real": self.w.real.tolist(),
            "w_imag": self.w.imag.tolist(),
            "d_wl": self.d.tolist(),
        }

    @classmethod
    def from_dict(cls, data):
        for key in ("w_real", "w_imag", "d_wl"):
            if key not in data:
                raise InvalidArgumentError(f"candidate is missing key '{key}'")
        re = np.asarray(data["w_real"], dtype=float)
        im = np.asarray(data["w_imag"], dtype=float)
        if re.shape != im.shape:
            raise InvalidArgumentError("candidate keys 'w_real' and 'w_imag' differ in length")
        return cls(w=re + 1j * im, d=data["d_wl"])


@dataclass(frozen=True)
class PenaltyWeights:
    """Penalty coefficients for bounds, spacing, interference and norm."""

    beta1: float
    beta2: float
    beta3: tuple
    rho: tuple
    lambda_w: float

    def __post_init__(self):
        object.__setattr__(self, "beta1", check_positive(self.beta1, "beta1", strict=False))
        object.__setattr__(self, "beta2", check_positive(self.beta2, "beta2", strict=False))
        object.__setattr__(self, "lambda_w", check_positive(self.lambda_w, "lambda_w", strict=False))
        object.__setattr__(self, "beta3", tuple(check_positive(b, "beta3", strict=False) for b in self.beta3))
        object.__setattr__(self, "rho", tuple(check_positive(r, "rho", strict=False) for r in self.rho))

    @classmethod
    def uniform(cls, value, scenario):
        """All coefficients equal to ``value``, sized for ``scenario``."""
        value = float(value)
        return cls(
            beta1=value,
            beta2=value,
            beta3=(value,) * (scenario.n_antennas - 1),
            rho=(value,) * scenario.n_unintended,
            lambda_w=value,
        )

    def check_sizes(self, scenario):
        if len(self.beta3) != scenario.n_antennas - 1:
            raise InvalidArgumentError(
                f"beta3 has {len(self.beta3)} entries, expected {scenario.n_antennas - 1}"
            )
        if len(self.rho) != scenario.n_unintended:
            raise InvalidArgumentError(f"rho has {len(self.rho)} entries, expected {scenario.n_unintended}")

    def total(self):
        return self.beta1 + self.beta2 + sum(self.beta3) + sum(self.rho) + self.lambda_w


@dataclass(frozen=True)
class FeasibilityReport:
    """Per-constraint violation amounts, each ``max(0, g(x))``."""

    c1_violation: float
    c2_violation: float
    spacing_violations: tuple
    interference_violations: tuple
    norm_violation: float
    tolerance: float = FEASIBILITY_TOL
    feasible: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "spacing_violations", tuple(self.spacing_violations))
        object.__setattr__(self, "interference_violations", tuple(self.interference_violations))
        object.__setattr__(self, "feasible", self.max_violation() <= self.tolerance)

    def max_violation(self):
        return max(
            (self.c1_violation, self.c2_violation, self.norm_violation)
            + self.spacing_violations
            + self.interference_violations
        )

    def to_dict(self):
        return {
            "c1_violation": self.c1_violation,
            "c2_violation": self.c2_violation,
            "spacing_violations": list(self.spacing_violations),
            "interference_violations": list(self.interference_violations),
            "norm_violation": self.norm_violation,
            "tolerance": self.tolerance,
            "feasible": self.feasible,
        }


def _check(c, s):
    if c.n_antennas != s.n_antennas:
        raise InvalidArgumentError(
            f"candidate has {c.n_antennas} antennas, scenario expects {s.n_antennas}"
        )


def min_intended_gain(c, s):
    """Smallest gain of ``c`` over the intended directions of ``s``."""
    _check(c, s)
    return float(np.min(gains(c.w, c.d, s.intended)))


def evaluate_feasibility(c, s, tol=FEASIBILITY_TOL):
    """Audit ``c`` against every constraint of ``s`` without repairing it."""
    _check(c, s)
    d = c.d
    spacing = np.maximum(0.0, s.min_spacing - np.diff(d))
    if s.n_unintended:
        interference = np.maximum(0.0, gains(c.w, d, s.unintended) - s.interference_threshold)
    else:
        interference = np.empty(0)
    return FeasibilityReport(
        c1_violation=max(0.0, -float(d[0])),
        c2_violation=max(0.0, float(d[-1]) - s.segment_length),
        spacing_violations=tuple(float(v) for v in spacing),
        interference_violations=tuple(float(v) for v in interference),
        norm_violation=max(0.0, float(np.linalg.norm(c.w)) - 1.0),
        tolerance=tol,
    )


def penalty_from_report(report, pw):
    """Weighted sum of squared violations."""
    return float(
        pw.beta1 * report.c1_violation**2
        + pw.beta2 * report.c2_violation**2
        + np.dot(pw.beta3, np.square(report.spacing_violations))
        + np.dot(pw.rho, np.square(report.interference_violations))
        + pw.lambda_w * report.norm_violation**2
    )


def penalty(c, s, pw):
    """Quadratic exterior penalty of ``c``; zero iff every constraint holds."""
    pw.check_sizes(s)
    return penalty_from_report(evaluate_feasibility(c, s), pw)


def brightness(c, s, pw):
    """Firefly fitness: min intended gain minus penalty.

    The penalty is subtracted so that constraint violation always lowers
    brightness under maximization.
    """
    return min_intended_gain(c, s) - penalty(c, s, pw)
