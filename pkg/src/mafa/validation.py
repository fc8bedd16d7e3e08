"""Input validation helpers shared by the public API.

Each helper returns a fresh numpy array (or float) and raises
:class:`~mafa.errors.InvalidArgumentError` on bad input, in the spirit of
``sklearn.utils.check_array``.
"""

import numbers

import numpy as np

from .errors import InvalidArgumentError


def check_positions(d, n=None, name="d"):
    """Validate a 1-D vector of finite real antenna positions."""
    try:
        arr = np.array(d, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InvalidArgumentError(f"{name} must be a real vector: {exc}") from None
    if arr.ndim != 1:
        raise InvalidArgumentError(f"{name} must be 1-D, got shape {arr.shape}")
    if arr.size < 1:
        raise InvalidArgumentError(f"{name} must not be empty")
    if n is not None and arr.size != n:
        raise InvalidArgumentError(f"{name} has length {arr.size}, expected {n}")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError(f"{name} contains non-finite entries")
    return arr


def check_weights(w, n=None, name="w"):
    """Validate a 1-D vector of finite complex beamforming weights."""
    try:
        arr = np.array(w, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise InvalidArgumentError(f"{name} must be a complex vector: {exc}") from None
    if arr.ndim != 1:
        raise InvalidArgumentError(f"{name} must be 1-D, got shape {arr.shape}")
    if arr.size < 1:
        raise InvalidArgumentError(f"{name} must not be empty")
    if n is not None and arr.size != n:
        raise InvalidArgumentError(f"{name} has length {arr.size}, expected {n}")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError(f"{name} contains non-finite entries")
    return arr


def check_angle(theta, name="theta"):
    """Validate a single angle in degrees on [0, 180]."""
    if isinstance(theta, bool) or not isinstance(theta, numbers.Real):
        raise InvalidArgumentError(f"{name} must be a real number of degrees")
    theta = float(theta)
    if not np.isfinite(theta) or theta < 0.0 or theta > 180.0:
        raise InvalidArgumentError(f"{name} must lie in [0, 180] degrees, got {theta}")
    return theta


def check_angles(thetas, name="angles", allow_empty=True):
    """Validate a 1-D collection of angles in degrees on [0, 180]."""
    try:
        arr = np.array(thetas, dtype=np.float64).reshape(-1)
    except (TypeError, ValueError) as exc:
        raise InvalidArgumentError(f"{name} must be numeric: {exc}") from None
    if not allow_empty and arr.size == 0:
        raise InvalidArgumentError(f"{name} must not be empty")
    if not np.all(np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 180.0):
        raise InvalidArgumentError(f"{name} must lie in [0, 180] degrees")
    return arr


def check_positive(value, name, strict=True):
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise InvalidArgumentError(f"{name} must be a real number")
    value = float(value)
    if not np.isfinite(value) or value < 0 or (strict and value == 0):
        bound = "> 0" if strict else ">= 0"
        raise InvalidArgumentError(f"{name} must be finite and {bound}, got {value}")
    return value


def check_int(value, name, minimum):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise InvalidArgumentError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value < minimum:
        raise InvalidArgumentError(f"{name} must be >= {minimum}, got {value}")
    return value
