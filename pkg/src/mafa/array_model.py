"""Response of a linear array with arbitrary element positions.

Positions are expressed in wavelengths unless an explicit ``wavelength``
is passed, in which case ``d`` and ``wavelength`` share a length unit.
Angles are degrees measured from the array axis.
"""

import numpy as np

from .errors import InvalidArgumentError
from .validation import check_angle, check_angles, check_positions, check_weights


def _phase_scale(wavelength):
    if not np.isfinite(wavelength) or wavelength <= 0:
        raise InvalidArgumentError(f"wavelength must be positive and finite, got {wavelength}")
    return 2.0 * np.pi / float(wavelength)


def steering_vector(d, theta, wavelength=1.0):
    """Steering vector ``exp(j 2 pi / wavelength * d_i * cos(theta))``.

    Parameters
    ----------
    d : array_like of float, shape (n_antennas,)
        Element positions.
    theta : float
        Arrival angle in degrees, in [0, 180].
    wavelength : float, default 1.0
        Carrier wavelength in the unit of ``d``.

    Returns
    -------
    ndarray of complex128, shape (n_antennas,)
    """
    k = _phase_scale(wavelength)
    d = check_positions(d)
    theta = check_angle(theta)
    return np.exp(1j * k * d * np.cos(np.deg2rad(theta)))


def steering_matrix(d, thetas, wavelength=1.0):
    """Stack of steering vectors, one row per angle in ``thetas``."""
    k = _phase_scale(wavelength)
    d = check_positions(d)
    thetas = check_angles(thetas)
    return np.exp(1j * k * np.outer(np.cos(np.deg2rad(thetas)), d))


def beamforming_gain(w, d, theta, wavelength=1.0):
    """Gain ``|w^H s(d, theta)|**2`` of weights ``w`` toward ``theta``."""
    d = check_positions(d)
    w = check_weights(w)
    if w.size != d.size:
        raise InvalidArgumentError(f"w has length {w.size} but d has length {d.size}")
    s = steering_vector(d, theta, wavelength)
    return float(abs(np.vdot(w, s)) ** 2)


def gains(w, d, thetas, wavelength=1.0):
    """Vectorized :func:`beamforming_gain` over an array of angles."""
    d = check_positions(d)
    w = check_weights(w, n=d.size)
    S = steering_matrix(d, thetas, wavelength)
    return np.abs(S @ w.conj()) ** 2


def pattern_sweep(w, d, theta_grid, wavelength=1.0):
    """Return ``[(angle, gain), ...]`` over ``theta_grid``, order preserved."""
    grid = check_angles(theta_grid, name="theta_grid", allow_empty=False)
    g = gains(w, d, grid, wavelength)
    return [(float(a), float(v)) for a, v in zip(grid, g)]


def angle_grid(step, start=0.0, stop=180.0):
    """Inclusive angle grid ``start, start + step, ...`` not exceeding ``stop``."""
    if not np.isfinite(step) or step <= 0:
        raise InvalidArgumentError(f"step must be positive, got {step}")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(count)
