import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mafa import InvalidArgumentError, beamforming_gain, pattern_sweep, steering_vector
from mafa.array_model import angle_grid, gains

finite = st.floats(-20, 20, allow_nan=False)
angles = st.floats(0, 180, allow_nan=False)


@st.composite
def designs(draw, n=None):
    n = draw(st.integers(2, 10)) if n is None else n
    d = np.array(draw(st.lists(finite, min_size=n, max_size=n)))
    re = np.array(draw(st.lists(st.floats(-3, 3), min_size=n, max_size=n)))
    im = np.array(draw(st.lists(st.floats(-3, 3), min_size=n, max_size=n)))
    return re + 1j * im, d


class TestSteeringVector:
    def test_zero_positions_give_ones(self):
        np.testing.assert_array_equal(steering_vector([0, 0, 0], 37.0), np.ones(3))

    def test_broadside_is_all_ones(self):
        s = steering_vector([0.0, 0.3, 1.7, 4.2], 90.0)
        np.testing.assert_allclose(s, np.ones(4), atol=1e-15)

    def test_half_wavelength_endfire(self):
        np.testing.assert_allclose(steering_vector([0, 0.5], 0.0), [1, -1], atol=1e-15)

    def test_wavelength_units(self):
        # Positions in metres with a 0.1 m wavelength equal positions in wavelengths.
        np.testing.assert_allclose(
            steering_vector([0.0, 0.05, 0.12], 30.0, wavelength=0.1),
            steering_vector([0.0, 0.5, 1.2], 30.0),
        )

    @pytest.mark.parametrize("wavelength", [0.0, -1.0, np.nan, np.inf])
    def test_bad_wavelength(self, wavelength):
        with pytest.raises(InvalidArgumentError):
            steering_vector([0, 1], 10.0, wavelength)

    @pytest.mark.parametrize("d", [[0, np.nan], [np.inf, 1.0], [[0, 1]]])
    def test_bad_positions(self, d):
        with pytest.raises(InvalidArgumentError):
            steering_vector(d, 10.0)

    @pytest.mark.parametrize("theta", [-1.0, 180.5, np.nan, "90"])
    def test_bad_angle(self, theta):
        with pytest.raises(InvalidArgumentError):
            steering_vector([0, 1], theta)

    @given(d=st.lists(finite, min_size=2, max_size=12), theta=angles)
    def test_unit_modulus(self, d, theta):
        np.testing.assert_allclose(np.abs(steering_vector(d, theta)), 1.0, rtol=1e-12)


class TestBeamformingGain:
    def test_matched_filter_reaches_n(self):
        d = np.array([0.0, 0.7, 1.9, 3.1, 4.0])
        s = steering_vector(d, 63.0)
        assert beamforming_gain(s / np.sqrt(5), d, 63.0) == pytest.approx(5.0, rel=1e-12)

    def test_zero_weights(self):
        assert beamforming_gain(np.zeros(3), [0, 1, 2], 20.0) == 0.0

    def test_two_element_endfire_null(self):
        # Hand evaluation: |1/sqrt2 * 1 + 1/sqrt2 * (-1)|^2 = 0.
        w = np.array([1, 1]) / np.sqrt(2)
        assert beamforming_gain(w, [0, 0.5], 0.0) == pytest.approx(0.0, abs=1e-30)

    def test_hand_value(self):
        # d = [0, 0.25], theta = 60: phase of element 2 is 2*pi*0.25*0.5 = pi/4.
        # w = [1, 0] -> gain 1; w = [1, 1] -> |1 + exp(j pi/4)|^2 = 2 + 2 cos(pi/4).
        assert beamforming_gain([1, 0], [0, 0.25], 60.0) == pytest.approx(1.0)
        assert beamforming_gain([1, 1], [0, 0.25], 60.0) == pytest.approx(2 + np.sqrt(2))

    def test_length_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            beamforming_gain([1, 0, 0], [0, 1], 10.0)

    @given(designs(), angles, st.floats(-10, 10))
    def test_phase_invariance(self, design, theta, phi):
        w, d = design
        g = beamforming_gain(w, d, theta)
        assert beamforming_gain(np.exp(1j * phi) * w, d, theta) == pytest.approx(g, abs=1e-9, rel=1e-9)

    @given(designs(), angles, st.floats(-10, 10))
    def test_translation_invariance(self, design, theta, c):
        w, d = design
        g = beamforming_gain(w, d, theta)
        assert beamforming_gain(w, d + c, theta) == pytest.approx(g, abs=1e-9, rel=1e-9)

    @given(designs(), angles)
    def test_cauchy_schwarz_bound(self, design, theta):
        w, d = design
        g = beamforming_gain(w, d, theta)
        assert -1e-12 <= g <= d.size * np.vdot(w, w).real * (1 + 1e-12) + 1e-9

    @given(designs(), angles, st.floats(-5, 5), st.floats(-5, 5))
    def test_scaling(self, design, theta, a_re, a_im):
        w, d = design
        a = a_re + 1j * a_im
        expected = abs(a) ** 2 * beamforming_gain(w, d, theta)
        assert beamforming_gain(a * w, d, theta) == pytest.approx(expected, rel=1e-9, abs=1e-9)


class TestPatternSweep:
    def test_single_angle(self):
        d = np.array([0, 0.5, 1.0, 1.5])
        w = steering_vector(d, 90.0) / 2.0
        [(angle, g)] = pattern_sweep(w, d, [90.0])
        assert angle == 90.0
        assert g == pytest.approx(4.0)

    def test_one_degree_grid(self):
        d = np.array([0.0, 0.5, 1.3])
        w = np.array([0.3 + 0.1j, -0.5j, 0.2])
        out = pattern_sweep(w, d, angle_grid(1.0))
        assert len(out) == 181
        assert [a for a, _ in out] == list(range(181))
        assert all(np.isfinite(g) and g >= 0 for _, g in out)

    def test_uniform_array_peaks_at_steered_angle(self):
        d = 0.5 * np.arange(8)
        w = steering_vector(d, 120.0) / np.sqrt(8)
        grid = angle_grid(1.0)
        out = pattern_sweep(w, d, grid)
        # Independent direct evaluation of |sum conj(w_i) exp(j 2 pi d_i cos t)|^2.
        direct = [abs(sum(np.conj(wi) * np.exp(2j * np.pi * di * np.cos(np.radians(t)))
                          for wi, di in zip(w, d))) ** 2 for t in grid]
        np.testing.assert_allclose([g for _, g in out], direct, rtol=1e-10, atol=1e-12)
        assert out[int(np.argmax(direct))][0] == 120.0

    def test_order_preserved(self):
        d, w = [0.0, 0.5], [1.0, 0.0]
        assert [a for a, _ in pattern_sweep(w, d, [170.0, 3.0, 90.0])] == [170.0, 3.0, 90.0]

    def test_empty_grid(self):
        with pytest.raises(InvalidArgumentError):
            pattern_sweep([1, 0], [0, 1], [])

    def test_gains_matches_scalar(self, rng):
        d = rng.uniform(0, 4, 5)
        w = rng.normal(size=5) + 1j * rng.normal(size=5)
        thetas = rng.uniform(0, 180, 7)
        np.testing.assert_allclose(gains(w, d, thetas), [beamforming_gain(w, d, t) for t in thetas])


def test_angle_grid():
    assert angle_grid(5.0).size == 37
    assert angle_grid(7.0)[-1] == 175.0
    with pytest.raises(InvalidArgumentError):
        angle_grid(0.0)
