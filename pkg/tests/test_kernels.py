"""Cross-checks between the compiled and pure-Python kernels.

Skipped wholesale when the extension did not build; the rest of the suite
exercises whichever backend is active.
"""

import math

import numpy as np
import pytest

from dampedosc import kernels
from dampedosc.errors import IntegrationError, SamplingError
from dampedosc.kernels import _ref

_speedups = pytest.importorskip("dampedosc.kernels._speedups")

FIELD_CODES = (_ref.SPIRAL, _ref.COS_SPIRAL, _ref.SCALED_SPIRAL, _ref.LOG_ENERGY)


class TestRk4Path:
    def test_bitwise_identical_paths(self):
        for kx, kp in [(1.0, 0.2), (4.0, 1.0), (1.0, 0.0)]:
            ref_x, ref_p = _ref.rk4_path(kx, kp, 1.0, -0.3, 1e-3, 5000, 0.0)
            fast_x, fast_p = _speedups.rk4_path(kx, kp, 1.0, -0.3, 1e-3, 5000, 0.0)
            assert np.array_equal(ref_x, np.asarray(fast_x))
            assert np.array_equal(ref_p, np.asarray(fast_p))

    def test_bitwise_identical_with_remainder_step(self):
        ref = _ref.rk4_path(1.0, 0.2, 0.7, 0.1, 0.3, 3, 0.1)
        fast = _speedups.rk4_path(1.0, 0.2, 0.7, 0.1, 0.3, 3, 0.1)
        assert len(ref[0]) == 5
        assert np.array_equal(ref[0], np.asarray(fast[0]))
        assert np.array_equal(ref[1], np.asarray(fast[1]))

    def test_both_raise_on_blowup(self):
        for backend in (_ref, _speedups):
            with pytest.raises(IntegrationError):
                backend.rk4_path(1.0, 0.0, 1.0, 0.0, 10.0, 5000, 0.0)


class TestSheetNumbers:
    def test_exact_agreement(self):
        rng = np.random.default_rng(11)
        walk = np.cumsum(rng.uniform(-3.0, 3.0, size=500))
        principal = np.remainder(walk + math.pi, 2.0 * math.pi) - math.pi
        principal = np.where(principal == -math.pi, math.pi, principal)
        ref = _ref.sheet_numbers(principal)
        fast = np.asarray(_speedups.sheet_numbers(principal))
        assert ref.dtype == np.int64
        assert np.array_equal(ref, fast)

    def test_single_sample(self):
        for backend in (_ref, _speedups):
            assert list(backend.sheet_numbers(np.array([1.0]))) == [0]

    def test_both_reject_half_turn(self):
        exact_half_turn = np.array([0.0, math.pi])
        for backend in (_ref, _speedups):
            with pytest.raises(SamplingError):
                backend.sheet_numbers(exact_half_turn)


class TestGridField:
    def test_values_agree(self):
        x = np.linspace(-2.0, 2.0, 37) + 0.013
        p = np.linspace(-1.5, 1.5, 29) + 0.007
        for code in FIELD_CODES:
            ref_values, ref_valid = _ref.grid_field(code, 1.0, 0.1, x, p)
            fast_values, fast_valid = _speedups.grid_field(code, 1.0, 0.1, x, p)
            assert np.array_equal(ref_valid, np.asarray(fast_valid))
            np.testing.assert_allclose(np.asarray(fast_values), ref_values,
                                       rtol=1e-13, atol=1e-13)

    def test_origin_masked_identically(self):
        x = np.array([-1.0, 0.0, 1.0])
        p = np.array([-1.0, 0.0, 1.0])
        for code in FIELD_CODES[:3]:
            ref_values, ref_valid = _ref.grid_field(code, 1.0, 0.1, x, p)
            fast_values, fast_valid = _speedups.grid_field(code, 1.0, 0.1, x, p)
            assert not ref_valid[1, 1] and not fast_valid[1, 1]
            assert math.isnan(ref_values[1, 1]) and math.isnan(fast_values[1, 1])
            assert int(np.sum(~np.asarray(fast_valid))) == 1

    def test_negative_axis_lands_on_plus_pi_in_both(self):
        x = np.array([-1.0])
        p = np.array([0.0])
        for backend in (_ref, _speedups):
            values, _ = backend.grid_field(_ref.SPIRAL, 1.0, 0.5, x, p)
            assert np.asarray(values)[0, 0] == pytest.approx(math.pi, rel=1e-15)


def test_backend_name_reports_active_kernel():
    assert kernels.backend_name() in ("compiled", "python")
