import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dampedosc import kernels
from dampedosc.core import OscillatorParams, PhaseState, Trajectory
from dampedosc.dynamics import integrate_rk4
from dampedosc.errors import (
    OriginError,
    ParameterError,
    RegimeError,
    SamplingError,
    SingularityError,
)
from dampedosc.invariants import (
    InvariantSeries,
    SheetTracker,
    branch_cut_jump,
    curve_spiral_phase,
    log_energy_invariant,
    log_energy_series,
    naive_spiral_phase_series,
    principal_angle,
    scaled_spiral_phase,
    spiral_phase,
    spiral_phase_series,
    undamped_energy,
    write_series_csv,
)
from dampedosc.solutions import ClaimedCurve

TWO_PI = 2.0 * math.pi


class TestPointFunctions:
    def test_principal_angle_quadrants(self):
        assert principal_angle(1.0, 0.0) == 0.0
        assert principal_angle(0.0, 1.0) == math.pi / 2
        assert principal_angle(0.0, -1.0) == -math.pi / 2
        assert principal_angle(-1.0, 0.0) == math.pi

    def test_negative_zero_momentum_maps_to_plus_pi(self):
        # atan2(-0.0, -1.0) is -pi; the principal range here is (-pi, pi]
        assert principal_angle(-1.0, -0.0) == math.pi

    def test_principal_angle_origin(self):
        with pytest.raises(OriginError):
            principal_angle(0.0, 0.0)

    def test_spiral_phase_on_positive_axis(self):
        # theta = 0, so the value is ln(r)/gamma
        assert spiral_phase(2.0, 0.0, 0.5) == pytest.approx(math.log(2.0) / 0.5, rel=1e-15)
        assert spiral_phase(1.0, 0.0, 0.1) == 0.0

    def test_spiral_phase_singular_at_zero_damping(self):
        with pytest.raises(SingularityError):
            spiral_phase(1.0, 0.0, 0.0)

    def test_spiral_phase_rejects_bad_gamma_and_origin(self):
        with pytest.raises(ParameterError):
            spiral_phase(1.0, 0.0, -0.1)
        with pytest.raises(ParameterError):
            spiral_phase(1.0, 0.0, math.nan)
        with pytest.raises(OriginError):
            spiral_phase(0.0, 0.0, 0.1)

    def test_scaled_form_is_gamma_times_spiral(self):
        x, p, gamma = -0.3, 1.7, 0.25
        assert scaled_spiral_phase(x, p, gamma) == pytest.approx(
            gamma * spiral_phase(x, p, gamma), rel=1e-15)

    def test_scaled_form_finite_at_zero_damping(self):
        # at gamma = 0 only ln(r) survives, which is half of log(2E)
        value = scaled_spiral_phase(0.3, 0.4, 0.0)
        energy = undamped_energy(0.3, 0.4)
        assert value == pytest.approx(0.5 * math.log(2.0 * energy), rel=1e-15)

    def test_undamped_energy(self):
        assert undamped_energy(0.3, 0.4) == pytest.approx(0.125, rel=1e-15)
        assert undamped_energy(1.0, 0.0, omega0=3.0) == pytest.approx(4.5, rel=1e-15)

    def test_curve_spiral_phase(self):
        assert curve_spiral_phase(1.0, 0.3, 0.1) == pytest.approx(0.3, rel=1e-15)
        assert curve_spiral_phase(2.0, 0.5, 0.2) == pytest.approx(
            3.965735902799726, abs=1e-14)
        with pytest.raises(ParameterError):
            curve_spiral_phase(0.0, 0.3, 0.1)
        with pytest.raises(SingularityError):
            curve_spiral_phase(1.0, 0.3, 0.0)


class TestLogEnergyInvariant:
    def test_frozen_value(self):
        params = OscillatorParams(1.0, 0.6)
        # omega = 0.8, w = 0.6, phi = atan2(0.6, 0.8); log term vanishes since
        # (0.8)^2 + (0.6)^2 = 1
        assert log_energy_invariant(1.0, 0.0, params) == pytest.approx(
            -0.9652516631899264, abs=5e-15)

    def test_sheet_offset(self):
        params = OscillatorParams(1.0, 0.6)
        base = log_energy_invariant(0.4, -1.1, params)
        stepped = log_energy_invariant(0.4, -1.1, params, sheet=1)
        assert stepped - base == pytest.approx(-2.0 * TWO_PI * 0.6 / 0.8, rel=1e-12)

    def test_reduces_to_log_energy_as_damping_vanishes(self):
        params = OscillatorParams(1.0, 1e-6)
        value = log_energy_invariant(0.3, 0.4, params)
        assert abs(value - math.log(2.0 * undamped_energy(0.3, 0.4))) < 1e-4

    @pytest.mark.parametrize("gamma", [1.0, 10.0, 100.0])
    def test_rejects_critical_and_overdamped(self, gamma):
        with pytest.raises(RegimeError):
            log_energy_invariant(1.0, 0.0, OscillatorParams(1.0, gamma))

    def test_rejects_origin(self):
        with pytest.raises(OriginError):
            log_energy_invariant(0.0, 0.0, OscillatorParams(1.0, 0.1))

    def test_constant_along_integrated_flow(self):
        params = OscillatorParams(1.0, 0.6)
        omega = 0.8
        traj = integrate_rk4(params, PhaseState(0.0, 1.0, 0.0),
                             2.0 * TWO_PI / omega, 1e-3)
        series = log_energy_series(traj)
        assert series.max_deviation_from_initial < 1e-8
        assert series.initial == pytest.approx(
            log_energy_invariant(1.0, 0.0, params), abs=1e-14)

    def test_series_sheets_match_point_queries(self):
        params = OscillatorParams(1.0, 0.6)
        omega = 0.8
        traj = integrate_rk4(params, PhaseState(0.0, 1.0, 0.0),
                             2.0 * TWO_PI / omega, 1e-2)
        series = log_energy_series(traj)
        phi = np.arctan2(0.6 * traj.x + traj.p, omega * traj.x)
        sheets = kernels.sheet_numbers(np.where(phi == -math.pi, math.pi, phi))
        # the shear-transformed flow rotates clockwise, so sheets go negative
        assert sheets[-1] < 0
        k = int(np.argmax(sheets < 0))
        point = log_energy_invariant(traj.x[k], traj.p[k], params, sheet=int(sheets[k]))
        assert series.values[k] == pytest.approx(point, abs=1e-12)


class TestSheetTracker:
    def test_positive_crossing_increments_sheet(self):
        tracker = SheetTracker.start(3.0).advance(-3.1)
        assert tracker.sheet == 1
        assert tracker.unwrapped == pytest.approx(-3.1 + TWO_PI, rel=1e-15)

    def test_negative_crossing_decrements_sheet(self):
        tracker = SheetTracker.start(-3.0).advance(3.1)
        assert tracker.sheet == -1
        assert tracker.unwrapped == pytest.approx(3.1 - TWO_PI, rel=1e-15)

    def test_small_step_keeps_sheet(self):
        tracker = SheetTracker.start(0.5).advance(1.0).advance(0.2)
        assert tracker.sheet == 0
        assert tracker.unwrapped == 0.2

    def test_multiple_turns_accumulate(self):
        tracker = SheetTracker.start(2.5)
        for _ in range(3):  # one monotone counterclockwise turn per pass
            tracker = tracker.advance(-2.8).advance(-1.8).advance(0.5).advance(2.5)
        assert tracker.sheet == 3
        assert tracker.unwrapped == pytest.approx(2.5 + 3 * TWO_PI, rel=1e-15)

    def test_rejects_out_of_range_angles(self):
        with pytest.raises(ParameterError):
            SheetTracker.start(4.0)
        with pytest.raises(ParameterError):
            SheetTracker.start(-math.pi)
        with pytest.raises(ParameterError):
            SheetTracker.start(0.0).advance(3.5)

    def test_boundary_value_pi_is_allowed(self):
        assert SheetTracker.start(math.pi).principal == math.pi

    @given(st.lists(st.floats(min_value=-3.1, max_value=3.1), min_size=1, max_size=50),
           st.floats(min_value=-3.1, max_value=3.1))
    @settings(max_examples=200, deadline=None)
    def test_unwrap_recovers_continuous_walk(self, steps, start):
        # a walk whose true steps stay under half a turn is recovered exactly
        walk = start + np.cumsum([0.0] + steps)
        principal = np.remainder(walk + math.pi, TWO_PI) - math.pi
        principal = np.where(principal == -math.pi, math.pi, principal)
        true_sheets = np.rint((walk - principal) / TWO_PI).astype(np.int64)
        kernel_sheets = kernels.sheet_numbers(principal)
        assert np.array_equal(kernel_sheets, true_sheets - true_sheets[0])
        tracker = SheetTracker.start(float(principal[0]))
        for k in range(1, len(walk)):
            tracker = tracker.advance(float(principal[k]))
            assert tracker.sheet == kernel_sheets[k]


class TestSeries:
    def _claimed_trajectory(self, gamma=0.1, phi=0.0, amplitude=1.0, t_end=10.0, n=1001):
        curve = ClaimedCurve(gamma, phi, amplitude=amplitude)
        return curve.sample(np.linspace(0.0, t_end, n))

    def test_unwrapped_is_constant_along_claimed_curve(self):
        series = spiral_phase_series(self._claimed_trajectory(phi=0.3))
        assert series.max_deviation_from_initial < 1e-9
        assert series.initial == pytest.approx(0.3, abs=1e-12)

    def test_unwrapped_matches_curve_constant_with_amplitude(self):
        series = spiral_phase_series(self._claimed_trajectory(
            gamma=0.2, phi=0.5, amplitude=2.0))
        expected = curve_spiral_phase(2.0, 0.5, 0.2)
        assert series.max_deviation_from_initial < 1e-9
        assert abs(series.initial - expected) < 1e-9

    def test_naive_series_staircases_by_whole_turns(self):
        series = naive_spiral_phase_series(self._claimed_trajectory())
        # the angle advances ~10 rad over the window: two cut crossings
        assert series.spread == pytest.approx(2.0 * TWO_PI, abs=1e-9)
        steps = np.diff(series.values)
        drops = steps[np.abs(steps) > 1.0]
        assert len(drops) == 2
        assert drops == pytest.approx([-TWO_PI, -TWO_PI], abs=1e-9)

    def test_gamma_override(self):
        traj = self._claimed_trajectory(n=51, t_end=1.0)
        default = spiral_phase_series(traj)
        override = spiral_phase_series(traj, gamma=0.1)
        assert np.array_equal(default.values, override.values)
        with pytest.raises(SingularityError):
            spiral_phase_series(traj, gamma=0.0)

    def test_half_turn_sampling_is_rejected(self):
        params = OscillatorParams(1.0, 0.1)
        traj = Trajectory(params, [0.0, 1.0], [1.0, -1.0], [0.0, 0.0])
        with pytest.raises(SamplingError):
            spiral_phase_series(traj)

    def test_origin_sample_is_rejected(self):
        params = OscillatorParams(1.0, 0.1)
        traj = Trajectory(params, [0.0, 1.0], [1.0, 0.0], [0.0, 0.0])
        with pytest.raises(OriginError):
            naive_spiral_phase_series(traj)

    def test_series_summaries(self):
        series = InvariantSeries([0.0, 1.0, 2.0], [1.0, 3.0, 2.0])
        assert len(series) == 3
        assert series.initial == 1.0
        assert series.mean == 2.0
        assert series.spread == 2.0
        assert series.max_deviation_from_initial == 2.0
        assert series.max_deviation_from_mean == 1.0

    def test_series_validation(self):
        with pytest.raises(ParameterError):
            InvariantSeries([], [])
        with pytest.raises(ParameterError):
            InvariantSeries([0.0, 1.0], [1.0])
        with pytest.raises(ParameterError):
            InvariantSeries([0.0, 0.0], [1.0, 2.0])
        with pytest.raises(ParameterError):
            InvariantSeries([0.0, 1.0], [1.0, math.inf])

    def test_series_csv_roundtrip(self, tmp_path):
        series = InvariantSeries([0.0, 0.1, 0.2], [1.0, 1.0 / 3.0, -2.5e-17])
        path = tmp_path / "series.csv"
        write_series_csv(series, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "t,value"
        assert len(lines) == 4
        values = [float(line.split(",")[1]) for line in lines[1:]]
        assert values == list(series.values)


class TestBranchCutJump:
    def test_spiral_jump_is_a_full_turn(self):
        assert branch_cut_jump(0.1) == pytest.approx(TWO_PI, abs=1e-7)

    def test_cosine_hides_the_jump(self):
        assert abs(branch_cut_jump(0.1, kind="cos-spiral")) < 1e-7

    def test_scaled_jump_shrinks_with_damping(self):
        assert branch_cut_jump(0.1, kind="scaled-spiral") == pytest.approx(
            TWO_PI * 0.1, abs=1e-7)
        assert branch_cut_jump(0.5, kind="scaled-spiral") == pytest.approx(
            TWO_PI * 0.5, abs=1e-7)

    def test_jump_is_radius_independent(self):
        assert branch_cut_jump(0.1, radius=2.0) == pytest.approx(TWO_PI, abs=1e-6)
        assert branch_cut_jump(0.1, radius=0.25) == pytest.approx(TWO_PI, abs=1e-6)

    def test_scaled_jump_vanishes_without_damping(self):
        assert abs(branch_cut_jump(0.0, kind="scaled-spiral")) < 1e-12

    def test_spiral_kinds_singular_without_damping(self):
        with pytest.raises(SingularityError):
            branch_cut_jump(0.0)
        with pytest.raises(SingularityError):
            branch_cut_jump(0.0, kind="cos-spiral")

    def test_validation(self):
        with pytest.raises(ParameterError):
            branch_cut_jump(0.1, kind="sawtooth")
        with pytest.raises(ParameterError):
            branch_cut_jump(0.1, radius=0.0)
        with pytest.raises(ParameterError):
            branch_cut_jump(0.1, eps=0.0)
        with pytest.raises(ParameterError):
            branch_cut_jump(0.1, eps=0.1)
