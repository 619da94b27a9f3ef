"""Acceptance gate: the twelve contract-level checks, one test each.

Every test pins the tolerances the library promises; they are part of the
contract and must not be loosened. Run with `pytest tests/test_acceptance.py
-v -s` to see one pass line per criterion.
"""

import math

import numpy as np
import pytest

from dampedosc.core import OscillatorParams, PhaseState
from dampedosc.dynamics import Convention, eom_rhs, integrate_rk4, residual_check
from dampedosc.errors import RegimeError, SingularityError
from dampedosc.fieldmap import GridSpec, detect_branch_jump, evaluate_field
from dampedosc.invariants import (
    log_energy_invariant,
    log_energy_series,
    naive_spiral_phase_series,
    spiral_phase,
    spiral_phase_series,
    undamped_energy,
)
from dampedosc.solutions import (
    ClaimedCurve,
    check_complex_form,
    closed_form_solution,
    solve_underdamped,
)

TWO_PI = 2.0 * math.pi


def test_criterion_01_claimed_curve_violates_its_own_equations():
    curve = ClaimedCurve(0.1, 0.0)
    res_x0 = float(curve.dxdt(0.0) - curve.p(0.0))
    res_p0 = float(curve.dpdt(0.0) + (curve.x(0.0) + 0.1 * curve.p(0.0)))
    assert res_x0 == pytest.approx(-0.1, abs=1e-12)
    assert res_p0 == pytest.approx(2.0, abs=1e-12)
    report = residual_check(curve, Convention.CLAIMED, np.linspace(0.0, 20.0, 1000))
    assert report.verdict == "violates"
    print("criterion 01: PASS — claimed curve fails its own equations "
          f"(res_x(0)={res_x0:.3g}, res_p(0)={res_p0:.3g})")


def test_criterion_02_corrected_solutions_satisfy_corrected_equations():
    t_grid = np.linspace(0.0, 20.0, 1000)
    for gamma in (0.1, 1.0, 1.25):
        curve = closed_form_solution(OscillatorParams(1.0, gamma), 1.0, -0.3)
        report = residual_check(curve, Convention.CORRECTED, t_grid, threshold=1e-10)
        assert report.satisfies, (gamma, report)
        assert max(report.max_abs_residual_x, report.max_abs_residual_p) <= 1e-10
    print("criterion 02: PASS — corrected closed forms satisfy the equations "
          "of motion to 1e-10 in all three regimes")


def test_criterion_03_factor_two_damping_rescaling_is_exact():
    g = 0.35
    claimed = OscillatorParams(1.0, 2.0 * g)
    corrected = OscillatorParams(1.0, g)
    rng = np.random.default_rng(20260815)
    for x, p in rng.uniform(-10.0, 10.0, size=(100, 2)):
        state = PhaseState(0.0, float(x), float(p))
        assert eom_rhs(state, claimed, Convention.CLAIMED) == \
            eom_rhs(state, corrected, Convention.CORRECTED)
    print("criterion 03: PASS — claimed dynamics at doubled damping equal "
          "corrected dynamics exactly on 100 random states")


def test_criterion_04_phase_shifted_complex_form_matches_plain_does_not():
    for gamma in (0.1, 0.6):
        for t in (0.0, 0.7, 3.0):
            check = check_complex_form(1.0, 0.0, gamma, t, tol=1e-12)
            assert check.matches_phase_shifted
        at_zero = check_complex_form(1.0, 0.0, gamma, 0.0, tol=1e-12)
        assert abs(at_zero.z - at_zero.plain_exponential) >= gamma / 2.0
        assert at_zero.differs_from_exponential
    print("criterion 04: PASS — phase-shifted complex form matches z to 1e-12; "
          "the plain exponential misses by >= gamma/2 at t=0")


def test_criterion_05_unwrapping_restores_constancy():
    curve = ClaimedCurve(0.1, 0.0)
    traj = curve.sample(np.linspace(0.0, 10.0, 1001))
    unwrapped = spiral_phase_series(traj)
    naive = naive_spiral_phase_series(traj)
    assert unwrapped.max_deviation_from_initial <= 1e-9
    assert abs(unwrapped.initial) <= 1e-9
    assert naive.spread >= TWO_PI - 0.01
    print("criterion 05: PASS — sheet-corrected spiral phase constant to 1e-9 "
          f"while the naive version spreads {naive.spread:.4g}")


def test_criterion_06_log_energy_conserved_along_integrated_flow():
    for gamma in (0.1, 0.5, 0.9):
        params = OscillatorParams(1.0, gamma)
        omega = math.sqrt((1.0 - gamma) * (1.0 + gamma))
        traj = integrate_rk4(params, PhaseState(0.0, 1.0, 0.0),
                             10.0 * TWO_PI / omega, 1e-3)
        series = log_energy_series(traj)
        assert series.max_deviation_from_initial <= 1e-6, (gamma, series.max_deviation_from_initial)
    print("criterion 06: PASS — log-energy invariant drifts < 1e-6 over ten "
          "periods of RK4 flow at gamma in {0.1, 0.5, 0.9}")


def test_criterion_07_log_energy_reduces_to_log_2E():
    value = log_energy_invariant(0.3, 0.4, OscillatorParams(1.0, 1e-6))
    target = math.log(2.0 * undamped_energy(0.3, 0.4))
    assert abs(value - target) <= 1e-4
    print("criterion 07: PASS — log-energy invariant within 1e-4 of log(2E) "
          "at gamma = 1e-6")


def test_criterion_08_branch_cut_jumps_on_the_default_window():
    params = OscillatorParams(1.0, 0.1)
    spec = GridSpec(-2.0, 2.0, -2.0, 2.0, 400, 400)
    jumps = {}
    for kind in ("spiral", "cos-spiral", "scaled-spiral"):
        grid = evaluate_field(kind, params, spec)
        jumps[kind] = detect_branch_jump(grid).jump
    assert jumps["spiral"] == pytest.approx(TWO_PI, abs=1e-3)
    assert abs(jumps["cos-spiral"]) <= 1e-3
    assert jumps["scaled-spiral"] == pytest.approx(TWO_PI * 0.1, abs=1e-3)
    print("criterion 08: PASS — grid detector measures jumps "
          f"{jumps['spiral']:.5g} / {jumps['cos-spiral']:.1e} / "
          f"{jumps['scaled-spiral']:.5g} for spiral / cos / scaled")


def test_criterion_09_zero_damping_is_a_loud_singularity():
    with pytest.raises(SingularityError):
        spiral_phase(1.0, 0.0, 0.0)
    with pytest.raises(SingularityError):
        evaluate_field("spiral", OscillatorParams(1.0, 0.0), GridSpec(nx=4, ny=4))
    print("criterion 09: PASS — spiral phase at gamma = 0 raises "
          "SingularityError pointwise and gridwise")


def test_criterion_10_critical_and_overdamped_are_refused():
    for gamma in (1.0, 10.0, 100.0):
        params = OscillatorParams(1.0, gamma)
        with pytest.raises(RegimeError):
            solve_underdamped(params, 1.0, 0.0)
        with pytest.raises(RegimeError):
            log_energy_invariant(1.0, 0.0, params)
    print("criterion 10: PASS — underdamped-only machinery raises RegimeError "
          "at gamma in {1, 10, 100}")


def test_criterion_11_amplitude_folds_into_the_spiral_constant():
    curve = ClaimedCurve(0.2, 0.5, amplitude=2.0)
    traj = curve.sample(np.linspace(0.0, 10.0, 1001))
    series = spiral_phase_series(traj)
    expected = 3.965735902799726  # 0.5 + ln(2)/0.2
    assert series.max_deviation_from_initial <= 1e-9
    assert abs(series.initial - expected) <= 1e-9
    print(f"criterion 11: PASS — unwrapped spiral phase sits at {expected} "
          "for amplitude 2, phase 0.5, gamma 0.2")


def test_criterion_12_rk4_is_fourth_order():
    params = OscillatorParams(1.0, 0.1)
    exact = solve_underdamped(params, 1.0, 0.0)

    def endpoint_error(dt):
        traj = integrate_rk4(params, PhaseState(0.0, 1.0, 0.0), 10.0, dt)
        return math.hypot(traj.x[-1] - float(exact.x(10.0)),
                          traj.p[-1] - float(exact.p(10.0)))

    ratio = endpoint_error(0.05) / endpoint_error(0.025)
    assert 14.0 <= ratio <= 18.0
    print(f"criterion 12: PASS — halving dt shrinks the endpoint error "
          f"{ratio:.2f}x (fourth order)")
