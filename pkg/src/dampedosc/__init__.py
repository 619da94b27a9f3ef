"""Verification toolkit for the damped 1D harmonic oscillator.

Closed-form solutions for all damping regimes, a deliberately broken
"claimed" curve kept for falsification, an equation-of-motion residual
oracle, multivalued invariants with Riemann-sheet bookkeeping, and
phase-plane field maps with branch-cut detection.
"""

from . import errors, kernels
from .core import (
    DEFAULT_REGIME_TOL,
    OscillatorParams,
    PhaseState,
    Regime,
    Trajectory,
    classify_regime,
    decay_split,
    pseudo_frequency,
)
from .dynamics import (
    Convention,
    ResidualReport,
    eom_rhs,
    integrate_rk4,
    residual_check,
    write_trajectory_csv,
)
from .fieldmap import (
    FIELD_KINDS,
    BranchJumpResult,
    FieldGrid,
    GridSpec,
    detect_branch_jump,
    evaluate_field,
    export_grid,
)
from .invariants import (
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
from .solutions import (
    ClaimedCurve,
    ClosedFormCurve,
    ComplexFormCheck,
    CriticalCurve,
    OverdampedCurve,
    UnderdampedCurve,
    check_complex_form,
    closed_form_solution,
    solve_critical,
    solve_overdamped,
    solve_underdamped,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_REGIME_TOL",
    "FIELD_KINDS",
    "BranchJumpResult",
    "ClaimedCurve",
    "ClosedFormCurve",
    "ComplexFormCheck",
    "Convention",
    "CriticalCurve",
    "FieldGrid",
    "GridSpec",
    "InvariantSeries",
    "OscillatorParams",
    "OverdampedCurve",
    "PhaseState",
    "Regime",
    "ResidualReport",
    "SheetTracker",
    "Trajectory",
    "UnderdampedCurve",
    "branch_cut_jump",
    "check_complex_form",
    "classify_regime",
    "closed_form_solution",
    "curve_spiral_phase",
    "decay_split",
    "detect_branch_jump",
    "eom_rhs",
    "errors",
    "evaluate_field",
    "export_grid",
    "integrate_rk4",
    "kernels",
    "log_energy_invariant",
    "log_energy_series",
    "naive_spiral_phase_series",
    "principal_angle",
    "pseudo_frequency",
    "residual_check",
    "scaled_spiral_phase",
    "solve_critical",
    "solve_overdamped",
    "solve_underdamped",
    "spiral_phase",
    "spiral_phase_series",
    "undamped_energy",
    "write_series_csv",
    "write_trajectory_csv",
]
