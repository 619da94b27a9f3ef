"""Equations of motion, a fixed-step RK4 integrator, and the residual oracle.

The residual oracle is the arbiter used throughout the test suite: it
substitutes a closed-form curve into a chosen convention of the equations of
motion and reports the worst violation of dx/dt = p and dp/dt = rhs_p.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import OscillatorParams, PhaseState, Trajectory
from .errors import ConventionError, ParameterError
from .solutions import ClosedFormCurve


class Convention(enum.Enum):
    """Friction-term bookkeeping for dp/dt.

    CLAIMED: dp/dt = -x - gamma*p, with omega0 fixed at 1. This is the form
    the broken curve was written against; with it, true solutions decay like
    e^{-gamma*t/2}, not e^{-gamma*t}.

    CORRECTED: dp/dt = -omega0^2 x - 2*gamma*p, so the stored gamma is exactly
    the envelope decay rate. At omega0 = 1 the two right-hand sides coincide
    when the CLAIMED gamma is twice the CORRECTED one.
    """

    CLAIMED = "claimed"
    CORRECTED = "corrected"


def _rhs_coefficients(params: OscillatorParams, convention: Convention) -> tuple[float, float]:
    """(kx, kp) such that dp/dt = -(kx*x + kp*p)."""
    if convention is Convention.CLAIMED:
        if params.omega0 != 1.0:
            raise ConventionError(
                f"the claimed convention is normalized to omega0 = 1, got {params.omega0}"
            )
        return 1.0, params.gamma
    if convention is Convention.CORRECTED:
        return params.omega0 * params.omega0, 2.0 * params.gamma
    raise ParameterError(f"unknown convention {convention!r}")


def eom_rhs(state: PhaseState, params: OscillatorParams,
            convention: Convention = Convention.CORRECTED) -> tuple[float, float]:
    """Right-hand side (dx/dt, dp/dt) at a phase-space point."""
    kx, kp = _rhs_coefficients(params, convention)
    return state.p, -(kx * state.x + kp * state.p)


def integrate_rk4(params: OscillatorParams, init: PhaseState, t_end: float, dt: float,
                  convention: Convention = Convention.CORRECTED) -> Trajectory:
    """Integrate with classic fixed-step RK4 from init.t to exactly t_end.

    Full steps of size dt are taken while they fit; a final shorter step lands
    on t_end (a remainder below ~1e-9*dt is treated as fp dust and dropped).
    Accuracy degrades above dt*omega0 ~ 0.1; the step size is the caller's
    responsibility.
    """
    t_end = float(t_end)
    dt = float(dt)
    if not (math.isfinite(dt) and dt > 0.0):
        raise ParameterError(f"dt must be finite and > 0, got {dt!r}")
    if not math.isfinite(t_end) or t_end <= init.t:
        raise ParameterError(f"t_end must exceed the initial time {init.t}, got {t_end!r}")
    span = t_end - init.t
    n_steps = int(math.floor(span / dt + 1e-9))
    last_dt = span - n_steps * dt
    if last_dt <= 1e-9 * dt:
        last_dt = 0.0
    kx, kp = _rhs_coefficients(params, convention)
    x, p = kernels.rk4_path(kx, kp, init.x, init.p, dt, n_steps, last_dt)
    t = init.t + dt * np.arange(x.size, dtype=np.float64)
    t[-1] = t_end
    return Trajectory(params, t, x, p)


def write_trajectory_csv(trajectory: Trajectory, path) -> None:
    """Write a trajectory as CSV with header t,x,p at 17 significant digits."""
    with open(path, "w", newline="") as fh:
        fh.write("t,x,p\n")
        for t, x, p in zip(trajectory.t, trajectory.x, trajectory.p):
            fh.write(f"{t:.17g},{x:.17g},{p:.17g}\n")


@dataclass(frozen=True)
class ResidualReport:
    """Worst-case violation of the equations of motion on a time grid."""

    max_abs_residual_x: float
    max_abs_residual_p: float
    worst_t: float
    threshold: float
    satisfies: bool

    @property
    def verdict(self) -> str:
        return "satisfies" if self.satisfies else "violates"


def residual_check(curve: ClosedFormCurve, convention: Convention, t_grid,
                   threshold: float = 1e-8, derivative: str = "analytic") -> ResidualReport:
    """Substitute a curve into the equations of motion on a time grid.

    residual_x = dx/dt - p and residual_p = dp/dt - rhs_p(x, p). With
    derivative="central" the stored derivatives are replaced by central
    differences (h = 1e-6 * max(1, |t|)), a cross-check that the analytic
    derivative code matches the curve it claims to differentiate.
    """
    t = np.atleast_1d(np.asarray(t_grid, dtype=np.float64))
    if t.size == 0:
        raise ParameterError("t_grid must contain at least one time")
    if not np.all(np.isfinite(t)):
        raise ParameterError("t_grid must be finite")
    if not (math.isfinite(threshold) and threshold >= 0.0):
        raise ParameterError(f"threshold must be finite and >= 0, got {threshold!r}")
    kx, kp = _rhs_coefficients(curve.params, convention)
    x = np.asarray(curve.x(t), dtype=np.float64)
    p = np.asarray(curve.p(t), dtype=np.float64)
    if derivative == "analytic":
        dxdt = np.asarray(curve.dxdt(t), dtype=np.float64)
        dpdt = np.asarray(curve.dpdt(t), dtype=np.float64)
    elif derivative == "central":
        h = 1e-6 * np.maximum(1.0, np.abs(t))
        dxdt = (np.asarray(curve.x(t + h), dtype=np.float64)
                - np.asarray(curve.x(t - h), dtype=np.float64)) / (2.0 * h)
        dpdt = (np.asarray(curve.p(t + h), dtype=np.float64)
                - np.asarray(curve.p(t - h), dtype=np.float64)) / (2.0 * h)
    else:
        raise ParameterError(f"derivative must be 'analytic' or 'central', got {derivative!r}")
    residual_x = dxdt - p
    residual_p = dpdt - (-(kx * x + kp * p))
    worst = np.maximum(np.abs(residual_x), np.abs(residual_p))
    worst_index = int(np.argmax(worst))
    max_x = float(np.max(np.abs(residual_x)))
    max_p = float(np.max(np.abs(residual_p)))
    return ResidualReport(
        max_abs_residual_x=max_x,
        max_abs_residual_p=max_p,
        worst_t=float(t[worst_index]),
        threshold=float(threshold),
        satisfies=bool(max_x <= threshold and max_p <= threshold),
    )
