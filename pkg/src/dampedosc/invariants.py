"""Conserved and pseudo-conserved quantities on the phase plane.

The central object is the multivalued spiral phase theta + ln(r)/gamma, whose
level sets are the logarithmic spirals traced by the broken claimed-form
curves. Its principal-value version jumps by 2*pi across the negative x axis;
restoring the Riemann sheet count through minimal-jump unwrapping turns it
into a genuine constant along those curves. A second family, the log-energy
invariant, is conserved along true solutions of the corrected dynamics and
reduces to log(2E) as damping vanishes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import OscillatorParams, Trajectory, pseudo_frequency
from .errors import OriginError, ParameterError, SingularityError

TWO_PI = 2.0 * math.pi


def _check_gamma(gamma: float, allow_zero: bool) -> float:
    gamma = float(gamma)
    if not math.isfinite(gamma) or gamma < 0.0:
        raise ParameterError(f"gamma must be finite and >= 0, got {gamma!r}")
    if gamma == 0.0 and not allow_zero:
        raise SingularityError(
            "singular at gamma = 0: the ln(r)/gamma term diverges; "
            "use the gamma-scaled form instead"
        )
    return gamma


def principal_angle(x: float, p: float) -> float:
    """Polar angle of (x, p) in the principal range (-pi, pi].

    atan2 returns -pi for negative-zero momenta on the negative x axis; that
    value is remapped to +pi so the range contract is exact.
    """
    x = float(x)
    p = float(p)
    if x == 0.0 and p == 0.0:
        raise OriginError("the polar angle is undefined at the origin")
    theta = math.atan2(p, x)
    return math.pi if theta == -math.pi else theta


def spiral_phase(x: float, p: float, gamma: float) -> float:
    """Principal-value spiral phase theta + ln(r)/gamma, r = sqrt(x^2 + p^2).

    No sheet correction is applied: the value jumps by 2*pi across the
    negative x axis. Singular at gamma = 0 and undefined at the origin.
    """
    gamma = _check_gamma(gamma, allow_zero=False)
    theta = principal_angle(x, p)
    return theta + 0.5 * math.log(x * x + p * p) / gamma


def scaled_spiral_phase(x: float, p: float, gamma: float) -> float:
    """gamma-scaled spiral phase gamma*theta + ln(r).

    Finite for every gamma >= 0 (it is gamma times the spiral phase, with the
    singular 1/gamma cancelled); its branch-cut jump shrinks to 2*pi*gamma.
    """
    gamma = _check_gamma(gamma, allow_zero=True)
    theta = principal_angle(x, p)
    return gamma * theta + 0.5 * math.log(x * x + p * p)


def undamped_energy(x: float, p: float, omega0: float = 1.0) -> float:
    """Mechanical energy (p^2 + omega0^2 x^2) / 2 of the undamped oscillator."""
    x = float(x)
    p = float(p)
    omega0 = float(omega0)
    return 0.5 * (p * p + omega0 * omega0 * x * x)


def curve_spiral_phase(amplitude: float, phase: float, gamma: float) -> float:
    """The constant value phase + ln(amplitude)/gamma of the unwrapped spiral
    phase along a claimed-form curve with the given amplitude and phase."""
    amplitude = float(amplitude)
    phase = float(phase)
    if not math.isfinite(amplitude) or amplitude <= 0.0:
        raise ParameterError(f"amplitude must be finite and > 0, got {amplitude!r}")
    if not math.isfinite(phase):
        raise ParameterError(f"phase must be finite, got {phase!r}")
    gamma = _check_gamma(gamma, allow_zero=False)
    return phase + math.log(amplitude) / gamma


def log_energy_invariant(x: float, p: float, params: OscillatorParams, sheet: int = 0) -> float:
    """Constant of motion of the corrected dynamics below critical damping.

    log(omega^2 x^2 + w^2) - 2*(gamma/omega)*(phi + 2*pi*sheet), with the
    sheared momentum w = gamma*x + p, omega the pseudo-frequency, and
    phi = atan2(w, omega*x) in (-pi, pi]. The shear turns the damped flow
    into a shrinking rotation; a single point cannot know how many turns its
    trajectory has made, so point queries take the sheet count explicitly.
    As gamma -> 0 this tends to log(2E) with E the undamped energy.
    """
    omega = pseudo_frequency(params)
    x = float(x)
    p = float(p)
    if x == 0.0 and p == 0.0:
        raise OriginError("the log-energy invariant is undefined at the origin")
    w = params.gamma * x + p
    wx = omega * x
    phi = math.atan2(w, wx)
    if phi == -math.pi:
        phi = math.pi
    return math.log(wx * wx + w * w) - 2.0 * (params.gamma / omega) * (phi + TWO_PI * int(sheet))


@dataclass(frozen=True)
class SheetTracker:
    """A principal angle plus the integer Riemann sheet it currently lives on.

    The continuous (unwrapped) angle is always reconstructed as
    principal + 2*pi*sheet, so that identity holds by construction rather
    than by floating-point luck.
    """

    principal: float
    sheet: int = 0

    def __post_init__(self) -> None:
        principal = float(self.principal)
        if not (-math.pi < principal <= math.pi):
            raise ParameterError(f"principal angle must lie in (-pi, pi], got {self.principal!r}")
        object.__setattr__(self, "principal", principal)
        object.__setattr__(self, "sheet", int(self.sheet))

    @property
    def unwrapped(self) -> float:
        return self.principal + TWO_PI * self.sheet

    @classmethod
    def start(cls, principal: float) -> "SheetTracker":
        """Begin tracking on sheet 0."""
        return cls(principal, 0)

    def advance(self, new_principal: float) -> "SheetTracker":
        """Move to the sheet whose representative of new_principal is closest
        to the current unwrapped angle (minimal jump).

        An exact half-turn tie resolves to the even sheet; sampled series that
        need that case diagnosed should go through the series functions, which
        reject it.
        """
        new_principal = float(new_principal)
        if not (-math.pi < new_principal <= math.pi):
            raise ParameterError(f"principal angle must lie in (-pi, pi], got {new_principal!r}")
        sheet = round((self.unwrapped - new_principal) / TWO_PI)
        return SheetTracker(new_principal, sheet)


@dataclass(frozen=True)
class InvariantSeries:
    """Samples of a scalar quantity along a trajectory, with summaries."""

    t: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        t = np.array(self.t, dtype=np.float64, copy=True)
        values = np.array(self.values, dtype=np.float64, copy=True)
        if t.ndim != 1 or values.shape != t.shape or t.size == 0:
            raise ParameterError("t and values must be matching non-empty 1-d arrays")
        if t.size > 1 and not np.all(np.diff(t) > 0.0):
            raise ParameterError("sample times must be strictly increasing")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(values))):
            raise ParameterError("series samples must be finite")
        t.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.t.size)

    @property
    def initial(self) -> float:
        return float(self.values[0])

    @property
    def mean(self) -> float:
        return float(np.mean(self.values))

    @property
    def spread(self) -> float:
        """max - min over the series."""
        return float(np.max(self.values) - np.min(self.values))

    @property
    def max_deviation_from_initial(self) -> float:
        return float(np.max(np.abs(self.values - self.values[0])))

    @property
    def max_deviation_from_mean(self) -> float:
        return float(np.max(np.abs(self.values - np.mean(self.values))))


def write_series_csv(series: InvariantSeries, path) -> None:
    """Write a series as CSV with header t,value at 17 significant digits."""
    with open(path, "w", newline="") as fh:
        fh.write("t,value\n")
        for t, value in zip(series.t, series.values):
            fh.write(f"{t:.17g},{value:.17g}\n")


def _principal_angles(x: np.ndarray, p: np.ndarray) -> np.ndarray:
    if np.any((x == 0.0) & (p == 0.0)):
        raise OriginError("trajectory passes through the origin, where the angle is undefined")
    theta = np.arctan2(p, x)
    return np.where(theta == -math.pi, math.pi, theta)


def naive_spiral_phase_series(trajectory: Trajectory, gamma: float | None = None) -> InvariantSeries:
    """Pointwise principal-value spiral phase along a trajectory.

    No sheet correction: every crossing of the negative x axis shows up as a
    2*pi step. gamma defaults to the trajectory's own damping rate.
    """
    gamma = _check_gamma(trajectory.params.gamma if gamma is None else gamma, allow_zero=False)
    theta = _principal_angles(trajectory.x, trajectory.p)
    values = theta + 0.5 * np.log(trajectory.x ** 2 + trajectory.p ** 2) / gamma
    return InvariantSeries(trajectory.t, values)


def spiral_phase_series(trajectory: Trajectory, gamma: float | None = None) -> InvariantSeries:
    """Sheet-corrected spiral phase along a trajectory.

    The sheet count starts at 0 on the first sample and follows the minimal
    jump rule, so consecutive samples must advance the angle by less than half
    a turn (SamplingError otherwise). Along a claimed-form curve the result is
    constant and equal to the curve's phase (plus ln(amplitude)/gamma).
    """
    gamma = _check_gamma(trajectory.params.gamma if gamma is None else gamma, allow_zero=False)
    theta = _principal_angles(trajectory.x, trajectory.p)
    sheets = kernels.sheet_numbers(theta)
    values = (theta + TWO_PI * sheets) + 0.5 * np.log(trajectory.x ** 2 + trajectory.p ** 2) / gamma
    return InvariantSeries(trajectory.t, values)


def log_energy_series(trajectory: Trajectory) -> InvariantSeries:
    """Log-energy invariant along a trajectory, with unwrapped shear angle.

    The auxiliary angle phi = atan2(gamma*x + p, omega*x) is unwrapped with
    the same minimal-jump rule as the spiral phase, starting on sheet 0.
    """
    omega = pseudo_frequency(trajectory.params)
    gamma = trajectory.params.gamma
    w = gamma * trajectory.x + trajectory.p
    wx = omega * trajectory.x
    phi = _principal_angles(wx, w)
    sheets = kernels.sheet_numbers(phi)
    values = np.log(wx * wx + w * w) - 2.0 * (gamma / omega) * (phi + TWO_PI * sheets)
    return InvariantSeries(trajectory.t, values)


_JUMP_KINDS = ("spiral", "cos-spiral", "scaled-spiral")


def _jump_value(kind: str, x: float, p: float, gamma: float) -> float:
    if kind == "spiral":
        return spiral_phase(x, p, gamma)
    if kind == "cos-spiral":
        return math.cos(spiral_phase(x, p, gamma))
    return scaled_spiral_phase(x, p, gamma)


def branch_cut_jump(gamma: float, radius: float = 1.0, kind: str = "spiral",
                    eps: float = 1e-9) -> float:
    """Discontinuity of a field across the negative x axis at the given radius.

    Samples just above and below the cut at polar angles +-(pi - eps) and
    +-(pi - 2*eps), then Richardson-extrapolates the one-sided difference to
    the axis, cancelling the smooth O(eps) part. The spiral phase jumps by
    2*pi, its cosine by 0 (the jump is invisible), and the gamma-scaled form
    by 2*pi*gamma.
    """
    if kind not in _JUMP_KINDS:
        raise ParameterError(f"kind must be one of {_JUMP_KINDS}, got {kind!r}")
    gamma = _check_gamma(gamma, allow_zero=(kind == "scaled-spiral"))
    radius = float(radius)
    eps = float(eps)
    if not math.isfinite(radius) or radius <= 0.0:
        raise ParameterError(f"radius must be finite and > 0, got {radius!r}")
    if not (0.0 < eps <= 1e-3):
        raise ParameterError(f"eps must lie in (0, 1e-3], got {eps!r}")

    def one_sided(e: float) -> float:
        above = _jump_value(kind, radius * math.cos(math.pi - e), radius * math.sin(math.pi - e), gamma)
        below = _jump_value(kind, radius * math.cos(-math.pi + e), radius * math.sin(-math.pi + e), gamma)
        return above - below

    return 2.0 * one_sided(eps) - one_sided(2.0 * eps)
