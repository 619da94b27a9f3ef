"""Closed-form oscillator curves and the solvers that fit them.

Three regime families give the textbook solutions of the corrected equation
of motion. A fourth family, ClaimedCurve, reproduces a broken candidate
solution verbatim so the residual checker can demonstrate exactly how it
fails; its stored derivatives are the honest calculus applied to the broken
expressions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    OscillatorParams,
    PhaseState,
    Regime,
    Trajectory,
    classify_regime,
    decay_split,
    pseudo_frequency,
)
from .errors import OriginError, ParameterError, RegimeError


class ClosedFormCurve:
    """An evaluable (x(t), p(t)) pair with hand-coded analytic derivatives.

    dxdt and dpdt are stored expressions, not numerical differences, so a
    residual check measures modeling error only, never differentiation error.
    All evaluators accept scalars or numpy arrays.
    """

    label: str = "curve"
    params: OscillatorParams

    def x(self, t):
        raise NotImplementedError

    def p(self, t):
        raise NotImplementedError

    def dxdt(self, t):
        raise NotImplementedError

    def dpdt(self, t):
        raise NotImplementedError

    def state(self, t: float) -> PhaseState:
        """The curve's phase-space point at time t."""
        return PhaseState(float(t), float(self.x(t)), float(self.p(t)))

    def sample(self, t_grid) -> Trajectory:
        """Evaluate the curve on a time grid and package it as a Trajectory."""
        t = np.asarray(t_grid, dtype=np.float64)
        return Trajectory(self.params, t, self.x(t), self.p(t))

    def describe(self) -> str:
        return self.label


@dataclass(frozen=True)
class ClaimedCurve(ClosedFormCurve):
    """The broken curve x = A e^{-gamma t} cos(t + phi), p = A e^{-gamma t} sin(t + phi).

    Kept verbatim, mistakes and all: the frequency is locked to 1 regardless
    of damping, and p is *not* dx/dt -- the pair was written as if
    d/dt cos = +sin and the product rule never touched the envelope. Fitting initial
    conditions is deliberately unsupported; the family is parametrized by
    (amplitude, phi) directly.
    """

    gamma: float
    phi: float
    amplitude: float = 1.0

    label = "claimed"

    def __post_init__(self) -> None:
        gamma = float(self.gamma)
        phi = float(self.phi)
        amplitude = float(self.amplitude)
        if not math.isfinite(gamma) or gamma < 0.0:
            raise ParameterError(f"gamma must be finite and >= 0, got {self.gamma!r}")
        if not math.isfinite(phi):
            raise ParameterError(f"phi must be finite, got {self.phi!r}")
        if not math.isfinite(amplitude) or amplitude <= 0.0:
            raise ParameterError(f"amplitude must be finite and > 0, got {self.amplitude!r}")
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "amplitude", amplitude)

    @property
    def params(self) -> OscillatorParams:
        return OscillatorParams(1.0, self.gamma)

    def x(self, t):
        t = np.asarray(t, dtype=np.float64)
        return self.amplitude * np.exp(-self.gamma * t) * np.cos(t + self.phi)

    def p(self, t):
        t = np.asarray(t, dtype=np.float64)
        return self.amplitude * np.exp(-self.gamma * t) * np.sin(t + self.phi)

    def dxdt(self, t):
        t = np.asarray(t, dtype=np.float64)
        envelope = self.amplitude * np.exp(-self.gamma * t)
        return -envelope * (self.gamma * np.cos(t + self.phi) + np.sin(t + self.phi))

    def dpdt(self, t):
        t = np.asarray(t, dtype=np.float64)
        envelope = self.amplitude * np.exp(-self.gamma * t)
        return envelope * (np.cos(t + self.phi) - self.gamma * np.sin(t + self.phi))

    def describe(self) -> str:
        return f"claimed (gamma={self.gamma:g}, phi={self.phi:g}, amplitude={self.amplitude:g})"


@dataclass(frozen=True)
class UnderdampedCurve(ClosedFormCurve):
    """x = A e^{-gamma t} cos(omega t + phase) with omega = sqrt(omega0^2 - gamma^2).

    The genuine below-critical solution: p is dx/dt, including the envelope
    term and the pseudo-frequency. Requires amplitude > 0 and a principal
    phase in (-pi, pi].
    """

    params: OscillatorParams
    amplitude: float
    phase: float

    label = "underdamped"

    def __post_init__(self) -> None:
        amplitude = float(self.amplitude)
        phase = float(self.phase)
        if not math.isfinite(amplitude) or amplitude <= 0.0:
            raise ParameterError(f"amplitude must be finite and > 0, got {self.amplitude!r}")
        if not (-math.pi < phase <= math.pi):
            raise ParameterError(f"phase must lie in (-pi, pi], got {self.phase!r}")
        if self.params.gamma >= self.params.omega0:
            raise RegimeError(
                "underdamped curve needs gamma < omega0, got "
                f"gamma={self.params.gamma}, omega0={self.params.omega0}"
            )
        object.__setattr__(self, "amplitude", amplitude)
        object.__setattr__(self, "phase", phase)

    @property
    def omega(self) -> float:
        return pseudo_frequency(self.params)

    def x(self, t):
        t = np.asarray(t, dtype=np.float64)
        return self.amplitude * np.exp(-self.params.gamma * t) * np.cos(self.omega * t + self.phase)

    def p(self, t):
        return self.dxdt(t)

    def dxdt(self, t):
        t = np.asarray(t, dtype=np.float64)
        gamma, omega = self.params.gamma, self.omega
        angle = omega * t + self.phase
        envelope = self.amplitude * np.exp(-gamma * t)
        return -envelope * (gamma * np.cos(angle) + omega * np.sin(angle))

    def dpdt(self, t):
        t = np.asarray(t, dtype=np.float64)
        gamma, omega = self.params.gamma, self.omega
        angle = omega * t + self.phase
        envelope = self.amplitude * np.exp(-gamma * t)
        return envelope * ((gamma * gamma - omega * omega) * np.cos(angle)
                           + 2.0 * gamma * omega * np.sin(angle))

    def describe(self) -> str:
        return (f"underdamped (omega0={self.params.omega0:g}, gamma={self.params.gamma:g}, "
                f"amplitude={self.amplitude:g}, phase={self.phase:g})")


@dataclass(frozen=True)
class CriticalCurve(ClosedFormCurve):
    """x = (c1 + c2 t) e^{-gamma t}, the degenerate solution at gamma = omega0."""

    params: OscillatorParams
    c1: float
    c2: float

    label = "critical"

    def __post_init__(self) -> None:
        if classify_regime(self.params) is not Regime.CRITICAL:
            raise RegimeError(
                "critical curve needs gamma = omega0, got "
                f"gamma={self.params.gamma}, omega0={self.params.omega0}"
            )
        for name in ("c1", "c2"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ParameterError(f"{name} must be finite")
            object.__setattr__(self, name, value)

    def x(self, t):
        t = np.asarray(t, dtype=np.float64)
        return (self.c1 + self.c2 * t) * np.exp(-self.params.gamma * t)

    def p(self, t):
        return self.dxdt(t)

    def dxdt(self, t):
        t = np.asarray(t, dtype=np.float64)
        gamma = self.params.gamma
        return (self.c2 - gamma * (self.c1 + self.c2 * t)) * np.exp(-gamma * t)

    def dpdt(self, t):
        t = np.asarray(t, dtype=np.float64)
        gamma = self.params.gamma
        return (gamma * gamma * (self.c1 + self.c2 * t) - 2.0 * gamma * self.c2) * np.exp(-gamma * t)

    def describe(self) -> str:
        return f"critical (gamma={self.params.gamma:g}, c1={self.c1:g}, c2={self.c2:g})"


@dataclass(frozen=True)
class OverdampedCurve(ClosedFormCurve):
    """x = c1 e^{l+ t} + c2 e^{l- t} with l+- = -gamma +- sqrt(gamma^2 - omega0^2)."""

    params: OscillatorParams
    c1: float
    c2: float

    label = "overdamped"

    def __post_init__(self) -> None:
        if self.params.gamma <= self.params.omega0:
            raise RegimeError(
                "overdamped curve needs gamma > omega0, got "
                f"gamma={self.params.gamma}, omega0={self.params.omega0}"
            )
        for name in ("c1", "c2"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ParameterError(f"{name} must be finite")
            object.__setattr__(self, name, value)

    def _rates(self) -> tuple[float, float]:
        split = decay_split(self.params)
        return -self.params.gamma + split, -self.params.gamma - split

    def x(self, t):
        t = np.asarray(t, dtype=np.float64)
        lam_plus, lam_minus = self._rates()
        return self.c1 * np.exp(lam_plus * t) + self.c2 * np.exp(lam_minus * t)

    def p(self, t):
        return self.dxdt(t)

    def dxdt(self, t):
        t = np.asarray(t, dtype=np.float64)
        lam_plus, lam_minus = self._rates()
        return (self.c1 * lam_plus * np.exp(lam_plus * t)
                + self.c2 * lam_minus * np.exp(lam_minus * t))

    def dpdt(self, t):
        t = np.asarray(t, dtype=np.float64)
        lam_plus, lam_minus = self._rates()
        return (self.c1 * lam_plus * lam_plus * np.exp(lam_plus * t)
                + self.c2 * lam_minus * lam_minus * np.exp(lam_minus * t))

    def describe(self) -> str:
        return (f"overdamped (omega0={self.params.omega0:g}, gamma={self.params.gamma:g}, "
                f"c1={self.c1:g}, c2={self.c2:g})")


def solve_underdamped(params: OscillatorParams, x0: float, p0: float) -> UnderdampedCurve:
    """Fit the underdamped family to x(0) = x0, dx/dt(0) = p0.

    Returns the unique representation with amplitude > 0 and phase in
    (-pi, pi]. The origin (0, 0) does not determine a phase and is rejected.
    """
    omega = pseudo_frequency(params)
    x0 = float(x0)
    p0 = float(p0)
    if x0 == 0.0 and p0 == 0.0:
        raise OriginError("the zero solution has no amplitude/phase representation")
    cos_part = x0
    sin_part = -(params.gamma * x0 + p0) / omega
    amplitude = math.hypot(cos_part, sin_part)
    phase = math.atan2(sin_part, cos_part)
    if phase == -math.pi:
        phase = math.pi
    elif phase == 0.0:
        phase = 0.0  # normalize -0.0 away
    return UnderdampedCurve(params, amplitude, phase)


def solve_critical(params: OscillatorParams, x0: float, p0: float) -> CriticalCurve:
    """Fit the critical family to x(0) = x0, dx/dt(0) = p0."""
    curve = CriticalCurve(params, float(x0), float(p0) + params.gamma * float(x0))
    return curve


def solve_overdamped(params: OscillatorParams, x0: float, p0: float) -> OverdampedCurve:
    """Fit the overdamped family to x(0) = x0, dx/dt(0) = p0."""
    split = decay_split(params)
    x0 = float(x0)
    p0 = float(p0)
    lam_minus = -params.gamma - split
    c1 = (p0 - lam_minus * x0) / (2.0 * split)
    c2 = x0 - c1
    return OverdampedCurve(params, c1, c2)


def closed_form_solution(params: OscillatorParams, x0: float, p0: float) -> ClosedFormCurve:
    """Solve the corrected equation of motion for the given initial state.

    Dispatches on the damping regime; undamped parameters use the
    underdamped family (omega = omega0).
    """
    regime = classify_regime(params)
    if regime in (Regime.UNDAMPED, Regime.UNDERDAMPED):
        return solve_underdamped(params, x0, p0)
    if regime is Regime.CRITICAL:
        return solve_critical(params, x0, p0)
    return solve_overdamped(params, x0, p0)


@dataclass(frozen=True)
class ComplexFormCheck:
    """Outcome of comparing z = x + ip against the two candidate complex forms."""

    z: complex
    phase_shifted: complex
    plain_exponential: complex
    matches_phase_shifted: bool
    differs_from_exponential: bool
    tol: float


def check_complex_form(amplitude: float, phase: float, gamma: float, t: float,
                       tol: float = 1e-12) -> ComplexFormCheck:
    """Compare z = x + ip on the corrected curve (omega0 = 1) with two complex forms.

    The true z equals A e^{-gamma t} [cos(omega t + phase) - i sin(omega t +
    phase + beta)] where sin(beta) = gamma and cos(beta) = omega: damping
    tilts the momentum component by beta. The plain exponential
    A e^{-gamma t - i(omega t + phase)} has no tilt, so it matches z only at
    gamma = 0; the check reports both comparisons at tolerance tol.
    """
    amplitude = float(amplitude)
    phase = float(phase)
    gamma = float(gamma)
    t = float(t)
    if not math.isfinite(amplitude) or amplitude <= 0.0:
        raise ParameterError(f"amplitude must be finite and > 0, got {amplitude!r}")
    if not math.isfinite(gamma) or gamma < 0.0:
        raise ParameterError(f"gamma must be finite and >= 0, got {gamma!r}")
    if gamma >= 1.0:
        raise RegimeError(f"the complex form is normalized to omega0 = 1, needs gamma < 1, got {gamma!r}")
    if not (math.isfinite(phase) and math.isfinite(t) and math.isfinite(tol)) or tol < 0.0:
        raise ParameterError("phase, t and tol must be finite (tol >= 0)")

    omega = math.sqrt((1.0 - gamma) * (1.0 + gamma))
    beta = math.asin(gamma)
    angle = omega * t + phase
    envelope = amplitude * math.exp(-gamma * t)
    x = envelope * math.cos(angle)
    p = -envelope * (gamma * math.cos(angle) + omega * math.sin(angle))
    z = complex(x, p)
    phase_shifted = envelope * complex(math.cos(angle), -math.sin(angle + beta))
    plain_exponential = amplitude * cmath.exp(complex(-gamma * t, -angle))
    return ComplexFormCheck(
        z=z,
        phase_shifted=phase_shifted,
        plain_exponential=plain_exponential,
        matches_phase_shifted=abs(z - phase_shifted) <= tol,
        differs_from_exponential=abs(z - plain_exponential) > tol,
        tol=float(tol),
    )
