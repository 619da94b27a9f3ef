"""Oscillator parameters, damping-regime classification, and phase-space containers."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, RegimeError

#: Default relative tolerance for deciding the borderline regimes.
DEFAULT_REGIME_TOL = 1e-9


class Regime(enum.IntEnum):
    """Damping classes, ordered by increasing damping."""

    UNDAMPED = 0
    UNDERDAMPED = 1
    CRITICAL = 2
    OVERDAMPED = 3

    def __str__(self) -> str:
        return self.name.capitalize()


@dataclass(frozen=True)
class OscillatorParams:
    """Natural frequency omega0 > 0 and damping rate gamma >= 0.

    gamma is the decay rate of the solution envelope e^{-gamma*t}; the
    corrected equation of motion therefore carries a friction term 2*gamma*p
    (see dynamics.Convention for the bookkeeping).
    """

    omega0: float
    gamma: float

    def __post_init__(self) -> None:
        omega0 = float(self.omega0)
        gamma = float(self.gamma)
        if not math.isfinite(omega0) or omega0 <= 0.0:
            raise ParameterError(f"omega0 must be finite and > 0, got {self.omega0!r}")
        if not math.isfinite(gamma) or gamma < 0.0:
            raise ParameterError(f"gamma must be finite and >= 0, got {self.gamma!r}")
        object.__setattr__(self, "omega0", omega0)
        object.__setattr__(self, "gamma", gamma)


def classify_regime(params: OscillatorParams, tol: float = DEFAULT_REGIME_TOL) -> Regime:
    """Classify the damping regime.

    The borderline cases win ties: gamma <= tol*omega0 is UNDAMPED and
    |gamma - omega0| <= tol*omega0 is CRITICAL, checked in that order, so a
    tiny nonzero gamma classifies as undamped rather than underdamped.
    """
    if not (math.isfinite(tol) and tol >= 0.0):
        raise ParameterError(f"tol must be finite and >= 0, got {tol!r}")
    scale = tol * params.omega0
    if params.gamma <= scale:
        return Regime.UNDAMPED
    if abs(params.gamma - params.omega0) <= scale:
        return Regime.CRITICAL
    if params.gamma < params.omega0:
        return Regime.UNDERDAMPED
    return Regime.OVERDAMPED


def pseudo_frequency(params: OscillatorParams) -> float:
    """Oscillation frequency under damping, sqrt(omega0^2 - gamma^2).

    Defined below critical damping only. The factored form keeps full
    precision as gamma approaches omega0.
    """
    if params.gamma >= params.omega0:
        raise RegimeError(
            "pseudo-frequency needs gamma < omega0, got "
            f"gamma={params.gamma}, omega0={params.omega0}"
        )
    return math.sqrt((params.omega0 - params.gamma) * (params.omega0 + params.gamma))


def decay_split(params: OscillatorParams) -> float:
    """Half-separation of the two decay rates above critical damping.

    sqrt(gamma^2 - omega0^2); the overdamped decay rates are -gamma +/- this.
    """
    if params.gamma <= params.omega0:
        raise RegimeError(
            "decay split needs gamma > omega0, got "
            f"gamma={params.gamma}, omega0={params.omega0}"
        )
    return math.sqrt((params.gamma - params.omega0) * (params.gamma + params.omega0))


@dataclass(frozen=True)
class PhaseState:
    """A single phase-space sample (t, x, p) with p = dx/dt."""

    t: float
    x: float
    p: float

    def __post_init__(self) -> None:
        for name in ("t", "x", "p"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {getattr(self, name)!r}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class Trajectory:
    """Time-ordered phase-space samples with the parameters that produced them.

    Arrays are stored as read-only float64 copies; times must be strictly
    increasing and everything finite.
    """

    params: OscillatorParams
    t: np.ndarray
    x: np.ndarray
    p: np.ndarray

    def __post_init__(self) -> None:
        arrays = {}
        for name in ("t", "x", "p"):
            arr = np.array(getattr(self, name), dtype=np.float64, copy=True)
            if arr.ndim != 1:
                raise ParameterError(f"{name} must be one-dimensional")
            if not np.all(np.isfinite(arr)):
                raise ParameterError(f"non-finite values in {name}")
            arrays[name] = arr
        if arrays["t"].size == 0:
            raise ParameterError("a trajectory needs at least one sample")
        if arrays["x"].shape != arrays["t"].shape or arrays["p"].shape != arrays["t"].shape:
            raise ParameterError("t, x, p must have identical shapes")
        if arrays["t"].size > 1 and not np.all(np.diff(arrays["t"]) > 0.0):
            raise ParameterError("sample times must be strictly increasing")
        for name, arr in arrays.items():
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def __len__(self) -> int:
        return int(self.t.size)

    def state(self, index: int) -> PhaseState:
        """The sample at the given index as a PhaseState."""
        return PhaseState(float(self.t[index]), float(self.x[index]), float(self.p[index]))
