"""Pure-Python reference kernels.

This is the fallback used when the compiled extension is unavailable, and the
ground truth the extension is tested against. The RK4 stage arithmetic is
written in the exact operation order the extension uses, so both backends
produce bit-identical trajectories.
"""

import math

import numpy as np

from ..errors import IntegrationError, SamplingError

NAME = "python"

_TWO_PI = 2.0 * math.pi

# Field codes shared with the compiled kernel.
SPIRAL = 0
COS_SPIRAL = 1
SCALED_SPIRAL = 2
LOG_ENERGY = 3


def rk4_path(kx, kp, x0, p0, dt, n_steps, last_dt):
    """Integrate dx/dt = p, dp/dt = -(kx*x + kp*p) with classic RK4.

    Takes n_steps steps of size dt, then one extra step of size last_dt if it
    is positive. Returns (x, p) float64 arrays that include the initial state.
    """
    extra = 1 if last_dt > 0.0 else 0
    n = int(n_steps) + extra + 1
    xs = np.empty(n, dtype=np.float64)
    ps = np.empty(n, dtype=np.float64)
    x = float(x0)
    p = float(p0)
    xs[0] = x
    ps[0] = p
    for i in range(1, n):
        h = dt if i <= n_steps else last_dt
        k1x = p
        k1p = -(kx * x + kp * p)
        ax = x + 0.5 * h * k1x
        ap = p + 0.5 * h * k1p
        k2x = ap
        k2p = -(kx * ax + kp * ap)
        bx = x + 0.5 * h * k2x
        bp = p + 0.5 * h * k2p
        k3x = bp
        k3p = -(kx * bx + kp * bp)
        cx = x + h * k3x
        cp = p + h * k3p
        k4x = cp
        k4p = -(kx * cx + kp * cp)
        x = x + (h / 6.0) * (k1x + 2.0 * (k2x + k3x) + k4x)
        p = p + (h / 6.0) * (k1p + 2.0 * (k2p + k3p) + k4p)
        if not (math.isfinite(x) and math.isfinite(p)):
            raise IntegrationError(f"non-finite state at step {i}")
        xs[i] = x
        ps[i] = p
    return xs, ps


def sheet_numbers(principal):
    """Integer sheet counts that make a principal-angle series continuous.

    n[0] = 0 and n[i] changes by -1/0/+1 so that principal[i] + 2*pi*n[i]
    is the representative closest to the previous unwrapped value (minimal
    jump). A consecutive difference of exactly pi in magnitude is ambiguous
    and raises SamplingError.
    """
    theta = np.ascontiguousarray(principal, dtype=np.float64)
    if theta.ndim != 1:
        raise SamplingError("principal angles must be one-dimensional")
    d = np.diff(theta)
    ambiguous = np.nonzero(np.abs(d) == math.pi)[0]
    if ambiguous.size:
        i = int(ambiguous[0])
        raise SamplingError(
            f"ambiguous half-turn jump between samples {i} and {i + 1}; sample more densely"
        )
    steps = (d < -math.pi).astype(np.int64) - (d > math.pi).astype(np.int64)
    n = np.zeros(theta.size, dtype=np.int64)
    np.cumsum(steps, out=n[1:])
    return n


def grid_field(code, omega0, gamma, x_centers, p_centers):
    """Evaluate one field over the outer grid of x and p sample points.

    Returns (values, valid): values[i, j] is the field at (x_centers[i],
    p_centers[j]); cells at the exact origin get NaN and valid=False.
    Precondition checks (gamma > 0 for the spiral kinds, regime for
    LOG_ENERGY) belong to the caller.
    """
    x = np.ascontiguousarray(x_centers, dtype=np.float64)[:, None]
    p = np.ascontiguousarray(p_centers, dtype=np.float64)[None, :]
    r2 = x * x + p * p
    valid = r2 > 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        if code in (SPIRAL, COS_SPIRAL, SCALED_SPIRAL):
            theta = np.arctan2(np.broadcast_to(p, r2.shape), np.broadcast_to(x, r2.shape))
            theta = np.where(theta == -math.pi, math.pi, theta)
            log_r = 0.5 * np.log(r2)
            if code == SPIRAL:
                values = theta + log_r / gamma
            elif code == COS_SPIRAL:
                values = np.cos(theta + log_r / gamma)
            else:
                values = gamma * theta + log_r
        elif code == LOG_ENERGY:
            omega = math.sqrt((omega0 - gamma) * (omega0 + gamma))
            w = gamma * x + p
            wx = omega * x
            phi = np.arctan2(np.broadcast_to(w, r2.shape), np.broadcast_to(wx, r2.shape))
            phi = np.where(phi == -math.pi, math.pi, phi)
            values = np.log(wx * wx + w * w) - 2.0 * (gamma / omega) * phi
        else:
            raise ValueError(f"unknown field code {code!r}")
    values = np.where(valid, values, np.nan)
    return values, valid
