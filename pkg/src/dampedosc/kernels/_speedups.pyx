# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numeric kernels.

Mirrors kernels._ref operation for operation; see that module for the
documented contracts. The RK4 stage arithmetic matches the reference order
exactly so both backends produce bit-identical trajectories.
"""

from libc.math cimport M_PI, NAN, atan2, cos, fabs, isfinite, log, sqrt

import numpy as np

from dampedosc.errors import IntegrationError, SamplingError

NAME = "compiled"

SPIRAL = 0
COS_SPIRAL = 1
SCALED_SPIRAL = 2
LOG_ENERGY = 3


def rk4_path(double kx, double kp, double x0, double p0, double dt,
             Py_ssize_t n_steps, double last_dt):
    """Integrate dx/dt = p, dp/dt = -(kx*x + kp*p) with classic RK4."""
    cdef Py_ssize_t extra = 1 if last_dt > 0.0 else 0
    cdef Py_ssize_t n = n_steps + extra + 1
    xs_arr = np.empty(n, dtype=np.float64)
    ps_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] xs = xs_arr
    cdef double[::1] ps = ps_arr
    cdef double x = x0, p = p0
    cdef double h, k1x, k1p, k2x, k2p, k3x, k3p, k4x, k4p, ax, ap, bx, bp, cx, cp
    cdef Py_ssize_t i
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
        if not (isfinite(x) and isfinite(p)):
            raise IntegrationError(f"non-finite state at step {i}")
        xs[i] = x
        ps[i] = p
    return xs_arr, ps_arr


def sheet_numbers(principal):
    """Integer sheet counts that make a principal-angle series continuous."""
    theta_arr = np.ascontiguousarray(principal, dtype=np.float64)
    if theta_arr.ndim != 1:
        raise SamplingError("principal angles must be one-dimensional")
    cdef double[::1] theta = theta_arr
    cdef Py_ssize_t n = theta.shape[0]
    n_arr = np.zeros(n, dtype=np.int64)
    cdef long long[::1] out = n_arr
    cdef long long total = 0
    cdef double d
    cdef Py_ssize_t i
    for i in range(1, n):
        d = theta[i] - theta[i - 1]
        if fabs(d) == M_PI:
            raise SamplingError(
                f"ambiguous half-turn jump between samples {i - 1} and {i}; "
                "sample more densely"
            )
        if d > M_PI:
            total -= 1
        elif d < -M_PI:
            total += 1
        out[i] = total
    return n_arr


def grid_field(int code, double omega0, double gamma, x_centers, p_centers):
    """Evaluate one field over the outer grid of x and p sample points."""
    if code < SPIRAL or code > LOG_ENERGY:
        raise ValueError(f"unknown field code {code!r}")
    x_arr = np.ascontiguousarray(x_centers, dtype=np.float64)
    p_arr = np.ascontiguousarray(p_centers, dtype=np.float64)
    cdef double[::1] xs = x_arr
    cdef double[::1] ps = p_arr
    cdef Py_ssize_t nx = xs.shape[0], ny = ps.shape[0]
    values_arr = np.empty((nx, ny), dtype=np.float64)
    valid_arr = np.ones((nx, ny), dtype=np.uint8)
    cdef double[:, ::1] values = values_arr
    cdef unsigned char[:, ::1] valid = valid_arr
    cdef double omega = 0.0
    if code == LOG_ENERGY:
        omega = sqrt((omega0 - gamma) * (omega0 + gamma))
    cdef double x, p, r2, theta, v, w, wx, phi
    cdef Py_ssize_t i, j
    for i in range(nx):
        x = xs[i]
        for j in range(ny):
            p = ps[j]
            r2 = x * x + p * p
            if r2 == 0.0:
                values[i, j] = NAN
                valid[i, j] = 0
                continue
            if code == LOG_ENERGY:
                w = gamma * x + p
                wx = omega * x
                phi = atan2(w, wx)
                if phi == -M_PI:
                    phi = M_PI
                v = log(wx * wx + w * w) - 2.0 * (gamma / omega) * phi
            else:
                theta = atan2(p, x)
                if theta == -M_PI:
                    theta = M_PI
                if code == SPIRAL:
                    v = theta + 0.5 * log(r2) / gamma
                elif code == COS_SPIRAL:
                    v = cos(theta + 0.5 * log(r2) / gamma)
                else:
                    v = gamma * theta + 0.5 * log(r2)
            values[i, j] = v
    return values_arr, valid_arr.view(np.bool_)
