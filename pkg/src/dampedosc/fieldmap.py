"""Phase-plane field evaluation, branch-cut detection, and export.

Fields are sampled at cell centers of a regular grid, never at nodes: a cut
along the negative x axis then always falls *between* two rows of samples,
which keeps the jump detector well-posed. Cells whose center is exactly the
origin are masked instead of poisoning the grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import OscillatorParams, pseudo_frequency
from .errors import ParameterError, SingularityError

#: Field kinds accepted by evaluate_field, in kernel-code order.
FIELD_KINDS = ("spiral", "cos-spiral", "scaled-spiral", "log-energy")

_KIND_CODES = {
    "spiral": kernels.SPIRAL,
    "cos-spiral": kernels.COS_SPIRAL,
    "scaled-spiral": kernels.SCALED_SPIRAL,
    "log-energy": kernels.LOG_ENERGY,
}


@dataclass(frozen=True)
class GridSpec:
    """A regular cell grid over [x_min, x_max] x [p_min, p_max].

    nx by ny cells; samples are taken at cell centers
    x_min + (i + 0.5) * cell_width, so the bounds themselves are never
    sampled.
    """

    x_min: float = -2.0
    x_max: float = 2.0
    p_min: float = -2.0
    p_max: float = 2.0
    nx: int = 401
    ny: int = 401

    def __post_init__(self) -> None:
        for name in ("x_min", "x_max", "p_min", "p_max"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {getattr(self, name)!r}")
            object.__setattr__(self, name, value)
        for name in ("nx", "ny"):
            count = getattr(self, name)
            if int(count) != count or int(count) < 2:
                raise ParameterError(f"{name} must be an integer >= 2, got {count!r}")
            object.__setattr__(self, name, int(count))
        if not (self.x_min < self.x_max and self.p_min < self.p_max):
            raise ParameterError("grid bounds must satisfy x_min < x_max and p_min < p_max")

    @property
    def cell_width(self) -> float:
        return (self.x_max - self.x_min) / self.nx

    @property
    def cell_height(self) -> float:
        return (self.p_max - self.p_min) / self.ny

    @property
    def x_centers(self) -> np.ndarray:
        return self.x_min + (np.arange(self.nx) + 0.5) * self.cell_width

    @property
    def p_centers(self) -> np.ndarray:
        return self.p_min + (np.arange(self.ny) + 0.5) * self.cell_height


@dataclass(frozen=True)
class FieldGrid:
    """Field values sampled on a GridSpec; values[i, j] sits at
    (x_centers[i], p_centers[j]). Masked cells hold NaN and valid=False."""

    spec: GridSpec
    kind: str
    params: OscillatorParams
    values: np.ndarray
    valid: np.ndarray

    def __post_init__(self) -> None:
        shape = (self.spec.nx, self.spec.ny)
        values = np.array(self.values, dtype=np.float64, copy=True)
        valid = np.array(self.valid, dtype=bool, copy=True)
        if values.shape != shape or valid.shape != shape:
            raise ParameterError(f"values and valid must have shape {shape}")
        if self.kind not in FIELD_KINDS:
            raise ParameterError(f"kind must be one of {FIELD_KINDS}, got {self.kind!r}")
        values.setflags(write=False)
        valid.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "valid", valid)


def evaluate_field(kind: str, params: OscillatorParams, spec: GridSpec | None = None) -> FieldGrid:
    """Sample one invariant at every cell center of the grid.

    The spiral kinds require gamma > 0 (SingularityError otherwise); the
    log-energy kind requires below-critical damping. Cells at the exact
    origin are masked, everything else is evaluated.
    """
    if kind not in _KIND_CODES:
        raise ParameterError(f"kind must be one of {FIELD_KINDS}, got {kind!r}")
    if spec is None:
        spec = GridSpec()
    if kind in ("spiral", "cos-spiral") and params.gamma == 0.0:
        raise SingularityError(
            f"the {kind} field is singular at gamma = 0; use scaled-spiral instead"
        )
    if kind == "log-energy":
        pseudo_frequency(params)  # raises RegimeError at or above critical damping
    values, valid = kernels.grid_field(
        _KIND_CODES[kind], params.omega0, params.gamma, spec.x_centers, spec.p_centers
    )
    return FieldGrid(spec, kind, params, values, valid)


@dataclass(frozen=True)
class BranchJumpResult:
    """Outcome of the branch-cut detector.

    jump is the median trend-corrected step across p = 0 over columns with
    x < 0; flagged lists the ((i, j_below), (i, j_above)) straddling cell
    index pairs whose corrected step exceeded the threshold, in any column.
    A field smooth across the axis flags nothing except, possibly, cells
    hugging the origin, where every one of these fields varies violently.
    """

    jump: float
    flagged: tuple
    row_below: int
    row_above: int
    threshold: float


def detect_branch_jump(grid: FieldGrid, flag_threshold: float = 0.01) -> BranchJumpResult:
    """Estimate the field's step across the negative x axis.

    For each column the raw step between the two rows straddling p = 0 is
    corrected by the mean of the one-sided steps just above and just below,
    removing the smooth vertical trend; the estimate is the median of the
    corrected steps over columns with x < 0 (median, so a few masked or wild
    columns cannot skew it). The grid must straddle p = 0 with at least two
    rows on each side and contain columns at x < 0.
    """
    if not (math.isfinite(flag_threshold) and flag_threshold >= 0.0):
        raise ParameterError(f"flag_threshold must be finite and >= 0, got {flag_threshold!r}")
    p = grid.spec.p_centers
    if np.any(p == 0.0):
        raise ParameterError(
            "a sample row lies exactly on p = 0; use an even row count so the grid straddles the axis"
        )
    j_above = int(np.searchsorted(p, 0.0))
    j_below = j_above - 1
    if j_below < 1 or j_above > grid.spec.ny - 2:
        raise ParameterError("grid must straddle p = 0 with at least two rows on each side")
    x = grid.spec.x_centers
    if not np.any(x < 0.0):
        raise ParameterError("grid has no columns at x < 0, where the cut lies")

    values = grid.values
    window_valid = np.all(grid.valid[:, j_below - 1:j_above + 2], axis=1)
    raw = values[:, j_above] - values[:, j_below]
    trend_above = values[:, j_above + 1] - values[:, j_above]
    trend_below = values[:, j_below] - values[:, j_below - 1]
    corrected = raw - 0.5 * (trend_above + trend_below)

    usable = window_valid & (x < 0.0)
    if not np.any(usable):
        raise ParameterError("no usable columns at x < 0 (all masked)")
    jump = float(np.median(corrected[usable]))

    flagged = tuple(
        ((int(i), j_below), (int(i), j_above))
        for i in np.nonzero(window_valid & (np.abs(corrected) > flag_threshold))[0]
    )
    return BranchJumpResult(jump, flagged, j_below, j_above, float(flag_threshold))


def write_grid_csv(grid: FieldGrid, path) -> None:
    """Write the grid as CSV with header x,p,value,valid.

    Rows iterate x-major, p-minor, one row per cell; masked cells leave the
    value column empty and set valid to 0. Numbers use 17 significant digits,
    so the file round-trips doubles exactly.
    """
    xs = grid.spec.x_centers
    ps = grid.spec.p_centers
    with open(path, "w", newline="") as fh:
        fh.write("x,p,value,valid\n")
        for i in range(grid.spec.nx):
            for j in range(grid.spec.ny):
                if grid.valid[i, j]:
                    fh.write(f"{xs[i]:.17g},{ps[j]:.17g},{grid.values[i, j]:.17g},1\n")
                else:
                    fh.write(f"{xs[i]:.17g},{ps[j]:.17g},,0\n")


_COLOR_STOPS = (
    (0.0, (68, 1, 84)),
    (0.25, (59, 82, 139)),
    (0.5, (33, 145, 140)),
    (0.75, (94, 201, 98)),
    (1.0, (253, 231, 37)),
)


def _heat_color(u: float) -> str:
    for (u0, c0), (u1, c1) in zip(_COLOR_STOPS, _COLOR_STOPS[1:]):
        if u <= u1:
            f = 0.0 if u1 == u0 else (u - u0) / (u1 - u0)
            r, g, b = (round(a + f * (b_ - a)) for a, b_ in zip(c0, c1))
            return f"#{r:02x}{g:02x}{b:02x}"
    r, g, b = _COLOR_STOPS[-1][1]
    return f"#{r:02x}{g:02x}{b:02x}"


def write_grid_svg(grid: FieldGrid, path) -> None:
    """Render the grid as a self-contained SVG heatmap.

    Deterministic output: the same grid always produces byte-identical SVG.
    Masked cells are left unpainted (background shows through). Horizontal
    runs of equal color are merged into single rectangles to keep files small.
    """
    margin_left, margin_top, margin_right, margin_bottom = 64.0, 42.0, 20.0, 46.0
    plot_w, plot_h = 480.0, 480.0
    width = margin_left + plot_w + margin_right
    height = margin_top + plot_h + margin_bottom
    spec = grid.spec

    finite = grid.values[grid.valid]
    if finite.size:
        vmin = float(np.min(finite))
        vmax = float(np.max(finite))
    else:
        vmin = vmax = math.nan
    span = vmax - vmin

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect width="{width:.0f}" height="{height:.0f}" fill="#ffffff"/>',
        f'<title>{grid.kind} field</title>',
    ]

    cell_w = plot_w / spec.nx
    cell_h = plot_h / spec.ny
    for j in range(spec.ny - 1, -1, -1):
        y = margin_top + plot_h - (j + 1) * cell_h
        i = 0
        while i < spec.nx:
            if not grid.valid[i, j]:
                i += 1
                continue
            value = grid.values[i, j]
            u = 0.5 if span == 0.0 else min(max((value - vmin) / span, 0.0), 1.0)
            color = _heat_color(u)
            run = i + 1
            while run < spec.nx and grid.valid[run, j]:
                v2 = grid.values[run, j]
                u2 = 0.5 if span == 0.0 else min(max((v2 - vmin) / span, 0.0), 1.0)
                if _heat_color(u2) != color:
                    break
                run += 1
            x_px = margin_left + i * cell_w
            parts.append(
                f'<rect x="{x_px:.3f}" y="{y:.3f}" width="{(run - i) * cell_w:.3f}" '
                f'height="{cell_h:.3f}" fill="{color}"/>'
            )
            i = run

    axis_y = margin_top + plot_h
    parts += [
        f'<rect x="{margin_left:.1f}" y="{margin_top:.1f}" width="{plot_w:.1f}" '
        f'height="{plot_h:.1f}" fill="none" stroke="#000000" stroke-width="1"/>',
        f'<text x="{margin_left + plot_w / 2:.1f}" y="{height - 8:.1f}" font-family="monospace" '
        f'font-size="14" text-anchor="middle">x</text>',
        f'<text x="16" y="{margin_top + plot_h / 2:.1f}" font-family="monospace" '
        f'font-size="14" text-anchor="middle">p</text>',
        f'<text x="{margin_left:.1f}" y="{axis_y + 16:.1f}" font-family="monospace" '
        f'font-size="11" text-anchor="middle">{spec.x_min:.6g}</text>',
        f'<text x="{margin_left + plot_w:.1f}" y="{axis_y + 16:.1f}" font-family="monospace" '
        f'font-size="11" text-anchor="middle">{spec.x_max:.6g}</text>',
        f'<text x="{margin_left - 6:.1f}" y="{axis_y:.1f}" font-family="monospace" '
        f'font-size="11" text-anchor="end">{spec.p_min:.6g}</text>',
        f'<text x="{margin_left - 6:.1f}" y="{margin_top + 10:.1f}" font-family="monospace" '
        f'font-size="11" text-anchor="end">{spec.p_max:.6g}</text>',
        f'<text x="{margin_left:.1f}" y="24" font-family="monospace" font-size="13">'
        f'{grid.kind} field  omega0={grid.params.omega0:.6g} gamma={grid.params.gamma:.6g}  '
        f'range [{vmin:.6g}, {vmax:.6g}]</text>',
        "</svg>",
    ]
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(parts) + "\n")


def export_grid(grid: FieldGrid, path, fmt: str = "csv") -> None:
    """Write the grid to path as "csv" or "svg"."""
    if fmt == "csv":
        write_grid_csv(grid, path)
    elif fmt == "svg":
        write_grid_svg(grid, path)
    else:
        raise ParameterError(f"fmt must be 'csv' or 'svg', got {fmt!r}")
