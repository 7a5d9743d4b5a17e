"""Constant-load vs Otto efficiency ratio over (temperature ratio, expansion ratio)."""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .cycles import (
    efficiency_cl_ideal,
    efficiency_otto_ideal,
    max_expansion_ratio_cl,
    max_expansion_ratio_otto,
)
from .errors import DomainError, EmptyRegionError
from .thermo import check_gas_consistency

GAS_RTOL = 1e-9
NA = "NA"

DEFAULT_X_RANGE = (1.05, 2.0)
DEFAULT_R_RANGE = (1.01, 2.0)
DEFAULT_RESOLUTION = 200


@dataclass(frozen=True, eq=False)
class RatioGrid:
    """``cells[i, j]`` is eta_CL/eta_O at (x_axis[i], r_axis[j]); NaN marks infeasible."""

    x_axis: np.ndarray
    r_axis: np.ndarray
    cells: np.ndarray
    gamma: float
    c_v: float

    @property
    def feasible(self) -> np.ndarray:
        return ~np.isnan(self.cells)

    @property
    def shape(self) -> tuple[int, int]:
        return self.cells.shape


def _cell(x: float, r: float, gamma: float, c_v: float) -> float:
    if r >= max_expansion_ratio_cl(x) or r >= max_expansion_ratio_otto(x, gamma):
        return math.nan
    return efficiency_cl_ideal(x, r, c_v) / efficiency_otto_ideal(r, gamma)


def sweep_ratio_grid(
    x_min: float = DEFAULT_X_RANGE[0],
    x_max: float = DEFAULT_X_RANGE[1],
    r_min: float = DEFAULT_R_RANGE[0],
    r_max: float = DEFAULT_R_RANGE[1],
    nx: int = DEFAULT_RESOLUTION,
    nr: int = DEFAULT_RESOLUTION,
    gamma: float = 1.4,
    c_v: float = 2.5,
    workers: int = 1,
) -> RatioGrid:
    """Evaluate the efficiency ratio on uniform, endpoint-inclusive axes.

    Rows are evaluated independently; with ``workers > 1`` they run on a
    thread pool and are reassembled in row order.
    """
    if not 1 < x_min < x_max:
        raise DomainError(f"need 1 < x_min < x_max, got {x_min}, {x_max}")
    if not 1 < r_min < r_max:
        raise DomainError(f"need 1 < r_min < r_max, got {r_min}, {r_max}")
    if nx < 2 or nr < 2:
        raise DomainError(f"need at least 2 points per axis, got nx={nx}, nr={nr}")
    check_gas_consistency(gamma, c_v, GAS_RTOL)

    x_axis = np.linspace(x_min, x_max, nx)
    r_axis = np.linspace(r_min, r_max, nr)
    rs = [float(r) for r in r_axis]

    def row(x):
        return [_cell(float(x), r, gamma, c_v) for r in rs]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, x_axis))
    else:
        rows = [row(x) for x in x_axis]
    return RatioGrid(x_axis, r_axis, np.array(rows, dtype=float), gamma, c_v)


def _fmt(v: float) -> str:
    return NA if math.isnan(v) else f"{v:.9g}"


def write_grid_csv(g: RatioGrid, path) -> Path:
    """Rows are x values, columns r values; infeasible cells are ``NA``."""
    path = Path(path)
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["x\\r"] + [_fmt(r) for r in g.r_axis])
            for x, cells in zip(g.x_axis, g.cells):
                w.writerow([_fmt(x)] + [_fmt(v) for v in cells])
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write grid CSV: {exc.strerror}", str(path)) from exc
    return path


def read_grid_csv(path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Inverse of :func:`write_grid_csv`; returns (x_axis, r_axis, cells)."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    r_axis = np.array([float(v) for v in rows[0][1:]])
    x_axis = np.array([float(row[0]) for row in rows[1:]])
    cells = np.array([[math.nan if v == NA else float(v) for v in row[1:]] for row in rows[1:]])
    return x_axis, r_axis, cells


def _hex_to_rgb(color: str) -> tuple[int, int, int]:
    c = color.lstrip("#")
    if len(c) != 6:
        raise DomainError(f"expected #rrggbb colour, got {color!r}")
    return tuple(int(c[i : i + 2], 16) for i in (0, 2, 4))


def interpolate_color(value: float, vmin: float, vmax: float, low: str, high: str) -> str:
    """Linear RGB interpolation, clamped to [vmin, vmax]."""
    t = 0.0 if vmax == vmin else (value - vmin) / (vmax - vmin)
    t = min(1.0, max(0.0, t))
    lo, hi = _hex_to_rgb(low), _hex_to_rgb(high)
    rgb = (round(a + t * (b - a)) for a, b in zip(lo, hi))
    return "#{:02x}{:02x}{:02x}".format(*rgb)


INFEASIBLE_FILL = "#ffffff"


def render_heatmap_svg(
    g: RatioGrid,
    path,
    color_scale: tuple[float, float] = (0.0, 1.0),
    low_color: str = "#440154",
    high_color: str = "#fde725",
    cell_px: float = 3.0,
) -> Path:
    """Write an SVG heat map: r along the horizontal axis, x increasing upward."""
    if not g.feasible.any():
        raise EmptyRegionError("grid has no feasible cells")
    vmin, vmax = color_scale
    nx, nr = g.shape
    margin_l, margin_b, margin_t, margin_r = 70.0, 50.0, 20.0, 20.0
    width = margin_l + nr * cell_px + margin_r
    height = margin_t + nx * cell_px + margin_b
    plot_bottom = margin_t + nx * cell_px

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:g}" height="{height:g}" viewBox="0 0 {width:g} {height:g}">',
        '<g id="cells" shape-rendering="crispEdges">',
    ]
    for i in range(nx):
        y = plot_bottom - (i + 1) * cell_px
        for j in range(nr):
            v = g.cells[i, j]
            if math.isnan(v):
                fill, cls = INFEASIBLE_FILL, "cell infeasible"
            else:
                fill, cls = interpolate_color(v, vmin, vmax, low_color, high_color), "cell"
            xpx = margin_l + j * cell_px
            out.append(
                f'<rect class="{cls}" data-i="{i}" data-j="{j}" x="{xpx:g}" y="{y:g}" '
                f'width="{cell_px:g}" height="{cell_px:g}" fill="{fill}"/>'
            )
    out.append("</g>")
    right = margin_l + nr * cell_px
    out += [
        '<g id="axes" stroke="#000000" stroke-width="1">',
        f'<line x1="{margin_l:g}" y1="{plot_bottom:g}" x2="{right:g}" y2="{plot_bottom:g}"/>',
        f'<line x1="{margin_l:g}" y1="{margin_t:g}" x2="{margin_l:g}" y2="{plot_bottom:g}"/>',
        "</g>",
        '<g id="labels" font-family="sans-serif" font-size="12" fill="#000000">',
        f'<text x="{margin_l:g}" y="{plot_bottom + 15:g}">{g.r_axis[0]:.3g}</text>',
        f'<text x="{right:g}" y="{plot_bottom + 15:g}" text-anchor="end">{g.r_axis[-1]:.3g}</text>',
        f'<text x="{margin_l - 5:g}" y="{plot_bottom:g}" text-anchor="end">{g.x_axis[0]:.3g}</text>',
        f'<text x="{margin_l - 5:g}" y="{margin_t + 10:g}" text-anchor="end">{g.x_axis[-1]:.3g}</text>',
        f'<text x="{(margin_l + right) / 2:g}" y="{height - 10:g}" text-anchor="middle">'
        "r (expansion ratio)</text>",
        f'<text x="15" y="{(margin_t + plot_bottom) / 2:g}" text-anchor="middle" '
        f'transform="rotate(-90 15 {(margin_t + plot_bottom) / 2:g})">x (temperature ratio)</text>',
        "</g>",
        "</svg>",
    ]
    path = Path(path)
    try:
        path.write_text("\n".join(out) + "\n", encoding="utf-8")
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write heat map SVG: {exc.strerror}", str(path)) from exc
    return path
