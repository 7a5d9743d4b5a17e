import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from softheat.compare import (
    INFEASIBLE_FILL,
    interpolate_color,
    read_grid_csv,
    render_heatmap_svg,
    sweep_ratio_grid,
    write_grid_csv,
)
from softheat.cycles import efficiency_cl_ideal, efficiency_otto_ideal, max_expansion_ratio_cl
from softheat.errors import ConsistencyError, DomainError, EmptyRegionError

# mpmath
RATIO_15_12 = 0.47393714053147678
RATIO_15_1001 = 0.99650621649861113


def test_single_cell_value():
    g = sweep_ratio_grid(1.5, 2.0, 1.2, 1.3, 2, 2)
    assert g.cells[0, 0] == pytest.approx(RATIO_15_12, rel=1e-12)


def test_near_one_value():
    ratio = efficiency_cl_ideal(1.5, 1.001, 2.5) / efficiency_otto_ideal(1.001, 1.4)
    assert ratio == pytest.approx(RATIO_15_1001, rel=1e-10)


@pytest.mark.parametrize("x", [1.05, 1.2, 1.5, 2.0, 3.0])
def test_ratio_tends_to_one(x):
    # eta_CL ~ (r - 1)/c_v and eta_O ~ (gamma - 1)(r - 1), so the quotient -> c_v (gamma - 1) = 1
    gaps = []
    for eps in (1e-3, 1e-5, 1e-7):
        r = 1 + eps
        gaps.append(1 - efficiency_cl_ideal(x, r, 2.5) / efficiency_otto_ideal(r, 1.4))
    assert all(g > 0 for g in gaps)
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 1e-4


@pytest.mark.parametrize("gamma,n", [(1.4, 200), (5 / 3, 200), (1.4, 500)])
def test_domination(gamma, n):
    g = sweep_ratio_grid(nx=n, nr=n, gamma=gamma, c_v=1 / (gamma - 1))
    feas = g.cells[g.feasible]
    assert feas.size > 0
    assert np.all(feas > 0)
    assert np.all(feas <= 1 + 1e-9)


def test_mask_matches_bound():
    g = sweep_ratio_grid(nx=60, nr=70)
    X, R = np.meshgrid(g.x_axis, g.r_axis, indexing="ij")
    expected = R < np.vectorize(max_expansion_ratio_cl)(X)
    assert np.array_equal(g.feasible, expected)


def test_axes_endpoint_inclusive():
    g = sweep_ratio_grid(1.1, 1.9, 1.01, 1.5, 5, 7)
    assert g.x_axis[0] == 1.1 and g.x_axis[-1] == 1.9
    assert g.r_axis[0] == 1.01 and g.r_axis[-1] == 1.5
    assert g.shape == (5, 7)


def test_bad_arguments():
    with pytest.raises(DomainError):
        sweep_ratio_grid(nx=1)
    with pytest.raises(DomainError):
        sweep_ratio_grid(x_min=1.0)
    with pytest.raises(ConsistencyError):
        sweep_ratio_grid(nx=3, nr=3, gamma=1.4, c_v=3.0)


def test_parallel_identical():
    a = sweep_ratio_grid(nx=50, nr=40, workers=1)
    b = sweep_ratio_grid(nx=50, nr=40, workers=4)
    assert np.array_equal(a.cells, b.cells, equal_nan=True)


def test_csv_layout(tmp_path):
    g = sweep_ratio_grid(1.5, 2.0, 1.2, 1.8, 2, 2)
    p = write_grid_csv(g, tmp_path / "g.csv")
    lines = p.read_text().splitlines()
    assert len(lines) == 3
    assert lines[0] == "x\\r,1.2,1.8"
    assert lines[1].split(",")[2] == "NA"
    x, r, cells = read_grid_csv(p)
    assert np.array_equal(x, g.x_axis) and np.array_equal(r, g.r_axis)
    assert np.allclose(cells, g.cells, rtol=1e-8, equal_nan=True)


def test_csv_deterministic(tmp_path):
    g = sweep_ratio_grid(nx=20, nr=20)
    a = write_grid_csv(g, tmp_path / "a.csv").read_bytes()
    b = write_grid_csv(sweep_ratio_grid(nx=20, nr=20, workers=3), tmp_path / "b.csv").read_bytes()
    assert a == b


def test_svg_cells(tmp_path):
    g = sweep_ratio_grid(nx=10, nr=10)
    text = render_heatmap_svg(g, tmp_path / "h.svg").read_text()
    assert text.count('<rect class="cell') == 100
    assert text.count('class="cell infeasible"') == int((~g.feasible).sum())
    assert f'fill="{INFEASIBLE_FILL}"' in text
    assert "r (expansion ratio)" in text and "x (temperature ratio)" in text


def test_svg_orientation(tmp_path):
    g = sweep_ratio_grid(nx=3, nr=3)
    text = render_heatmap_svg(g, tmp_path / "h.svg", cell_px=10).read_text()
    # row 0 (smallest x) sits lowest on the page
    assert 'data-i="0" data-j="0" x="70" y="40"' in text
    assert 'data-i="2" data-j="0" x="70" y="20"' in text


def test_svg_empty(tmp_path):
    g = sweep_ratio_grid(1.05, 1.1, 1.5, 2.0, 3, 3)
    with pytest.raises(EmptyRegionError):
        render_heatmap_svg(g, tmp_path / "h.svg")


def test_color_scale():
    assert interpolate_color(0.0, 0, 1, "#000000", "#ffffff") == "#000000"
    assert interpolate_color(1.0, 0, 1, "#000000", "#ffffff") == "#ffffff"
    assert interpolate_color(2.0, 0, 1, "#000000", "#ff0000") == "#ff0000"
    assert interpolate_color(0.5, 0, 1, "#000000", "#fe0000") == "#7f0000"
    with pytest.raises(DomainError):
        interpolate_color(0.5, 0, 1, "#000", "#ffffff")


@settings(max_examples=300, deadline=None)
@given(st.floats(1.001, 5.0), st.floats(0.001, 0.999))
def test_cell_matches_scalar(x, frac):
    r = 1 + frac * (x - 1)
    if r <= 1 or r >= x:
        return
    ratio = efficiency_cl_ideal(x, r, 2.5) / efficiency_otto_ideal(r, 1.4)
    assert 0 < ratio <= 1 + 1e-9
    assert not math.isnan(ratio)
