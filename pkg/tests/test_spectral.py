import csv

import numpy as np
import pytest

from specgap.algebra import block_operator
from specgap.spectral import (GridSpec, cluster_points, eigenvalues,
                              min_singular_value, pseudospectrum_grid,
                              rightmost_boundary_point, spectrum_components,
                              write_pseudospectrum_csv, write_spectrum_csv)


def test_eigenvalues_union_and_order(rng):
    A = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    B = rng.standard_normal((2, 2))
    T = block_operator([(0, A), (3, B)])
    ev = eigenvalues(T)
    expect = np.concatenate([np.linalg.eigvals(A), np.linalg.eigvals(B)])
    expect = expect[np.lexsort((expect.imag, expect.real))]
    np.testing.assert_allclose(ev, expect, atol=1e-12)
    assert np.all(np.diff(ev.real) >= -1e-15)


def test_cluster_points_single_linkage():
    pts = np.array([0.0, 0.1, 0.2, 1.0, 1.05, 5.0])
    labels = cluster_points(pts, 0.11)
    assert labels[0] == labels[1] == labels[2]
    assert labels[3] == labels[4] != labels[0]
    assert labels[5] not in (labels[0], labels[3])
    # threshold is inclusive
    assert cluster_points(np.array([0.0, 1.0]), 1.0).max() == 0


def test_spectrum_components_gap():
    pts = np.array([0.0, 0.01, 2.0])
    rep = spectrum_components(pts, threshold=0.1)
    assert rep.n_components == 2 and rep.disconnected
    assert rep.gap == pytest.approx(1.99)
    one = spectrum_components(pts, threshold=3.0)
    assert one.n_components == 1 and not one.disconnected
    assert one.gap == np.inf


def test_rightmost_boundary_point_breaks_ties_by_imag():
    T = block_operator([(0, np.diag([1.0 + 1j, 1.0 - 1j, 0.5]))])
    assert rightmost_boundary_point(T) == pytest.approx(1.0 + 1j)


def test_min_singular_value_vanishes_on_spectrum(rng):
    A = rng.standard_normal((4, 4))
    T = block_operator([(0, A)])
    lam = np.linalg.eigvals(A)[0]
    assert min_singular_value(T, lam) < 1e-10
    assert min_singular_value(T, lam + 1.0) > 1e-3


def test_pseudospectrum_on_normal_operator(rng):
    # for normal T the eps-pseudospectrum is exactly the eps-neighborhood
    T = block_operator([(0, np.diag([-1.0 + 0j, 1.0]))])
    grid = GridSpec(re_min=-2, re_max=2, im_min=-1, im_max=1, nx=41, ny=21)
    ps = pseudospectrum_grid(T, eps=0.5, grid=grid)
    res, ims = np.asarray(ps.res), np.asarray(ps.ims)
    Z = res[None, :] + 1j * ims[:, None]
    dist = np.minimum(np.abs(Z + 1), np.abs(Z - 1))
    clear = np.abs(dist - 0.5) > 1e-9       # grid points off the boundary circle
    np.testing.assert_array_equal(ps.marked()[clear], (dist <= 0.5)[clear])
    assert 0.0 < ps.marked_fraction < 1.0
    ps2 = pseudospectrum_grid(T, eps=0.5, grid=grid, threads=2)
    np.testing.assert_allclose(np.asarray(ps.sigma_min),
                               np.asarray(ps2.sigma_min), rtol=1e-12)


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        GridSpec(re_min=1, re_max=0, im_min=0, im_max=1, nx=4, ny=4)
    with pytest.raises(ValueError):
        GridSpec(re_min=0, re_max=1, im_min=0, im_max=1, nx=1, ny=4)


def test_csv_writers(tmp_path, rng):
    T = block_operator([(0, np.diag([0.0, 3.0]))])
    rep = spectrum_components(eigenvalues(T), threshold=1.0)
    p1 = tmp_path / "spec.csv"
    write_spectrum_csv(rep, p1)
    rows = list(csv.reader(p1.open()))
    assert rows[0] == ["re", "im", "component_id"]
    assert len(rows) == 3
    grid = GridSpec(re_min=-1, re_max=1, im_min=-1, im_max=1, nx=5, ny=4)
    ps = pseudospectrum_grid(T, eps=0.1, grid=grid)
    p2 = tmp_path / "ps.csv"
    write_pseudospectrum_csv(ps, p2)
    rows = list(csv.reader(p2.open()))
    assert rows[0] == ["re", "im", "marked"]
    assert len(rows) == 1 + 5 * 4
    # floats serialized via repr: parse back exactly
    assert float(rows[1][0]) == float(np.asarray(ps.res)[0])
    assert {r[2] for r in rows[1:]} <= {"0", "1"}
