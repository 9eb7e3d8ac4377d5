import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specgap.cfun import (CompactRealSet, PLFunction, cfun_disconnect,
                          clopen_small_pieces, is_finite_interval_union,
                          nondensity_witness, offrange_lambda, pl_approximate,
                          pl_from_dict, pl_to_dict, range_components, read_pl,
                          read_set, set_from_dict, set_to_dict, write_pl,
                          write_set)
from specgap.errors import ExhaustedSamples, FiniteUnion, ShapeMismatch
from specgap.sampling import rng_from_seed


# -- sets ---------------------------------------------------------------------

def test_float_endpoints_become_exact_decimals():
    X = CompactRealSet(intervals=((0.1, 0.2),))
    assert X.intervals[0] == (Fraction(1, 10), Fraction(1, 5))
    assert X.diam == Fraction(1, 10)


def test_set_normalization_and_validation():
    X = CompactRealSet(intervals=((0, 1), (2, 2)), points=(5,))
    assert X.intervals == ((0, 1),) and X.points == (Fraction(2), Fraction(5))
    assert X.contains(Fraction(1, 2)) and X.contains(2) and not X.contains(3)
    with pytest.raises(ShapeMismatch):
        CompactRealSet(intervals=((0, 1), (1, 2)))      # touching pieces
    with pytest.raises(ShapeMismatch):
        CompactRealSet()                                # empty
    with pytest.raises(ShapeMismatch):
        CompactRealSet(intervals=((1, 0),))


def test_cantor_stage_structure():
    X = CompactRealSet.cantor(depth=3, ratio="1/3")
    assert len(X.intervals) == 8
    assert X.inf == 0 and X.sup == 1
    assert all(b - a == Fraction(1, 27) for a, b in X.intervals)
    assert not is_finite_interval_union(X)
    assert is_finite_interval_union(CompactRealSet(intervals=((0, 1),)))


def test_clopen_pieces_shrink_geometrically():
    X = CompactRealSet.cantor(depth=6, ratio="1/3")
    pieces = clopen_small_pieces(X, 4)
    diams = [p.diam for p in pieces]
    assert all(isinstance(d, Fraction) for d in diams)
    assert diams == sorted(diams, reverse=True)
    # cuts fall in gaps: pieces partition X
    total = sum(len(p.subset.intervals) + len(p.subset.points) for p in pieces[:-1])
    assert pieces[0].cut_hi > X.sup
    with pytest.raises(ValueError):
        clopen_small_pieces(X, 7)      # deeper than the stage
    with pytest.raises(FiniteUnion):
        clopen_small_pieces(CompactRealSet(intervals=((0, 1),)), 2)


def test_isolated_point_pieces():
    X = CompactRealSet(points=(0, 1, 4))
    pieces = clopen_small_pieces(X, 3)
    assert all(p.diam == 0 for p in pieces)
    assert all(p.subset.points == (Fraction(0),) for p in pieces)


# -- PL functions ---------------------------------------------------------------

def test_pl_eval_and_domain():
    f = PLFunction(breakpoints=(0.0, 1.0, 2.0), values=(0.0, 1j, 2.0))
    assert f(0.5) == pytest.approx(0.5j)
    assert f(1.5) == pytest.approx(1.0 + 0.5j)      # midpoint of 1j and 2
    np.testing.assert_allclose(f(np.array([0.0, 2.0])), [0.0, 2.0])
    with pytest.raises(ShapeMismatch):
        f(2.5)
    with pytest.raises(ShapeMismatch):
        PLFunction(breakpoints=(0.0,), values=(1.0,))
    with pytest.raises(ShapeMismatch):
        PLFunction(breakpoints=(0.0, 0.0), values=(1.0, 2.0))


def test_lipschitz_and_refine():
    f = PLFunction(breakpoints=(0.0, 1.0), values=(0.0, 3.0 + 4.0j))
    assert f.lipschitz() == pytest.approx(5.0)
    g = f.refine([0.25, 0.5])
    assert g.breakpoints == (0.0, 0.25, 0.5, 1.0)
    assert g(0.7) == pytest.approx(f(0.7))


def test_sup_norm_on_is_exact():
    # |f - g| peaks strictly inside a piece: t=0 -> 1, t=1 -> -1 on [0,1]
    f = PLFunction(breakpoints=(0.0, 1.0), values=(1.0, -1.0))
    X = CompactRealSet(intervals=((0, Fraction(1, 4)),), points=(1,))
    # on [0, 1/4] the max is at t=0 (value 1); the point t=1 gives |-1| = 1
    assert f.sup_norm_on(X) == 1.0
    Y = CompactRealSet(intervals=((Fraction(1, 4), Fraction(1, 2)),))
    assert f.sup_norm_on(Y) == 0.5    # endpoint t=1/4: f = 1/2


def test_pl_approximate_callable_and_passthrough():
    fn = lambda t: np.exp(1j * t) * np.cos(3 * t)
    G = pl_approximate(fn, tol=1e-3, lo=-1.0, hi=2.0)
    t = np.linspace(-1.0, 2.0, 4001)
    assert np.max(np.abs(G(t) - fn(t))) < 1e-3
    f = PLFunction(breakpoints=(0.0, 1.0), values=(0.0, 1.0))
    assert pl_approximate(f, tol=1e-6) is f


def test_offrange_lambda_clears_the_range():
    G = PLFunction(breakpoints=(0.0, 1.0, 2.0), values=(-1.0, 0.0, 1.0))
    lam, clear = offrange_lambda(G, target=0.0, tol=0.1)
    assert abs(lam) < 0.1 and clear > 0.0
    assert abs(lam.imag) == pytest.approx(abs(lam.imag))  # off the real axis
    assert min(abs(lam - v) for v in (-1.0, 0.0, 1.0)) >= clear


# -- the disconnection ----------------------------------------------------------

def test_cfun_disconnect_on_cantor_stage():
    X = CompactRealSet.cantor(depth=8, ratio="1/3")
    f = PLFunction(breakpoints=(-0.5, 1.5), values=(0.0, 2.0))
    res = cfun_disconnect(X, f, eps=0.05)
    assert res.sup_dist < 0.05
    assert res.range_gap > 0.0
    assert res.lam_clearance > 0.0
    assert res.piece.subset.contains(res.t0)
    # g flattens the chosen piece to the single value lambda
    for t in np.linspace(float(res.piece.subset.inf),
                         float(res.piece.subset.sup), 7):
        if res.piece.subset.contains(Fraction(str(t))):
            assert res.g(t) == pytest.approx(res.lam, abs=1e-12)
    rep = range_components(res.g, X, resolution=res.range_gap / 12.0)
    assert rep.n_components >= 2


def test_cfun_disconnect_on_isolated_points():
    X = CompactRealSet(points=(0, 1, 2))
    f = PLFunction(breakpoints=(-1.0, 3.0), values=(0.0, 4.0))
    res = cfun_disconnect(X, f, eps=0.25)
    assert res.sup_dist < 0.25 and res.range_gap > 0.0
    vals = {complex(res.g(float(p))) for p in X.points}
    assert len(vals) >= 2


def test_cfun_disconnect_guards():
    f = PLFunction(breakpoints=(0.0, 1.0), values=(0.0, 1.0))
    with pytest.raises(FiniteUnion):
        cfun_disconnect(CompactRealSet(intervals=((0, 1),)), f, eps=0.1)
    with pytest.raises(ValueError):
        cfun_disconnect(CompactRealSet.cantor(depth=4, ratio="1/3"), f, eps=0.0)
    singleton = CompactRealSet(points=(0.5,))
    with pytest.raises(ValueError):
        cfun_disconnect(singleton, f, eps=0.1)
    off_domain = CompactRealSet.cantor(depth=4, ratio="1/3", lo=5, hi=6)
    with pytest.raises(ShapeMismatch):
        cfun_disconnect(off_domain, f, eps=0.1)


# -- the nondensity witness ------------------------------------------------------

def test_nondensity_witness_layout():
    X, f = nondensity_witness(3)
    assert X.intervals == ((2, 3), (4, 5), (6, 7))
    assert f(2.0) == pytest.approx(-1.0) and f(3.0) == pytest.approx(1.0)
    assert f(4.0) == pytest.approx(-1j) and f(5.0) == pytest.approx(1j)
    assert f(6.0) == pytest.approx(-1j) and f(7.0) == pytest.approx(1j)
    with pytest.raises(ValueError):
        nondensity_witness(0)


def test_nondensity_witness_resists_perturbation(rng):
    X, f = nondensity_witness(2)
    vals = np.asarray(f.values)
    for _ in range(25):
        bump = rng.standard_normal(len(vals)) + 1j * rng.standard_normal(len(vals))
        bump *= 0.09 / np.abs(bump).max()
        g = PLFunction(breakpoints=f.breakpoints, values=vals + bump)
        rep = range_components(g, X, resolution=1e-3)
        assert rep.connected


def test_range_components_counts_and_gap():
    # two constant plateaus 3 apart, far beyond any merge threshold
    g = PLFunction(breakpoints=(0.0, 1.0, 2.0, 3.0), values=(0.0, 0.0, 3.0, 3.0))
    X = CompactRealSet(intervals=((0, Fraction(1, 2)), (Fraction(5, 2), 3)))
    rep = range_components(g, X, resolution=1e-3)
    assert rep.n_components == 2
    assert rep.gap == pytest.approx(3.0, abs=1e-6)
    assert not rep.connected
    joined = range_components(g, CompactRealSet(intervals=((0, 3),)),
                              resolution=1e-3)
    assert joined.connected and joined.gap == np.inf


# -- persistence ------------------------------------------------------------------

def test_set_json_roundtrip(tmp_path):
    X = CompactRealSet.cantor(depth=5, ratio="1/3")
    d = set_to_dict(X)
    assert d["generator"]["cantor"]["ratio"] == "1/3"
    Y = set_from_dict(json.loads(json.dumps(d)))
    assert Y == X
    p = tmp_path / "set.json"
    write_set(X, p)
    assert read_set(p) == X
    # plain union with a decimal endpoint stays exact through the file
    Z = CompactRealSet(intervals=((0.1, 0.35),), points=(2,))
    write_set(Z, p)
    assert read_set(p) == Z


def test_pl_json_roundtrip(tmp_path):
    f = PLFunction(breakpoints=(0.0, 0.5, 1.0), values=(1.0, -1j, 0.25 + 0.25j))
    g = pl_from_dict(pl_to_dict(f))
    assert g == f
    p = tmp_path / "pl.json"
    write_pl(f, p)
    assert read_pl(p) == f
    rerun = p.read_bytes()
    write_pl(f, p)
    assert p.read_bytes() == rerun      # byte-identical rewrites


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=2, max_value=6),
       st.fractions(min_value="1/10", max_value="2/5"),
       st.integers(min_value=0, max_value=2**32 - 1))
def test_cantor_piece_partition_property(depth, ratio, seed):
    """Pieces are disjoint clopen chunks of X; only material below the last
    cut is left over, and diameters shrink weakly."""
    X = CompactRealSet.cantor(depth=depth, ratio=ratio)
    n = min(3, depth)
    pieces = clopen_small_pieces(X, n)
    ivals = sorted(iv for p in pieces for iv in p.subset.intervals)
    assert len(set(ivals)) == len(ivals)            # pairwise disjoint
    assert set(ivals) <= set(X.intervals)
    last_cut = pieces[-1].cut_lo
    leftovers = set(X.intervals) - set(ivals)
    assert all(b < last_cut for _, b in leftovers)  # residue sits below
    diams = [p.diam for p in pieces]
    assert diams == sorted(diams, reverse=True)
    assert diams[-1] <= X.diam * ratio ** (n - 1)
