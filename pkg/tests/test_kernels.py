"""Kernel lanes: brute-force oracles and compiled/python agreement."""

import numpy as np
import pytest

from ineqtest import _kernels
from ineqtest._kernels import _pykernels


def brute_gini(x):
    x = np.asarray(x, dtype=float)
    n = x.size
    return float(np.abs(x[:, None] - x[None, :]).sum()) / (2.0 * n * n * x.mean())


def brute_theil(x):
    x = np.asarray(x, dtype=float)
    mu = x.mean()
    return float(np.mean(x / mu * np.log(x / mu)))


def _random_samples(count, max_n=200, seed=0):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = rng.integers(2, max_n + 1)
        yield rng.lognormal(0.0, 1.0, n)


def test_gini_matches_pairwise_sum():
    for x in _random_samples(200, seed=1):
        v, _ = _kernels.gini_stat(x, False)
        assert v == pytest.approx(brute_gini(x), abs=1e-12)


def test_theil_matches_direct_formula():
    for x in _random_samples(200, seed=2):
        v, _ = _kernels.theil_stat(x)
        assert v == pytest.approx(brute_theil(x), abs=1e-12)


def test_constant_samples_are_exactly_degenerate():
    x = np.ones(37)
    for fn in (_kernels.gini_stat, _kernels.theil_stat, _kernels.mld_stat):
        v, se = fn(x) if fn is not _kernels.gini_stat else fn(x, False)
        assert v == 0.0
        assert se == 0.0
    v, se = _kernels.ge_stat(x, 2.0)
    assert v == 0.0 and se == 0.0


def test_segments_match_per_group_stats():
    rng = np.random.default_rng(3)
    x = rng.lognormal(0.0, 1.0, 103)
    bounds = np.array([0, 25, 51, 77, 103], dtype=np.int64)
    for seg_fn, stat_fn, extra in (
        (_kernels.gini_segments, _kernels.gini_stat, (True,)),
        (_kernels.theil_segments, _kernels.theil_stat, ()),
        (_kernels.mld_segments, _kernels.mld_stat, ()),
    ):
        vals = seg_fn(x, bounds, *extra)
        for j in range(4):
            piece = x[bounds[j] : bounds[j + 1]]
            assert vals[j] == pytest.approx(stat_fn(piece, *extra)[0], abs=1e-12)
    vals = _kernels.ge_segments(x, bounds, 2.0)
    for j in range(4):
        piece = x[bounds[j] : bounds[j + 1]]
        assert vals[j] == pytest.approx(_kernels.ge_stat(piece, 2.0)[0], abs=1e-12)


def test_rows_match_per_sample_stats():
    rng = np.random.default_rng(4)
    m = rng.lognormal(0.0, 1.0, (20, 60))
    for rows_fn, stat_fn, extra in (
        (_kernels.gini_rows, _kernels.gini_stat, (False,)),
        (_kernels.theil_rows, _kernels.theil_stat, ()),
        (_kernels.mld_rows, _kernels.mld_stat, ()),
    ):
        vals, ses = rows_fn(m)
        for b in range(m.shape[0]):
            v, s = stat_fn(m[b], *extra)
            assert vals[b] == pytest.approx(v, abs=1e-12)
            assert ses[b] == pytest.approx(s, abs=1e-12)
    vals, ses = _kernels.ge_rows(m, 0.5)
    for b in range(m.shape[0]):
        v, s = _kernels.ge_stat(m[b], 0.5)
        assert vals[b] == pytest.approx(v, abs=1e-12)
        assert ses[b] == pytest.approx(s, abs=1e-12)


@pytest.mark.skipif(_kernels.BACKEND != "compiled", reason="compiled lane not built")
def test_lanes_agree():
    rng = np.random.default_rng(5)
    for _ in range(50):
        n = rng.integers(3, 300)
        x = rng.lognormal(0.0, 1.2, n)
        for name, args in (
            ("gini_stat", (x, True)),
            ("theil_stat", (x,)),
            ("mld_stat", (x,)),
            ("ge_stat", (x, 1.7)),
        ):
            c = getattr(_kernels, name)(*args)
            p = getattr(_pykernels, name)(*args)
            assert c[0] == pytest.approx(p[0], rel=1e-12, abs=1e-13)
            assert c[1] == pytest.approx(p[1], rel=1e-12, abs=1e-13)
    m = rng.lognormal(0.0, 1.0, (30, 80))
    bounds = np.array([0, 20, 45, 80], dtype=np.int64)
    x = m[0]
    assert _kernels.gini_segments(x, bounds, True) == pytest.approx(
        _pykernels.gini_segments(x, bounds, True), rel=1e-12
    )
    for name, args in (("gini_rows", (m,)), ("theil_rows", (m,)), ("ge_rows", (m, 2.0))):
        cv, cs = getattr(_kernels, name)(*args)
        pv, ps = getattr(_pykernels, name)(*args)
        assert cv == pytest.approx(pv, rel=1e-12)
        assert cs == pytest.approx(ps, rel=1e-12, abs=1e-14)
