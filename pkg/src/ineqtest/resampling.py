"""Competitor tests: asymptotic normal, permutation, and bootstrap.

The permutation test pools the two samples and recomputes the studentized
difference over random splits of the pooled data; the bootstrap resamples
each sample independently and studentizes the recentred difference
(percentile-t).  Both use the add-one p-value (1 + #{|S*| >= |S0|}) / (B + 1)
and reject when p <= alpha; resampled statistics are deterministic given the
supplied stream.
"""

import logging
import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.stats import norm

from .errors import DegenerateSampleError, DomainError
from .grouptests import TestOutcome
from .measures import Measure, as_values, estimate, row_stats, two_sample_s

logger = logging.getLogger(__name__)

_ROW_BLOCK_ELEMENTS = 8_000_000  # cap resample matrix memory per block
_MAX_EXHAUSTIVE_SPLITS = 200_000


@dataclass(frozen=True)
class ResamplingSpec:
    """Resampling configuration: draw count and explicit random stream."""

    kind: str = "permutation"
    b: int = 999
    stream: object = None
    exhaustive: bool = False

    def __post_init__(self):
        if self.kind not in ("asymptotic", "permutation", "bootstrap"):
            raise DomainError(f"unknown resampling kind {self.kind!r}")
        if self.kind != "asymptotic" and self.b < 1:
            raise DomainError("resample count must be at least 1")


def _normal_outcome(stat, alpha, method, center=None, halfwidth=None):
    cv = float(norm.ppf(1.0 - alpha / 2.0))
    p = 2.0 * float(norm.sf(abs(stat)))
    ci = None
    if center is not None:
        ci = (center - cv * halfwidth, center + cv * halfwidth)
    return TestOutcome(
        statistic=float(stat),
        df=None,
        alpha=alpha,
        critical_value=cv,
        p_value=min(p, 1.0),
        reject=abs(stat) > cv,
        ci=ci,
        validity=None,
        method=method,
    )


def asymptotic_test(est_i, est_y, d0=0.0, alpha=0.05):
    """Standard-normal test of the studentized two-sample difference."""
    stat = two_sample_s(est_i, est_y, d0)
    diff = est_i.value - est_y.value
    return _normal_outcome(
        stat, alpha, "asymptotic", center=diff, halfwidth=float(np.hypot(est_i.se, est_y.se))
    )


def asymptotic_one_sample_test(est, null_value, alpha=0.05):
    """Standard-normal test of the full-sample studentized estimate."""
    if est.se <= 0:
        raise DegenerateSampleError("asymptotic test requires a positive standard error")
    stat = (est.value - null_value) / est.se
    return _normal_outcome(stat, alpha, "asymptotic", center=est.value, halfwidth=est.se)


def _studentized_rows(vi, si, vy, sy, center, degenerate_counter):
    denom = np.hypot(si, sy)
    bad = denom == 0.0
    if np.any(bad):
        degenerate_counter[0] += int(bad.sum())
        denom = np.where(bad, np.inf, denom)
    return (vi - vy - center) / denom


def _resampled_outcome(s0, abs_stats, b, alpha, method):
    m = int(np.sum(abs_stats >= abs(s0)))
    p = (1.0 + m) / (b + 1.0)
    reject = p <= alpha
    # largest count of resampled exceedances still compatible with rejection
    m_max = math.floor(alpha * (b + 1.0) - 1.0 + 1e-12)
    if m_max < 0:
        cv = np.inf
    elif m_max >= b:
        cv = -np.inf
    else:
        cv = float(np.sort(abs_stats)[::-1][m_max])
    return TestOutcome(
        statistic=float(s0),
        df=None,
        alpha=alpha,
        critical_value=cv,
        p_value=p,
        reject=bool(reject),
        ci=None,
        validity=None,
        method=method,
    )


def _observed_stat(est_i, est_y, d0):
    # mirror the resample convention: a fully degenerate pair scores 0
    denom = np.hypot(est_i.se, est_y.se)
    if denom == 0.0:
        logger.warning("degenerate observed samples; statistic set to 0")
        return 0.0
    return (est_i.value - est_y.value - d0) / denom


def _permutation_stats(xi, xy, measure, b, rng):
    """|S*| over b uniformly random splits of the pooled sample."""
    pool = np.concatenate([xi, xy])
    n1, n = xi.size, xi.size + xy.size
    degenerate = [0]
    out = np.empty(b)
    block = max(1, _ROW_BLOCK_ELEMENTS // n)
    done = 0
    while done < b:
        nb = min(block, b - done)
        order = np.argsort(rng.random((nb, n)), axis=1)
        rows = pool[order]
        vi, si = row_stats(rows[:, :n1], measure)
        vy, sy = row_stats(rows[:, n1:], measure)
        out[done : done + nb] = np.abs(_studentized_rows(vi, si, vy, sy, 0.0, degenerate))
        done += nb
    if degenerate[0]:
        logger.warning("%d degenerate permutation resamples had their statistic set to 0", degenerate[0])
    return out


def _exhaustive_permutation_stats(xi, xy, measure):
    pool = np.concatenate([xi, xy])
    n1, n = xi.size, xi.size + xy.size
    total = math.comb(n, n1)
    if total > _MAX_EXHAUSTIVE_SPLITS:
        raise DomainError(
            f"exhaustive permutation would enumerate {total} splits; "
            f"limit is {_MAX_EXHAUSTIVE_SPLITS}"
        )
    idx = np.arange(n)
    rows_i = np.empty((total, n1))
    rows_y = np.empty((total, n - n1))
    for k, chosen in enumerate(combinations(range(n), n1)):
        mask = np.zeros(n, dtype=bool)
        mask[list(chosen)] = True
        rows_i[k] = pool[mask]
        rows_y[k] = pool[idx[~mask]]
    degenerate = [0]
    vi, si = row_stats(rows_i, measure)
    vy, sy = row_stats(rows_y, measure)
    stats = np.abs(_studentized_rows(vi, si, vy, sy, 0.0, degenerate))
    if degenerate[0]:
        logger.warning("%d degenerate splits had their statistic set to 0", degenerate[0])
    return stats


def permutation_test(sample_i, sample_y, measure, alpha=0.05, spec=None):
    """Randomization test of equality of the index in two independent samples.

    With ``spec.exhaustive`` every distinct split is enumerated and the
    p-value is the exact randomization p-value #{|S*| >= |S0|} / #splits.
    """
    measure = Measure.parse(measure)
    spec = spec or ResamplingSpec(kind="permutation")
    xi, xy = as_values(sample_i), as_values(sample_y)
    s0 = _observed_stat(estimate(xi, measure), estimate(xy, measure), 0.0)
    if spec.exhaustive:
        stats = _exhaustive_permutation_stats(xi, xy, measure)
        total = stats.size
        m = int(np.sum(stats >= abs(s0)))
        p = m / total
        m_max = math.floor(alpha * total + 1e-12)
        cv = -np.inf if m_max >= total else float(np.sort(stats)[::-1][m_max])
        return TestOutcome(
            statistic=float(s0),
            df=None,
            alpha=alpha,
            critical_value=cv,
            p_value=p,
            reject=p <= alpha,
            ci=None,
            validity=None,
            method=f"permutation (exhaustive, {total} splits)",
        )
    rng = np.random.default_rng(spec.stream)
    stats = _permutation_stats(xi, xy, measure, spec.b, rng)
    return _resampled_outcome(s0, stats, spec.b, alpha, f"permutation (B={spec.b})")


def _bootstrap_stats(xi, xy, measure, b, rng, observed_diff):
    degenerate = [0]
    out = np.empty(b)
    n1, n2 = xi.size, xy.size
    block = max(1, _ROW_BLOCK_ELEMENTS // max(n1, n2))
    done = 0
    while done < b:
        nb = min(block, b - done)
        rows_i = xi[rng.integers(0, n1, size=(nb, n1))]
        rows_y = xy[rng.integers(0, n2, size=(nb, n2))]
        vi, si = row_stats(rows_i, measure)
        vy, sy = row_stats(rows_y, measure)
        out[done : done + nb] = np.abs(
            _studentized_rows(vi, si, vy, sy, observed_diff, degenerate)
        )
        done += nb
    if degenerate[0]:
        logger.warning("%d degenerate bootstrap resamples had their statistic set to 0", degenerate[0])
    return out


def bootstrap_test(sample_i, sample_y, measure, alpha=0.05, spec=None, d0=0.0):
    """Percentile-t bootstrap test of H0: difference of indices equals d0.

    Each sample is resampled with replacement; resampled statistics are
    centred at the observed difference so their distribution approximates
    that of the studentized difference under the null.
    """
    measure = Measure.parse(measure)
    spec = spec or ResamplingSpec(kind="bootstrap")
    xi, xy = as_values(sample_i), as_values(sample_y)
    ei, ey = estimate(xi, measure), estimate(xy, measure)
    s0 = _observed_stat(ei, ey, d0)
    rng = np.random.default_rng(spec.stream)
    stats = _bootstrap_stats(xi, xy, measure, spec.b, rng, ei.value - ey.value)
    return _resampled_outcome(s0, stats, spec.b, alpha, f"bootstrap (B={spec.b})")
