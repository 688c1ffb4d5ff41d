"""Group-partitioned t-statistic tests for inequality measures.

A sample is split into q blocks of consecutive observations, the index is
estimated on each block, and a Student-t test runs on the q unstudentized
block estimates.  One-sample, two-sample (df = min(q1, q2) - 1), and
paired-difference variants are provided, each with an exact-duality
confidence interval and a flag recording whether (q, alpha) lies inside the
domain where the t critical value is known to guarantee asymptotic level.
"""

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.stats import t as student_t

from .errors import DomainError, InsufficientDataError
from .measures import Measure, as_values, group_values

GUARANTEED = "guaranteed"
OUTSIDE_GUARANTEE = "outside_guarantee"

# validity thresholds for the t critical-value rules
_ALPHA_ANY_Q = 0.083
_ALPHA_MODERATE_Q = 0.10
_MAX_Q_MODERATE = 14
_MAX_Q_TWO_SAMPLE = 50
_TWO_SAMPLE_ALPHA_FLOOR = 0.001


class SmallGroupWarning(UserWarning):
    """Groups below ~100 observations weaken the normal approximation."""


@dataclass(frozen=True)
class GroupSpec:
    """Requested group counts: q for one sample, (q1, q2) for two."""

    q1: int
    q2: int | None = None

    def __post_init__(self):
        if self.q1 < 2 or (self.q2 is not None and self.q2 < 2):
            raise DomainError("group counts must be at least 2")


@dataclass(frozen=True)
class GroupEstimates:
    estimates: np.ndarray
    measure: Measure
    group_sizes: tuple

    @property
    def q(self):
        return len(self.group_sizes)


@dataclass(frozen=True)
class TestOutcome:
    statistic: float
    df: int | None
    alpha: float
    critical_value: float
    p_value: float
    reject: bool
    ci: tuple | None
    validity: str | None
    degenerate: bool = False
    method: str = ""


def group_bounds(n, q):
    """Block boundaries: group i covers positions (i-1)n/q < k <= in/q."""
    if q < 2:
        raise DomainError("at least 2 groups are required")
    if n < 2 * q:
        raise InsufficientDataError(f"need n >= 2q observations, got n={n}, q={q}")
    return np.array([(i * n) // q for i in range(q + 1)], dtype=np.int64)


def partition(sample, q, warn_small=True):
    """Split into q groups of consecutive observations, order preserved.

    No sorting happens here: reordering would break the asymptotic
    independence of the group estimators for i.i.d. data.
    """
    x = as_values(sample)
    bounds = group_bounds(x.size, q)
    if warn_small and x.size < 100 * q:
        warnings.warn(
            f"smallest group has {x.size // q} observations; "
            "group estimates are most reliable with at least 100 per group",
            SmallGroupWarning,
            stacklevel=2,
        )
    return [x[bounds[i] : bounds[i + 1]] for i in range(q)]


def group_estimates(sample, q, measure, corrected=True, warn_small=True):
    """Per-group index values over the consecutive-observation partition."""
    measure = Measure.parse(measure)
    x = as_values(sample)
    bounds = group_bounds(x.size, q)
    if warn_small and x.size < 100 * q:
        warnings.warn(
            f"smallest group has {x.size // q} observations; "
            "group estimates are most reliable with at least 100 per group",
            SmallGroupWarning,
            stacklevel=2,
        )
    vals = group_values(x, bounds, measure, corrected=corrected)
    sizes = tuple(int(bounds[i + 1] - bounds[i]) for i in range(q))
    return GroupEstimates(vals, measure, sizes)


def student_t_quantile(df, p):
    """Student-t quantile, accurate to well below 1e-8."""
    if df < 1:
        raise DomainError("degrees of freedom must be at least 1")
    if not 0.0 < p < 1.0:
        raise DomainError("quantile order must lie strictly inside (0, 1)")
    return float(student_t.ppf(p, df))


def _one_sample_validity(q, alpha, alternative):
    if alternative != "two-sided":
        return GUARANTEED if (alpha <= _ALPHA_MODERATE_Q and q in (2, 3)) else OUTSIDE_GUARANTEE
    if alpha <= _ALPHA_ANY_Q:
        return GUARANTEED
    if alpha <= _ALPHA_MODERATE_Q and 2 <= q <= _MAX_Q_MODERATE:
        return GUARANTEED
    return OUTSIDE_GUARANTEE


def _two_sample_validity(q1, q2, alpha, alternative):
    if alternative != "two-sided":
        return (
            GUARANTEED
            if (alpha <= _ALPHA_MODERATE_Q and min(q1, q2) in (2, 3))
            else OUTSIDE_GUARANTEE
        )
    if max(q1, q2) <= _MAX_Q_MODERATE and _TWO_SAMPLE_ALPHA_FLOOR <= alpha <= _ALPHA_MODERATE_Q:
        return GUARANTEED
    if max(q1, q2) <= _MAX_Q_TWO_SAMPLE and alpha <= _ALPHA_ANY_Q:
        return GUARANTEED
    return OUTSIDE_GUARANTEE


def _finish(t, df, alpha, alternative, center, halfwidth_unit, validity, method, degenerate=False):
    """Assemble the outcome from the statistic and the CI geometry.

    ``center`` is the estimate the interval is built around and
    ``halfwidth_unit`` its standard error term (cv multiplies it).
    """
    if alternative == "two-sided":
        cv = student_t_quantile(df, 1.0 - alpha / 2.0)
        p = 2.0 * float(student_t.sf(abs(t), df))
        reject = abs(t) > cv
        ci = (center - cv * halfwidth_unit, center + cv * halfwidth_unit)
    elif alternative == "greater":
        cv = student_t_quantile(df, 1.0 - alpha)
        p = float(student_t.sf(t, df))
        reject = t > cv
        ci = (center - cv * halfwidth_unit, np.inf)
    elif alternative == "less":
        cv = student_t_quantile(df, 1.0 - alpha)
        p = float(student_t.cdf(t, df))
        reject = t < -cv
        ci = (-np.inf, center + cv * halfwidth_unit)
    else:
        raise DomainError(f"unknown alternative {alternative!r}")
    return TestOutcome(
        statistic=float(t),
        df=df,
        alpha=alpha,
        critical_value=cv,
        p_value=min(max(p, 0.0), 1.0),
        reject=bool(reject),
        ci=ci,
        validity=validity,
        degenerate=degenerate,
        method=method,
    )


def _degenerate_outcome(mean, target, df, alpha, alternative, validity, method):
    # zero spread across groups: the t-statistic is 0/0 or +-inf
    if alternative == "two-sided":
        cv = student_t_quantile(df, 1.0 - alpha / 2.0)
    else:
        cv = student_t_quantile(df, 1.0 - alpha)
    if mean == target:
        t, p, reject = 0.0, 1.0, False
    else:
        t = np.inf if mean > target else -np.inf
        if alternative == "two-sided":
            reject, p = True, 0.0
        elif alternative == "greater":
            reject = mean > target
            p = 0.0 if reject else 1.0
        else:
            reject = mean < target
            p = 0.0 if reject else 1.0
    return TestOutcome(
        statistic=float(t),
        df=df,
        alpha=alpha,
        critical_value=cv,
        p_value=p,
        reject=reject,
        ci=(mean, mean),
        validity=validity,
        degenerate=True,
        method=method,
    )


def _as_group_array(groups):
    if isinstance(groups, GroupEstimates):
        return np.asarray(groups.estimates, dtype=np.float64)
    arr = np.asarray(groups, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 2:
        raise DomainError("need a 1-D collection of at least 2 group estimates")
    return arr


def one_sample_test(groups, null_value, alpha=0.05, alternative="two-sided"):
    """t-test of the index against null_value using q group estimates."""
    vals = _as_group_array(groups)
    q = vals.size
    validity = _one_sample_validity(q, alpha, alternative)
    method = f"one-sample t (q={q})"
    mean = float(vals.mean())
    s = float(vals.std(ddof=1))
    if s == 0.0:
        return _degenerate_outcome(mean, null_value, q - 1, alpha, alternative, validity, method)
    t = np.sqrt(q) * (mean - null_value) / s
    return _finish(t, q - 1, alpha, alternative, mean, s / np.sqrt(q), validity, method)


def two_sample_test(groups_i, groups_y, d0=0.0, alpha=0.05, alternative="two-sided"):
    """Two-sample t-test on the difference of index values against d0.

    Degrees of freedom are min(q1, q2) - 1, matching the critical-value rule
    for possibly unequal group counts.
    """
    vi = _as_group_array(groups_i)
    vy = _as_group_array(groups_y)
    q1, q2 = vi.size, vy.size
    validity = _two_sample_validity(q1, q2, alpha, alternative)
    method = f"two-sample t (q1={q1}, q2={q2})"
    df = min(q1, q2) - 1
    diff = float(vi.mean() - vy.mean())
    pooled = np.sqrt(vi.var(ddof=1) / q1 + vy.var(ddof=1) / q2)
    if pooled == 0.0:
        return _degenerate_outcome(diff, d0, df, alpha, alternative, validity, method)
    t = (diff - d0) / pooled
    return _finish(t, df, alpha, alternative, diff, float(pooled), validity, method)


def paired_difference_test(groups_i, groups_y, d0=0.0, alpha=0.05, alternative="two-sided"):
    """One-sample t-test in the q per-group differences; allows dependence
    between the two samples and unequal sample sizes, but requires q1 = q2."""
    vi = _as_group_array(groups_i)
    vy = _as_group_array(groups_y)
    if vi.size != vy.size:
        raise DomainError(
            f"paired differences require equal group counts, got {vi.size} and {vy.size}"
        )
    q = vi.size
    validity = _one_sample_validity(q, alpha, alternative)
    method = f"paired-difference t (q={q})"
    d = vi - vy
    mean = float(d.mean())
    s = float(d.std(ddof=1))
    if s == 0.0:
        return _degenerate_outcome(mean, d0, q - 1, alpha, alternative, validity, method)
    t = np.sqrt(q) * (mean - d0) / s
    return _finish(t, q - 1, alpha, alternative, mean, s / np.sqrt(q), validity, method)


def one_sample_group_test(
    sample, measure, q, null_value, alpha=0.05, alternative="two-sided", warn_small=True
):
    """Partition, estimate per group, and test the index against null_value."""
    ge = group_estimates(sample, q, measure, warn_small=warn_small)
    return one_sample_test(ge, null_value, alpha, alternative)


def two_sample_group_test(
    sample_i,
    sample_y,
    measure,
    q1,
    q2=None,
    d0=0.0,
    alpha=0.05,
    paired=False,
    alternative="two-sided",
    warn_small=True,
):
    """Partition both samples, estimate per group, and test the difference."""
    q2 = q1 if q2 is None else q2
    gi = group_estimates(sample_i, q1, measure, warn_small=warn_small)
    gy = group_estimates(sample_y, q2, measure, warn_small=warn_small)
    if paired:
        return paired_difference_test(gi, gy, d0, alpha, alternative)
    return two_sample_test(gi, gy, d0, alpha, alternative)
