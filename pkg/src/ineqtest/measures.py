"""Empirical inequality measures and their consistent standard errors.

Estimators are plug-in: Gini via the sorted-rank identity with an
influence-function standard error built from sorted partial sums, Theil and
generalized entropy via the delta method on the joint CLT of the sample
moments involved.  GE(1) is the Theil index and GE(0) the mean log
deviation, implemented as exact aliases.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DegenerateSampleError, DomainError, InsufficientDataError


@dataclass(frozen=True)
class Measure:
    """Selector for an inequality index: gini, theil, or ge with an order."""

    kind: str
    alpha: float | None = None

    @staticmethod
    def gini():
        return Measure("gini")

    @staticmethod
    def theil():
        return Measure("theil")

    @staticmethod
    def ge(alpha):
        alpha = float(alpha)
        if alpha == 1.0:
            return Measure("theil")
        return Measure("ge", alpha)

    @staticmethod
    def parse(text):
        """Parse 'gini', 'theil', or 'ge:<alpha>' (also 'mld' for ge:0)."""
        if isinstance(text, Measure):
            return text
        t = text.strip().lower()
        if t == "gini":
            return Measure.gini()
        if t == "theil":
            return Measure.theil()
        if t == "mld":
            return Measure.ge(0.0)
        if t.startswith("ge:"):
            return Measure.ge(float(t[3:]))
        raise DomainError(f"unknown measure {text!r}; expected gini, theil, or ge:<alpha>")

    @property
    def label(self):
        if self.kind == "ge":
            return f"ge({self.alpha:g})"
        return self.kind

    def requires_positive(self):
        """Whether every observation must be strictly positive."""
        return self.kind == "theil" or (self.kind == "ge" and self.alpha <= 1.0)


@dataclass(frozen=True)
class Sample:
    """Ordered income observations with a provenance label."""

    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.float64)
        if v.ndim != 1:
            raise DomainError("Sample requires a 1-D collection of observations")
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size


def as_values(sample):
    """Accept a Sample or any 1-D array-like; return a float64 array."""
    if isinstance(sample, Sample):
        return sample.values
    return np.ascontiguousarray(sample, dtype=np.float64)


@dataclass(frozen=True)
class MeasureEstimate:
    measure: Measure
    value: float
    se: float
    n: int


def _validate(x, measure):
    if x.size < 2:
        raise InsufficientDataError("index estimation requires at least 2 observations")
    if measure.requires_positive():
        if np.any(x <= 0):
            bad = int(np.argmax(x <= 0))
            raise DomainError(
                f"{measure.label} requires strictly positive values; "
                f"observation {bad + 1} is {x[bad]:g}"
            )
    else:
        if np.any(x < 0):
            raise DomainError(f"{measure.label} does not accept negative values")
        if x.mean() <= 0:
            raise DomainError(f"{measure.label} requires a positive mean")


def _stat(x, measure, corrected=False):
    if measure.kind == "gini":
        return _kernels.gini_stat(x, corrected)
    if measure.kind == "theil":
        return _kernels.theil_stat(x)
    if measure.alpha == 0.0:
        return _kernels.mld_stat(x)
    return _kernels.ge_stat(x, measure.alpha)


def estimate(sample, measure):
    """Point estimate and consistent standard error of the chosen index."""
    measure = Measure.parse(measure)
    x = as_values(sample)
    _validate(x, measure)
    value, se = _stat(x, measure)
    return MeasureEstimate(measure, value, se, x.size)


def gini(sample, corrected=False):
    """Plug-in Gini; ``corrected=True`` applies the n/(n-1) factor."""
    x = as_values(sample)
    _validate(x, Measure.gini())
    value, se = _kernels.gini_stat(x, corrected)
    return MeasureEstimate(Measure.gini(), value, se, x.size)


def theil(sample):
    return estimate(sample, Measure.theil())


def ge_index(sample, alpha):
    """Generalized entropy of any real order; ge(1) is exactly theil."""
    return estimate(sample, Measure.ge(alpha))


def group_values(x, bounds, measure, corrected=True):
    """Index values over contiguous segments [bounds[i], bounds[i+1]).

    Group estimates feed the group t-statistic tests unstudentized; the Gini
    uses the n/(n-1) finite-sample correction there so group estimators stay
    unbiased at small group sizes.
    """
    x = as_values(x)
    bounds = np.ascontiguousarray(bounds, dtype=np.int64)
    if measure.kind == "gini":
        return _kernels.gini_segments(x, bounds, corrected)
    if measure.kind == "theil":
        return _kernels.theil_segments(x, bounds)
    if measure.alpha == 0.0:
        return _kernels.mld_segments(x, bounds)
    return _kernels.ge_segments(x, bounds, measure.alpha)


def row_stats(matrix, measure):
    """Per-row (values, ses) for a C-contiguous (B, n) matrix of samples."""
    m = np.ascontiguousarray(matrix, dtype=np.float64)
    if measure.kind == "gini":
        return _kernels.gini_rows(m)
    if measure.kind == "theil":
        return _kernels.theil_rows(m)
    if measure.alpha == 0.0:
        return _kernels.mld_rows(m)
    return _kernels.ge_rows(m, measure.alpha)


def z_statistic(est, true_value, true_sd):
    """Estimator deviation scaled by the true sampling standard deviation."""
    if true_sd <= 0:
        raise DomainError("z_statistic requires true_sd > 0")
    return (est.value - true_value) / true_sd


def s_statistic(est, hypothesized):
    """Estimator deviation studentized by its consistent standard error."""
    if est.se <= 0:
        raise DegenerateSampleError("s_statistic requires a positive standard error")
    return (est.value - hypothesized) / est.se


def two_sample_s(est_i, est_y, d0=0.0):
    """Studentized difference of two independent estimates against d0."""
    denom = np.hypot(est_i.se, est_y.se)
    if denom <= 0:
        raise DegenerateSampleError("two_sample_s requires a positive pooled standard error")
    return (est_i.value - est_y.value - d0) / denom
