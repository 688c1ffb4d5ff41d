"""Power-law tail index estimation by log-log rank-size regression.

Fits log(rank - 1/2) on log(size) over the largest observations; the
half-rank shift removes the leading small-sample bias of the plain log-rank
regression.  The tail exponent is minus the slope, with standard error
zeta * sqrt(2 / k) for a tail of k observations.
"""

from dataclasses import dataclass
from math import ceil, sqrt

import numpy as np

from .errors import DegenerateSampleError, DomainError, InsufficientDataError
from .measures import as_values


@dataclass(frozen=True)
class TailEstimate:
    zeta: float
    se: float
    k: int
    ci95: tuple


def rank_size_estimate(sample, tail_fraction=0.05, trim_fraction=0.0):
    """Estimate the upper-tail exponent from the top ``tail_fraction`` share.

    ``trim_fraction`` optionally discards that share of extreme observations
    before taking the tail, for the alternative reading of tail truncation
    where the very largest values are treated as contaminated.
    """
    if not 0.0 < tail_fraction <= 0.5:
        raise DomainError("tail_fraction must lie in (0, 0.5]")
    if trim_fraction < 0.0 or trim_fraction >= 1.0:
        raise DomainError("trim_fraction must lie in [0, 1)")
    x = np.sort(as_values(sample))[::-1]
    n = x.size
    if trim_fraction:
        x = x[ceil(trim_fraction * n):]
    k = ceil(tail_fraction * n)
    if k < 3 or k > x.size:
        raise InsufficientDataError(f"tail of {k} observations is too small to regress on")
    tail = x[:k]
    if tail[-1] <= 0:
        raise DomainError("tail observations must be strictly positive")
    log_size = np.log(tail)
    log_rank = np.log(np.arange(1, k + 1) - 0.5)
    ds = log_size - log_size.mean()
    var = float(ds @ ds)
    if var == 0.0:
        raise DegenerateSampleError("tail values are all tied; rank-size regression is singular")
    slope = float(ds @ (log_rank - log_rank.mean())) / var
    zeta = -slope
    se = zeta * sqrt(2.0 / k)
    return TailEstimate(zeta=zeta, se=se, k=k, ci95=(zeta - 1.96 * se, zeta + 1.96 * se))
