"""Pure-NumPy measure kernels (fallback lane).

Same surface as the compiled lane in ``_ckernels.pyx``: inputs are raw,
unsorted, strictly validated float64 arrays; outputs are plain floats or
float64 arrays.  Values use plug-in estimators; ``corrected=True`` applies
the n/(n-1) finite-sample factor to the Gini only.
"""

import numpy as np


def _centered_cov(u, v):
    du = u - u.mean()
    dv = v - v.mean()
    return float(np.mean(du * dv))


def gini_stat(x, corrected=False):
    """Gini value and influence-function standard error."""
    if x.min() == x.max():
        return 0.0, 0.0
    x = np.sort(x)
    n = x.size
    mu = x.mean()
    i = np.arange(1, n + 1, dtype=np.float64)
    g = 2.0 * float(i @ x) / (n * n * mu) - (n + 1.0) / n
    partial = np.cumsum(x) - x
    z = -(g + 1.0) * x + (2.0 * i - 1.0) / n * x - (2.0 / n) * partial
    dz = z - z.mean()
    se = np.sqrt(max(float(dz @ dz), 0.0)) / (n * mu)
    if corrected:
        f = n / (n - 1.0)
        g *= f
        se *= f
    return float(g), float(se)


def theil_stat(x):
    if x.min() == x.max():
        return 0.0, 0.0
    n = x.size
    mu = x.mean()
    v = x * np.log(x)
    nu = v.mean()
    t = nu / mu - np.log(mu)
    gmu = -nu / mu**2 - 1.0 / mu
    gnu = 1.0 / mu
    var = (
        gmu * gmu * _centered_cov(x, x)
        + 2.0 * gmu * gnu * _centered_cov(x, v)
        + gnu * gnu * _centered_cov(v, v)
    ) / n
    return float(t), float(np.sqrt(max(var, 0.0)))


def mld_stat(x):
    if x.min() == x.max():
        return 0.0, 0.0
    n = x.size
    mu = x.mean()
    l = np.log(x)
    m = np.log(mu) - l.mean()
    gmu = 1.0 / mu
    var = (
        gmu * gmu * _centered_cov(x, x)
        - 2.0 * gmu * _centered_cov(x, l)
        + _centered_cov(l, l)
    ) / n
    return float(m), float(np.sqrt(max(var, 0.0)))


def ge_stat(x, alpha):
    """Generalized-entropy value and delta-method se; alpha not in {0, 1}."""
    if x.min() == x.max():
        return 0.0, 0.0
    n = x.size
    mu = x.mean()
    w = x**alpha
    nu = w.mean()
    denom = alpha * (alpha - 1.0)
    value = (nu * mu**-alpha - 1.0) / denom
    gnu = mu**-alpha / denom
    gmu = -nu * mu ** (-alpha - 1.0) / (alpha - 1.0)
    var = (
        gmu * gmu * _centered_cov(x, x)
        + 2.0 * gmu * gnu * _centered_cov(x, w)
        + gnu * gnu * _centered_cov(w, w)
    ) / n
    return float(value), float(np.sqrt(max(var, 0.0)))


def gini_segments(x, bounds, corrected=False):
    q = bounds.size - 1
    out = np.empty(q)
    for j in range(q):
        out[j] = gini_stat(x[bounds[j] : bounds[j + 1]], corrected)[0]
    return out


def theil_segments(x, bounds):
    q = bounds.size - 1
    out = np.empty(q)
    for j in range(q):
        out[j] = theil_stat(x[bounds[j] : bounds[j + 1]])[0]
    return out


def mld_segments(x, bounds):
    q = bounds.size - 1
    out = np.empty(q)
    for j in range(q):
        out[j] = mld_stat(x[bounds[j] : bounds[j + 1]])[0]
    return out


def ge_segments(x, bounds, alpha):
    q = bounds.size - 1
    out = np.empty(q)
    for j in range(q):
        out[j] = ge_stat(x[bounds[j] : bounds[j + 1]], alpha)[0]
    return out


def gini_rows(m):
    """Row-wise plug-in Gini values and standard errors for a (B, n) matrix."""
    m = np.sort(m, axis=1)
    nrows, n = m.shape
    mu = m.mean(axis=1)
    i = np.arange(1, n + 1, dtype=np.float64)
    g = 2.0 * (m @ i) / (n * n * mu) - (n + 1.0) / n
    partial = np.cumsum(m, axis=1) - m
    z = -(g + 1.0)[:, None] * m + ((2.0 * i - 1.0) / n)[None, :] * m - (2.0 / n) * partial
    dz = z - z.mean(axis=1, keepdims=True)
    se = np.sqrt(np.maximum(np.sum(dz * dz, axis=1), 0.0)) / (n * mu)
    return g, se


def _rows_delta(m, w, gmu, gnu):
    n = m.shape[1]
    dm = m - m.mean(axis=1, keepdims=True)
    dw = w - w.mean(axis=1, keepdims=True)
    sxx = np.mean(dm * dm, axis=1)
    sxw = np.mean(dm * dw, axis=1)
    sww = np.mean(dw * dw, axis=1)
    var = (gmu * gmu * sxx + 2.0 * gmu * gnu * sxw + gnu * gnu * sww) / n
    return np.sqrt(np.maximum(var, 0.0))


def theil_rows(m):
    mu = m.mean(axis=1)
    v = m * np.log(m)
    nu = v.mean(axis=1)
    t = nu / mu - np.log(mu)
    se = _rows_delta(m, v, -nu / mu**2 - 1.0 / mu, 1.0 / mu)
    return t, se


def mld_rows(m):
    mu = m.mean(axis=1)
    l = np.log(m)
    value = np.log(mu) - l.mean(axis=1)
    se = _rows_delta(m, l, 1.0 / mu, -np.ones_like(mu))
    return value, se


def ge_rows(m, alpha):
    mu = m.mean(axis=1)
    w = m**alpha
    nu = w.mean(axis=1)
    denom = alpha * (alpha - 1.0)
    value = (nu * mu**-alpha - 1.0) / denom
    gnu = mu**-alpha / denom
    gmu = -nu * mu ** (-alpha - 1.0) / (alpha - 1.0)
    se = _rows_delta(m, w, gmu, gnu)
    return value, se
