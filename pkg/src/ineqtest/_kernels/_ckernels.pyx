# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled measure kernels.

Mirrors ``_pykernels``: plug-in inequality estimators with influence-function
or delta-method standard errors, over 1-D samples, contiguous segments, and
matrix rows.  Hot loops avoid NumPy per-call overhead; sorting uses C++
std::sort on a scratch copy.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport log, pow, sqrt
from libcpp.algorithm cimport sort

cnp.import_array()


cdef void _gini_core(double* buf, Py_ssize_t n, double* out_val, double* out_se) noexcept nogil:
    # buf is sorted ascending in place by the caller
    cdef Py_ssize_t i
    cdef double total = 0.0, weighted = 0.0
    if buf[0] == buf[n - 1]:
        out_val[0] = 0.0
        out_se[0] = 0.0
        return
    for i in range(n):
        total += buf[i]
        weighted += (i + 1.0) * buf[i]
    cdef double mu = total / n
    cdef double g = 2.0 * weighted / (n * <double>n * mu) - (n + 1.0) / n
    # influence terms z_i = -(g+1)x_i + ((2i-1)/n)x_i - (2/n)*sum_{j<i} x_j
    cdef double partial = 0.0, zsum = 0.0, z
    for i in range(n):
        z = -(g + 1.0) * buf[i] + (2.0 * (i + 1.0) - 1.0) / n * buf[i] - 2.0 / n * partial
        partial += buf[i]
        zsum += z
        buf[i] = z
    cdef double zbar = zsum / n, acc = 0.0, d
    for i in range(n):
        d = buf[i] - zbar
        acc += d * d
    if acc < 0.0:
        acc = 0.0
    out_val[0] = g
    out_se[0] = sqrt(acc) / (n * mu)


cdef void _theil_core(const double* x, Py_ssize_t n, double* out_val, double* out_se) noexcept nogil:
    cdef double lo = x[0], hi = x[0]
    cdef Py_ssize_t i
    cdef double sx = 0.0, sv = 0.0, v
    for i in range(n):
        if x[i] < lo: lo = x[i]
        if x[i] > hi: hi = x[i]
    if lo == hi:
        out_val[0] = 0.0
        out_se[0] = 0.0
        return
    for i in range(n):
        sx += x[i]
        sv += x[i] * log(x[i])
    cdef double mu = sx / n, nu = sv / n
    cdef double sxx = 0.0, sxv = 0.0, svv = 0.0, dx, dv
    for i in range(n):
        dx = x[i] - mu
        v = x[i] * log(x[i])
        dv = v - nu
        sxx += dx * dx
        sxv += dx * dv
        svv += dv * dv
    sxx /= n; sxv /= n; svv /= n
    cdef double gmu = -nu / (mu * mu) - 1.0 / mu
    cdef double gnu = 1.0 / mu
    cdef double var = (gmu * gmu * sxx + 2.0 * gmu * gnu * sxv + gnu * gnu * svv) / n
    if var < 0.0:
        var = 0.0
    out_val[0] = nu / mu - log(mu)
    out_se[0] = sqrt(var)


cdef void _mld_core(const double* x, Py_ssize_t n, double* out_val, double* out_se) noexcept nogil:
    cdef double lo = x[0], hi = x[0]
    cdef Py_ssize_t i
    cdef double sx = 0.0, sl = 0.0
    for i in range(n):
        if x[i] < lo: lo = x[i]
        if x[i] > hi: hi = x[i]
    if lo == hi:
        out_val[0] = 0.0
        out_se[0] = 0.0
        return
    for i in range(n):
        sx += x[i]
        sl += log(x[i])
    cdef double mu = sx / n, lam = sl / n
    cdef double sxx = 0.0, sxl = 0.0, sll = 0.0, dx, dl
    for i in range(n):
        dx = x[i] - mu
        dl = log(x[i]) - lam
        sxx += dx * dx
        sxl += dx * dl
        sll += dl * dl
    sxx /= n; sxl /= n; sll /= n
    cdef double gmu = 1.0 / mu
    cdef double var = (gmu * gmu * sxx - 2.0 * gmu * sxl + sll) / n
    if var < 0.0:
        var = 0.0
    out_val[0] = log(mu) - lam
    out_se[0] = sqrt(var)


cdef void _ge_core(const double* x, Py_ssize_t n, double alpha, double* out_val, double* out_se) noexcept nogil:
    cdef double lo = x[0], hi = x[0]
    cdef Py_ssize_t i
    cdef double sx = 0.0, sw = 0.0, w
    for i in range(n):
        if x[i] < lo: lo = x[i]
        if x[i] > hi: hi = x[i]
    if lo == hi:
        out_val[0] = 0.0
        out_se[0] = 0.0
        return
    for i in range(n):
        sx += x[i]
        sw += pow(x[i], alpha)
    cdef double mu = sx / n, nu = sw / n
    cdef double sxx = 0.0, sxw = 0.0, sww = 0.0, dx, dw
    for i in range(n):
        dx = x[i] - mu
        w = pow(x[i], alpha)
        dw = w - nu
        sxx += dx * dx
        sxw += dx * dw
        sww += dw * dw
    sxx /= n; sxw /= n; sww /= n
    cdef double denom = alpha * (alpha - 1.0)
    cdef double gnu = pow(mu, -alpha) / denom
    cdef double gmu = -nu * pow(mu, -alpha - 1.0) / (alpha - 1.0)
    cdef double var = (gmu * gmu * sxx + 2.0 * gmu * gnu * sxw + gnu * gnu * sww) / n
    if var < 0.0:
        var = 0.0
    out_val[0] = (nu * pow(mu, -alpha) - 1.0) / denom
    out_se[0] = sqrt(var)


def gini_stat(const double[::1] x, bint corrected=False):
    cdef Py_ssize_t n = x.shape[0]
    buf_arr = np.empty(n)
    cdef double[::1] buf = buf_arr
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = x[i]
    cdef double val, se
    with nogil:
        sort(&buf[0], &buf[0] + n)
        _gini_core(&buf[0], n, &val, &se)
    if corrected:
        val *= n / (n - 1.0)
        se *= n / (n - 1.0)
    return val, se


def theil_stat(const double[::1] x):
    cdef double val, se
    with nogil:
        _theil_core(&x[0], x.shape[0], &val, &se)
    return val, se


def mld_stat(const double[::1] x):
    cdef double val, se
    with nogil:
        _mld_core(&x[0], x.shape[0], &val, &se)
    return val, se


def ge_stat(const double[::1] x, double alpha):
    cdef double val, se
    with nogil:
        _ge_core(&x[0], x.shape[0], alpha, &val, &se)
    return val, se


def gini_segments(const double[::1] x, const long long[::1] bounds, bint corrected=False):
    cdef Py_ssize_t q = bounds.shape[0] - 1
    cdef Py_ssize_t maxlen = 0, j, lo, hi, n
    for j in range(q):
        if bounds[j + 1] - bounds[j] > maxlen:
            maxlen = bounds[j + 1] - bounds[j]
    out_arr = np.empty(q)
    buf_arr = np.empty(maxlen)
    cdef double[::1] out = out_arr
    cdef double[::1] buf = buf_arr
    cdef double val, se
    cdef Py_ssize_t i
    with nogil:
        for j in range(q):
            lo = bounds[j]
            hi = bounds[j + 1]
            n = hi - lo
            for i in range(n):
                buf[i] = x[lo + i]
            sort(&buf[0], &buf[0] + n)
            _gini_core(&buf[0], n, &val, &se)
            out[j] = val * n / (n - 1.0) if corrected else val
    return out_arr


def theil_segments(const double[::1] x, const long long[::1] bounds):
    cdef Py_ssize_t q = bounds.shape[0] - 1
    out_arr = np.empty(q)
    cdef double[::1] out = out_arr
    cdef double val, se
    cdef Py_ssize_t j
    with nogil:
        for j in range(q):
            _theil_core(&x[bounds[j]], bounds[j + 1] - bounds[j], &val, &se)
            out[j] = val
    return out_arr


def mld_segments(const double[::1] x, const long long[::1] bounds):
    cdef Py_ssize_t q = bounds.shape[0] - 1
    out_arr = np.empty(q)
    cdef double[::1] out = out_arr
    cdef double val, se
    cdef Py_ssize_t j
    with nogil:
        for j in range(q):
            _mld_core(&x[bounds[j]], bounds[j + 1] - bounds[j], &val, &se)
            out[j] = val
    return out_arr


def ge_segments(const double[::1] x, const long long[::1] bounds, double alpha):
    cdef Py_ssize_t q = bounds.shape[0] - 1
    out_arr = np.empty(q)
    cdef double[::1] out = out_arr
    cdef double val, se
    cdef Py_ssize_t j
    with nogil:
        for j in range(q):
            _ge_core(&x[bounds[j]], bounds[j + 1] - bounds[j], alpha, &val, &se)
            out[j] = val
    return out_arr


def gini_rows(const double[:, ::1] m):
    # row sorting is delegated to numpy's SIMD sort; the core may then
    # overwrite the scratch rows with influence terms
    cdef Py_ssize_t nrows = m.shape[0], n = m.shape[1]
    vals_arr = np.empty(nrows)
    ses_arr = np.empty(nrows)
    scratch = np.sort(m, axis=1)
    cdef double[::1] vals = vals_arr
    cdef double[::1] ses = ses_arr
    cdef double[:, ::1] rows = scratch
    cdef Py_ssize_t b
    with nogil:
        for b in range(nrows):
            _gini_core(&rows[b, 0], n, &vals[b], &ses[b])
    return vals_arr, ses_arr


def theil_rows(const double[:, ::1] m):
    cdef Py_ssize_t nrows = m.shape[0], n = m.shape[1]
    vals_arr = np.empty(nrows)
    ses_arr = np.empty(nrows)
    cdef double[::1] vals = vals_arr
    cdef double[::1] ses = ses_arr
    cdef Py_ssize_t b
    with nogil:
        for b in range(nrows):
            _theil_core(&m[b, 0], n, &vals[b], &ses[b])
    return vals_arr, ses_arr


def mld_rows(const double[:, ::1] m):
    cdef Py_ssize_t nrows = m.shape[0], n = m.shape[1]
    vals_arr = np.empty(nrows)
    ses_arr = np.empty(nrows)
    cdef double[::1] vals = vals_arr
    cdef double[::1] ses = ses_arr
    cdef Py_ssize_t b
    with nogil:
        for b in range(nrows):
            _mld_core(&m[b, 0], n, &vals[b], &ses[b])
    return vals_arr, ses_arr


def ge_rows(const double[:, ::1] m, double alpha):
    cdef Py_ssize_t nrows = m.shape[0], n = m.shape[1]
    vals_arr = np.empty(nrows)
    ses_arr = np.empty(nrows)
    cdef double[::1] vals = vals_arr
    cdef double[::1] ses = ses_arr
    cdef Py_ssize_t b
    with nogil:
        for b in range(nrows):
            _ge_core(&m[b, 0], n, alpha, &vals[b], &ses[b])
    return vals_arr, ses_arr
