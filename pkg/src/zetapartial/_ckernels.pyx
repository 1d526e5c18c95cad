# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pykernels``; same signatures, same results."""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, cos, sin, sqrt, fabs, atan2, M_PI
from libc.stdint cimport int64_t, int32_t, int8_t

cnp.import_array()

BACKEND = "cython"

OK = 0
BOUNDARY_ZERO = 1
DEPTH_EXCEEDED = 2


def multiplicative_table(Py_ssize_t limit, Py_ssize_t q, local):
    cdef const int64_t[:, ::1] loc = np.ascontiguousarray(local, dtype=np.int64)
    values_arr = np.ones(limit + 1, dtype=np.int64)
    cdef int64_t[::1] values = values_arr
    values[0] = 0
    if limit < 2:
        return values_arr
    lp_arr = np.zeros(limit + 1, dtype=np.int32)
    pk_arr = np.zeros(limit + 1, dtype=np.int32)
    ek_arr = np.zeros(limit + 1, dtype=np.int8)
    primes_arr = np.empty(limit // 2 + 16, dtype=np.int32)
    cdef int32_t[::1] lp = lp_arr
    cdef int32_t[::1] pk = pk_arr
    cdef int8_t[::1] ek = ek_arr
    cdef int32_t[::1] primes = primes_arr
    cdef Py_ssize_t nprimes = 0, i, j, m
    cdef int32_t p
    # linear sieve: every composite m is produced once, as lp[m] * (m / lp[m])
    for i in range(2, limit + 1):
        if lp[i] == 0:
            lp[i] = <int32_t>i
            pk[i] = <int32_t>i
            ek[i] = 1
            primes[nprimes] = <int32_t>i
            nprimes += 1
        for j in range(nprimes):
            p = primes[j]
            if p > lp[i] or <int64_t>p * i > limit:
                break
            m = p * i
            lp[m] = p
            if p == lp[i]:
                pk[m] = pk[i] * p
                ek[m] = ek[i] + 1
            else:
                pk[m] = p
                ek[m] = 1
    for i in range(2, limit + 1):
        values[i] = loc[lp[i] % q, ek[i]] * values[i // pk[i]]
    return values_arr


def dirichlet_divide(a, b):
    cdef const int64_t[::1] av = np.ascontiguousarray(a, dtype=np.int64)
    cdef const int64_t[::1] bv = np.ascontiguousarray(b, dtype=np.int64)
    c_arr = np.array(av, dtype=np.int64, copy=True)
    cdef int64_t[::1] c = c_arr
    cdef Py_ssize_t limit = av.shape[0] - 1
    sup_arr = np.array([d for d in range(2, bv.shape[0]) if bv[d] != 0], dtype=np.int64)
    cdef int64_t[::1] sup = sup_arr
    cdef Py_ssize_t nsup = sup.shape[0], n, k
    cdef int64_t cn, m
    for n in range(1, limit + 1):
        cn = c[n]
        if cn == 0:
            continue
        for k in range(nsup):
            m = sup[k] * n
            if m > limit:
                break
            c[m] -= bv[sup[k]] * cn
    return c_arr


cdef inline void _neumaier(double x, double* s, double* comp) nogil:
    cdef double t = s[0] + x
    if fabs(s[0]) >= fabs(x):
        comp[0] += (s[0] - t) + x
    else:
        comp[0] += (x - t) + s[0]
    s[0] = t


cdef void _eval(const double[::1] log_n, const double[::1] coef, double sigma, double t,
                double* fre, double* fim, double* dre, double* dim) nogil:
    """Value and derivative at sigma + i t with compensated accumulation."""
    cdef Py_ssize_t i, n = log_n.shape[0]
    cdef double s1 = 0, c1 = 0, s2 = 0, c2 = 0, s3 = 0, c3 = 0, s4 = 0, c4 = 0
    cdef double mag, ph, cr, ci, ln
    for i in range(n):
        ln = log_n[i]
        mag = coef[i] * exp(-sigma * ln)
        ph = t * ln
        cr = mag * cos(ph)
        ci = -mag * sin(ph)
        _neumaier(cr, &s1, &c1)
        _neumaier(ci, &s2, &c2)
        _neumaier(-ln * cr, &s3, &c3)
        _neumaier(-ln * ci, &s4, &c4)
    fre[0] = s1 + c1
    fim[0] = s2 + c2
    dre[0] = s3 + c3
    dim[0] = s4 + c4


cdef double _moment(const double[::1] log_n, const double[::1] coef, int power,
                    double sigma) nogil:
    cdef Py_ssize_t i, n = log_n.shape[0]
    cdef double s = 0, comp = 0, mag, ln
    for i in range(n):
        ln = log_n[i]
        mag = coef[i] * exp(-sigma * ln)
        if power == 1:
            mag *= ln
        elif power == 2:
            mag *= ln * ln
        elif power > 2:
            mag *= ln ** power
        _neumaier(mag, &s, &comp)
    return s + comp


def eval_sum(log_n, coef, int power, double sigma, double t):
    cdef const double[::1] ln = np.ascontiguousarray(log_n, dtype=np.float64)
    cdef const double[::1] cf = np.ascontiguousarray(coef, dtype=np.float64)
    cdef Py_ssize_t i, n = ln.shape[0]
    cdef double s1 = 0, c1 = 0, s2 = 0, c2 = 0, mag, ph, w
    for i in range(n):
        mag = cf[i] * exp(-sigma * ln[i])
        if power:
            w = -ln[i]
            mag *= w ** power
        ph = t * ln[i]
        _neumaier(mag * cos(ph), &s1, &c1)
        _neumaier(-mag * sin(ph), &s2, &c2)
    return s1 + c1, s2 + c2


def abs_moment(log_n, coef, int power, double sigma):
    cdef const double[::1] ln = np.ascontiguousarray(log_n, dtype=np.float64)
    cdef const double[::1] cf = np.ascontiguousarray(coef, dtype=np.float64)
    return _moment(ln, cf, power, sigma)


cdef inline double _hyp(double x, double y) nogil:
    return sqrt(x * x + y * y)


def edge_arg_change(log_n, coef, double s0re, double s0im, double s1re, double s1im,
                    double boundary_tol, int max_depth):
    cdef const double[::1] ln = np.ascontiguousarray(log_n, dtype=np.float64)
    cdef const double[::1] cf = np.ascontiguousarray(coef, dtype=np.float64)
    cdef Py_ssize_t cap = 4 * (max_depth + 2)
    # stack rows: are, aim, bre, bim, fare, faim, fbre, fbim, depth
    stack_arr = np.empty((cap, 9), dtype=np.float64)
    cdef double[:, ::1] st = stack_arr
    cdef Py_ssize_t top = 0
    cdef long nevals = 0
    cdef double total = 0.0
    cdef double are, aim, bre, bim, fare, faim, fbre, fbim, cre, cim
    cdef double fcre, fcim, dcre, dcim, hre, him, vre, vim, vv, lam, px, py
    cdef double dist, radius, step, smin, m0, m2, hl, cabs
    cdef double dummy1, dummy2
    cdef int depth
    _eval(ln, cf, s0re, s0im, &fare, &faim, &dummy1, &dummy2)
    _eval(ln, cf, s1re, s1im, &fbre, &fbim, &dummy1, &dummy2)
    nevals += 2
    if _hyp(fare, faim) <= boundary_tol * _moment(ln, cf, 0, s0re):
        return 0.0, BOUNDARY_ZERO, s0re, s0im, nevals
    if _hyp(fbre, fbim) <= boundary_tol * _moment(ln, cf, 0, s1re):
        return 0.0, BOUNDARY_ZERO, s1re, s1im, nevals
    st[0, 0] = s0re; st[0, 1] = s0im; st[0, 2] = s1re; st[0, 3] = s1im
    st[0, 4] = fare; st[0, 5] = faim; st[0, 6] = fbre; st[0, 7] = fbim; st[0, 8] = 0
    top = 1
    while top > 0:
        top -= 1
        are = st[top, 0]; aim = st[top, 1]; bre = st[top, 2]; bim = st[top, 3]
        fare = st[top, 4]; faim = st[top, 5]; fbre = st[top, 6]; fbim = st[top, 7]
        depth = <int>st[top, 8]
        cre = 0.5 * (are + bre)
        cim = 0.5 * (aim + bim)
        _eval(ln, cf, cre, cim, &fcre, &fcim, &dcre, &dcim)
        nevals += 1
        if _hyp(fcre, fcim) <= boundary_tol * _moment(ln, cf, 0, cre):
            return total, BOUNDARY_ZERO, cre, cim, nevals
        hre = 0.5 * (bre - are)
        him = 0.5 * (bim - aim)
        smin = are if are < bre else bre
        m0 = _moment(ln, cf, 0, smin)
        m2 = _moment(ln, cf, 2, smin)
        hl = _hyp(hre, him)
        radius = 0.5 * m2 * hl * hl + 1e-13 * m0
        # phase of fb / fa
        step = atan2(fbim * fare - fbre * faim, fbre * fare + fbim * faim)
        vre = dcre * hre - dcim * him
        vim = dcre * him + dcim * hre
        vv = vre * vre + vim * vim
        if vv == 0.0:
            dist = _hyp(fcre, fcim)
        else:
            lam = -(vre * fcre + vim * fcim) / vv
            if lam > 1.0:
                lam = 1.0
            elif lam < -1.0:
                lam = -1.0
            px = fcre + lam * vre
            py = fcim + lam * vim
            dist = _hyp(px, py)
        if fabs(step) < 0.5 * M_PI and dist > radius:
            total += step
            continue
        cabs = _hyp(cre, cim)
        if depth >= max_depth or hl <= 4e-16 * (cabs if cabs > 1.0 else 1.0):
            return total, DEPTH_EXCEEDED, cre, cim, nevals
        if top + 2 > cap:
            return total, DEPTH_EXCEEDED, cre, cim, nevals
        st[top, 0] = cre; st[top, 1] = cim; st[top, 2] = bre; st[top, 3] = bim
        st[top, 4] = fcre; st[top, 5] = fcim; st[top, 6] = fbre; st[top, 7] = fbim
        st[top, 8] = depth + 1
        top += 1
        st[top, 0] = are; st[top, 1] = aim; st[top, 2] = cre; st[top, 3] = cim
        st[top, 4] = fare; st[top, 5] = faim; st[top, 6] = fcre; st[top, 7] = fcim
        st[top, 8] = depth + 1
        top += 1
    return total, OK, 0.0, 0.0, nevals
