"""Pure-Python/numpy implementations of the hot kernels.

This module is the reference the compiled ``_ckernels`` extension must
reproduce.  It is selected automatically when the extension is missing, or
explicitly with ``ZETAPARTIAL_BACKEND=python``.
"""
import cmath
import math

import numpy as np

BACKEND = "python"

OK = 0
BOUNDARY_ZERO = 1
DEPTH_EXCEEDED = 2


def smallest_prime_factors(limit):
    """Smallest-prime-factor table ``spf[0..limit]`` (``spf[0] = spf[1] = 0``)."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            view = spf[p * p :: p]
            view[view == 0] = p
    rest = np.flatnonzero(spf == 0)
    rest = rest[rest >= 2]
    spf[rest] = rest
    return spf


def multiplicative_table(limit, q, local):
    """Values of the multiplicative function with ``f(p**k) = local[p % q, k]``.

    ``local`` has shape ``(q, K)`` with ``K`` exceeding every exponent that
    occurs below ``limit``.  Entry 0 of the result is 0.
    """
    local = np.asarray(local, dtype=np.int64)
    values = np.ones(limit + 1, dtype=np.int64)
    values[0] = 0
    if limit < 2:
        return values
    spf = smallest_prime_factors(limit)
    rest = np.arange(limit + 1, dtype=np.int64)
    idx = np.arange(2, limit + 1, dtype=np.int64)
    while idx.size:
        p = spf[rest[idx]]
        exps = np.zeros(idx.size, dtype=np.int64)
        live = np.ones(idx.size, dtype=bool)
        while live.any():
            sub = idx[live]
            r = rest[sub] // p[live]
            rest[sub] = r
            exps[live] += 1
            live[live] = (r % p[live]) == 0
        values[idx] *= local[p % q, exps]
        idx = idx[rest[idx] > 1]
    return values


def dirichlet_divide(a, b):
    """Exact Dirichlet-series quotient ``c`` with ``b * c = a``; needs ``b[1] == 1``."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    limit = a.size - 1
    c = a.copy()
    support = [int(d) for d in np.flatnonzero(b) if d > 1]
    bvals = [int(b[d]) for d in support]
    for n in range(1, limit + 1):
        cn = int(c[n])
        if cn == 0:
            continue
        for d, bd in zip(support, bvals):
            m = d * n
            if m > limit:
                break
            c[m] -= bd * cn
    return c


def eval_sum(log_n, coef, power, sigma, t):
    """``sum coef * (-log n)**power * exp(-(sigma + i t) log n)`` as ``(re, im)``.

    Real and imaginary parts are accumulated with ``math.fsum``.
    """
    mag = coef * np.exp(-sigma * log_n)
    if power:
        mag = mag * (-log_n) ** power
    phase = t * log_n
    return (
        math.fsum((mag * np.cos(phase)).tolist()),
        -math.fsum((mag * np.sin(phase)).tolist()),
    )


def abs_moment(log_n, coef, power, sigma):
    """``sum coef * (log n)**power * n**-sigma`` (a bound for the ``power``-th derivative)."""
    mag = coef * np.exp(-sigma * log_n)
    if power:
        mag = mag * log_n**power
    return math.fsum(mag.tolist())


def _segment_distance(p, v):
    vv = v.real * v.real + v.imag * v.imag
    if vv == 0.0:
        return abs(p)
    lam = -(v.real * p.real + v.imag * p.imag) / vv
    lam = min(1.0, max(-1.0, lam))
    return abs(p + lam * v)


def edge_arg_change(log_n, coef, s0re, s0im, s1re, s1im, boundary_tol, max_depth):
    """Continuous change of ``arg f`` along the segment from ``s0`` to ``s1``.

    The segment is bisected until, on each piece, a second-order Taylor
    enclosure of the image (a stadium around the tangent segment at the
    midpoint) misses the origin and the endpoint phases differ by less than
    pi/2.  A convex image avoiding 0 makes the principal phase difference
    exact, so the result is the true change of argument up to rounding.

    Returns ``(delta, status, bad_re, bad_im, nevals)``.
    """
    log_n = np.asarray(log_n, dtype=np.float64)
    coef = np.asarray(coef, dtype=np.float64)
    a = complex(s0re, s0im)
    b = complex(s1re, s1im)
    nevals = 0

    def f(s):
        return complex(*eval_sum(log_n, coef, 0, s.real, s.imag))

    fa, fb = f(a), f(b)
    nevals += 2
    for s, fs in ((a, fa), (b, fb)):
        if abs(fs) <= boundary_tol * abs_moment(log_n, coef, 0, s.real):
            return 0.0, BOUNDARY_ZERO, s.real, s.imag, nevals
    total = 0.0
    stack = [(a, b, fa, fb, 0)]
    while stack:
        a, b, fa, fb, depth = stack.pop()
        c = 0.5 * (a + b)
        fc = f(c)
        dfc = complex(*eval_sum(log_n, coef, 1, c.real, c.imag))
        nevals += 1
        if abs(fc) <= boundary_tol * abs_moment(log_n, coef, 0, c.real):
            return total, BOUNDARY_ZERO, c.real, c.imag, nevals
        half = 0.5 * (b - a)
        smin = min(a.real, b.real)
        m0 = abs_moment(log_n, coef, 0, smin)
        m2 = abs_moment(log_n, coef, 2, smin)
        radius = 0.5 * m2 * abs(half) ** 2 + 1e-13 * m0
        step = cmath.phase(fb / fa)
        if abs(step) < 0.5 * math.pi and _segment_distance(fc, dfc * half) > radius:
            total += step
            continue
        if depth >= max_depth or abs(half) <= 4e-16 * max(1.0, abs(c)):
            return total, DEPTH_EXCEEDED, c.real, c.imag, nevals
        stack.append((c, b, fc, fb, depth + 1))
        stack.append((a, c, fa, fc, depth + 1))
    return total, OK, 0.0, 0.0, nevals
