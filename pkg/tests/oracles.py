"""Independent reference computations for the tests.

Nothing here calls the package: coefficients come from explicit Dirichlet
characters, factorization is per-integer trial division, and zeros come from
vectorized Newton over a dense seed grid.
"""
import cmath
import math
from itertools import product

import numpy as np


def trial_factor(n):
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def chi_minus4(n):
    return (0, 1, 0, -1)[n % 4]


def divisor_sum_chi4(n):
    return sum(chi_minus4(d) for d in range(1, n + 1) if n % d == 0)


def units(q):
    return [r for r in range(1, q + 1) if math.gcd(r, q) == 1 and r < q] or [0]


def characters(q):
    """All Dirichlet characters mod q as dicts residue -> complex value."""
    if q <= 2:
        return [{r % q: 1 + 0j for r in range(q)}]
    G = units(q)
    order = {g: next(k for k in range(1, q + 1) if pow(g, k, q) == 1) for g in G}
    exponent = math.lcm(*order.values())
    gens, span = [], {1}
    for g in sorted(G, key=lambda g: -order[g]):
        if g not in span:
            gens.append(g)
            new = set(span)
            frontier = list(span)
            while frontier:
                x = frontier.pop()
                y = x * g % q
                if y not in new:
                    new.add(y)
                    frontier.append(y)
            span = new
    roots = [cmath.exp(2j * math.pi * k / exponent) for k in range(exponent)]
    chars = []
    for vals in product(range(exponent), repeat=len(gens)):
        chi, frontier, ok = {1: 1 + 0j}, [1], True
        while frontier and ok:
            x = frontier.pop()
            for g, v in zip(gens, vals):
                y, val = x * g % q, chi[x] * roots[v]
                if y in chi:
                    if abs(chi[y] - val) > 1e-9:
                        ok = False
                        break
                else:
                    chi[y] = val
                    frontier.append(y)
        if ok and len(chi) == len(G):
            chars.append(chi)
    return chars


def _conductor_lift(chi, q):
    """Primitive character inducing chi, as a function on integers."""
    for d in sorted(d for d in range(1, q + 1) if q % d == 0):
        if all(abs(chi[r] - 1) < 1e-9 for r in chi if r % d == 1 % d):
            break

    def prim(n):
        if math.gcd(n, d) != 1:
            return 0
        m = n
        while math.gcd(m, q) != 1:
            m += d
        return chi[m % q]

    return prim


def _euler_coeffs(values, kmax):
    """Coefficients of prod_v (1 - v x)^-1 up to x**kmax."""
    poly = [1 + 0j] + [0j] * kmax
    for v in values:
        for k in range(1, kmax + 1):
            poly[k] += v * poly[k - 1]
    return [round(c.real) for c in poly]


def character_coefficients(q, limit, primitive=True):
    """a(n) (primitive=True) or c(n) (primitive=False) for n <= limit."""
    chars = characters(q)
    if primitive:
        funcs = [_conductor_lift(chi, q) for chi in chars]
    else:
        funcs = [(lambda chi: (lambda n: chi.get(n % q, 0) if math.gcd(n, q) == 1 else 0))(chi) for chi in chars]
    cache = {}
    out = [0] * (limit + 1)
    for n in range(1, limit + 1):
        v = 1
        for p, k in trial_factor(n).items():
            if p not in cache:
                cache[p] = _euler_coeffs([f(p) for f in funcs], max(1, int(math.log(limit, p)) + 1))
            v *= cache[p][k]
        out[n] = v
    return out


def naive_brun(q, y):
    count = 0
    for n in range(1, int(y) + 1):
        f = trial_factor(n)
        if all(k == 1 and p % q == 1 for p, k in f.items()):
            count += 1
    return count


def grid_scan_zeros(n, coef, sigma_lo, sigma_hi, T, steps=(44, 206)):
    """Distinct zeros with 0 < Im s <= T found by Newton from a seed grid."""
    ln = np.log(np.asarray(n, dtype=float))
    c = np.asarray(coef, dtype=float)
    sig = np.linspace(sigma_lo, sigma_hi, steps[0])
    t = np.linspace(0, T * 1.025, steps[1])
    s = (sig[:, None] + 1j * t[None, :]).ravel()
    with np.errstate(all="ignore"):
        for _ in range(100):
            e = c * np.exp(-s[:, None] * ln)
            s = s - e.sum(1) / -(ln * e).sum(1)
        f = np.abs((c * np.exp(-s[:, None] * ln)).sum(1))
    good = s[np.isfinite(s) & (f < 1e-11) & (s.imag > 0) & (s.imag <= T)]
    roots = []
    for z in good:
        if all(abs(z - w) > 1e-6 for w in roots):
            roots.append(complex(z))
    return sorted(roots, key=lambda z: z.imag)
