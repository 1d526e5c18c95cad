"""Ideal-counting coefficients of cyclotomic Dedekind zeta functions.

Three multiplicative sequences are built, all indexed ``1..floor(X)``:

``a``
    number of integral ideals of norm ``n``;
``b``
    the part of ``a`` coming from primes above divisors of ``q``;
``c``
    the quotient ``a / b`` (as Dirichlet series), the coefficients of the
    product of all Dirichlet L-series modulo ``q``.

Tables come out of a smallest-prime-factor linear sieve in the compiled
kernel; prime-power values are looked up by residue class modulo ``q``.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field as dc_field
from math import comb, gcd

import numpy as np

from . import kernels
from .cyclotomic import CyclotomicField, factorize, multiplicative_order
from .errors import CapacityError, DomainError, RangeError

KINDS = ("a", "b", "c")

DEFAULT_MAX_TABLE = 50_000_000


def max_table_size() -> int:
    return int(os.environ.get("ZETAPARTIAL_MAX_TABLE", DEFAULT_MAX_TABLE))


def local_coefficient(f: int, g: int, k: int) -> int:
    """Number of ideals of norm ``p**k`` above a prime with ``g`` factors of degree ``f``.

    Such ideals are monomials of total degree ``k/f`` in the ``g`` primes.
    """
    if f < 1 or g < 1:
        raise DomainError("residue degree and prime count must be positive")
    if k % f:
        return 0
    return comb(k // f + g - 1, g - 1)


@dataclass(frozen=True)
class CoefficientTable:
    q: int
    X: float
    kind: str
    values: np.ndarray = dc_field(repr=False)

    @property
    def limit(self) -> int:
        return self.values.size - 1

    def __getitem__(self, n):
        if isinstance(n, slice):
            return self.values[n]
        if not 1 <= n <= self.limit:
            raise IndexError(n)
        return int(self.values[n])

    def __len__(self):
        return self.limit

    def nonzero_indices(self) -> np.ndarray:
        return np.flatnonzero(self.values)

    def items(self):
        for n in range(1, self.limit + 1):
            yield n, int(self.values[n])


def _limit_for(X) -> int:
    if X < 1:
        raise DomainError(f"table bound must be >= 1, got {X}")
    limit = math.floor(X)
    cap = max_table_size()
    if limit > cap:
        raise CapacityError(f"floor(X) = {limit} exceeds the table cap {cap}")
    return limit


def _max_exponent(limit: int) -> int:
    return max(1, limit.bit_length())


def _reachable_exponent(r: int, q: int, limit: int) -> int:
    """Largest k with p**k <= limit for some integer p >= 2 with p = r (mod q)."""
    p = r if r >= 2 else r + q
    k, pk = 0, p
    while pk <= limit:
        k += 1
        pk *= p
    return k


def _local_rows(field: CyclotomicField, limit: int, kind: str) -> np.ndarray:
    q = field.q
    K = _max_exponent(limit) + 1
    rows = np.zeros((q, K), dtype=np.int64)
    rows[:, 0] = 1

    def fill(r, f, g):
        # exponents no prime of this class can reach stay 0; they could overflow int64
        for k in range(1, _reachable_exponent(r, q, limit) + 1):
            rows[r, k] = local_coefficient(f, g, k)

    if kind == "a":
        for r in range(q):
            if gcd(r, q) == 1:
                f = multiplicative_order(r, q)
                fill(r, f, field.n0 // f)
    for rp in field.ramified:
        fill(rp.p % q, rp.f, rp.g)
    return rows


def _freeze(values: np.ndarray) -> np.ndarray:
    values.flags.writeable = False
    return values


def build_coefficient_table(field: CyclotomicField, X) -> CoefficientTable:
    """Table of ``a(n)``, the number of integral ideals of norm ``n``, for ``n <= X``.

    >>> from zetapartial.cyclotomic import cyclotomic_field
    >>> build_coefficient_table(cyclotomic_field(4), 10).values[1:].tolist()
    [1, 1, 0, 1, 2, 0, 0, 1, 1, 2]
    """
    limit = _limit_for(X)
    values = kernels.active.multiplicative_table(limit, field.q, _local_rows(field, limit, "a"))
    return CoefficientTable(field.q, X, "a", _freeze(values))


def build_b_table(field: CyclotomicField, X) -> CoefficientTable:
    """Coefficients of the Euler factors at the primes above divisors of ``q``."""
    limit = _limit_for(X)
    values = kernels.active.multiplicative_table(limit, field.q, _local_rows(field, limit, "b"))
    return CoefficientTable(field.q, X, "b", _freeze(values))


def build_c_table(field: CyclotomicField, X) -> CoefficientTable:
    """``c = a / b`` by exact Dirichlet-series division (``b(1) = 1``)."""
    a = build_coefficient_table(field, X)
    b = build_b_table(field, X)
    values = kernels.active.dirichlet_divide(a.values, b.values)
    if (values < 0).any():
        raise RangeError("negative coefficient in a / b; table construction is inconsistent")
    return CoefficientTable(field.q, X, "c", _freeze(values))


def build_table(field: CyclotomicField, X, kind: str = "a") -> CoefficientTable:
    builders = {"a": build_coefficient_table, "b": build_b_table, "c": build_c_table}
    if kind not in builders:
        raise DomainError(f"unknown coefficient kind {kind!r}")
    return builders[kind](field, X)


def count_nonzero_coefficients(table: CoefficientTable, x) -> int:
    """Exact ``#{n <= x : value(n) != 0}``."""
    if x > table.X:
        raise RangeError(f"x = {x} exceeds the table bound {table.X}")
    if x < 1:
        return 0
    return int(np.count_nonzero(table.values[1 : math.floor(x) + 1]))


def density_scale(x, phi_q: int) -> float:
    """``x * (log log x / log x) ** (1 - 1/phi(q))``, the shape of the sparsity bound."""
    lx = math.log(x)
    return x * (math.log(lx) / lx) ** (1.0 - 1.0 / phi_q)


def density_ratio(field: CyclotomicField, x, table: CoefficientTable | None = None) -> float:
    """Nonzero-coefficient count up to ``x`` divided by :func:`density_scale`."""
    if x < 16:
        raise DomainError("density_ratio needs x >= 16 so that log log x > 0")
    if table is None:
        table = build_coefficient_table(field, x)
    return count_nonzero_coefficients(table, x) / density_scale(x, field.n0)


def _brun_indicator(q: int, y) -> np.ndarray:
    limit = math.floor(y)
    cap = max_table_size()
    if limit > cap:
        raise CapacityError(f"floor(y) = {limit} exceeds the table cap {cap}")
    K = _max_exponent(limit) + 1
    rows = np.zeros((q, K), dtype=np.int64)
    rows[:, 0] = 1
    rows[1 % q, 1] = 1
    return kernels.active.multiplicative_table(limit, q, rows)


def brun_set_count(q: int, y) -> int:
    """Count squarefree ``n <= y`` whose prime factors are all ``1 (mod q)``; ``n = 1`` counts."""
    if q < 2:
        raise DomainError("q must be >= 2")
    if y < 1:
        return 0
    return int(np.count_nonzero(_brun_indicator(q, y)))


def brun_set_members(q: int, y) -> list[int]:
    if q < 2:
        raise DomainError("q must be >= 2")
    if y < 1:
        return []
    return np.flatnonzero(_brun_indicator(q, y)).tolist()


def divisor_count(n: int) -> int:
    if n < 1:
        raise DomainError("divisor_count needs n >= 1")
    d = 1
    for _, k in factorize(n):
        d *= k + 1
    return d


def powerful_squarefree_decomposition(n: int) -> tuple[int, int]:
    """Split ``n = A * B`` with ``A`` powerful, ``B`` squarefree and ``gcd(A, B) = 1``."""
    if n < 1:
        raise DomainError("decomposition needs n >= 1")
    A = B = 1
    for p, k in factorize(n):
        if k >= 2:
            A *= p**k
        else:
            B *= p
    return A, B
