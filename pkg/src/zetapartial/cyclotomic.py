"""Exact splitting data for rational primes in the cyclotomic field Q(zeta_q).

Everything here is integer arithmetic.  ``q`` is assumed small (at most a
few times 10**4), so factoring is plain trial division.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .errors import DomainError


def factorize(m: int) -> list[tuple[int, int]]:
    """Return the prime factorization of ``m`` as ascending ``(p, k)`` pairs."""
    if m < 1:
        raise DomainError(f"cannot factor {m}")
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            out.append((p, k))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def euler_phi(m: int) -> int:
    """Euler's totient via the factorization of ``m``.

    >>> euler_phi(12)
    4
    """
    if m < 1:
        raise DomainError("euler_phi needs m >= 1")
    phi = m
    for p, _ in factorize(m):
        phi = phi // p * (p - 1)
    return phi


def multiplicative_order(a: int, m: int) -> int:
    """Least ``k >= 1`` with ``a**k == 1 (mod m)``.

    The order divides phi(m), so only the divisors of phi(m) are tried.
    """
    if m < 1:
        raise DomainError("modulus must be positive")
    if m == 1:
        return 1
    if gcd(a, m) != 1:
        raise DomainError(f"{a} is not a unit modulo {m}")
    phi = euler_phi(m)
    k = phi
    for p, _ in factorize(phi):
        while k % p == 0 and pow(a, k // p, m) == 1:
            k //= p
    return k


@dataclass(frozen=True)
class SplittingType:
    """Ramification index ``e``, residue degree ``f`` and prime count ``g``."""

    e: int
    f: int
    g: int


@dataclass(frozen=True)
class RamifiedPrime:
    p: int
    e: int
    f: int
    g: int


@dataclass(frozen=True)
class CyclotomicField:
    """The field Q(zeta_q) together with the data of its ramified primes."""

    q: int
    n0: int
    ramified: tuple[RamifiedPrime, ...]

    @classmethod
    def from_modulus(cls, q: int) -> "CyclotomicField":
        if q < 2:
            raise DomainError("cyclotomic modulus must be >= 2")
        n0 = euler_phi(q)
        ramified = []
        for p, a in factorize(q):
            m = q // p**a
            f = multiplicative_order(p, m)
            ramified.append(RamifiedPrime(p, euler_phi(p**a), f, euler_phi(m) // f))
        return cls(q, n0, tuple(ramified))

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "phi": self.n0,
            "ramified": [[r.p, r.e, r.f, r.g] for r in self.ramified],
        }


def cyclotomic_field(q: int) -> CyclotomicField:
    return CyclotomicField.from_modulus(q)


def splitting_type(field: CyclotomicField, p: int) -> SplittingType:
    """Decomposition of the rational prime ``p`` in ``field``.

    For ``p`` not dividing ``q`` the residue degree is the order of ``p``
    modulo ``q``.  For ``p | q`` write ``q = p**a * m``; then ``e = phi(p**a)``
    and ``f`` is the order of ``p`` modulo ``m``.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    q = field.q
    if q % p:
        f = multiplicative_order(p, q)
        return SplittingType(1, f, field.n0 // f)
    for r in field.ramified:
        if r.p == p:
            return SplittingType(r.e, r.f, r.g)
    raise AssertionError("unreachable: p | q but not recorded as ramified")


def residue_degrees(field: CyclotomicField) -> dict[int, int]:
    """Residue degree for every unit residue class modulo ``q``.

    Unramified primes in the same class mod ``q`` share (e, f, g), which lets
    the coefficient sieve look splitting data up by ``p % q``.
    """
    q = field.q
    return {r: multiplicative_order(r, q) for r in range(q) if gcd(r, q) == 1}
