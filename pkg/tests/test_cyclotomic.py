import math

import pytest
from hypothesis import given, settings, strategies as st

from zetapartial import DomainError, cyclotomic_field, euler_phi, multiplicative_order, splitting_type
from zetapartial.cyclotomic import factorize, is_prime, residue_degrees

from oracles import trial_factor


@pytest.mark.parametrize("m, phi", [(1, 1), (4, 2), (12, 4), (7, 6), (9, 6), (30, 8)])
def test_euler_phi_examples(m, phi):
    assert euler_phi(m) == phi


@pytest.mark.parametrize("m", range(1, 200))
def test_euler_phi_counts_units(m):
    assert euler_phi(m) == sum(1 for r in range(1, m + 1) if math.gcd(r, m) == 1)


@pytest.mark.parametrize("a, m, k", [(5, 1, 1), (3, 4, 2), (2, 7, 3), (10, 7, 6)])
def test_multiplicative_order_examples(a, m, k):
    assert multiplicative_order(a, m) == k


def test_multiplicative_order_rejects_non_coprime():
    with pytest.raises(DomainError):
        multiplicative_order(2, 4)


@given(st.integers(2, 300), st.integers(1, 10**4))
def test_multiplicative_order_is_minimal(m, a):
    if math.gcd(a, m) != 1:
        return
    k = multiplicative_order(a, m)
    assert pow(a, k, m) == 1 % m
    assert all(pow(a, j, m) != 1 for j in range(1, k))


@pytest.mark.parametrize(
    "q, p, efg",
    [(4, 5, (1, 1, 2)), (4, 2, (2, 1, 1)), (4, 3, (1, 2, 1)), (3, 3, (2, 1, 1)), (12, 2, (2, 2, 1)), (12, 7, (1, 2, 2))],
)
def test_splitting_examples(q, p, efg):
    s = splitting_type(cyclotomic_field(q), p)
    assert (s.e, s.f, s.g) == efg


def test_splitting_rejects_composite():
    with pytest.raises(DomainError):
        splitting_type(cyclotomic_field(4), 9)


def _primes(limit):
    return [p for p in range(2, limit + 1) if is_prime(p)]


@pytest.mark.parametrize("q", range(2, 201))
def test_efg_product_is_degree(q):
    F = cyclotomic_field(q)
    for p in _primes(10**4)[::7] + [p for p, _ in factorize(q)]:
        s = splitting_type(F, p)
        assert s.e * s.f * s.g == F.n0


@pytest.mark.parametrize("q", [5, 7, 8, 9, 12, 15, 16, 21])
def test_unramified_degree_is_brute_force_order(q):
    F = cyclotomic_field(q)
    for p in _primes(500):
        if q % p:
            f = next(k for k in range(1, q + 1) if pow(p, k, q) == 1)
            assert splitting_type(F, p).f == f


@pytest.mark.parametrize("m", [1, 3, 5, 7, 9, 15, 21])
def test_q_twice_odd_is_same_field(m):
    a, b = cyclotomic_field(m if m > 1 else 2), cyclotomic_field(2 * m)
    assert a.n0 == b.n0
    for p in _primes(300):
        sa, sb = splitting_type(a, p), splitting_type(b, p)
        assert (sa.e, sa.f, sa.g) == (sb.e, sb.f, sb.g)


def test_field_info_dict():
    d = cyclotomic_field(12).to_dict()
    assert d == {"q": 12, "phi": 4, "ramified": [[2, 2, 2, 1], [3, 2, 2, 1]]}


def test_residue_degrees_cover_units():
    rd = residue_degrees(cyclotomic_field(8))
    assert rd == {1: 1, 3: 2, 5: 2, 7: 2}


@settings(max_examples=200)
@given(st.integers(1, 10**7))
def test_factorize_matches_trial_division(n):
    assert dict(factorize(n)) == trial_factor(n)


def test_domain_errors():
    with pytest.raises(DomainError):
        cyclotomic_field(1)
    with pytest.raises(DomainError):
        euler_phi(0)
