import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zetapartial import (
    CapacityError,
    DomainError,
    RangeError,
    brun_set_count,
    build_b_table,
    build_c_table,
    build_coefficient_table,
    count_nonzero_coefficients,
    cyclotomic_field,
    density_ratio,
    divisor_count,
    local_coefficient,
    powerful_squarefree_decomposition,
)
from zetapartial.coefficients import brun_set_members, build_table

from oracles import character_coefficients, divisor_sum_chi4, naive_brun, trial_factor


@pytest.mark.parametrize("f, g, k, v", [(1, 2, 2, 3), (2, 1, 1, 0), (3, 4, 0, 1), (1, 1, 7, 1), (2, 3, 4, 6)])
def test_local_coefficient(f, g, k, v):
    assert local_coefficient(f, g, k) == v


def test_gaussian_table():
    t = build_coefficient_table(cyclotomic_field(4), 10)
    assert t.values[1:].tolist() == [1, 1, 0, 1, 2, 0, 0, 1, 1, 2]
    assert count_nonzero_coefficients(t, 10) == 7
    assert t[5] == 2 and len(t) == 10


def test_rational_field_all_ones():
    assert build_coefficient_table(cyclotomic_field(2), 6).values[1:].tolist() == [1] * 6


@pytest.mark.parametrize("q", [2, 3, 7, 12])
def test_x_equal_one(q):
    t = build_coefficient_table(cyclotomic_field(q), 1)
    assert t.values.tolist() == [0, 1]


def test_table_is_read_only():
    t = build_coefficient_table(cyclotomic_field(4), 10)
    with pytest.raises(ValueError):
        t.values[3] = 7


def test_b_tables():
    b4 = build_b_table(cyclotomic_field(4), 10)
    assert np.flatnonzero(b4.values).tolist() == [1, 2, 4, 8]
    assert set(b4.values[[1, 2, 4, 8]].tolist()) == {1}
    b12 = build_b_table(cyclotomic_field(12), 10)
    assert np.flatnonzero(b12.values).tolist() == [1, 4, 9]
    b6 = build_b_table(cyclotomic_field(6), 10)
    assert np.flatnonzero(b6.values).tolist() == [1, 3, 4, 9]
    b3 = build_b_table(cyclotomic_field(3), 10)
    assert np.flatnonzero(b3.values).tolist() == [1, 3, 9]


def test_c_table_values():
    c = build_c_table(cyclotomic_field(4), 20)
    assert c[5] == 2 and c[2] == 0 and c[13] == 2 and c[3] == 0 and c[9] == 1


def test_gaussian_divisor_sum_oracle():
    t = build_coefficient_table(cyclotomic_field(4), 3000).values
    assert [divisor_sum_chi4(n) for n in range(1, 3001)] == t[1:].tolist()


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 12, 15])
def test_character_oracle(q):
    F = cyclotomic_field(q)
    assert build_coefficient_table(F, 1500).values.tolist() == character_coefficients(q, 1500)
    assert build_c_table(F, 1500).values.tolist() == character_coefficients(q, 1500, primitive=False)


@pytest.mark.parametrize("q", [3, 4, 5, 8, 12])
def test_multiplicative(q):
    a = build_coefficient_table(cyclotomic_field(q), 5000).values
    for m in range(1, 71):
        for n in range(1, 71):
            if math.gcd(m, n) == 1:
                assert a[m * n] == a[m] * a[n]


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8])
def test_bounded_by_divisor_power(q):
    F = cyclotomic_field(q)
    a = build_coefficient_table(F, 20000).values
    d = np.array([0] + [divisor_count(n) for n in range(1, 20001)], dtype=float)
    assert np.all(a[1:] <= d[1:] ** (F.n0 - 1))


@pytest.mark.parametrize("q", [4, 6, 12, 30])
def test_b_support_bound(q):
    F = cyclotomic_field(q)
    z = 10**5
    r = len(F.ramified)
    b = build_b_table(F, z)
    assert count_nonzero_coefficients(b, z) <= (1 + math.log2(z)) ** r


def test_count_nonzero_trivial_cases():
    t = build_coefficient_table(cyclotomic_field(2), 100)
    assert count_nonzero_coefficients(t, 57.5) == 57
    assert count_nonzero_coefficients(t, 1) == 1
    assert count_nonzero_coefficients(t, 0.5) == 0


def test_count_nonzero_range_error():
    t = build_coefficient_table(cyclotomic_field(4), 100)
    with pytest.raises(RangeError):
        count_nonzero_coefficients(t, 101)


def test_density_ratio():
    F = cyclotomic_field(4)
    assert density_ratio(cyclotomic_field(2), 1000) == 1.0
    r4 = density_ratio(F, 10**4)
    assert r4 == pytest.approx(0.5598918280042209, rel=1e-12)
    assert density_ratio(F, 10**6) < r4
    with pytest.raises(DomainError):
        density_ratio(F, 15)


@pytest.mark.parametrize("q, y, count", [(4, 30, 5), (3, 20, 4), (5, 0.5, 0), (7, 1, 1)])
def test_brun_examples(q, y, count):
    assert brun_set_count(q, y) == count


def test_brun_members():
    assert brun_set_members(4, 30) == [1, 5, 13, 17, 29]
    assert brun_set_members(3, 20) == [1, 7, 13, 19]


@pytest.mark.parametrize("q", [3, 4, 5, 8])
def test_brun_naive_oracle(q):
    assert brun_set_count(q, 3000) == naive_brun(q, 3000)


def test_brun_monotone_in_y():
    counts = [brun_set_count(4, y) for y in range(1, 400)]
    assert all(a <= b for a, b in zip(counts, counts[1:]))


@pytest.mark.parametrize("n, d", [(1, 1), (7, 2), (12, 6), (360, 24)])
def test_divisor_count(n, d):
    assert divisor_count(n) == d


@pytest.mark.parametrize("n, ab", [(1, (1, 1)), (12, (4, 3)), (8, (8, 1)), (90, (9, 10))])
def test_decomposition_examples(n, ab):
    assert powerful_squarefree_decomposition(n) == ab


@settings(max_examples=300)
@given(st.integers(1, 10**5))
def test_decomposition_properties(n):
    A, B = powerful_squarefree_decomposition(n)
    assert A * B == n and math.gcd(A, B) == 1
    assert all(k >= 2 for k in trial_factor(A).values())
    assert all(k == 1 for k in trial_factor(B).values())


def test_capacity_error(monkeypatch):
    monkeypatch.setenv("ZETAPARTIAL_MAX_TABLE", "1000")
    with pytest.raises(CapacityError):
        build_coefficient_table(cyclotomic_field(4), 1001)
    build_coefficient_table(cyclotomic_field(4), 1000)


def test_domain_errors():
    with pytest.raises(DomainError):
        build_coefficient_table(cyclotomic_field(4), 0.5)
    with pytest.raises(DomainError):
        build_table(cyclotomic_field(4), 10, "z")


def test_large_exponent_rows_do_not_overflow():
    # q = 2**k with many ramified powers of 2, and degree 64 binomials
    F = cyclotomic_field(128)
    a = build_coefficient_table(F, 10**5).values
    assert a.min() >= 0
    assert a[2**16] == 1
