import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qduhamel import (CapacityError, QArithmetic, QDomainError, QParam,
                      q_binomial, q_binomial_table, q_factorial, q_integer,
                      q_pochhammer_finite, q_pochhammer_infinite, q_tables)

QS = st.floats(min_value=0.05, max_value=0.9)


def test_qparam_guard_band():
    QParam(0.5)
    QParam(1e-6)
    QParam(1.0 - 1e-6)
    for bad in (0.0, 1.0, -0.3, 1.5, 1e-9, 1.0 - 1e-9):
        with pytest.raises(QDomainError):
            QParam(bad)


def test_q_integer_basics():
    assert q_integer(0, 0.7) == 0.0
    assert q_integer(2, 0.5) == pytest.approx(1.5, abs=0)
    assert q_integer(1, 0.3) == 1.0


def test_q_integer_pochhammer_closed_form():
    # (q;q)_5/(1-q)^5 computed independently of (1-q^5)/(1-q)
    q = 0.3
    poch = 1.0
    for j in range(1, 6):
        poch *= 1.0 - q**j
    oracle = poch / (1.0 - q) ** 5
    # oracle is the FULL factorial [5]_q!; the q-integer is its last factor
    fact = np.prod([q_integer(n, q) for n in range(1, 6)])
    assert fact == pytest.approx(oracle, rel=1e-14)


def test_q_integer_monotone_and_bounded():
    q = 0.6
    vals = [q_integer(n, q) for n in range(30)]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    assert all(v < 1.0 / (1.0 - q) for v in vals)


def test_q_factorial_basics():
    assert q_factorial(0, 0.4) == 1.0
    # oracle: 1 * [2]_q * [3]_q = 1 * 1.5 * 1.75 at q = 0.5
    assert q_factorial(3, 0.5) == pytest.approx(2.625, rel=1e-15)


def test_q_factorial_classical_limit():
    q = 1.0 - 1e-4
    for n in range(9):
        assert q_factorial(n, q) == pytest.approx(math.factorial(n), rel=1e-2)


def test_q_binomial_edges_and_frozen_value():
    assert q_binomial(7, 0, 0.3) == 1.0
    assert q_binomial(7, 7, 0.3) == 1.0
    # Gaussian polynomial oracle: [4 2]_q = (1+q^2)(1+q+q^2)
    q = 0.5
    assert q_binomial(4, 2, q) == pytest.approx((1 + q**2) * (1 + q + q**2), rel=1e-15)
    assert q_binomial(4, 2, 0.5) == pytest.approx(2.1875, rel=1e-15)


def test_q_binomial_domain_errors():
    with pytest.raises(QDomainError):
        q_binomial(4, -1, 0.5)
    with pytest.raises(QDomainError):
        q_binomial(4, 5, 0.5)


@given(n=st.integers(0, 20), k=st.integers(0, 20), q=QS)
@settings(max_examples=80, deadline=None)
def test_q_binomial_symmetry_and_lower_bound(n, k, q):
    k = min(k, n)
    b = q_binomial(n, k, q)
    assert b == pytest.approx(q_binomial(n, n - k, q), rel=1e-12)
    assert b >= 1.0


@given(n=st.integers(1, 24), k=st.integers(1, 24), q=QS)
@settings(max_examples=80, deadline=None)
def test_q_binomial_pascal_recurrence(n, k, q):
    k = min(k, n - 1) if n > 1 else 1
    if k < 1 or k > n - 1:
        return
    lhs = q_binomial(n, k, q)
    rhs = q_binomial(n - 1, k - 1, q) + q**k * q_binomial(n - 1, k, q)
    assert lhs == pytest.approx(rhs, rel=1e-12)


def test_q_binomial_table_matches_product_route():
    q = 0.45
    tab = q_binomial_table(12, q)
    for n in range(13):
        for k in range(n + 1):
            assert tab[n, k] == pytest.approx(q_binomial(n, k, q), rel=1e-12)
        assert np.all(tab[n, n + 1 :] == 0.0)


def test_q_pochhammer_finite():
    assert q_pochhammer_finite(0.3, 0.5, 0) == 1.0
    assert q_pochhammer_finite(1.0, 0.5, 4) == 0.0
    # direct three-factor oracle
    assert q_pochhammer_finite(0.5, 0.5, 3).real == pytest.approx(
        0.5 * 0.75 * 0.875, rel=1e-15)
    assert q_pochhammer_finite(0.5, 0.5, 3).real == pytest.approx(0.328125, rel=1e-15)


@given(a=st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False),
       n=st.integers(0, 30), q=QS)
@settings(max_examples=100, deadline=None)
def test_gauss_expansion_identity(a, n, q):
    # (a;q)_n = sum_k (-1)^k [n k]_q q^(k(k-1)/2) a^k; error budget relative
    # to the magnitude sum of the expansion terms
    lhs = q_pochhammer_finite(a, q, n)
    terms = [
        (-1) ** k * q_binomial(n, k, q) * q ** (k * (k - 1) / 2.0) * a**k
        for k in range(n + 1)
    ]
    rhs = sum(terms)
    scale = max(1.0, sum(abs(t) for t in terms))
    assert abs(lhs - rhs) <= 10 * np.finfo(float).eps * max(n, 1) * scale


def test_q_pochhammer_infinite_zero_argument():
    value, terms = q_pochhammer_infinite(0.0, 0.5, 1e-12, return_terms=True)
    assert value == 1.0
    assert terms == 0


def test_q_pochhammer_infinite_running_product_oracle():
    # oracle: multiply factors until the partial products stagnate below tol
    a, q, tol = -1.0, 0.5, 1e-12
    prod, prev, k = 1.0, 0.0, 0
    while abs(prod - prev) > tol * abs(prod):
        prev = prod
        prod *= 1.0 - a * q**k
        k += 1
    value = q_pochhammer_infinite(a, q, tol)
    assert value.real == pytest.approx(prod, rel=1e-10)
    assert value.imag == 0.0


def test_q_pochhammer_infinite_self_consistency():
    for a in (-1.0, 0.8, 0.3 + 0.4j):
        v1 = q_pochhammer_infinite(a, 0.6, 1e-9)
        v2 = q_pochhammer_infinite(a, 0.6, 1e-10)
        assert abs(v1 - v2) < 1e-9


def test_q_pochhammer_infinite_rejects_bad_tol():
    with pytest.raises(QDomainError):
        q_pochhammer_infinite(0.5, 0.5, 0.0)
    with pytest.raises(QDomainError):
        q_pochhammer_infinite(0.5, 0.5, -1e-3)


def test_qarithmetic_tables():
    arith = QArithmetic.build(0.5, max_n=40)
    assert arith.q_int[0] == 0.0
    assert arith.q_fact[0] == 1.0
    for n in range(1, 41):
        assert arith.q_int[n] == pytest.approx((1 - 0.5**n) / 0.5, rel=1e-15)
        assert arith.q_fact[n] == pytest.approx(
            arith.q_int[n] * arith.q_fact[n - 1], rel=1e-15)
    assert np.all(np.diff(arith.q_int) > 0)
    assert np.all(arith.q_int < 2.0)


def test_qarithmetic_immutable_and_capacity():
    arith = QArithmetic.build(0.5, max_n=8)
    with pytest.raises(ValueError):
        arith.q_int[0] = 1.0
    assert arith.factorial(8) > 0
    with pytest.raises(CapacityError):
        arith.factorial(9)
    with pytest.raises(CapacityError):
        arith.integer(100)
    with pytest.raises(QDomainError):
        arith.integer(-1)


def test_q_tables_cache_returns_same_object():
    assert q_tables(0.5, 32) is q_tables(0.5, 32)
