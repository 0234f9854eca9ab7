import math

import pytest
from hypothesis import given, strategies as st

from fqdyn.numtheory import (
    coprime_split,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    lte_valuation,
    mobius,
    mobius_sum,
    mult_order,
    prime_list,
    u_of,
    valuation,
)


def test_mobius_values():
    assert mobius(1) == 1
    assert mobius(12) == 0
    assert mobius(30) == -1


def test_euler_phi_values():
    assert euler_phi(1) == 1
    assert euler_phi(2) == 1
    assert euler_phi(12) == 4


def test_valuation_values():
    assert valuation(2, 40) == 3
    assert valuation(3, 40) == 0
    assert valuation(2, 12) == 2
    with pytest.raises(ValueError):
        valuation(2, 0)


def test_mult_order_values():
    assert mult_order(4, 15) == 2
    assert mult_order(1, 7) == 1
    assert mult_order(2, 13) == 12
    with pytest.raises(ValueError):
        mult_order(3, 12)


def test_u_of_values():
    assert u_of(3, 0) == 0
    assert u_of(3, 1) == 1
    assert u_of(3, 4) == 40


def test_lte_examples():
    assert lte_valuation(3, 4, 2) == 3
    assert lte_valuation(5, 3, 2) == 0
    # u(2) = 1 + 7 = 8 has no factor 3
    assert lte_valuation(7, 2, 3) == 0


def test_coprime_split_values():
    sp = coprime_split(12, 2)
    assert (sp.s_part, sp.r_part) == (4, 3)
    sp = coprime_split(12, 6)
    assert (sp.s_part, sp.r_part) == (12, 1)
    sp = coprime_split(12, 3)
    assert (sp.s_part, sp.r_part) == (3, 4)


@given(st.integers(1, 5000))
def test_factorize_roundtrip(m):
    prod = 1
    for p, e in factorize(m):
        assert is_prime(p)
        prod *= p**e
    assert prod == m


@given(st.integers(1, 2000))
def test_phi_counts_units(m):
    assert euler_phi(m) == sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)


@given(st.integers(1, 3000))
def test_mobius_sums_to_indicator(m):
    assert sum(mobius(d) for d in divisors(m)) == (1 if m == 1 else 0)


@given(st.integers(1, 500))
def test_mobius_inverts_phi(m):
    # sum_{d | m} phi(d) = m, so inversion recovers phi
    assert mobius_sum(m, lambda d: d) == euler_phi(m)


@given(st.integers(2, 400), st.integers(-50, 50))
def test_mult_order_is_least(modulus, base):
    if math.gcd(base, modulus) != 1:
        return
    k = mult_order(base, modulus)
    assert pow(base, k, modulus) == 1 % modulus
    assert all(pow(base, i, modulus) != 1 for i in range(1, k))


@given(st.integers(2, 30), st.integers(0, 25))
def test_u_of_geometric_sum(n, j):
    assert u_of(n, j) == sum(n**i for i in range(j))


@given(st.integers(1, 10**6), st.integers(2, 40))
def test_coprime_split_parts(qm1, n):
    sp = coprime_split(qm1, n)
    assert sp.s_part * sp.r_part == qm1
    assert math.gcd(sp.r_part, n) == 1
    for p, _ in factorize(sp.s_part) if sp.s_part > 1 else ():
        assert n % p == 0


def test_prime_list():
    assert prime_list(20) == [2, 3, 5, 7, 11, 13, 17, 19]
