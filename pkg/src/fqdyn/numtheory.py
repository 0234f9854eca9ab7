"""Integer utilities used by the closed-form cycle and tree counts.

Everything here is exact integer arithmetic on Python ints.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import List, Tuple


@functools.lru_cache(maxsize=4096)
def factorize(m: int) -> Tuple[Tuple[int, int], ...]:
    """Prime factorization of m >= 1 by trial division, as ((p, e), ...)."""
    if m < 1:
        raise ValueError(f"cannot factor {m}")
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def is_prime(m: int) -> bool:
    return m >= 2 and factorize(m) == ((m, 1),)


@functools.lru_cache(maxsize=4096)
def divisors(m: int) -> Tuple[int, ...]:
    divs = [1]
    for p, e in factorize(m):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


@functools.lru_cache(maxsize=65536)
def mobius(m: int) -> int:
    if m < 1:
        raise ValueError("mobius is defined for m >= 1")
    f = factorize(m)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError("euler_phi is defined for m >= 1")
    out = m
    for p, _ in factorize(m):
        out = out // p * (p - 1)
    return out


def valuation(p: int, a: int) -> int:
    """Exponent of the prime p in the nonzero integer a."""
    if a == 0:
        raise ValueError("valuation of 0 is infinite")
    a = abs(a)
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v


def mult_order(base: int, modulus: int) -> int:
    """Least k >= 1 with base**k == 1 (mod modulus).

    Works from the factorization of the unit-group exponent phi(modulus),
    stripping primes while the power stays 1.
    """
    if modulus < 1:
        raise ValueError("modulus must be positive")
    if modulus == 1:
        return 1
    if math.gcd(base, modulus) != 1:
        raise ValueError(f"gcd({base}, {modulus}) != 1, no multiplicative order")
    k = euler_phi(modulus)
    for p, _ in factorize(k):
        while k % p == 0 and pow(base, k // p, modulus) == 1:
            k //= p
    return k


def u_of(n: int, j: int) -> int:
    """(n**j - 1) // (n - 1) = 1 + n + ... + n**(j-1).

    Python integers are unbounded, so there is no overflow to reject.
    """
    if n < 2:
        raise ValueError("u_of needs n >= 2")
    if j < 0:
        raise ValueError("u_of needs j >= 0")
    return (n**j - 1) // (n - 1)


def lte_valuation(n: int, j: int, p: int) -> int:
    """nu_p(u_of(n, j)) for odd n via lifting-the-exponent.

    Cases where the lemma does not apply (odd p not dividing n - 1) fall back
    to the direct valuation.
    """
    if j <= 0:
        raise ValueError("lte_valuation needs j >= 1")
    if n < 3 or n % 2 == 0:
        raise ValueError("lte_valuation needs odd n >= 3")
    if p == 2:
        if j % 2:
            return 0
        if n % 4 == 1:
            return valuation(2, j)
        return valuation(2, (n + 1) // 2) + valuation(2, j)
    if (n - 1) % p == 0:
        return valuation(p, j)
    return valuation(p, u_of(n, j))


@dataclass(frozen=True)
class CoprimeSplit:
    """q - 1 = s_part * r_part with r_part the largest divisor coprime to n."""

    s_part: int
    r_part: int


def coprime_split(qm1: int, n: int) -> CoprimeSplit:
    if qm1 < 1:
        raise ValueError("qm1 must be positive")
    s = 1
    for p, e in factorize(qm1):
        if n % p == 0:
            s *= p**e
    return CoprimeSplit(s_part=s, r_part=qm1 // s)


def mobius_sum(m: int, h) -> int:
    """sum over d | m of mobius(m // d) * h(d)."""
    return sum(mobius(m // d) * h(d) for d in divisors(m))


def prime_list(limit: int) -> List[int]:
    return [k for k in range(2, limit + 1) if is_prime(k)]
