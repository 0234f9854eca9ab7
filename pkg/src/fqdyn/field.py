"""Arithmetic in F_q, q = p**s, p odd.

Elements are ints 0..q-1 packing the coefficients of a polynomial of degree
< s in base p (constant term is the least significant digit).  Discrete log
tables are built eagerly, and for small q full addition/multiplication
tables are cached as numpy arrays for the vectorized kernels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from .numtheory import factorize, is_prime

DEFAULT_CAP = 2**13
TABLE_CAP = 2048


class FieldError(ValueError):
    pass


# -- polynomial helpers over F_p (coefficient lists, low to high) -----------

def _unpack(v: int, p: int, s: int) -> list:
    out = []
    for _ in range(s):
        out.append(v % p)
        v //= p
    return out


def _pack(coeffs: Sequence[int], p: int) -> int:
    v = 0
    for c in reversed(coeffs):
        v = v * p + c
    return v


def _poly_mod(a: list, m: Sequence[int], p: int) -> list:
    a = [c % p for c in a]
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        coef = a[i] * inv_lead % p
        if coef:
            for k, mc in enumerate(m):
                a[i - dm + k] = (a[i - dm + k] - coef * mc) % p
    a = a[:dm]
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg//2."""
    deg = len(modulus) - 1
    if deg < 1 or modulus[-1] % p == 0:
        return False
    for d in range(1, deg // 2 + 1):
        for k in range(p**d):
            divisor = _unpack(k, p, d) + [1]
            if not _poly_mod(list(modulus), divisor, p):
                return False
    return True


def parse_modulus(text: str) -> Tuple[int, ...]:
    """'2,0,1' -> (2, 0, 1), i.e. x**2 + 2."""
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise FieldError(f"bad modulus string {text!r}") from None


def format_modulus(modulus: Sequence[int]) -> str:
    return ",".join(str(c) for c in modulus)


def default_modulus(p: int, s: int) -> Tuple[int, ...]:
    """Monic irreducible of degree s whose lower coefficients pack to the least integer."""
    for k in range(p**s):
        cand = tuple(_unpack(k, p, s)) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible of degree {s} over F_{p}")  # pragma: no cover


@dataclass(frozen=True, eq=False)
class FieldCtx:
    p: int
    s: int
    q: int
    modulus: Tuple[int, ...]
    generator: int
    exp: np.ndarray = field(repr=False)  # exp[e] = generator**e, length q-1
    log: np.ndarray = field(repr=False)  # log[0] = -1
    neg_table: np.ndarray = field(repr=False)
    add_table: Optional[np.ndarray] = field(repr=False, default=None)
    mul_table: Optional[np.ndarray] = field(repr=False, default=None)

    # scalar arithmetic on packed indices

    def add(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a + b) % self.p
        if self.add_table is not None:
            return int(self.add_table[a, b])
        p = self.p
        return _pack([(x + y) % p for x, y in zip(_unpack(a, p, self.s), _unpack(b, p, self.s))], p)

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        return int(self.exp[(-self.log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return int(self.exp[(int(self.log[a]) * e) % (self.q - 1)])

    def from_int(self, k: int) -> int:
        """Image of the integer k in the prime subfield."""
        return k % self.p

    def elem_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        return (self.q - 1) // math.gcd(int(self.log[a]), self.q - 1)

    def elements(self) -> range:
        return range(self.q)

    def sqrt(self, a: int) -> Optional[int]:
        """One square root of a, or None when a is a nonresidue."""
        if a == 0:
            return 0
        la = int(self.log[a])
        if la % 2:
            return None
        return int(self.exp[la // 2])


def build_field(
    p: int,
    s: int = 1,
    modulus: Optional[Sequence[int]] = None,
    generator: Optional[int] = None,
    cap: int = DEFAULT_CAP,
) -> FieldCtx:
    if p == 2 or not is_prime(p):
        raise FieldError(f"p={p} is not an odd prime")
    if s < 1:
        raise FieldError("s must be >= 1")
    q = p**s
    if q > cap:
        raise FieldError(f"q={q} exceeds cap {cap}")
    if modulus is None:
        modulus = default_modulus(p, s)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != s + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {s}")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {format_modulus(modulus)} is reducible over F_{p}")

    def pmul(a: int, b: int) -> int:
        prod = _poly_mul(_unpack(a, p, s), _unpack(b, p, s), p)
        return _pack(_poly_mod(prod, modulus, p), p)

    def ppow(a: int, e: int) -> int:
        out, base = 1, a
        while e:
            if e & 1:
                out = pmul(out, base)
            base = pmul(base, base)
            e >>= 1
        return out

    qm1 = q - 1
    primes = [r for r, _ in factorize(qm1)] if qm1 > 1 else []

    def full_order(g: int) -> bool:
        return g != 0 and all(ppow(g, qm1 // r) != 1 for r in primes)

    if generator is None:
        generator = next(g for g in range(1, q) if full_order(g))
    elif not (0 < generator < q) or not full_order(generator):
        raise FieldError(f"{generator} does not generate F_{q}^*")

    exp = np.empty(qm1, dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    cur = 1
    for e in range(qm1):
        exp[e] = cur
        log[cur] = e
        cur = pmul(cur, generator)

    digits = np.array([[(k // p**i) % p for i in range(s)] for k in range(q)], dtype=np.int64)
    weights = p ** np.arange(s, dtype=np.int64)
    neg = (((-digits) % p) * weights).sum(axis=1)

    add_table = mul_table = None
    if q <= TABLE_CAP:
        dsum = (digits[:, None, :] + digits[None, :, :]) % p
        add_table = (dsum * weights).sum(axis=2).astype(np.int64)
        la = log[:, None] + log[None, :]
        mul_table = exp[la % qm1] if qm1 else np.zeros((q, q), dtype=np.int64)
        mul_table[0, :] = 0
        mul_table[:, 0] = 0
    return FieldCtx(p, s, q, tuple(modulus), int(generator), exp, log, neg, add_table, mul_table)


def arith(ctx: FieldCtx, op: str, *operands: int) -> int:
    """Dispatch helper: add/sub/mul fold left, inv takes one operand, pow takes (x, e)."""
    if op == "add":
        out = 0
        for v in operands:
            out = ctx.add(out, v)
        return out
    if op == "sub":
        first, *rest = operands
        for v in rest:
            first = ctx.sub(first, v)
        return first
    if op == "mul":
        out = 1
        for v in operands:
            out = ctx.mul(out, v)
        return out
    if op == "inv":
        (x,) = operands
        return ctx.inv(x)
    if op == "pow":
        x, e = operands
        return ctx.pow(x, e)
    raise ValueError(f"unknown op {op!r}")


def discrete_log(ctx: FieldCtx, x: int) -> int:
    if x == 0:
        raise ValueError("discrete log of zero")
    return int(ctx.log[x])


def g_of(ctx: FieldCtx, m: int) -> int:
    """gcd(m, q - 1); m = 0 gives q - 1."""
    return math.gcd(m, ctx.q - 1)


def chi_m(ctx: FieldCtx, m: int, a: int) -> int:
    """1 if a is a nonzero m-th power, -1 if a is a non-power, 0 at zero."""
    if m < 1:
        raise ValueError("chi_m needs m >= 1")
    if a == 0:
        return 0
    return 1 if int(ctx.log[a]) % g_of(ctx, m) == 0 else -1


def find_nonresidue(ctx: FieldCtx) -> int:
    return next(a for a in range(1, ctx.q) if chi_m(ctx, 2, a) == -1)


def nonresidues(ctx: FieldCtx) -> list:
    return [a for a in range(1, ctx.q) if chi_m(ctx, 2, a) == -1]


def generators(ctx: FieldCtx) -> list:
    return [a for a in range(1, ctx.q) if ctx.elem_order(a) == ctx.q - 1]
