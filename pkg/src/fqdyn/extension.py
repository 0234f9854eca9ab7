"""F_{q^2} as pairs <x, y> = x + y*B over F_q, with B**2 = b a nonresidue.

Also holds the map f(X) = (c X^q + a X)(X^q - X)^(n-1): its direct
polynomial evaluation and its coordinate form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .field import FieldCtx, chi_m, find_nonresidue


class ExtElem(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True, eq=False)
class ExtCtx:
    base: FieldCtx
    b: int

    @property
    def q(self) -> int:
        return self.base.q

    def encode(self, v: ExtElem) -> int:
        return v.x * self.base.q + v.y

    def decode(self, i: int) -> ExtElem:
        return ExtElem(*divmod(i, self.base.q))

    def add(self, u: ExtElem, v: ExtElem) -> ExtElem:
        F = self.base
        return ExtElem(F.add(u.x, v.x), F.add(u.y, v.y))

    def sub(self, u: ExtElem, v: ExtElem) -> ExtElem:
        F = self.base
        return ExtElem(F.sub(u.x, v.x), F.sub(u.y, v.y))

    def scale(self, k: int, v: ExtElem) -> ExtElem:
        F = self.base
        return ExtElem(F.mul(k, v.x), F.mul(k, v.y))

    def mul(self, u: ExtElem, v: ExtElem) -> ExtElem:
        # (x1 + y1 B)(x2 + y2 B) = (x1 x2 + b y1 y2) + (x1 y2 + x2 y1) B
        F = self.base
        x = F.add(F.mul(u.x, v.x), F.mul(self.b, F.mul(u.y, v.y)))
        y = F.add(F.mul(u.x, v.y), F.mul(v.x, u.y))
        return ExtElem(x, y)

    def pow(self, v: ExtElem, e: int) -> ExtElem:
        out, base = ExtElem(1, 0), v
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out


def build_extension(base: FieldCtx, b: Optional[int] = None) -> ExtCtx:
    if b is None:
        b = find_nonresidue(base)
    elif chi_m(base, 2, b) != -1:
        raise ValueError(f"b={b} is not a quadratic nonresidue in F_{base.q}")
    return ExtCtx(base, b)


def frobenius(ectx: ExtCtx, v: ExtElem) -> ExtElem:
    """X -> X**q, which negates the B coordinate."""
    return ExtElem(v.x, ectx.base.neg(v.y))


@dataclass(frozen=True)
class MapParams:
    a: int
    c: int
    n: int
    parity: str
    delta1: int
    delta2: int
    kappa: int  # (4b)^((n-1)/2) for odd n, 1 for even n
    trivial: bool = False


def derive_deltas(ectx: ExtCtx, a: int, c: int, n: int, allow_trivial: bool = False) -> MapParams:
    if n < 2:
        raise ValueError("n must be >= 2 (n = 1 is the linear map and is not modelled)")
    F = ectx.base
    if a == 0 and c == 0 and not allow_trivial:
        raise ValueError("a = c = 0 gives the zero map; pass allow_trivial=True to request it")
    minus2 = F.neg(F.from_int(2))
    if n % 2 == 0:
        common = F.pow(minus2, n - 1)
        d1 = F.mul(F.mul(F.sub(a, c), common), F.pow(ectx.b, n // 2))
        d2 = F.mul(F.mul(F.add(a, c), common), F.pow(ectx.b, (n - 2) // 2))
        return MapParams(a, c, n, "even", d1, d2, 1, a == 0 and c == 0)
    kappa = F.pow(F.mul(F.from_int(4), ectx.b), (n - 1) // 2)
    return MapParams(a, c, n, "odd", F.add(a, c), F.sub(a, c), kappa, a == 0 and c == 0)


def eval_map_direct(ectx: ExtCtx, params: MapParams, X: ExtElem) -> ExtElem:
    Xq = frobenius(ectx, X)
    lin = ectx.add(ectx.scale(params.c, Xq), ectx.scale(params.a, X))
    return ectx.mul(lin, ectx.pow(ectx.sub(Xq, X), params.n - 1))


def eval_map_coords(ectx: ExtCtx, params: MapParams, v: ExtElem) -> ExtElem:
    F = ectx.base
    x, y = v
    n = params.n
    if params.parity == "even":
        return ExtElem(
            F.mul(params.delta1, F.pow(y, n)),
            F.mul(F.mul(params.delta2, x), F.pow(y, n - 1)),
        )
    k = F.mul(params.kappa, F.pow(y, n - 1))
    return ExtElem(F.mul(k, F.mul(params.delta1, x)), F.mul(k, F.mul(params.delta2, y)))


_ELEM_RE = re.compile(r"^\s*(\d+)\s*\+\s*(\d+)\s*\*\s*B\s*$")


def format_elem(v: ExtElem) -> str:
    return f"{v.x}+{v.y}*B"


def parse_elem(text: str) -> ExtElem:
    m = _ELEM_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse {text!r}; expected 'x+y*B'")
    return ExtElem(int(m.group(1)), int(m.group(2)))
