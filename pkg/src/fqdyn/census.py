"""Closed-form predictor: cycle census, zero component and hanging trees.

Two modes are offered.  ``stated`` evaluates every count exactly as the
closed forms are written (including their side conditions), so that a
disagreement with the brute-force graph pins down which statement fails.
``corrected`` replaces each count by the exact number of solutions of the
underlying equation, which is what the counting arguments actually
establish; it is expected to match the oracle everywhere.

Counts that come out non-integral are never rounded: the entry is left out
of the census and recorded in ``Prediction.nonintegral``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .extension import ExtCtx, MapParams
from .field import FieldCtx, chi_m, g_of
from .numtheory import (
    coprime_split,
    divisors,
    euler_phi,
    factorize,
    mobius,
    mult_order,
    valuation,
)
from .orbits import LEAF, TreeShape, shape_from_children

MODES = ("stated", "corrected")


@dataclass
class Prediction:
    census: Dict[int, int]
    zero_profile: TreeShape
    nonzero_tree: Optional[TreeShape]
    provenance: Dict[str, str]
    flags: Dict[str, object]
    mode: str = "stated"
    nonintegral: List[Tuple[str, str]] = field(default_factory=list)
    uncovered: List[str] = field(default_factory=list)
    audit_total: int = 0
    q2: int = 0

    @property
    def audit_ok(self) -> bool:
        return not self.uncovered and not self.nonintegral and self.audit_total == self.q2

    @property
    def zero_size(self) -> int:
        return self.zero_profile.size


# -- tree constructors ------------------------------------------------------

def _uniform(k: int, child: TreeShape) -> TreeShape:
    return shape_from_children([child] * k)


def _star(k: int) -> TreeShape:
    return _uniform(k, LEAF)


def tree_exponent(q: int, n: int) -> Optional[int]:
    """Largest e with gcd(n^e, q-1) < s, s the n-part of q-1; None when s = 1."""
    s = coprime_split(q - 1, n).s_part
    if s == 1:
        return None
    e = 0
    while math.gcd(n ** (e + 1), q - 1) < s:
        e += 1
    return e


@lru_cache(maxsize=512)
def _build_tree(q: int, n: int, zero: bool, levels: int) -> TreeShape:
    g = lambda m: math.gcd(m, q - 1)  # noqa: E731
    gn = g(n)
    if gn == 1:
        raise ValueError("tree constructor needs gcd(n, q-1) > 1")
    if levels < 1:
        raise ValueError("levels must be >= 1")
    mult = q if zero else 1
    # children[v] lists the vertices attached to v; vertices are ints, root 0
    children: List[List[int]] = [[]]
    level = []
    for _ in range(mult * gn - 1):
        children.append([])
        children[0].append(len(children) - 1)
        level.append(len(children) - 1)
    for i in range(1, levels):
        skip = mult * g(n**i) // g(n ** (i - 1))
        every = mult * g(n**i) * gn // g(n ** (i + 1))
        nxt = []
        label = 0
        for v in level:
            label += 1
            if label % skip == 0:
                label += 1
            if label % every == 0:
                for _ in range(mult * gn):
                    children.append([])
                    children[v].append(len(children) - 1)
                    nxt.append(len(children) - 1)
        level = nxt
    shapes: List[Optional[TreeShape]] = [None] * len(children)
    for v in range(len(children) - 1, -1, -1):
        shapes[v] = shape_from_children([shapes[u] for u in children[v]])
    return shapes[0]


def build_tree_shape(ctx: FieldCtx, n: int, variant: str = "standard", levels: int = 1) -> TreeShape:
    """The level-by-level labelled tree; ``zero`` multiplies every fan-out by q."""
    if variant not in ("standard", "zero"):
        raise ValueError(f"unknown tree variant {variant!r}")
    return _build_tree(ctx.q, n, variant == "zero", levels)


# -- shared number theory per (q, n) ----------------------------------------

@lru_cache(maxsize=256)
def _qn_data(q: int, n: int):
    qm1 = q - 1
    split = coprime_split(qm1, n)
    G = math.gcd(n - 1, qm1)
    return split.s_part, split.r_part, G


def _u_gcd_raw(n: int, k: int, modulus: int) -> int:
    """(n^k - 1)/(n - 1) reduced mod the given modulus."""
    mod = modulus * (n - 1)
    return (pow(n, k, mod) - 1) % mod // (n - 1)


@lru_cache(maxsize=65536)
def _u_gcd(n: int, k: int, qm1: int) -> int:
    """gcd((n^k - 1)/(n - 1), q - 1) without forming n^k."""
    mod = qm1 * (n - 1)
    u = (pow(n, k, mod) - 1) % mod // (n - 1)
    return math.gcd(u, qm1)


def _frac_to_count(x: Fraction):
    return int(x) if x.denominator == 1 and x >= 0 else None


class _Builder:
    def __init__(self, q: int, mode: str):
        self.q = q
        self.mode = mode
        self.census: Dict[int, int] = {}
        self.prov: Dict[int, List[str]] = {}
        self.nonintegral: List[Tuple[str, str]] = []
        self.uncovered: List[str] = []

    def add(self, length: int, count, tag: str) -> None:
        if isinstance(count, Fraction):
            c = _frac_to_count(count)
            if c is None:
                self.nonintegral.append((f"census[{length}]", f"{tag}: {count}"))
                return
            count = c
        if count == 0:
            return
        self.census[length] = self.census.get(length, 0) + count
        tags = self.prov.setdefault(length, [])
        if tag not in tags:
            tags.append(tag)


# -- even n -----------------------------------------------------------------

def _gamma_delta_o(F: FieldCtx, params: MapParams) -> Tuple[int, Optional[int], int]:
    """(chi_2(a^2 - c^2), gamma, Delta_o); gamma**2 = delta1/delta2."""
    a, c = params.a, params.c
    chi = chi_m(F, 2, F.sub(F.mul(a, a), F.mul(c, c)))
    if chi != -1:
        return chi, None, 0
    ratio = F.div(params.delta1, params.delta2)
    gamma = F.sqrt(ratio)
    G = g_of(F, params.n - 1)
    plus = chi_m(F, G, F.mul(gamma, params.delta2))
    minus = chi_m(F, G, F.neg(F.mul(gamma, params.delta2)))
    if plus == minus == -1:
        d = 0
    elif plus == minus == 1:
        d = 2
    else:
        d = 1
    return chi, gamma, d


def predict_odd_cycles_even_n(
    ectx: ExtCtx, params: MapParams, length_cap: Optional[int] = None, mode: str = "stated"
) -> Dict[int, Fraction]:
    """Odd cycle lengths (the zero fixed point excluded) for even n.

    Stated mode evaluates the closed form only at odd divisors of ord_r(n):
    g(n^i - 1) depends on i only through gcd(i, ord_r(n)), so the Moebius
    sum vanishes elsewhere.  Corrected mode counts the periodic points on
    the two invariant lines x = +-gamma*y exactly.
    """
    F = ectx.base
    chi, gamma, delta_o = _gamma_delta_o(F, params)
    if mode == "corrected":
        if gamma is None:
            return {}
        logs = tuple(sorted(int(F.log[F.mul(sg, params.delta2)]) for sg in (gamma, F.neg(gamma))))
        return dict(_odd_cycle_exact(F.q, params.n, length_cap, logs))
    if delta_o == 0:
        return {}
    return {m: delta_o * v for m, v in _odd_cycle_units(F.q, params.n, length_cap, mode)}


@lru_cache(maxsize=8192)
def _odd_cycle_exact(q: int, n: int, length_cap: Optional[int], logs: Tuple[int, ...]):
    """Odd cycles on the lines x = +-gamma*y, where y -> A*y^n with log A in logs.

    Points of period dividing m solve y^(n^m - 1) = A^(-u(m)), which has
    g(n^m - 1) solutions when g(n^m - 1) | log(A)*u(m) and none otherwise.
    """
    s, r, G = _qn_data(q, n)
    qm1 = q - 1

    def points(i: int) -> int:
        g = math.gcd(pow(n, i, qm1) - 1, qm1)
        u = _u_gcd_raw(n, i, qm1 * g)
        return sum(g for la in logs if (la * u) % g == 0)

    # on logs the y-map is affine, e -> n*e + log A, so periods divide
    # ord_{(n-1) r}(n)
    out = []
    for m in divisors(mult_order(n, (n - 1) * r)):
        if m % 2 == 0 or (length_cap is not None and m > length_cap):
            continue
        total = sum(mobius(m // i) * points(i) for i in divisors(m))
        if total:
            out.append((m, Fraction(total, m)))
    return tuple(out)


@lru_cache(maxsize=4096)
def _odd_cycle_units(q: int, n: int, length_cap: Optional[int], mode: str):
    """(m, count) pairs of the odd-cycle formula with Delta_o = 1."""
    s, r, G = _qn_data(q, n)
    out = []
    for m in divisors(mult_order(n, r)):
        if m % 2 == 0 or (length_cap is not None and m > length_cap):
            continue
        total = sum(mobius(m // i) * math.gcd(n**i - 1, q - 1) for i in divisors(m))
        val = Fraction(total, G * m) if mode == "stated" else Fraction(total, m)
        if val:
            out.append((m, val))
    return tuple(out)


def _even_t_values(q: int, n: int, l0: int) -> Tuple[int, List[int]]:
    s, r, G = _qn_data(q, n)
    target = (pow(s, -1, G) * l0) % G if G > 1 else 0
    t0 = next(t for t in range(1, r + 1) if t % G == target)
    return t0, list(range(t0, r + 1, G))


def predict_even_cycles_even_n(
    ectx: ExtCtx,
    params: MapParams,
    odd: Optional[Dict[int, Fraction]] = None,
    mode: str = "stated",
) -> Tuple[Dict[int, Fraction], Dict[str, object]]:
    """Even cycle lengths for even n with delta1*delta2 != 0.

    Each admissible t = t0 + j*g(n-1), 1 <= t <= r, fixes theta = alpha^(s t)
    of order d = r / gcd(r, t); the 2k-cycles come from k = ord_{(n^2-1) d}(n^2).
    Stated mode counts phi(d) (q-1) g(n-1) elements once per distinct d;
    corrected mode counts (q-1) g(n-1) elements per admissible t.
    """
    F = ectx.base
    q, n = F.q, params.n
    if params.delta1 == 0 or params.delta2 == 0:
        raise ValueError("even-length count needs delta1*delta2 != 0")
    if odd is None:
        odd = predict_odd_cycles_even_n(ectx, params, mode=mode)
    l0 = int(F.log[F.mul(params.delta1, params.delta2)])
    t0, ts, ks, element_items = _even_elements(q, n, l0, mode)
    elements = dict(element_items)
    out: Dict[int, Fraction] = {}
    for k, total in elements.items():
        delta_e = k * odd.get(k, Fraction(0)) if k % 2 else 0
        val = Fraction(total) - delta_e
        out[2 * k] = out.get(2 * k, Fraction(0)) + val / (2 * k)
    info = {"l0": l0, "t0": t0, "j_values": list(range(len(ts))), "k_values": list(ks)}
    return out, info


@lru_cache(maxsize=4096)
def _even_elements(q: int, n: int, l0: int, mode: str):
    """(t0, admissible t, k per t, (k, element count) pairs)."""
    s, r, G = _qn_data(q, n)
    t0, ts = _even_t_values(q, n, l0)
    elements: Dict[int, int] = {}
    seen_d = set()
    ks = []
    for t in ts:
        d = r // math.gcd(r, t)
        k = mult_order(n * n, (n * n - 1) * d)
        ks.append(k)
        if mode == "stated":
            if d in seen_d:
                continue
            seen_d.add(d)
            elements[k] = elements.get(k, 0) + euler_phi(d) * (q - 1) * G
        else:
            elements[k] = elements.get(k, 0) + (q - 1) * G
    return t0, tuple(ts), tuple(ks), tuple(elements.items())


# -- odd n ------------------------------------------------------------------

def _odd_l0(F: FieldCtx, params: MapParams) -> int:
    return int(F.log[F.mul(params.kappa, params.delta2)])


def predict_fixed_odd_n(ectx: ExtCtx, params: MapParams, mode: str = "stated") -> Tuple[int, int, int]:
    """(N_0(1), N_*(1), N(1)): nonzero fixed points with x = 0, with x != 0, and all."""
    F = ectx.base
    n = params.n
    if params.delta2 == 0:
        raise ValueError("fixed-point count needs delta2 != 0")
    G = g_of(F, n - 1)
    if mode == "stated":
        cond = chi_m(F, (n - 1) // 2, params.delta2) == 1 and chi_m(F, n - 1, params.delta2) == -1
    else:
        # kappa * delta2 * y^(n-1) = 1 is solvable iff g(n-1) | log(kappa * delta2)
        cond = _odd_l0(F, params) % G == 0
    n0 = G if cond else 0
    nstar = (F.q - 1) * G if cond and params.delta1 == params.delta2 else 0
    return n0, nstar, n0 + nstar + 1


def _tau0_parts(q: int, n: int, l0: int):
    """Pieces of the stated tau0: (2-exponent, odd product by the proof's
    prime set, odd product by the statement's prime set)."""
    qm1 = q - 1
    inf = 10**9
    v = lambda p, a: inf if a == 0 else valuation(p, a)  # noqa: E731
    if math.gcd(n - 1, l0) == n - 1:
        return 0, 1, 1, True
    eps0 = 0 if v(2, l0) > 0 else valuation(2, qm1) - valuation(2, (n + 1) // 2)
    proof = 1
    for p, _ in factorize(n - 1):
        if p == 2:
            continue
        if v(p, n - 1) > v(p, l0) and v(p, qm1) > v(p, l0):
            proof *= p ** (valuation(p, qm1) - v(p, l0))
    stmt = 1
    for p, _ in factorize((n - 1) // math.gcd(n - 1, l0)):
        if p == 2:
            continue
        stmt *= p ** max(0, valuation(p, qm1) - v(p, l0))
    return eps0, proof, stmt, False


def compute_tau0(ectx: ExtCtx, params: MapParams) -> Fraction:
    """tau0 as stated; a Fraction because a negative 2-exponent is possible."""
    F = ectx.base
    if params.parity != "odd" or params.delta2 == 0:
        raise ValueError("tau0 is defined for odd n with delta2 != 0")
    eps0, proof, _, _ = _tau0_parts(F.q, params.n, _odd_l0(F, params))
    return Fraction(2) ** eps0 * proof


def compute_tau(ectx: ExtCtx, params: MapParams) -> Fraction:
    F = ectx.base
    if params.delta1 == 0 or params.delta2 == 0:
        raise ValueError("tau needs delta1 != 0 and delta2 != 0")
    tau0 = compute_tau0(ectx, params)
    o = F.elem_order(F.div(params.delta1, params.delta2))
    if tau0.denominator != 1:
        return Fraction(o * tau0.numerator, math.gcd(o, tau0.numerator)) / tau0.denominator
    t = int(tau0)
    return Fraction(o * t // math.gcd(o, t))


def _solutions_y(q: int, n: int, l0: int, k: int, exact: bool) -> int:
    """Nonzero y with (A y^(n-1))^u(k) = 1 where log A = l0.

    Without ``exact`` the solvability condition gcd(n-1, M) | l0 is taken
    for granted, as the closed forms do.
    """
    qm1 = q - 1
    gu = _u_gcd(n, k, qm1)
    m = math.gcd(n - 1, qm1 // gu)
    if exact and l0 % m:
        return 0
    return gu * m


def predict_cycles_odd_n(
    ectx: ExtCtx,
    params: MapParams,
    t_cap: Optional[int] = None,
    mode: str = "stated",
    fixed: Optional[Tuple[int, int, int]] = None,
) -> Tuple[Dict[int, Fraction], Dict[int, Fraction], Dict[str, object]]:
    """Cycles of length > 1 for odd n, delta2 != 0.

    Returns (x = 0 class, x != 0 class, info).  Cycle lengths in either
    class divide P = ord_{(n-1) r}(n) (times ord(delta1/delta2) for the
    x != 0 class), so t runs over divisors of that period.
    """
    F = ectx.base
    q, n = F.q, params.n
    if params.delta2 == 0:
        raise ValueError("odd-n cycle count needs delta2 != 0")
    if fixed is None:
        fixed = predict_fixed_odd_n(ectx, params, mode)
    n0, nstar, n1 = fixed
    s, r, G = _qn_data(q, n)
    l0 = _odd_l0(F, params)
    P = mult_order(n, (n - 1) * r)
    info: Dict[str, object] = {"l0": l0, "period": P}

    if mode == "corrected":
        ratio_ord = F.elem_order(F.div(params.delta1, params.delta2)) if params.delta1 else 0
        zero_items, star_items = _odd_corrected(q, n, l0, ratio_ord)
        return dict(zero_items), dict(star_items), info

    tau0 = compute_tau0(ectx, params)
    info["tau0"] = tau0
    if tau0.denominator != 1:
        info["uncovered"] = f"tau0 = {tau0} is not an integer"
        return {}, {}, info
    tau0 = int(tau0)
    sub0 = n1 - 1 if params.delta1 == 0 else n0
    tau = None
    if params.delta1:
        tau = int(compute_tau(ectx, params))
        info["tau"] = tau
    zero_items, star_items = _odd_stated(q, n, l0, P, tau0, tau, sub0, nstar, t_cap)
    return dict(zero_items), dict(star_items), info


@lru_cache(maxsize=8192)
def _odd_corrected(q: int, n: int, l0: int, ratio_ord: int):
    """Moebius inversion of the exact periodic-point counts; ratio_ord = 0
    means delta1 = 0 (no x != 0 class)."""
    s, r, G = _qn_data(q, n)
    P = mult_order(n, (n - 1) * r)
    zero_cls: Dict[int, Fraction] = {}
    star_cls: Dict[int, Fraction] = {}
    per = P * ratio_ord // math.gcd(P, ratio_ord) if ratio_ord else P
    for L in divisors(per):
        if L == 1:
            continue
        tot0 = sum(mobius(L // d) * _solutions_y(q, n, l0, d, True) for d in divisors(L))
        if tot0:
            zero_cls[L] = Fraction(tot0, L)
        if ratio_ord:
            tot = sum(
                mobius(L // d) * (q - 1) * _solutions_y(q, n, l0, d, True)
                for d in divisors(L)
                if d % ratio_ord == 0
            )
            if tot:
                star_cls[L] = Fraction(tot, L)
    return tuple(zero_cls.items()), tuple(star_cls.items())


@lru_cache(maxsize=8192)
def _odd_stated(q, n, l0, P, tau0, tau, sub0, nstar, t_cap):
    zero_cls: Dict[int, Fraction] = {}
    star_cls: Dict[int, Fraction] = {}
    for t in divisors(P * tau0):
        L = t * tau0
        if L <= 1 or (t_cap is not None and L > t_cap):
            continue
        tot = sum(
            mobius(t // j) * (_solutions_y(q, n, l0, j * tau0, False) - sub0) for j in divisors(t)
        )
        if tot:
            zero_cls[L] = Fraction(tot, L)
    if tau is not None:
        for t in divisors(P * tau):
            L = t * tau
            if L <= 1 or (t_cap is not None and L > t_cap):
                continue
            tot = sum(
                mobius(t // j) * ((q - 1) * _solutions_y(q, n, l0, j * tau, False) - nstar)
                for j in divisors(t)
            )
            if tot:
                star_cls[L] = Fraction(tot, L)
    return tuple(zero_cls.items()), tuple(star_cls.items())


# -- zero component and trees -----------------------------------------------

def predict_zero_component(ectx: ExtCtx, params: MapParams) -> Tuple[TreeShape, int, str]:
    """(shape, size, tag) of the component of <0,0> with the self-loop removed."""
    F = ectx.base
    q = F.q
    if params.trivial:
        tag = "trivial"
    elif params.parity == "even":
        tag = "delta1_zero" if params.delta1 == 0 else "delta2_zero" if params.delta2 == 0 else "zero_component"
    else:
        tag = "delta2_zero" if params.delta2 == 0 else "zero_component"
    shape, size = _zero_shape(q, g_of(F, params.n), params.parity, tag)
    return shape, size, tag


@lru_cache(maxsize=1024)
def _zero_shape(q: int, gn: int, parity: str, tag: str) -> Tuple[TreeShape, int]:
    if tag == "trivial":
        return _star(q * q - 1), q * q
    if tag == "delta1_zero" or (tag == "delta2_zero" and parity == "odd"):
        return shape_from_children([_star(q - 1)] * (q - 1) + [LEAF] * (q - 1)), q * q
    k = (q - 1) // gn
    if tag == "delta2_zero":
        return shape_from_children([_star(q * gn)] * k + [LEAF] * (q - 1 - k)), q * q
    if parity == "even":
        return shape_from_children([_star(gn)] * k + [LEAF] * (q - 1 - k)), 2 * q - 1
    return _star(q - 1), q


def predict_trees(
    ectx: ExtCtx, params: MapParams, mode: str = "stated"
) -> Tuple[Optional[TreeShape], str, Optional[int]]:
    """(tree over every nonzero cyclic vertex or None, tag, e).

    With g(n) = 1 the stated result has no trees at all; for odd n with
    delta1 = 0 every cyclic <0, y> still has q preimages, so the corrected
    mode hangs q - 1 leaves there.
    """
    F = ectx.base
    q, n = F.q, params.n
    e = tree_exponent(q, n)
    if params.parity == "even":
        return _build_tree(q, n, False, e + 1), "tree", e
    if e is None:
        if params.delta1 == 0 and mode == "corrected":
            return _star(q - 1), "tree0", None
        return None, "treeodd", None
    if params.delta1 == 0:
        return _build_tree(q, n, True, e + 1), "tree0", e
    return _build_tree(q, n, False, e + 1), "treeodd", e


# -- assembly ---------------------------------------------------------------

def predict(
    ectx: ExtCtx, params: MapParams, length_cap: Optional[int] = None, mode: str = "stated"
) -> Prediction:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    F = ectx.base
    q = F.q
    zero_shape, zero_size, zero_tag = predict_zero_component(ectx, params)
    B = _Builder(q, mode)
    flags: Dict[str, object] = {
        "parity": params.parity,
        "delta1": params.delta1,
        "delta2": params.delta2,
        "delta1_zero": params.delta1 == 0,
        "delta2_zero": params.delta2 == 0,
        "chi2_a2_minus_c2": chi_m(F, 2, F.sub(F.mul(params.a, params.a), F.mul(params.c, params.c))),
        "delta_o": None,
        "tau0": None,
        "tau": None,
        "l0": None,
        "t0": None,
        "e": tree_exponent(q, params.n),
    }
    provenance: Dict[str, str] = {"zero_profile": zero_tag}
    tree: Optional[TreeShape] = None

    whole = zero_size == q * q
    if whole:
        B.add(1, 1, zero_tag)
    elif params.parity == "even":
        tree, tag, _ = predict_trees(ectx, params)
        provenance["tree"] = tag
        _, _, delta_o = _gamma_delta_o(F, params)
        flags["delta_o"] = delta_o
        odd = predict_odd_cycles_even_n(ectx, params, length_cap, mode)
        B.add(1, 1, "zero_component")
        for m, cnt in sorted(odd.items()):
            B.add(m, cnt, "OddCycle")
        even, info = predict_even_cycles_even_n(ectx, params, odd, mode)
        flags["l0"], flags["t0"] = info["l0"], info["t0"]
        for L, cnt in sorted(even.items()):
            if length_cap is None or L <= length_cap:
                B.add(L, cnt, "evenlength")
    else:
        tree, tag, _ = predict_trees(ectx, params, mode)
        provenance["tree"] = tag
        fixed = predict_fixed_odd_n(ectx, params, mode)
        B.add(1, fixed[2], "fixed_odd")
        zcls, scls, info = predict_cycles_odd_n(ectx, params, length_cap, mode, fixed)
        flags["l0"] = info["l0"]
        eps0, proof, stmt, _ = _tau0_parts(q, params.n, info["l0"])
        tau0 = Fraction(2) ** eps0 * proof
        flags["tau0"] = str(tau0) if tau0.denominator != 1 else int(tau0)
        flags["tau0_prime_sets_agree"] = proof == stmt
        if params.delta1:
            tau = compute_tau(ectx, params)
            flags["tau"] = str(tau) if tau.denominator != 1 else int(tau)
        if "uncovered" in info:
            B.uncovered.append(info["uncovered"])
        for L, cnt in sorted(zcls.items()):
            B.add(L, cnt, "Theoj")
        for L, cnt in sorted(scls.items()):
            B.add(L, cnt, "tau")

    for L, tags in B.prov.items():
        provenance[f"census[{L}]"] = "+".join(tags)

    tree_size = tree.size if tree is not None else 1
    audit = zero_size
    for L, cnt in B.census.items():
        cyc = cnt - 1 if L == 1 else cnt
        audit += L * cyc * tree_size
    return Prediction(
        census=dict(sorted(B.census.items())),
        zero_profile=zero_shape,
        nonzero_tree=tree,
        provenance=provenance,
        flags=flags,
        mode=mode,
        nonintegral=B.nonintegral,
        uncovered=B.uncovered,
        audit_total=audit,
        q2=q * q,
    )
