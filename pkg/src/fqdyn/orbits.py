"""Brute-force functional graph of f on all q^2 points.

Node encoding is fixed: <x, y> -> x*q + y, so <0, 0> is node 0.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .extension import ExtCtx, MapParams, eval_map_direct
from .field import DEFAULT_CAP, FieldCtx


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class TreeShape:
    """Rooted tree in AHU canonical form: '(' + sorted child forms + ')'."""

    canonical: str
    height: int
    level_sizes: Tuple[int, ...]

    @property
    def size(self) -> int:
        return sum(self.level_sizes)


LEAF = TreeShape("()", 0, (1,))


def shape_from_children(children: Sequence[TreeShape]) -> TreeShape:
    if not children:
        return LEAF
    forms = sorted(ch.canonical for ch in children)
    height = 1 + max(ch.height for ch in children)
    levels = [1] + [0] * height
    for ch in children:
        for i, k in enumerate(ch.level_sizes):
            levels[i + 1] += k
    return TreeShape("(" + "".join(forms) + ")", height, tuple(levels))


@dataclass(frozen=True)
class GraphReport:
    census: Dict[int, int]
    zero_profile: TreeShape
    nonzero_tree_classes: Tuple[Tuple[TreeShape, int], ...]
    component_sizes: Tuple[int, ...]

    @property
    def zero_size(self) -> int:
        return self.zero_profile.size


_DUMMY = np.zeros((1, 1), dtype=np.int64)


def _kernel_tables(F: FieldCtx):
    """Field arithmetic arguments for the compiled kernels.

    Passed as separate arguments: bundling the arrays in a tuple costs a
    refcount round trip per inlined call and is an order of magnitude slower.
    """
    use_table = F.mul_table is not None
    mult = F.mul_table if use_table else _DUMMY
    addt = F.add_table if use_table else _DUMMY
    return mult, addt, use_table, F.log, F.exp, F.p, F.s


def _powers(F: FieldCtx, e: int) -> np.ndarray:
    """y**e for every y in F_q, as an array indexed by y."""
    out = np.zeros(F.q, dtype=np.int64)
    if e == 0:
        out[0] = 1
    out[1:] = F.exp[(F.log[1:] * e) % (F.q - 1)]
    return out


def _scale_vec(F: FieldCtx, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    out = np.zeros_like(u)
    nz = (u != 0) & (v != 0)
    out[nz] = F.exp[(F.log[u[nz]] + F.log[v[nz]]) % (F.q - 1)]
    return out


def _scale(F: FieldCtx, k: int, arr: np.ndarray) -> np.ndarray:
    if k == 0:
        return np.zeros_like(arr)
    out = np.zeros_like(arr)
    nz = arr != 0
    out[nz] = F.exp[(F.log[arr[nz]] + F.log[k]) % (F.q - 1)]
    return out


def _check_cap(q: int, cap: int) -> None:
    if q > cap:
        raise CapExceeded(f"q={q} exceeds cap {cap}; q^2 nodes would be enumerated")


def coord_successors(ectx: ExtCtx, params: MapParams) -> np.ndarray:
    F = ectx.base
    n = params.n
    if params.parity == "even":
        first = _scale(F, params.delta1, _powers(F, n))
        second = _scale(F, params.delta2, _powers(F, n - 1))
    else:
        k = _scale(F, params.kappa, _powers(F, n - 1))
        first = _scale(F, params.delta1, k)
        second = _scale(F, params.delta2, _scale_vec(F, k, np.arange(F.q, dtype=np.int64)))
    mult, _, use_table, log, exp, _, _ = _kernel_tables(F)
    return _kernels.coord_successors(F.q, first, second, params.parity == "odd", mult, use_table, log, exp)


def frobenius_difference_power(ectx: ExtCtx, n: int):
    """(X^q - X)^(n-1) at every node; depends on n only, so callers may cache it."""
    F = ectx.base
    return _kernels.frob_diff_power(F.q, n - 1, ectx.b, F.neg_table, *_kernel_tables(F))


def direct_successors(ectx: ExtCtx, params: MapParams, w=None) -> np.ndarray:
    """Successor array from the defining polynomial, evaluated at every node."""
    F = ectx.base
    if w is None:
        w = frobenius_difference_power(ectx, params.n)
    return _kernels.direct_successors(
        F.q, params.a, params.c, ectx.b, w[0], w[1], F.neg_table, *_kernel_tables(F)
    )


def build_successors(
    ectx: ExtCtx,
    params: MapParams,
    audit: bool = False,
    cap: int = DEFAULT_CAP,
    seed: int = 0,
) -> np.ndarray:
    """succ[i] = encode(f(decode(i))) via the coordinate form.

    With audit=True a 1% random sample (at least one node) is recomputed
    through the defining polynomial and must agree.
    """
    q = ectx.base.q
    _check_cap(q, cap)
    succ = coord_successors(ectx, params)
    if audit:
        rng = np.random.default_rng(seed)
        k = max(1, (q * q) // 100)
        for i in rng.choice(q * q, size=k, replace=False):
            want = ectx.encode(eval_map_direct(ectx, params, ectx.decode(int(i))))
            if want != succ[i]:
                raise AssertionError(f"coordinate form disagrees with f at node {int(i)}")
    return succ


def cycle_census(succ) -> Dict[int, int]:
    succ = np.asarray(succ, dtype=np.int64)
    cyc_len, _ = _kernels.walk(succ)
    lens = cyc_len[cyc_len > 0]
    counts = np.bincount(lens)
    return {int(L): int(counts[L]) // int(L) for L in np.nonzero(counts)[0]}


def in_degree_histogram(succ) -> Dict[int, int]:
    succ = np.asarray(succ, dtype=np.int64)
    deg = np.bincount(succ, minlength=succ.size)
    hist = np.bincount(deg)
    return {int(d): int(hist[d]) for d in np.nonzero(hist)[0]}


class Workspace:
    """Scratch buffers for one graph size; reuse it across instances of the
    same q to avoid reallocating (and page-faulting) a dozen node arrays."""

    def __init__(self, nodes: int):
        N = nodes
        self.nodes = N
        i64 = np.int64
        self.pending = np.empty(N, i64)
        self.head = np.empty(N, i64)
        self.nxt = np.empty(N, i64)
        self.sub = np.empty(N, i64)
        self.cyc_len = np.empty(N, i64)
        size = 1
        while size < 2 * N + 2:
            size *= 2
        self.table = np.empty(size, i64)
        self.start = np.empty(N + 1, i64)
        self.length = np.empty(N + 1, i64)
        self.buf = np.empty(N + 1, i64)
        self.label = np.empty(N, i64)
        self.scratch = np.empty(N + 2, i64)
        self.mark = np.empty(N + 1, i64)
        self.deghist = np.empty(N + 1, i64)
        self.lens = np.empty(N, i64)
        self.sizes = np.empty(N, i64)


# shapes by the canonical forms of their children; sweeps meet the same
# few shapes over and over
_SHAPE_MEMO: Dict[tuple, TreeShape] = {}


def _shape_of(children: list) -> TreeShape:
    key = tuple(sorted(ch.canonical for ch in children))
    sh = _SHAPE_MEMO.get(key)
    if sh is None:
        if len(_SHAPE_MEMO) > 100_000:
            _SHAPE_MEMO.clear()
        sh = _SHAPE_MEMO[key] = shape_from_children(children)
    return sh


class _Analysis:
    """One analysis pass, with lazily built shapes per label.

    The arrays are views into the workspace and are only valid until the
    workspace is reused.
    """

    def __init__(self, succ, ws: Optional[Workspace] = None):
        succ = np.asarray(succ, dtype=np.int64)
        if ws is None or ws.nodes != succ.size:
            ws = Workspace(succ.size)
        self.succ = succ
        nlab, ncyc = _kernels.analyze_into(
            succ, ws.pending, ws.head, ws.nxt, ws.sub, ws.cyc_len, ws.table,
            ws.start, ws.length, ws.buf, ws.label, ws.scratch, ws.mark, ws.deghist,
            ws.lens, ws.sizes,
        )
        self.cyc_len, self.label = ws.cyc_len, ws.label
        self.lstart, self.llen, self.lbuf = ws.start[:nlab], ws.length[:nlab], ws.buf
        self.nlab, self.ncyc = nlab, ncyc
        self.ws = ws
        self._shapes: list = []

    def shape(self, lab: int) -> TreeShape:
        # labels are created children-first, so a forward sweep suffices
        shapes = self._shapes
        lstart, llen, lbuf = self.lstart, self.llen, self.lbuf
        while len(shapes) <= lab:
            l = len(shapes)
            k = int(llen[l])
            if k == 0:
                shapes.append(LEAF)
                continue
            st = int(lstart[l])
            shapes.append(_shape_of([shapes[u] for u in lbuf[st : st + k].tolist()]))
        return shapes[lab]

    def summary(self):
        """(cycle lengths, component sizes, {label: count over nonzero cyclic
        nodes}, in-degree histogram over nonzero nodes as {degree: count})."""
        ws = self.ws
        mark = ws.mark[: self.nlab]
        labs = np.nonzero(mark)[0]
        degs = np.nonzero(ws.deghist)[0]
        return (
            ws.lens[: self.ncyc],
            ws.sizes[: self.ncyc],
            {int(l): int(mark[l]) for l in labs},
            {int(d): int(ws.deghist[d]) for d in degs},
        )


def hanging_tree(succ, cyclic_node: int) -> TreeShape:
    an = _Analysis(succ)
    if an.cyc_len[cyclic_node] == 0:
        raise ValueError(f"node {cyclic_node} is not on a cycle")
    return an.shape(int(an.label[cyclic_node]))


def graph_report_with_degrees(succ, ws: Optional[Workspace] = None) -> Tuple[GraphReport, Dict[int, int]]:
    """graph_report plus the in-degree histogram over nonzero nodes, from one pass."""
    an = _Analysis(succ, ws)
    lens, sizes, labs, degs = an.summary()
    census = Counter(lens.tolist())
    classes = sorted(((an.shape(l), m) for l, m in labs.items()), key=lambda t: t[0].canonical)
    report = GraphReport(
        census=dict(sorted(census.items())),
        zero_profile=an.shape(int(an.label[0])),
        nonzero_tree_classes=tuple(classes),
        component_sizes=tuple(sorted(sizes.tolist())),
    )
    return report, degs


def graph_report(succ, ws: Optional[Workspace] = None) -> GraphReport:
    return graph_report_with_degrees(succ, ws)[0]


def component_of(succ, node: int) -> np.ndarray:
    """Indices of all nodes in the weakly connected component of node."""
    succ = np.asarray(succ, dtype=np.int64)
    _, cyc_id = _kernels.walk(succ)
    return np.nonzero(cyc_id == cyc_id[node])[0]
