"""Instance keys, instance construction and the prediction/oracle comparison."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..census import Prediction, predict
from ..extension import ExtCtx, MapParams, build_extension, derive_deltas
from ..field import DEFAULT_CAP, FieldCtx, build_field, format_modulus, g_of, parse_modulus
from ..orbits import (
    LEAF,
    GraphReport,
    Workspace,
    _check_cap,
    coord_successors,
    direct_successors,
    frobenius_difference_power,
    graph_report_with_degrees,
)

SCHEMA_VERSION = 1


@dataclass(frozen=True, order=True)
class InstanceKey:
    """Everything needed to rebuild one run; ordering gives report order."""

    p: int
    s: int
    n: int
    a: int
    c: int
    modulus: str
    b: int
    gen: int

    @property
    def q(self) -> int:
        return self.p**self.s

    def text(self) -> str:
        return (
            f"p={self.p} s={self.s} n={self.n} a={self.a} c={self.c} "
            f"modulus={self.modulus} b={self.b} gen={self.gen}"
        )

    def as_dict(self) -> dict:
        return {
            "p": self.p, "s": self.s, "n": self.n, "a": self.a, "c": self.c,
            "modulus": self.modulus, "b": self.b, "gen": self.gen,
        }


@dataclass
class VerifyResult:
    key: InstanceKey
    census_match: bool
    tree_match: bool
    zero_match: bool
    audit_ok: bool
    diffs: List[Tuple[str, object, object]] = field(default_factory=list)
    # theorem tag per diff, same order as diffs
    tags: List[str] = field(default_factory=list)
    mode: str = "stated"
    predicted_census: Dict[int, int] = field(default_factory=dict)
    observed_census: Dict[int, int] = field(default_factory=dict)
    predicted_tree: Optional[str] = None
    observed_trees: Tuple[str, ...] = ()
    zero_size: int = 0
    zero_profile: str = ""
    zero_levels: Tuple[int, ...] = ()
    flags: Dict[str, object] = field(default_factory=dict)
    direct_ok: Optional[bool] = None
    indegree: Dict[int, int] = field(default_factory=dict)
    # allowed in-degrees of nonzero targets and the result fixing them
    indegree_allowed: Tuple[int, ...] = ()
    indegree_source: str = ""
    provenance: Dict[str, str] = field(default_factory=dict)
    explained: bool = False

    @property
    def indegree_ok(self) -> bool:
        return set(self.indegree) <= set(self.indegree_allowed)

    @property
    def all_match(self) -> bool:
        return self.census_match and self.tree_match and self.zero_match


class Instance:
    """Field, extension and map parameters for one key."""

    def __init__(self, F: FieldCtx, E: ExtCtx, params: MapParams, key: InstanceKey):
        self.F, self.E, self.params, self.key = F, E, params, key


def make_key(p: int, s: int, n: int, a: int, c: int, modulus=None, b=None, gen=None,
             cap: int = DEFAULT_CAP) -> InstanceKey:
    """Key with the canonical field choices filled in for anything left as None."""
    mod = parse_modulus(modulus) if isinstance(modulus, str) else modulus
    F = build_field(p, s, mod, gen, cap=cap)
    E = build_extension(F, b)
    return InstanceKey(p, s, n, a, c, format_modulus(F.modulus), E.b, F.generator)


def build_instance(key: InstanceKey, cap: int = DEFAULT_CAP, allow_trivial: bool = True) -> Instance:
    F = build_field(key.p, key.s, parse_modulus(key.modulus), key.gen, cap=cap)
    E = build_extension(F, key.b)
    for v, name in ((key.a, "a"), (key.c, "c")):
        if not 0 <= v < F.q:
            raise ValueError(f"{name}={v} is not an element index of F_{F.q}")
    params = derive_deltas(E, key.a, key.c, key.n, allow_trivial=allow_trivial)
    return Instance(F, E, params, key)


def census_tag(pred: Prediction, length: int) -> str:
    """Theorem tag accountable for a census entry of the given length."""
    tag = pred.provenance.get(f"census[{length}]")
    if tag:
        return tag
    if pred.zero_size == pred.q2:
        return pred.provenance["zero_profile"]
    if pred.flags["parity"] == "even":
        return "OddCycle" if length % 2 else "evenlength"
    return "fixed_odd" if length == 1 else "Theoj+tau"


def indegree_support(F: FieldCtx, params: MapParams) -> Tuple[frozenset, str]:
    """Allowed in-degrees of nonzero targets, with the result that fixes them.

    The generic cases are the in-degree lemmas.  When a coordinate
    coefficient vanishes the map degenerates and the support follows from
    the one-component descriptions instead.
    """
    q = F.q
    gn = g_of(F, params.n)
    if params.trivial:
        return frozenset({0}), "trivial"
    if params.parity == "even":
        if params.delta1 == 0:
            return frozenset({0, q - 1}), "delta1_zero"
        if params.delta2 == 0:
            return frozenset({0, q * gn}), "delta2_zero"
        return frozenset({0, gn}), "gamma"
    if params.delta2 == 0:
        return frozenset({0, q - 1}), "delta2_zero"
    if params.delta1 == 0:
        return frozenset({0, q * gn}), "gammaodd"
    return frozenset({0, gn}), "gammaodd"


def compare(key: InstanceKey, pred: Prediction, obs: GraphReport) -> VerifyResult:
    diffs: List[Tuple[str, object, object]] = []
    tags: List[str] = []
    pc, oc = pred.census, obs.census
    for L in sorted(set(pc) | set(oc)):
        if pc.get(L, 0) != oc.get(L, 0):
            diffs.append((f"census[{L}]", pc.get(L, 0), oc.get(L, 0)))
            tags.append(census_tag(pred, L))
    census_match = not diffs

    want = pred.nonzero_tree if pred.nonzero_tree is not None else LEAF
    observed = tuple(sh.canonical for sh, _ in obs.nonzero_tree_classes)
    tree_match = True
    for form in observed:
        if form != want.canonical:
            tree_match = False
            diffs.append(("tree", want.canonical, form))
            tags.append(pred.provenance.get("tree", "tree"))

    zero_match = pred.zero_profile.canonical == obs.zero_profile.canonical
    if not zero_match:
        diffs.append(("zero_profile", pred.zero_profile.canonical, obs.zero_profile.canonical))
        tags.append(pred.provenance["zero_profile"])

    return VerifyResult(
        key=key,
        census_match=census_match,
        tree_match=tree_match,
        zero_match=zero_match,
        audit_ok=pred.audit_ok,
        diffs=diffs,
        tags=tags,
        mode=pred.mode,
        predicted_census=dict(pc),
        observed_census=dict(oc),
        predicted_tree=pred.nonzero_tree.canonical if pred.nonzero_tree is not None else None,
        observed_trees=observed,
        zero_size=obs.zero_size,
        zero_profile=obs.zero_profile.canonical,
        zero_levels=obs.zero_profile.level_sizes,
        flags=dict(pred.flags),
        provenance=dict(pred.provenance),
    )


class Runner:
    """Caches fields, workspaces and (X^q - X)^(n-1) arrays across instances."""

    def __init__(self, cap: int = DEFAULT_CAP, check_direct: bool = True):
        self.cap = cap
        self.check_direct = check_direct
        self._fields: Dict[tuple, Tuple[FieldCtx, ExtCtx]] = {}
        self._ws: Dict[int, Workspace] = {}
        self._w: Dict[tuple, tuple] = {}

    def instance(self, key: InstanceKey) -> Instance:
        fk = (key.p, key.s, key.modulus, key.gen, key.b)
        if fk not in self._fields:
            if len(self._fields) > 8:
                self._fields.clear()
            F = build_field(key.p, key.s, parse_modulus(key.modulus), key.gen, cap=self.cap)
            self._fields[fk] = (F, build_extension(F, key.b))
        F, E = self._fields[fk]
        for v, name in ((key.a, "a"), (key.c, "c")):
            if not 0 <= v < F.q:
                raise ValueError(f"{name}={v} is not an element index of F_{F.q}")
        return Instance(F, E, derive_deltas(E, key.a, key.c, key.n, allow_trivial=True), key)

    def workspace(self, q: int) -> Workspace:
        ws = self._ws.get(q)
        if ws is None:
            self._ws.clear()
            ws = self._ws[q] = Workspace(q * q)
        return ws

    def _frob(self, inst: Instance):
        wk = (inst.key.p, inst.key.s, inst.key.modulus, inst.key.gen, inst.key.b, inst.key.n)
        w = self._w.get(wk)
        if w is None:
            if len(self._w) > 16:
                self._w.clear()
            w = self._w[wk] = frobenius_difference_power(inst.E, inst.key.n)
        return w

    def run(self, key: InstanceKey, modes=("stated",)) -> List[VerifyResult]:
        """One oracle pass, compared against the prediction in each mode."""
        inst = self.instance(key)
        q = inst.F.q
        _check_cap(q, self.cap)
        succ = coord_successors(inst.E, inst.params)
        direct_ok = None
        if self.check_direct:
            direct_ok = bool(np.array_equal(succ, direct_successors(inst.E, inst.params, self._frob(inst))))
        obs, hist = graph_report_with_degrees(succ, self.workspace(q))
        allowed, source = indegree_support(inst.F, inst.params)
        out = []
        for mode in modes:
            res = compare(key, predict(inst.E, inst.params, mode=mode), obs)
            res.direct_ok = direct_ok
            res.indegree = hist
            res.indegree_allowed = tuple(sorted(allowed))
            res.indegree_source = source
            out.append(res)
        return out


def verify_instance(key: InstanceKey, mode: str = "stated", cap: int = DEFAULT_CAP,
                    runner: Optional[Runner] = None) -> VerifyResult:
    runner = runner or Runner(cap)
    return runner.run(key, (mode,))[0]
