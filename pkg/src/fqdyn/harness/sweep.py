"""Parameter sweeps and the known-discrepancies file."""

from __future__ import annotations

import random
import re
from collections import defaultdict
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from ..field import DEFAULT_CAP
from ..orbits import CapExceeded
from .core import SCHEMA_VERSION, InstanceKey, Runner, VerifyResult, make_key

WILDCARD = "*"
# mismatches of the stated formulas found by the full small-field sweep
DEFAULT_KNOWN = Path(__file__).resolve().parent.parent / "data" / "known_discrepancies.txt"
_KEY_FIELDS = [f.name for f in fields(InstanceKey)]


@dataclass(frozen=True)
class KnownDiscrepancy:
    """One documented mismatch: a key pattern (fields may be '*'), the
    theorem tag it concerns and a free-text note."""

    pattern: Tuple[Tuple[str, str], ...]
    tag: str
    note: str
    mode: str = WILDCARD

    def matches(self, key: InstanceKey, tag: str, mode: str) -> bool:
        if self.tag != tag or self.mode not in (WILDCARD, mode):
            return False
        for name, want in self.pattern:
            if want != WILDCARD and str(getattr(key, name)) != want:
                return False
        return True


_LINE_RE = re.compile(r"^(?P<key>[^|]+)\|(?P<tag>[^|]+)\|(?P<note>.*)$")


def parse_known(text: str) -> List[KnownDiscrepancy]:
    """Parse the known-discrepancies format.

    Lines are ``key | tag | note``; '#' starts a comment.  The key is
    whitespace-separated ``field=value`` pairs over the InstanceKey fields
    plus an optional ``mode``; a missing field or the value '*' matches
    anything.
    """
    version = None
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            m = re.match(r"#\s*schema_version\s*[:=]\s*(\d+)", line)
            if m:
                version = int(m.group(1))
            continue
        if not line:
            continue
        m = _LINE_RE.match(line)
        if not m:
            raise ValueError(f"known-discrepancies line {lineno}: expected 'key | tag | note'")
        pattern, mode = [], WILDCARD
        for tok in m.group("key").split():
            name, eq, value = tok.partition("=")
            if not eq:
                raise ValueError(f"known-discrepancies line {lineno}: bad key token {tok!r}")
            if name == "mode":
                mode = value
            elif name in _KEY_FIELDS:
                pattern.append((name, value))
            else:
                raise ValueError(f"known-discrepancies line {lineno}: unknown field {name!r}")
        out.append(KnownDiscrepancy(tuple(pattern), m.group("tag").strip(), m.group("note").strip(), mode))
    if out and version is None:
        raise ValueError("known-discrepancies file lacks a '# schema_version: N' header")
    if version is not None and version != SCHEMA_VERSION:
        raise ValueError(f"known-discrepancies schema_version {version} is not {SCHEMA_VERSION}")
    return out


def load_known(path: Union[str, Path, None]) -> List[KnownDiscrepancy]:
    if path is None:
        return []
    return parse_known(Path(path).read_text())


def format_known(entries: Iterable[KnownDiscrepancy]) -> str:
    lines = [f"# schema_version: {SCHEMA_VERSION}", "# key | theorem tag | note"]
    for e in entries:
        parts = [f"{name}={value}" for name, value in e.pattern]
        if e.mode != WILDCARD:
            parts.append(f"mode={e.mode}")
        lines.append(f"{' '.join(parts)} | {e.tag} | {e.note}")
    return "\n".join(lines) + "\n"


def explain(result: VerifyResult, known: Sequence[KnownDiscrepancy]) -> bool:
    """True when every mismatch of result is covered by a known entry."""
    for tag in result.tags:
        if not any(k.matches(result.key, tag, result.mode) for k in known):
            return False
    return True


# -- instance enumeration ---------------------------------------------------

def sweep_keys(
    p_list: Sequence[int],
    s_list: Sequence[int],
    n_range: Iterable[int],
    coefficient_mode: Union[str, Tuple[str, int, int]] = "all",
    q_max: Optional[int] = None,
) -> List[InstanceKey]:
    """Sorted keys with canonical field choices.

    coefficient_mode is "all" (every (a, c) != (0, 0)) or ("sample", k, seed),
    which draws k pairs per (p, s, n) with a seeded generator.
    """
    n_values = sorted(set(n_range))
    if coefficient_mode != "all":
        kind, k, seed = coefficient_mode
        if kind != "sample":
            raise ValueError(f"unknown coefficient mode {coefficient_mode!r}")
    keys = []
    for p in sorted(set(p_list)):
        for s in sorted(set(s_list)):
            q = p**s
            if q_max is not None and q > q_max:
                continue
            if not n_values:
                continue
            base = make_key(p, s, 2, 0, 1, cap=max(q, DEFAULT_CAP))
            pairs = [(a, c) for a in range(q) for c in range(q) if a or c]
            for n in n_values:
                if coefficient_mode == "all":
                    chosen = pairs
                else:
                    rng = random.Random(f"{seed}:{p}:{s}:{n}")
                    chosen = sorted(rng.sample(pairs, min(k, len(pairs))))
                for a, c in chosen:
                    keys.append(InstanceKey(p, s, n, a, c, base.modulus, base.b, base.gen))
    keys.sort()
    return keys


# -- running ----------------------------------------------------------------

@dataclass
class TagCount:
    match: int = 0
    mismatch: int = 0
    explained: int = 0


@dataclass
class SweepSummary:
    instances: int = 0
    all_match: int = 0
    explained: int = 0
    unexplained: int = 0
    audit_failures: int = 0
    direct_failures: int = 0
    # in-degree support outside the allowed set, by the result fixing the set
    indegree_failures: Dict[str, int] = field(default_factory=lambda: defaultdict(int))
    indegree_checked: Dict[str, int] = field(default_factory=lambda: defaultdict(int))
    per_tag: Dict[str, TagCount] = field(default_factory=lambda: defaultdict(TagCount))
    unexplained_keys: List[Tuple[InstanceKey, Tuple[str, ...]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.unexplained == 0

    def add(self, res: VerifyResult) -> None:
        self.instances += 1
        if res.all_match:
            self.all_match += 1
        elif res.explained:
            self.explained += 1
        else:
            self.unexplained += 1
            self.unexplained_keys.append((res.key, tuple(res.tags)))
        if not res.audit_ok:
            self.audit_failures += 1
        if res.direct_ok is False:
            self.direct_failures += 1
        self.indegree_checked[res.indegree_source] += 1
        if not res.indegree_ok:
            self.indegree_failures[res.indegree_source] += 1
        bad = set(res.tags)
        for tag in _result_tags(res):
            tc = self.per_tag[tag]
            if tag in bad:
                tc.mismatch += 1
                if res.explained:
                    tc.explained += 1
            else:
                tc.match += 1

    def as_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "instances": self.instances,
            "all_match": self.all_match,
            "explained": self.explained,
            "unexplained": self.unexplained,
            "audit_failures": self.audit_failures,
            "direct_failures": self.direct_failures,
            "indegree_checked": dict(sorted(self.indegree_checked.items())),
            "indegree_failures": dict(sorted(self.indegree_failures.items())),
            "per_tag": {
                t: {"match": c.match, "mismatch": c.mismatch, "explained": c.explained}
                for t, c in sorted(self.per_tag.items())
            },
            "unexplained_keys": [[k.text(), list(t)] for k, t in self.unexplained_keys],
        }


def _result_tags(res: VerifyResult) -> List[str]:
    """Every theorem tag the prediction of res rests on."""
    return sorted(set(res.tags) | set(res.provenance.values()))


def iter_sweep(
    keys: Sequence[InstanceKey],
    modes: Sequence[str] = ("stated",),
    known: Sequence[KnownDiscrepancy] = (),
    cap: int = DEFAULT_CAP,
    check_direct: bool = True,
    runner: Optional[Runner] = None,
) -> Iterator[List[VerifyResult]]:
    """Yield, per key in sorted order, one result per mode.

    Results are annotated with ``explained`` against the known list.
    """
    runner = runner or Runner(cap, check_direct=check_direct)
    for key in sorted(keys):
        if key.q > cap:
            raise CapExceeded(f"q={key.q} exceeds cap {cap}")
        results = runner.run(key, tuple(modes))
        for res in results:
            res.explained = not res.all_match and explain(res, known)
        yield results


def sweep(
    p_list: Sequence[int],
    s_list: Sequence[int],
    n_range: Iterable[int],
    coefficient_mode: Union[str, Tuple[str, int, int]] = "all",
    mode: str = "stated",
    known: Sequence[KnownDiscrepancy] = (),
    cap: int = DEFAULT_CAP,
    q_max: Optional[int] = None,
    check_direct: bool = True,
) -> Tuple[List[VerifyResult], SweepSummary]:
    keys = sweep_keys(p_list, s_list, n_range, coefficient_mode, q_max)
    runner = Runner(cap, check_direct=check_direct)
    results: List[VerifyResult] = []
    summary = SweepSummary()
    for (res,) in iter_sweep(keys, (mode,), known, cap, check_direct, runner):
        summary.add(res)
        results.append(res)
    return results, summary
