"""JSON, CSV and figure output for verify results and sweeps.

Output is byte-deterministic: keys are sorted, rows follow InstanceKey
order and nothing time-dependent is written.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence

from ..census import Prediction
from ..orbits import GraphReport
from .core import SCHEMA_VERSION, InstanceKey, VerifyResult
from .sweep import SweepSummary

FLAG_FIELDS = ("delta_o", "tau0", "tau", "l0", "t0", "e")

CSV_COLUMNS = (
    "p", "s", "n", "a", "c", "modulus", "b", "gen", "mode",
    "census_match", "tree_match", "zero_match", "audit_ok", "explained",
    "direct_ok", "indegree_ok", "predicted_census", "observed_census",
    "zero_size", *FLAG_FIELDS, "mismatch_tags",
)


def _census_text(census: Dict[int, int]) -> str:
    return ";".join(f"{L}:{k}" for L, k in sorted(census.items()))


def _plain(v):
    # flags hold ints, strings, bools and None only, but be strict about it
    if v is None or isinstance(v, (bool, int, str)):
        return v
    return str(v)


def result_document(res: VerifyResult) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "key": res.key.as_dict(),
        "mode": res.mode,
        "census_match": res.census_match,
        "tree_match": res.tree_match,
        "zero_match": res.zero_match,
        "audit_ok": res.audit_ok,
        "explained": res.explained,
        "direct_ok": res.direct_ok,
        "predicted_census": {str(L): k for L, k in sorted(res.predicted_census.items())},
        "observed_census": {str(L): k for L, k in sorted(res.observed_census.items())},
        "predicted_tree": res.predicted_tree,
        "observed_trees": list(res.observed_trees),
        "zero_profile": {
            "canonical": res.zero_profile,
            "size": res.zero_size,
            "level_sizes": list(res.zero_levels),
        },
        "indegree_histogram": {str(d): k for d, k in sorted(res.indegree.items())},
        "indegree_allowed": list(res.indegree_allowed),
        "indegree_source": res.indegree_source,
        "flags": {k: _plain(res.flags.get(k)) for k in sorted(res.flags)},
        "provenance": dict(sorted(res.provenance.items())),
        "diffs": [[f, _plain(a), _plain(b)] for f, a, b in res.diffs],
        "mismatch_tags": list(res.tags),
    }


def _shape_doc(shape) -> dict:
    return {"canonical": shape.canonical, "size": shape.size, "level_sizes": list(shape.level_sizes)}


def report_document(key: InstanceKey, report: GraphReport, indegree: Optional[Dict[int, int]] = None) -> dict:
    """Oracle output; predictions use the same layout plus provenance and flags."""
    doc = {
        "schema_version": SCHEMA_VERSION,
        "key": key.as_dict(),
        "census": {str(L): k for L, k in sorted(report.census.items())},
        "zero_profile": _shape_doc(report.zero_profile),
        "nonzero_trees": [
            {**_shape_doc(sh), "count": m} for sh, m in report.nonzero_tree_classes
        ],
        "component_sizes": list(report.component_sizes),
    }
    if indegree is not None:
        doc["indegree_histogram"] = {str(d): k for d, k in sorted(indegree.items())}
    return doc


def prediction_document(key: InstanceKey, pred: Prediction) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "key": key.as_dict(),
        "mode": pred.mode,
        "census": {str(L): k for L, k in sorted(pred.census.items())},
        "zero_profile": _shape_doc(pred.zero_profile),
        "nonzero_trees": [] if pred.nonzero_tree is None else [_shape_doc(pred.nonzero_tree)],
        "audit": {"total": pred.audit_total, "expected": pred.q2, "ok": pred.audit_ok},
        "nonintegral": [list(x) for x in pred.nonintegral],
        "uncovered": list(pred.uncovered),
        "flags": {k: _plain(v) for k, v in sorted(pred.flags.items())},
        "provenance": dict(sorted(pred.provenance.items())),
    }


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def results_json(results: Sequence[VerifyResult], summary: Optional[SweepSummary] = None) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "instances": [result_document(r) for r in sorted(results, key=lambda r: (r.key, r.mode))],
    }
    if summary is not None:
        doc["summary"] = summary.as_dict()
    return dumps(doc)


def csv_row(res: VerifyResult) -> List[object]:
    k = res.key
    return [
        k.p, k.s, k.n, k.a, k.c, k.modulus, k.b, k.gen, res.mode,
        int(res.census_match), int(res.tree_match), int(res.zero_match),
        int(res.audit_ok), int(res.explained),
        "" if res.direct_ok is None else int(res.direct_ok), int(res.indegree_ok),
        _census_text(res.predicted_census), _census_text(res.observed_census),
        res.zero_size,
        *("" if res.flags.get(f) is None else res.flags[f] for f in FLAG_FIELDS),
        "+".join(res.tags),
    ]


def results_csv(results: Iterable[VerifyResult]) -> str:
    buf = io.StringIO()
    buf.write(f"# schema_version: {SCHEMA_VERSION}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for res in sorted(results, key=lambda r: (r.key, r.mode)):
        w.writerow(csv_row(res))
    return buf.getvalue()


def _write(path: Path, text: str, what: str) -> None:
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"writing {what} to {path}: {exc}") from exc


def emit_reports(
    results: Sequence[VerifyResult],
    json_path=None,
    csv_path=None,
    summary: Optional[SweepSummary] = None,
    plots: bool = True,
) -> List[Path]:
    """Write the requested files; figures go next to the first output file."""
    written = []
    if json_path is not None:
        json_path = Path(json_path)
        _write(json_path, results_json(results, summary), _keys_of(results))
        written.append(json_path)
    if csv_path is not None:
        csv_path = Path(csv_path)
        _write(csv_path, results_csv(results), _keys_of(results))
        written.append(csv_path)
    if plots and written:
        base = written[0]
        written += render_figures(results, summary, base.parent, base.stem)
    return written


def _keys_of(results: Sequence[VerifyResult]) -> str:
    if len(results) == 1:
        return results[0].key.text()
    return f"{len(results)} results"


def render_figures(results: Sequence[VerifyResult], summary: Optional[SweepSummary],
                   outdir: Path, stem: str) -> List[Path]:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams.update({"font.size": 9, "savefig.bbox": "tight", "svg.hashsalt": "fqdyn"})
    out = []

    # cycle census: predicted against observed, summed over the results
    pred: Dict[int, int] = {}
    obs: Dict[int, int] = {}
    for r in results:
        for L, k in r.predicted_census.items():
            pred[L] = pred.get(L, 0) + k
        for L, k in r.observed_census.items():
            obs[L] = obs.get(L, 0) + k
    lengths = sorted(set(pred) | set(obs))
    if lengths:
        fig, ax = plt.subplots(figsize=(5.0, 2.6))
        xs = range(len(lengths))
        ax.bar([x - 0.2 for x in xs], [pred.get(L, 0) for L in lengths], width=0.4, label="predicted")
        ax.bar([x + 0.2 for x in xs], [obs.get(L, 0) for L in lengths], width=0.4, label="observed")
        ax.set_xticks(list(xs))
        ax.set_xticklabels([str(L) for L in lengths], rotation=90 if len(lengths) > 20 else 0)
        ax.set_xlabel("cycle length")
        ax.set_ylabel("cycles")
        ax.set_yscale("log")
        ax.legend(frameon=False)
        path = outdir / f"{stem}_census.svg"
        fig.savefig(path, metadata={"Date": None})
        plt.close(fig)
        out.append(path)

    if summary is not None and summary.per_tag:
        tags = sorted(summary.per_tag)
        fig, ax = plt.subplots(figsize=(5.0, 0.3 * len(tags) + 1.0))
        match = [summary.per_tag[t].match for t in tags]
        expl = [summary.per_tag[t].explained for t in tags]
        bad = [summary.per_tag[t].mismatch - summary.per_tag[t].explained for t in tags]
        ax.barh(tags, match, label="match")
        ax.barh(tags, expl, left=match, label="documented mismatch")
        ax.barh(tags, bad, left=[m + e for m, e in zip(match, expl)], label="unexplained")
        ax.set_xlabel("instances")
        ax.legend(frameon=False, fontsize=7)
        path = outdir / f"{stem}_tags.svg"
        fig.savefig(path, metadata={"Date": None})
        plt.close(fig)
        out.append(path)
    return out
