"""Command line entry point: analyze, predict, verify, sweep, render.

Exit codes: 0 everything matches, 1 an unexplained mismatch, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from .census import MODES, predict
from .extension import parse_elem
from .field import DEFAULT_CAP, FieldError
from .harness.core import InstanceKey, Runner, build_instance, make_key
from .harness.render import render_dot
from .harness.reports import dumps, emit_reports, prediction_document, report_document
from .harness.sweep import DEFAULT_KNOWN, SweepSummary, iter_sweep, load_known, sweep_keys
from .orbits import CapExceeded, Workspace, build_successors, graph_report_with_degrees

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


def _int_list(text: str) -> List[int]:
    """'3,5,7' or '2-7' or a mix: '2,4-6'."""
    out = []
    for part in text.split(","):
        lo, dash, hi = part.partition("-")
        try:
            out.extend(range(int(lo), int(hi) + 1) if dash else [int(lo)])
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None
    return out


def _instance_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--p", type=int, required=True, help="odd prime")
    sp.add_argument("--s", type=int, default=1, help="q = p**s")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--a", type=int, required=True, help="element index of a")
    sp.add_argument("--c", type=int, required=True, help="element index of c")
    sp.add_argument("--modulus", help="coefficients low to high, e.g. 2,0,1 for x^2+2")
    sp.add_argument("--b", type=int, help="index of the nonresidue b = B^2")
    sp.add_argument("--gen", type=int, help="index of the generator of F_q^*")


def _common_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest q to enumerate")
    sp.add_argument("--json", type=Path, help="write a JSON report here")
    sp.add_argument("--csv", type=Path, help="write a CSV summary here")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--no-plots", action="store_true", help="skip figures next to JSON/CSV output")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fqdyn",
        description="Functional graph of f(X) = (cX^q + aX)(X^q - X)^(n-1) over F_{q^2}.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("analyze", help="brute-force functional graph")
    _instance_args(sp)
    _common_args(sp)
    sp.add_argument("--dot", type=Path, help="also write the graph as DOT")

    sp = sub.add_parser("predict", help="closed-form prediction only")
    _instance_args(sp)
    _common_args(sp)
    sp.add_argument("--mode", choices=MODES, default="stated")

    sp = sub.add_parser("verify", help="prediction against the brute-force graph")
    _instance_args(sp)
    _common_args(sp)
    sp.add_argument("--mode", choices=MODES, default="stated")
    sp.add_argument("--known", type=Path, default=DEFAULT_KNOWN,
                    help="known-discrepancies file (default: the bundled one)")
    sp.add_argument("--dot", type=Path, help="also write the graph as DOT")

    sp = sub.add_parser("sweep", help="verify many instances")
    sp.add_argument("--p", type=_int_list, required=True, help="e.g. 3,5,7")
    sp.add_argument("--s", type=_int_list, default=[1], help="e.g. 1,2")
    sp.add_argument("--n", type=_int_list, required=True, help="e.g. 2-7")
    sp.add_argument("--q-max", type=int, help="skip fields with q above this")
    sp.add_argument("--sample", type=int, help="k random (a, c) per (p, s, n) instead of all")
    sp.add_argument("--mode", choices=MODES, default="stated")
    sp.add_argument("--known", type=Path, default=DEFAULT_KNOWN,
                    help="known-discrepancies file (default: the bundled one)")
    sp.add_argument("--no-direct", action="store_true",
                    help="skip re-evaluating f from its definition at every point")
    sp.add_argument("--progress", action="store_true")
    _common_args(sp)

    sp = sub.add_parser("render", help="DOT export of the functional graph")
    _instance_args(sp)
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP)
    sp.add_argument("--dot", type=Path, help="output path (default stdout)")
    sp.add_argument("--component", help="only the component of this node, index or 'x+y*B'")
    return ap


def _key(args) -> InstanceKey:
    return make_key(args.p, args.s, args.n, args.a, args.c, args.modulus, args.b, args.gen,
                    cap=args.cap)


def _write_dot(path: Optional[Path], succ, q: int, component: Optional[int] = None) -> None:
    text = render_dot(succ, q, component)
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text)


def _print_census(label: str, census) -> None:
    body = ", ".join(f"{L}: {k}" for L, k in sorted(census.items()))
    print(f"{label}: {{{body}}}")


def cmd_analyze(args) -> int:
    key = _key(args)
    inst = build_instance(key, args.cap)
    succ = build_successors(inst.E, inst.params, audit=True, cap=args.cap, seed=args.seed)
    report, hist = graph_report_with_degrees(succ, Workspace(succ.size))
    print(key.text())
    _print_census("census", report.census)
    print(f"zero component: {report.zero_size} nodes")
    for sh, m in report.nonzero_tree_classes:
        print(f"tree x{m}: size {sh.size}, levels {list(sh.level_sizes)}")
    print("in-degree histogram (nonzero nodes):", dict(sorted(hist.items())))
    if args.json:
        args.json.write_text(dumps(report_document(key, report, hist)))
    if args.dot:
        _write_dot(args.dot, succ, inst.F.q)
    return EXIT_OK


def cmd_predict(args) -> int:
    key = _key(args)
    inst = build_instance(key, args.cap)
    pred = predict(inst.E, inst.params, mode=args.mode)
    print(key.text(), f"mode={args.mode}")
    _print_census("census", pred.census)
    print(f"zero component: {pred.zero_size} nodes")
    if pred.nonzero_tree is not None:
        print(f"tree: size {pred.nonzero_tree.size}, levels {list(pred.nonzero_tree.level_sizes)}")
    for k in ("delta_o", "tau0", "tau", "l0", "t0", "e"):
        if pred.flags.get(k) is not None:
            print(f"{k} = {pred.flags[k]}")
    if not pred.audit_ok:
        print(f"audit: {pred.audit_total} of {pred.q2}; nonintegral={pred.nonintegral} "
              f"uncovered={pred.uncovered}")
    if args.json:
        args.json.write_text(dumps(prediction_document(key, pred)))
    return EXIT_OK


def cmd_verify(args) -> int:
    key = _key(args)
    known = load_known(args.known)
    res = next(iter_sweep([key], (args.mode,), known, args.cap, True, Runner(args.cap)))[0]
    print(key.text(), f"mode={args.mode}")
    print(f"census_match={res.census_match} tree_match={res.tree_match} "
          f"zero_match={res.zero_match} audit_ok={res.audit_ok} direct_ok={res.direct_ok}")
    for (field, want, got), tag in zip(res.diffs, res.tags):
        print(f"  {field} [{tag}]: predicted {_short(want)}, observed {_short(got)}")
    if res.explained:
        print("all mismatches are documented in the known-discrepancies file")
    if args.json or args.csv:
        emit_reports([res], args.json, args.csv, plots=not args.no_plots)
    if args.dot:
        inst = build_instance(key, args.cap)
        succ = build_successors(inst.E, inst.params, cap=args.cap)
        _write_dot(args.dot, succ, inst.F.q)
    return EXIT_OK if res.all_match or res.explained else EXIT_MISMATCH


def _short(v, limit: int = 80) -> str:
    text = str(v)
    return text if len(text) <= limit else text[:limit] + f"... ({len(text)} chars)"


def cmd_sweep(args) -> int:
    mode = "all" if args.sample is None else ("sample", args.sample, args.seed)
    keys = sweep_keys(args.p, args.s, args.n, mode, args.q_max)
    known = load_known(args.known)
    summary = SweepSummary()
    keep = args.json is not None or args.csv is not None
    results = []
    for i, (res,) in enumerate(
        iter_sweep(keys, (args.mode,), known, args.cap, not args.no_direct)
    ):
        summary.add(res)
        if keep:
            results.append(res)
        if args.progress and (i + 1) % 1000 == 0:
            print(f"{i + 1}/{len(keys)}", file=sys.stderr)
    d = summary.as_dict()
    print(f"instances={d['instances']} all_match={d['all_match']} "
          f"documented={d['explained']} unexplained={d['unexplained']} "
          f"direct_failures={d['direct_failures']} audit_failures={d['audit_failures']}")
    for tag, c in d["per_tag"].items():
        print(f"  {tag}: match={c['match']} mismatch={c['mismatch']} documented={c['explained']}")
    for key_text, tags in d["unexplained_keys"][:20]:
        print(f"  unexplained: {key_text} [{'+'.join(tags)}]")
    if keep:
        emit_reports(results, args.json, args.csv, summary, plots=not args.no_plots)
    return EXIT_OK if summary.ok else EXIT_MISMATCH


def cmd_render(args) -> int:
    key = _key(args)
    inst = build_instance(key, args.cap)
    succ = build_successors(inst.E, inst.params, cap=args.cap)
    component = None
    if args.component is not None:
        text = args.component
        component = int(text) if text.isdigit() else inst.E.encode(parse_elem(text))
        if not 0 <= component < succ.size:
            raise ValueError(f"node {text} is outside F_{{q^2}}")
    _write_dot(args.dot, succ, inst.F.q, component)
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "predict": cmd_predict,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "render": cmd_render,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ValueError, FieldError, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
