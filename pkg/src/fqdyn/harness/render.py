"""Graphviz DOT export of a functional graph."""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from ..extension import ExtElem, format_elem
from ..orbits import _kernels, component_of
from .core import SCHEMA_VERSION


def render_dot(succ, q: Optional[int] = None, component: Optional[int] = None,
               name: str = "f") -> str:
    """DOT digraph with one node per element, labelled 'x+y*B', in index order.

    With ``component`` set, only the weakly connected component of that node
    is drawn.  Cyclic nodes are drawn as double circles.
    """
    succ = np.asarray(succ, dtype=np.int64)
    N = succ.size
    if q is None:
        q = math.isqrt(N)
        if q * q != N:
            raise ValueError(f"{N} nodes is not a square; pass q explicitly")
    nodes = np.arange(N) if component is None else component_of(succ, component)
    cyc_len, _ = _kernels.walk(succ)
    lines = [
        f"// schema_version: {SCHEMA_VERSION}",
        f"digraph {name} {{",
        "  node [shape=circle, fontsize=10];",
    ]
    for v in nodes.tolist():
        label = format_elem(ExtElem(*divmod(v, q)))
        shape = ", shape=doublecircle" if cyc_len[v] else ""
        lines.append(f'  n{v} [label="{label}"{shape}];')
    for v in nodes.tolist():
        lines.append(f"  n{v} -> n{int(succ[v])};")
    lines.append("}")
    return "\n".join(lines) + "\n"
