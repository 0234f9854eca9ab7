"""Exact functional-graph dynamics of f(X) = (cX^q + aX)(X^q - X)^(n-1) over F_{q^2}.

The brute-force oracle lives in :mod:`fqdyn.orbits`, the closed-form
predictions in :mod:`fqdyn.census` and the comparison driver in
:mod:`fqdyn.harness`.
"""

from .census import MODES, Prediction, predict
from .extension import ExtCtx, ExtElem, MapParams, build_extension, derive_deltas
from .field import FieldCtx, FieldError, build_field
from .orbits import GraphReport, TreeShape, build_successors, graph_report

__version__ = "0.1.0"

__all__ = [
    "MODES", "Prediction", "predict",
    "ExtCtx", "ExtElem", "MapParams", "build_extension", "derive_deltas",
    "FieldCtx", "FieldError", "build_field",
    "GraphReport", "TreeShape", "build_successors", "graph_report",
]
