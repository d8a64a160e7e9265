"""polyrw: rewriting and critical-pair unification for 3-polygraphs.

Cells of the free 2-category on a 2-polygraph are string diagrams, stored as
port graphs with ordered boundaries. A 3-polygraph is read as a rewriting
system on them. Critical pairs are computed by unification in compact
contexts, where wires may bend through units and counits.
"""

from __future__ import annotations

from .compact import embed, open_form, zigzag_normalize
from .context import Context, HoleType, match, substitute
from .diagram import (
    Diagram,
    canonical_key,
    decompose,
    hcompose,
    identity,
    is_iso,
    iso,
    of_generator,
    seq,
    tensor,
    vcompose,
)
from .errors import ParseError, PolygraphError
from .examples import builtin, builtin_names, cell, matrix_semantics, trs_to_polygraph
from .io import dump, format_diagram, parse, parse_cell, render_dot, render_tikz
from .path import Path
from .rewrite import Joined, NotJoinable, Unknown, joinable, local_confluence, normalize, one_step
from .signature import Polygraph, validate
from .unify import CompactCriticalPair, critical_pairs, regular_closure

__version__ = "0.1.0"

__all__ = [
    "Context", "CompactCriticalPair", "Diagram", "HoleType", "Joined", "NotJoinable", "ParseError", "Path",
    "Polygraph", "PolygraphError", "Unknown", "builtin", "builtin_names", "canonical_key", "cell",
    "critical_pairs", "decompose", "dump", "embed", "format_diagram", "hcompose", "identity", "is_iso", "iso",
    "joinable", "local_confluence", "match", "matrix_semantics", "normalize", "of_generator", "one_step",
    "open_form", "parse", "parse_cell", "regular_closure", "render_dot", "render_tikz", "seq", "substitute",
    "tensor", "trs_to_polygraph", "validate", "vcompose", "zigzag_normalize",
]
