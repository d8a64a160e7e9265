"""The ``.poly`` text format, diagram expressions, renderers and JSON.

A file lists generators by dimension::

    polygraph monoid
    [0]
    *
    [1]
    1 : * -> *
    [2]
    mu : 1 1 => 1
    eta : => 1
    [3]
    a : mu * 1 . mu => 1 * mu . mu

Paths are space-separated 1-generators, ``f^k`` for winding ``k``, and
``id(A)`` for the empty path on the 0-generator ``A``. In cell expressions
``.`` is vertical composition in diagrammatic order (the left operand is
applied first, i.e. drawn on top) and ``*`` is horizontal composition, which
binds tighter. Atoms are 2-generator names, 1-generator names (an identity
wire), ``id(path)``, ``eta(f,n)``, ``eps(f,n)`` and holes
``?h : src => tgt``. A ``compact`` flag after the name allows units and
counits in rules. ``#`` starts a comment.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .diagram import (
    Diagram,
    Hole,
    decompose,
    hcompose,
    identity,
    of_generator,
    single_node,
    vcompose,
)
from .errors import ParseError, PolygraphError
from .path import Path, format_path, letter_endpoints, path_of
from .signature import Polygraph, validate

FORMAT_VERSION = 1

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z0-9_'][A-Za-z0-9_']*)|(?P<op>=>|->|[().*,:?^\-\[\]]))")


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str, line: int, col0: int = 1) -> list[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            k = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[k]!r}", line, col0 + k, "a name or an operator")
        kind = "name" if m.group("name") else "op"
        val = m.group(kind)
        out.append(_Tok(kind, val, line, col0 + m.start(kind)))
        pos = m.end()
    out.append(_Tok("end", "", line, col0 + len(text)))
    return out


class _Parser:
    """Recursive descent over the tokens of one declaration or expression."""

    def __init__(self, sig: Polygraph, toks: list[_Tok]):
        self.sig = sig
        self.toks = toks
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, expected: str) -> ParseError:
        t = self.tok
        return ParseError(msg, t.line, t.col, expected)

    def eat(self, text: str) -> _Tok:
        if self.tok.text != text:
            raise self.error(f"expected {text!r}, found {self.tok.text or 'end of line'!r}", text)
        t = self.tok
        self.i += 1
        return t

    def name(self) -> str:
        if self.tok.kind != "name":
            raise self.error(f"expected a name, found {self.tok.text or 'end of line'!r}", "a name")
        t = self.tok
        self.i += 1
        return t.text

    def integer(self) -> int:
        neg = False
        if self.tok.text == "-":
            self.i += 1
            neg = True
        t = self.tok
        if t.kind != "name" or not t.text.isdigit():
            raise self.error("expected an integer", "an integer")
        self.i += 1
        return -int(t.text) if neg else int(t.text)

    def expect_end(self) -> None:
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}", "end of line")

    # -- paths

    def letter(self) -> tuple[int, int]:
        t = self.tok
        n = self.name()
        if not self.sig.has(1, n):
            self.i -= 1
            raise ParseError(f"unknown 1-generator {n!r}", t.line, t.col, "a 1-generator")
        k = 0
        if self.tok.text == "^":
            self.i += 1
            k = self.integer()
        return self.sig.index(1, n), k

    def path(self, stop=("=>", "end", ".", "*", ")")) -> Path:
        t = self.tok
        if self.tok.text == "id" and self.toks[self.i + 1].text == "(":
            self.i += 2
            if self.toks[self.i + 1].text == ")" and self.sig.has(0, self.tok.text):
                a = self.sig.index(0, self.tok.text)
                self.i += 1
                self.eat(")")
                return Path(a, a, ())
            inner = self.path(stop=(")",))
            self.eat(")")
            if inner is None:
                raise ParseError("expected a 0-generator or letters", t.line, t.col, "id(A) or id(f g)")
            return inner
        letters = []
        while self.tok.kind == "name" and self.tok.text not in stop:
            letters.append(self.letter())
        if not letters:
            return None  # empty path, endpoints unknown
        try:
            return path_of(self.sig, letters)
        except PolygraphError as e:
            raise ParseError(str(e), t.line, t.col, "composable letters") from None

    # -- cell expressions

    def expr(self) -> Diagram:
        d = self.hexpr()
        while self.tok.text == ".":
            t = self.eat(".")
            e = self.hexpr()
            try:
                d = vcompose(d, e)
            except PolygraphError as err:
                raise ParseError(str(err), t.line, t.col, "composable cells") from None
        return d

    def hexpr(self) -> Diagram:
        d = self.atom()
        while self.tok.text == "*":
            t = self.eat("*")
            e = self.atom()
            try:
                d = hcompose(d, e)
            except PolygraphError as err:
                raise ParseError(str(err), t.line, t.col, "composable cells") from None
        return d

    def atom(self) -> Diagram:
        t = self.tok
        sig = self.sig
        if t.text == "(":
            self.i += 1
            d = self.expr()
            self.eat(")")
            return d
        if t.text == "?":
            self.i += 1
            h = self.name()
            self.eat(":")
            src = self.path()
            self.eat("=>")
            tgt = self.path()
            return _hole_cell(sig, h, src, tgt, t)
        if t.kind != "name":
            raise self.error(f"unexpected {t.text or 'end of line'!r}", "a cell")
        nxt = self.toks[self.i + 1].text
        if t.text == "id" and nxt == "(":
            p = self.path()
            return identity(sig, p)
        if t.text in ("eta", "eps") and nxt == "(":
            self.i += 2
            f = self.name()
            if not sig.has(1, f):
                raise ParseError(f"unknown 1-generator {f!r}", t.line, t.col, "a 1-generator")
            self.eat(",")
            n = self.integer()
            self.eat(")")
            from .compact import eps, eta

            return (eta if t.text == "eta" else eps)(sig, f, n)
        if sig.has(2, t.text) and nxt != "^":
            self.i += 1
            return of_generator(sig, t.text)
        if sig.has(1, t.text):
            f, k = self.letter()
            return identity(sig, path_of(sig, [(f, k)]))
        raise ParseError(f"unknown generator {t.text!r}", t.line, t.col, "a 2-generator or 1-generator")


def _hole_cell(sig, h, src, tgt, t) -> Diagram:
    if src is None and tgt is None:
        raise ParseError("hole type needs id(A) for empty paths", t.line, t.col, "id(A)")
    if src is None:
        src = Path(tgt.start, tgt.start, ())
    if tgt is None:
        tgt = Path(src.start, src.start, ())
    if (src.start, src.end) != (tgt.start, tgt.end):
        raise ParseError("hole source and target are not parallel", t.line, t.col, "parallel paths")
    return single_node(sig, Hole(h), src.letters, tgt.letters, src.start, src.end)


def parse_cell(sig: Polygraph, text: str, line: int = 1) -> Diagram:
    """Parse a cell expression over the generators of ``sig``."""
    p = _Parser(sig, _tokenize(text, line))
    d = p.expr()
    p.expect_end()
    return d


def parse_context(sig: Polygraph, text: str):
    """Parse an expression with holes into a :class:`Context`."""
    from .context import Context, HoleType

    d = parse_cell(sig, text)
    holes = []
    for n in sorted(d.nodes):
        node = d.nodes[n]
        if node.label.kind == "hole":
            src = path_of(sig, d.labels(node.inputs)) if node.inputs else None
            tgt = path_of(sig, d.labels(node.outputs)) if node.outputs else None
            a = (src or tgt).start if (src or tgt) else d.start
            holes.append((node.label.hole, HoleType(src or Path(a, a, ()), tgt or Path(a, a, ()))))
    return Context(d, holes)


def parse(text: str) -> Polygraph:
    """Parse a ``.poly`` file into a validated polygraph."""
    sig: Polygraph | None = None
    dim = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        body = line.strip()
        if sig is None:
            parts = body.split()
            if parts[0] != "polygraph" or len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] != "compact"):
                raise ParseError("expected a header 'polygraph NAME [compact]'", ln, col, "polygraph NAME")
            sig = Polygraph(parts[1], compact_rules=len(parts) == 3)
            continue
        m = re.fullmatch(r"\[([0-3])\]", body)
        if m:
            dim = int(m.group(1))
            continue
        if dim is None:
            raise ParseError("declaration outside of a dimension section", ln, col, "[0], [1], [2] or [3]")
        try:
            _declare(sig, dim, body, ln, col)
        except ParseError:
            raise
        except PolygraphError as e:
            raise ParseError(str(e), ln, col, "a valid declaration") from None
    if sig is None:
        raise ParseError("empty file", 1, 1, "polygraph NAME")
    problems = validate(sig)
    if problems:
        v = problems[0]
        raise ParseError(f"{v.generator}: {v.message}", 0, 0, "a valid polygraph")
    return sig


def _declare(sig: Polygraph, dim: int, body: str, ln: int, col: int) -> None:
    if dim == 0:
        name = body
        if not re.fullmatch(r"[^\s:]+", name):
            raise ParseError("0-generator names cannot contain spaces or ':'", ln, col, "a name")
        sig.add_generator(0, name)
        return
    head, sep, rest = body.partition(":")
    if not sep:
        raise ParseError("expected 'name : source => target'", ln, col + len(body), ":")
    name = head.strip()
    if not re.fullmatch(r"[A-Za-z0-9_']+", name):
        raise ParseError(f"bad generator name {name!r}", ln, col, "a name")
    off = col + len(head) + 1
    if dim == 1:
        parts = rest.split("->")
        if len(parts) != 2:
            raise ParseError("expected 'name : A -> B'", ln, off, "->")
        a, b = parts[0].strip(), parts[1].strip()
        for x in (a, b):
            if not sig.has(0, x):
                raise ParseError(f"unknown 0-generator {x!r}", ln, off, "a 0-generator")
        sig.add_generator(1, name, a, b)
        return
    p = _Parser(sig, _tokenize(rest, ln, off))
    if dim == 2:
        src = p.path()
        p.eat("=>")
        tgt = p.path()
        p.expect_end()
        if src is None and tgt is None:
            raise ParseError("give id(A) for empty boundaries", ln, off, "id(A)")
        if src is None:
            src = Path(tgt.start, tgt.start, ()) if tgt.start == tgt.end else None
        if tgt is None:
            tgt = Path(src.start, src.start, ()) if src.start == src.end else None
        if src is None or tgt is None:
            raise ParseError("empty boundary of a non-endo 2-generator", ln, off, "parallel paths")
        sig.add_generator(2, name, src, tgt)
        return
    lhs = p.expr()
    p.eat("=>")
    rhs = p.expr()
    p.expect_end()
    sig.add_generator(3, name, lhs, rhs)


# -- printing ----------------------------------------------------------------


def _letters(sig: Polygraph, letters) -> list[str]:
    out = []
    for f, n in letters:
        name = sig.name_of(1, f)
        out.append(name if n == 0 else f"{name}^{n}")
    return out


def _node_atom(d: Diagram, n: int, left_end: int) -> str:
    node = d.nodes[n]
    lab = node.label
    sig = d.sig
    if lab.kind == "gen":
        return sig.name_of(2, lab.gen)
    if lab.kind in ("eta", "eps"):
        return f"{lab.kind}({sig.name_of(1, lab.gen)},{lab.winding})"
    src = path_of(sig, d.labels(node.inputs), start=left_end)
    tgt = path_of(sig, d.labels(node.outputs), start=left_end)
    return f"?{lab.hole} : {format_path(src, sig)} => {format_path(tgt, sig)}"


def format_diagram(d: Diagram) -> str:
    """The diagram as a cell expression, one layer per node, top to bottom."""
    sig = d.sig
    if not d.nodes:
        if not d.source:
            return f"id({sig.gens[0][d.start].name})"
        return " * ".join(_letters(sig, d.labels(d.source)))
    rows = []
    for layer in decompose(d):
        parts = _letters(sig, layer.left.letters)
        parts.append(_node_atom(d, layer.node, layer.left.end))
        parts += _letters(sig, layer.right.letters)
        rows.append(" * ".join(parts))
    return " . ".join(rows)


def dump(p: Polygraph) -> str:
    """Text of ``p`` in the ``.poly`` format; :func:`parse` reads it back."""
    lines = [f"polygraph {p.name or 'unnamed'}" + (" compact" if p.compact_rules else "")]
    lines.append("[0]")
    lines += [g.name for g in p.gens[0]]
    lines.append("[1]")
    for g in p.gens[1]:
        lines.append(f"{g.name} : {p.name_of(0, p.src1[g.index])} -> {p.name_of(0, p.tgt1[g.index])}")
    lines.append("[2]")
    for g in p.gens[2]:
        s, t = p.src2[g.index], p.tgt2[g.index]
        lines.append(f"{g.name} : {format_path(s, p)} => {format_path(t, p)}")
    if p.gens[3]:
        lines.append("[3]")
        for g in p.gens[3]:
            lines.append(f"{g.name} : {format_diagram(p.src3[g.index])} => {format_diagram(p.tgt3[g.index])}")
    return "\n".join(lines) + "\n"


# -- renderers ---------------------------------------------------------------


def _wire_label(d: Diagram, w: int) -> str:
    f, n = d.wires[w]
    name = d.sig.name_of(1, f)
    return name if n == 0 else f"{name}^{n}"


def _node_label(d: Diagram, n: int) -> str:
    lab = d.nodes[n].label
    if lab.kind == "gen":
        return d.sig.name_of(2, lab.gen)
    if lab.kind == "hole":
        return f"?{lab.hole}"
    return f"{lab.kind}_{d.sig.name_of(1, lab.gen)}^{lab.winding}"


def render_dot(d: Diagram, name: str = "diagram") -> str:
    """Graphviz DOT text; boundary ports are ``in0..`` and ``out0..`` in order."""
    prod, cons = d.ports()
    lines = [f"digraph {name} {{", "  rankdir=TB;", "  node [shape=box];"]
    lines.append("  subgraph src { rank=source; " + " ".join(f"in{i} [shape=point];" for i in range(len(d.source))) + " }")
    for n in sorted(d.nodes):
        lines.append(f'  n{n} [label="{_node_label(d, n)}"];')
    lines.append("  subgraph tgt { rank=sink; " + " ".join(f"out{i} [shape=point];" for i in range(len(d.target))) + " }")

    for w in sorted(d.wires):
        u, i = prod[w]
        v, j = cons[w]
        a = f"in{i}" if u < 0 else f"n{u}"
        b = f"out{j}" if v < 0 else f"n{v}"
        lines.append(f'  {a} -> {b} [label="{_wire_label(d, w)}", taillabel="{i}", headlabel="{j}"];')
    for seq_name, ws in (("in", d.source), ("out", d.target)):
        if len(ws) > 1:
            chain = " -> ".join(f"{seq_name}{i}" for i in range(len(ws)))
            lines.append(f"  {chain} [style=invis];")
    lines.append("}")
    return "\n".join(lines) + "\n"


TIKZ_PREAMBLE = r"""\usepackage{tikz}
\tikzset{gen/.style={draw, rounded corners, fill=white, inner sep=2pt, font=\small}}"""


def render_tikz(d: Diagram) -> str:
    """A TikZ picture, one layer per row; needs :data:`TIKZ_PREAMBLE`.

    Wires carry their 1-generator name, with the winding as a superscript.
    """
    layers = decompose(d) if d.nodes else []
    frontier = list(d.source)
    y = 0.0
    out = [r"\begin{tikzpicture}[yscale=-1]"]
    coords: dict = {w: (float(i), 0.0) for i, w in enumerate(frontier)}
    for k, layer in enumerate(layers):
        y = float(k + 1)
        node = d.nodes[layer.node]
        a = len(layer.left)
        width = max(len(node.inputs), len(node.outputs), 1)
        x = a + (width - 1) / 2
        out.append(f"  \\node[gen] (n{layer.node}) at ({x:.2f},{y:.2f}) {{${_tex(_node_label(d, layer.node))}$}};")
        for w in node.inputs:
            x0, y0 = coords[w]
            out.append(f"  \\draw ({x0:.2f},{y0:.2f}) -- node[left,font=\\tiny] {{${_tex(_wire_label(d, w))}$}} (n{layer.node});")
        k_in = len(node.inputs)
        new = list(node.outputs)
        frontier[a:a + k_in] = new
        for i, w in enumerate(frontier):
            if w in new:
                coords[w] = (float(a + new.index(w)), y)
            elif w not in coords:
                coords[w] = (float(i), y)
    y_end = y + 1.0
    for i, w in enumerate(d.target):
        x0, y0 = coords.get(w, (float(i), 0.0))
        out.append(f"  \\draw ({x0:.2f},{y0:.2f}) -- node[left,font=\\tiny] {{${_tex(_wire_label(d, w))}$}} ({float(i):.2f},{y_end:.2f});")
    out.append(r"\end{tikzpicture}")
    return "\n".join(out) + "\n"


def _tex(s: str) -> str:
    s = s.replace("_", r"\_")
    return re.sub(r"\^(-?\d+)", r"^{\1}", s)


# -- JSON --------------------------------------------------------------------


def diagram_to_json(d: Diagram) -> dict:
    sig = d.sig
    d = d.renumbered()
    nodes = []
    for n in sorted(d.nodes):
        node = d.nodes[n]
        lab = node.label
        entry = {"id": n, "kind": lab.kind, "inputs": list(node.inputs), "outputs": list(node.outputs)}
        if lab.kind == "gen":
            entry["generator"] = sig.name_of(2, lab.gen)
        elif lab.kind == "hole":
            entry["hole"] = lab.hole
        else:
            entry["wire"] = sig.name_of(1, lab.gen)
            entry["winding"] = lab.winding
        nodes.append(entry)
    return {
        "wires": [{"id": w, "generator": sig.name_of(1, f), "winding": k} for w, (f, k) in sorted(d.wires.items())],
        "nodes": nodes,
        "source": list(d.source),
        "target": list(d.target),
        "start": sig.name_of(0, d.start),
        "end": sig.name_of(0, d.end),
    }


def context_to_json(K) -> dict:
    sig = K.body.sig
    return {
        "body": diagram_to_json(K.body),
        "holes": [
            {"name": h, "source": format_path(t.src, sig), "target": format_path(t.tgt, sig)} for h, t in K.holes
        ],
    }


def cp_to_json(cp) -> dict:
    sig = cp.overlap.sig
    return {
        "rules": [cp.r1.name, cp.r2.name],
        "regular": cp.regular,
        "holes": [
            {"name": h, "source": format_path(t.src, sig), "target": format_path(t.tgt, sig)} for h, t in cp.holes
        ],
        "boundary": [_wire_label(cp.overlap, w) for w in cp.overlap.target],
        "overlap": diagram_to_json(cp.overlap),
        "K1": context_to_json(cp.K1),
        "K2": context_to_json(cp.K2),
    }


def to_json(obj) -> str:
    """Stable JSON text (sorted keys) with the format version."""
    if isinstance(obj, dict):
        obj = {"format": FORMAT_VERSION, **obj}
    return json.dumps(obj, sort_keys=True, indent=2)


__all__ = [
    "FORMAT_VERSION",
    "parse",
    "parse_cell",
    "parse_context",
    "dump",
    "format_diagram",
    "render_dot",
    "render_tikz",
    "TIKZ_PREAMBLE",
    "diagram_to_json",
    "context_to_json",
    "cp_to_json",
    "to_json",
]
