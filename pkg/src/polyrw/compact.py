"""The free compact 2-category on the 2-skeleton of a polygraph.

Every 1-generator ``f`` gets formal adjoints ``f^n`` (``n`` the winding
number), with units ``eta_{f^n} : id => f^{n-1} f^n`` and counits
``eps_{f^n} : f^n f^{n-1} => id``. The zig-zag laws are oriented into the
convergent rewriting system F, whose normal forms are computed by
:func:`zigzag_normalize`. Rotations move boundary wires between source and
target by composing with units and counits.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .diagram import (
    BOUNDARY,
    Diagram,
    Eps,
    Eta,
    Node,
    hcompose,
    identity,
    single_node,
    source2,
    target2,
    vcompose,
    whisker,
)
from .errors import EmptyBoundary, LabelMismatch, UnknownGenerator
from .path import Path, letter_endpoints, path_of
from .signature import Polygraph


@dataclass(frozen=True)
class ZigzagRule:
    """``L`` removes ``(f^{n-1} * eps_{f^n}) . (eta_{f^n} * f^{n-1})`` in function order,
    ``R`` removes ``(eps_{f^n} * f^n) . (f^n * eta_{f^n})``."""

    kind: str
    f: int
    n: int


def embed(d: Diagram) -> Diagram:
    """The image of a plain diagram in the free compact 2-category.

    The representation is shared: a plain diagram already is a compact diagram
    whose windings are all zero.
    """
    return Diagram(d.sig, dict(d.wires), dict(d.nodes), d.source, d.target, d.start, d.end)


def eta(sig: Polygraph, f, n: int) -> Diagram:
    """``eta_{f^n} : id_B => f^{n-1} f^n`` where ``f^n`` ends at ``B``."""
    f = _gen1(sig, f)
    _, b = letter_endpoints(sig, f, n)
    return single_node(sig, Eta(f, n), (), ((f, n - 1), (f, n)), b, b)


def eps(sig: Polygraph, f, n: int) -> Diagram:
    """``eps_{f^n} : f^n f^{n-1} => id_A`` where ``f^n`` starts at ``A``."""
    f = _gen1(sig, f)
    a, _ = letter_endpoints(sig, f, n)
    return single_node(sig, Eps(f, n), ((f, n), (f, n - 1)), (), a, a)


def _gen1(sig: Polygraph, f) -> int:
    if isinstance(f, str):
        return sig.index(1, f)
    if f not in sig.src1:
        raise UnknownGenerator(f"unknown 1-generator {f!r}")
    return f


# -- zig-zag normalization ---------------------------------------------------


def zigzag_redexes(d: Diagram, protect=frozenset()) -> list[tuple[str, int, int]]:
    """All ``(kind, eta node, eps node)`` redexes of the zig-zag system F."""
    prod, cons = d.ports()
    out = []
    for e, node in d.nodes.items():
        if node.label.kind != "eta" or e in protect:
            continue
        f, n = node.label.gen, node.label.winding
        for kind, w, port in (("L", node.outputs[1], 0), ("R", node.outputs[0], 1)):
            c, j = cons[w]
            if c == BOUNDARY or c in protect or j != port:
                continue
            lab = d.nodes[c].label
            if lab.kind == "eps" and lab.gen == f and lab.winding == n:
                out.append((kind, e, c))
    return out


def _contract(wires: dict, nodes: dict, target: list, cons: dict, kind: str, e: int, p: int) -> None:
    """Apply one zig-zag redex in place on the mutable parts of a diagram."""
    E, P = nodes[e], nodes[p]
    if kind == "L":
        inner, b, a = E.outputs[1], E.outputs[0], P.inputs[1]
    else:
        inner, b, a = E.outputs[0], E.outputs[1], P.inputs[0]
    c, j = cons[b]
    if c == BOUNDARY:
        target[j] = a
    else:
        node = nodes[c]
        ins = list(node.inputs)
        ins[j] = a
        nodes[c] = Node(node.label, tuple(ins), node.outputs)
    cons[a] = (c, j)
    del nodes[e], nodes[p]
    del wires[inner], wires[b]
    cons.pop(inner, None)
    cons.pop(b, None)


def zigzag_normalize(
    d: Diagram,
    strategy: str = "leftmost",
    rng: random.Random | None = None,
    protect=frozenset(),
) -> Diagram:
    """Normal form of ``d`` for the zig-zag system F.

    Args:
        strategy: which redex to contract first: ``"leftmost"`` (lowest unit
            id), ``"rightmost"`` or ``"random"``.
        rng: random source for the ``"random"`` strategy.
        protect: node ids that must not take part in a redex.
    """
    wires = dict(d.wires)
    nodes = dict(d.nodes)
    target = list(d.target)
    cur = d
    if rng is None:
        rng = random.Random(0)
    while True:
        redexes = zigzag_redexes(cur, protect)
        if not redexes:
            return cur
        if strategy == "leftmost":
            kind, e, p = min(redexes, key=lambda r: (r[1], r[2]))
        elif strategy == "rightmost":
            kind, e, p = max(redexes, key=lambda r: (r[1], r[2]))
        else:
            kind, e, p = rng.choice(sorted(redexes))
        cons = dict(cur.ports()[1])
        _contract(wires, nodes, target, cons, kind, e, p)
        cur = Diagram(d.sig, dict(wires), dict(nodes), d.source, tuple(target), d.start, d.end)


def has_units(d: Diagram) -> bool:
    return any(n.label.is_unit for n in d.nodes.values())


def is_regular(d: Diagram) -> bool:
    """Boundary windings all zero and no unit or counit left after normalization."""
    if any(d.wires[w][1] != 0 for w in d.source + d.target):
        return False
    return not has_units(zigzag_normalize(d))


# -- rotations ---------------------------------------------------------------


def _rest(d: Diagram, wires, start: int) -> Path:
    return path_of(d.sig, d.labels(wires), start=start)


def rotate_left(d: Diagram, normalize: bool = True) -> Diagram:
    """Move the first source wire to the front of the target, with winding -1.

    Built as ``(f^{-1} * d) . (eta_f * g)`` in diagrammatic order.
    """
    if not d.source:
        raise EmptyBoundary("rotate_left needs a non-empty source")
    f, n = d.wires[d.source[0]]
    e = eta(d.sig, f, n)
    rest = _rest(d, d.source[1:], e.end)
    top = hcompose(e, identity(d.sig, rest))
    bottom = hcompose(identity(d.sig, path_of(d.sig, [(f, n - 1)])), d)
    out = vcompose(top, bottom)
    return zigzag_normalize(out) if normalize else out


def rotate_right(d: Diagram, normalize: bool = True) -> Diagram:
    """Move the first target wire to the front of the source, with winding +1.

    Built as ``(x^{+1} * d) . (eps_{x^{+1}} * h)``; inverse of :func:`rotate_left`.
    """
    if not d.target:
        raise EmptyBoundary("rotate_right needs a non-empty target")
    f, m = d.wires[d.target[0]]
    top = hcompose(identity(d.sig, path_of(d.sig, [(f, m + 1)])), d)
    c = eps(d.sig, f, m + 1)
    rest = _rest(d, d.target[1:], c.end)
    out = vcompose(top, hcompose(c, identity(d.sig, rest)))
    return zigzag_normalize(out) if normalize else out


def rotate_down_last(d: Diagram, normalize: bool = True) -> Diagram:
    """Move the last source wire to the end of the target, with winding +1."""
    if not d.source:
        raise EmptyBoundary("rotate_down_last needs a non-empty source")
    f, n = d.wires[d.source[-1]]
    e = eta(d.sig, f, n + 1)
    rest = path_of(d.sig, d.labels(d.source[:-1]), start=d.start)
    top = hcompose(identity(d.sig, rest), e)
    bottom = hcompose(d, identity(d.sig, path_of(d.sig, [(f, n + 1)])))
    out = vcompose(top, bottom)
    return zigzag_normalize(out) if normalize else out


def rotate_up_last(d: Diagram, normalize: bool = True) -> Diagram:
    """Move the last target wire to the end of the source, with winding -1."""
    if not d.target:
        raise EmptyBoundary("rotate_up_last needs a non-empty target")
    f, m = d.wires[d.target[-1]]
    top = hcompose(d, identity(d.sig, path_of(d.sig, [(f, m - 1)])))
    c = eps(d.sig, f, m)
    rest = path_of(d.sig, d.labels(d.target[:-1]), start=d.start)
    out = vcompose(top, hcompose(identity(d.sig, rest), c))
    return zigzag_normalize(out) if normalize else out


def closed_form(d: Diagram, normalize: bool = True) -> Diagram:
    """Rotate every source wire into the target: ``id => adjoint(src, -1) tgt``."""
    out = d
    while out.source:
        out = rotate_left(out, normalize=False)
    return zigzag_normalize(out) if normalize else out


def cyclic_shift(d: Diagram, steps: int, normalize: bool = True) -> Diagram:
    """Rotate a source-free diagram: each positive step moves the first target
    wire to the end with winding +2, each negative step the last wire to the
    front with winding -2."""
    if d.source:
        raise ValueError("cyclic_shift expects a diagram with empty source")
    out = d
    for _ in range(abs(steps)):
        if steps > 0:
            out = rotate_down_last(rotate_right(out, False), False)
        else:
            out = rotate_left(rotate_up_last(out, False), False)
    return zigzag_normalize(out) if normalize else out


def regular_split(windings: list[int]) -> tuple[int, int] | None:
    """For a closed boundary, ``(shift, k)`` such that shifting by ``shift``
    gives ``k`` wires of winding -1 followed by wires of winding 0, if any."""
    L = len(windings)
    if L == 0:
        return 0, 0
    for s in range(L):
        # after moving the first s wires to the end (each +2)
        ws = windings[s:] + [w + 2 for w in windings[:s]]
        for extra in range(-2, 3):
            vs = [w + 2 * extra for w in ws]
            k = sum(1 for v in vs if v == -1)
            if vs == [-1] * k + [0] * (L - k):
                return s + extra * L, k
    return None


def open_form(d: Diagram, normalize: bool = True) -> Diagram | None:
    """Turn a source-free diagram with a regularizable boundary back into a
    diagram with winding-0 source and target, or ``None``."""
    split = regular_split([d.wires[w][1] for w in d.target])
    if split is None:
        return None
    shift, k = split
    out = cyclic_shift(d, shift, normalize=False)
    for _ in range(k):
        out = rotate_right(out, normalize=False)
    return zigzag_normalize(out) if normalize else out


def partial_compose(d1: Diagram, d2: Diagram, i: int, j: int) -> Diagram:
    """Glue target wire ``i`` of ``d1`` to source wire ``j`` of ``d2``.

    With ``d1 : f => f1 g f2`` and ``d2 : h1 g h2 => h`` the result has type
    ``f => f1 h1^{-1} h h2^{+1} f2``.
    """
    if d1.labels([d1.target[i]]) != d2.labels([d2.source[j]]):
        raise LabelMismatch("glued wires carry different labels")
    d2r = d2
    for _ in range(j):
        d2r = rotate_left(d2r, normalize=False)
    for _ in range(len(d2.source) - j - 1):
        d2r = rotate_down_last(d2r, normalize=False)
    left = path_of(d1.sig, d1.labels(d1.target[:i]), start=d1.start)
    right = path_of(d1.sig, d1.labels(d1.target[i + 1:]), start=d2r.end)
    out = vcompose(d1, whisker(d2r, left, right))
    return zigzag_normalize(out)


__all__ = [
    "ZigzagRule",
    "embed",
    "eta",
    "eps",
    "zigzag_redexes",
    "zigzag_normalize",
    "has_units",
    "is_regular",
    "rotate_left",
    "rotate_right",
    "rotate_down_last",
    "rotate_up_last",
    "closed_form",
    "cyclic_shift",
    "regular_split",
    "open_form",
    "partial_compose",
    "source2",
    "target2",
]
