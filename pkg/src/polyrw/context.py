"""Contexts: diagrams with typed holes, forming a multicategory.

A context is a diagram in which some nodes are holes. Each hole has a type,
a pair of parallel paths, and occurs exactly once. Substituting a context into
a hole splices its body in place of the hole node. Unary contexts describe
where a rule applies; contexts with several holes appear in critical pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .diagram import (
    BOUNDARY,
    Diagram,
    Eps,
    Eta,
    Hole,
    Node,
    canonical_key,
    connected_components,
    decompose,
    fresh_ids,
    is_iso,
    single_node,
    source2,
    target2,
)
from .errors import IllFormed, LabelMismatch, NoSuchHole, TypeMismatch
from .path import Path, letter_endpoints, path_of


@dataclass(frozen=True)
class HoleType:
    src: Path
    tgt: Path


@dataclass
class Context:
    """A diagram whose hole nodes are listed, in order, in ``holes``."""

    body: Diagram
    holes: list[tuple[str, HoleType]] = field(default_factory=list)

    @property
    def arity(self) -> int:
        return len(self.holes)

    def hole_type(self, h: str) -> HoleType:
        for name, ty in self.holes:
            if name == h:
                return ty
        raise NoSuchHole(f"no hole named {h!r}")

    def hole_node(self, h: str) -> int:
        for n, node in self.body.nodes.items():
            if node.label.kind == "hole" and node.label.hole == h:
                return n
        raise NoSuchHole(f"no hole named {h!r}")

    def hole_names(self) -> list[str]:
        return [h for h, _ in self.holes]


def promote(d: Diagram) -> Context:
    """A hole-free diagram seen as a nullary context."""
    return Context(d, [])


def hole_context(sig, src: Path, tgt: Path, h: str = "X") -> Context:
    """The identity context: a single hole of type ``src => tgt``."""
    d = single_node(sig, Hole(h), src.letters, tgt.letters, src.start, src.end)
    return Context(d, [(h, HoleType(src, tgt))])


def _fresh_hole_name(taken: set[str], base: str = "H") -> str:
    k = 0
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"


def _rename_holes(L: Context, taken: set[str]) -> Context:
    renaming = {}
    used = set(taken)
    for h, _ in L.holes:
        if h in used:
            new = _fresh_hole_name(used | set(renaming.values()))
            renaming[h] = new
            used.add(new)
        else:
            used.add(h)
    if not renaming:
        return L
    nodes = {}
    for n, node in L.body.nodes.items():
        lab = node.label
        if lab.kind == "hole" and lab.hole in renaming:
            node = Node(Hole(renaming[lab.hole]), node.inputs, node.outputs)
        nodes[n] = node
    body = Diagram(L.body.sig, L.body.wires, nodes, L.body.source, L.body.target, L.body.start, L.body.end)
    return Context(body, [(renaming.get(h, h), ty) for h, ty in L.holes])


def substitute(K: Context, h: str, L: Context | Diagram) -> Context:
    """Splice ``L`` into the hole ``h`` of ``K``.

    The holes of ``L`` take the place of ``h`` in the hole list; clashing hole
    names in ``L`` are renamed.
    """
    if isinstance(L, Diagram):
        L = promote(L)
    ty = K.hole_type(h)
    hn = K.hole_node(h)
    if source2(L.body) != ty.src or target2(L.body) != ty.tgt:
        raise TypeMismatch(f"filler does not have the type of hole {h!r}")
    rest = [name for name, _ in K.holes if name != h]
    L = _rename_holes(L, set(rest))
    kb = K.body
    hole = kb.nodes[hn]
    wo, no = fresh_ids(kb)
    lb = L.body.shifted(wo, no)

    # union-find on wire ids; K's wires win as representatives
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    def union(k_wire: int, l_wire: int) -> None:
        a, b = find(k_wire), find(l_wire)
        if a == b:
            return
        if a >= wo:
            a, b = b, a
        parent[b] = a

    for kw, lw in zip(hole.inputs, lb.source):
        union(kw, lw)
    for kw, lw in zip(hole.outputs, lb.target):
        union(kw, lw)

    wires = {}
    for w, lab in list(kb.wires.items()) + list(lb.wires.items()):
        wires.setdefault(find(w), lab)
    nodes = {}
    for n, node in kb.nodes.items():
        if n != hn:
            nodes[n] = Node(node.label, tuple(find(w) for w in node.inputs), tuple(find(w) for w in node.outputs))
    for n, node in lb.nodes.items():
        nodes[n] = Node(node.label, tuple(find(w) for w in node.inputs), tuple(find(w) for w in node.outputs))
    body = Diagram(
        kb.sig,
        wires,
        nodes,
        tuple(find(w) for w in kb.source),
        tuple(find(w) for w in kb.target),
        kb.start,
        kb.end,
    )
    idx = [name for name, _ in K.holes].index(h)
    holes = K.holes[:idx] + list(L.holes) + K.holes[idx + 1:]
    return Context(body, holes)


def fill(K: Context, fillers: dict) -> Context:
    """Substitute several holes at once (``fillers`` maps hole name to filler)."""
    out = K
    for h, L in fillers.items():
        out = substitute(out, h, L)
    return out


def context_key(K: Context):
    """Key identifying a context up to iso and renaming of holes."""
    return canonical_key(K.body, ignore_holes=True)


# -- matching ----------------------------------------------------------------


def _has_identity_wires(d: Diagram) -> bool:
    return bool(set(d.source) & set(d.target))


def _component_embeddings(pattern: Diagram, comp: list[int], host: Diagram) -> list[dict]:
    pprod, pcons = pattern.ports()
    hprod, hcons = host.ports()
    root = comp[0]
    out = []
    for anchor in sorted(host.nodes):
        if host.nodes[anchor].label != pattern.nodes[root].label:
            continue
        phi = {root: anchor}
        used = {anchor}
        todo = [root]
        ok = True
        while todo and ok:
            u = todo.pop()
            x = phi[u]
            un, xn = pattern.nodes[u], host.nodes[x]
            links = []
            for i, w in enumerate(un.outputs):
                v, j = pcons[w]
                if v != BOUNDARY:
                    links.append((v, j, hcons[xn.outputs[i]]))
            for i, w in enumerate(un.inputs):
                v, j = pprod[w]
                if v != BOUNDARY:
                    links.append((v, j, hprod[xn.inputs[i]]))
            for v, j, (y, jj) in links:
                if y == BOUNDARY or jj != j or host.nodes[y].label != pattern.nodes[v].label:
                    ok = False
                    break
                if v in phi:
                    if phi[v] != y:
                        ok = False
                        break
                    continue
                if y in used:
                    ok = False
                    break
                phi[v] = y
                used.add(y)
                todo.append(v)
        if ok and len(phi) == len(comp):
            out.append(phi)
    return out


def embeddings(pattern: Diagram, host: Diagram) -> list[dict]:
    """All injective, label- and port-preserving node maps of ``pattern`` into ``host``."""
    comps = connected_components(pattern)
    per = [_component_embeddings(pattern, comp, host) for comp in comps]
    out = []
    for combo in product(*per):
        phi: dict[int, int] = {}
        for part in combo:
            phi.update(part)
        if len(set(phi.values())) == len(phi):
            out.append(phi)
    return out


def carve(pattern: Diagram, host: Diagram, phi: dict, h: str = "X") -> Context | None:
    """Replace the image of ``pattern`` under ``phi`` by a hole, if the result
    is a well-formed unary context."""
    pprod, pcons = pattern.ports()
    ins = []
    for w in pattern.source:
        v, j = pcons[w]
        ins.append(host.nodes[phi[v]].inputs[j])
    outs = []
    for w in pattern.target:
        u, i = pprod[w]
        outs.append(host.nodes[phi[u]].outputs[i])
    if set(ins) & set(outs):
        return None
    inner = set()
    for w in pattern.wires:
        u, i = pprod[w]
        v, j = pcons[w]
        if u != BOUNDARY and v != BOUNDARY:
            inner.add(host.nodes[phi[u]].outputs[i])
    image = set(phi.values())
    wires = {w: lab for w, lab in host.wires.items() if w not in inner}
    nodes = {n: node for n, node in host.nodes.items() if n not in image}
    _, hn = fresh_ids(host)
    nodes[hn] = Node(Hole(h), tuple(ins), tuple(outs))
    body = Diagram(host.sig, wires, nodes, host.source, host.target, host.start, host.end)
    compact = any(n.label.kind != "gen" for n in host.nodes.values())
    if not compact or len(connected_components(pattern)) > 1:
        try:
            decompose(body)
        except IllFormed:
            return None
    return Context(body, [(h, HoleType(source2(pattern), target2(pattern)))])


def match(pattern: Diagram, host: Diagram, verify: bool = True) -> list[Context]:
    """All unary contexts ``K`` with ``K(pattern) ≅ host``.

    An occurrence is an embedding of the pattern's nodes whose complement,
    with the pattern replaced by a hole, is again a well-formed diagram. Results
    are ordered by the sorted host node ids of the occurrence.
    """
    if not pattern.nodes:
        raise ValueError("cannot match a pattern without nodes")
    if _has_identity_wires(pattern):
        raise ValueError("cannot match a pattern with wires from source to target")
    found = []
    for phi in embeddings(pattern, host):
        K = carve(pattern, host, phi)
        if K is None:
            continue
        if verify and not is_iso(substitute(K, "X", pattern).body, host):
            continue
        found.append((tuple(sorted(phi.values())), tuple(sorted(phi.items())), K))
    found.sort(key=lambda t: (t[0], t[1]))
    return [K for _, _, K in found]


def match_with_maps(pattern: Diagram, host: Diagram) -> list[tuple[dict, Context]]:
    """Like :func:`match` but also return the node map of every occurrence."""
    out = []
    for phi in embeddings(pattern, host):
        K = carve(pattern, host, phi)
        if K is not None:
            out.append((phi, K))
    out.sort(key=lambda t: (tuple(sorted(t[0].values())), tuple(sorted(t[0].items()))))
    return out


# -- merging -----------------------------------------------------------------


def merge(K: Context, i: int, j: int, side: str = "target", h: str | None = None) -> Context:
    """Connect boundary wires ``i < j`` of ``K`` around a fresh hole.

    On the target side, wire ``i`` must be ``g^{n+1}`` and wire ``j`` be ``g^n``;
    they are capped by ``eps_{g^{n+1}}`` and the wires strictly between them
    feed a new hole of type ``arc => id``. On the source side, wire ``i`` must
    be ``g^n`` and wire ``j`` be ``g^{n+1}``; they come from ``eta_{g^{n+1}}``
    and the new hole has type ``id => arc``.
    """
    if not i < j:
        raise ValueError("merge expects i < j")
    d = K.body
    bnd = d.target if side == "target" else d.source
    (f1, n1), (f2, n2) = d.wires[bnd[i]], d.wires[bnd[j]]
    if side == "target":
        if f1 != f2 or n1 != n2 + 1:
            raise LabelMismatch("merged target wires must be g^{n+1} then g^n")
    elif f1 != f2 or n2 != n1 + 1:
        raise LabelMismatch("merged source wires must be g^n then g^{n+1}")
    if h is None:
        h = _fresh_hole_name(set(K.hole_names()))
    arc = bnd[i + 1:j]
    arc_start = letter_endpoints(d.sig, *d.wires[bnd[i]])[1]
    arc_path = path_of(d.sig, d.labels(arc), start=arc_start)
    wo, no = fresh_ids(d)
    nodes = dict(d.nodes)
    if side == "target":
        nodes[no] = Node(Hole(h), tuple(arc), ())
        nodes[no + 1] = Node(Eps(f1, n1), (bnd[i], bnd[j]), ())
        ty = HoleType(arc_path, Path(arc_start, arc_start, ()))
        body = Diagram(d.sig, dict(d.wires), nodes, d.source, d.target[:i] + d.target[j + 1:], d.start, d.end)
    else:
        nodes[no] = Node(Hole(h), (), tuple(arc))
        nodes[no + 1] = Node(Eta(f2, n2), (), (bnd[i], bnd[j]))
        ty = HoleType(Path(arc_start, arc_start, ()), arc_path)
        body = Diagram(d.sig, dict(d.wires), nodes, d.source[:i] + d.source[j + 1:], d.target, d.start, d.end)
    return Context(body, K.holes + [(h, ty)])
