"""2-cells of free (compact) 2-categories as labeled port graphs.

A diagram has wires, each labeled by a 1-generator and a winding number, and
nodes, each with an ordered list of input wires and output wires. The ordered
``source`` and ``target`` lists give the boundary. Every wire has exactly one
producer (a node output or a source position) and one consumer (a node input
or a target position).

Diagrams are treated as values: every operation returns a fresh diagram and
never mutates its arguments. Internal ids carry no meaning, equality is
:func:`iso`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import BoundaryMismatch, EndpointMismatch, IllFormed, PolygraphError, UnknownGenerator
from .path import Path, letter_endpoints, path_of
from .signature import Polygraph

BOUNDARY = -1


@dataclass(frozen=True, order=True)
class Label:
    """Node label: a 2-generator, a unit, a counit or a hole.

    ``kind`` is one of ``"gen"``, ``"eta"``, ``"eps"``, ``"hole"``. ``gen`` is
    a 2-generator index for ``"gen"`` and a 1-generator index for units and
    counits, where ``winding`` is the ``n`` of ``eta_{f^n}`` / ``eps_{f^n}``.
    """

    kind: str
    gen: int = -1
    winding: int = 0
    hole: str = ""

    @property
    def is_unit(self) -> bool:
        return self.kind in ("eta", "eps")


def Gen(alpha: int) -> Label:
    return Label("gen", alpha)


def Eta(f: int, n: int) -> Label:
    return Label("eta", f, n)


def Eps(f: int, n: int) -> Label:
    return Label("eps", f, n)


def Hole(h: str) -> Label:
    return Label("hole", hole=h)


@dataclass(frozen=True)
class Node:
    label: Label
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]


class Layer(NamedTuple):
    left: Path
    node: int
    right: Path


class IsoWitness(NamedTuple):
    wires: dict
    nodes: dict


class Diagram:
    """A labeled port graph with ordered boundaries.

    Args:
        sig: the polygraph providing 1- and 2-generators.
        wires: wire id -> ``(1-generator, winding)``.
        nodes: node id -> :class:`Node`.
        source, target: ordered boundary wire ids.
        start, end: the 0-generators bounding the diagram horizontally.
    """

    __slots__ = ("sig", "wires", "nodes", "source", "target", "start", "end", "_ports")

    def __init__(self, sig: Polygraph, wires: dict, nodes: dict, source, target, start: int, end: int):
        self.sig = sig
        self.wires = wires
        self.nodes = nodes
        self.source = tuple(source)
        self.target = tuple(target)
        self.start = start
        self.end = end
        self._ports = None

    def __repr__(self) -> str:
        from .io import format_diagram

        try:
            return f"Diagram({format_diagram(self)})"
        except PolygraphError:
            return f"Diagram(<{len(self.nodes)} nodes, {len(self.wires)} wires>)"

    def ports(self) -> tuple[dict, dict]:
        """``(producer, consumer)`` maps: wire -> ``(node id, port)``.

        Boundary positions use node id ``BOUNDARY``.
        """
        if self._ports is None:
            prod: dict[int, tuple[int, int]] = {}
            cons: dict[int, tuple[int, int]] = {}
            for i, w in enumerate(self.source):
                prod[w] = (BOUNDARY, i)
            for i, w in enumerate(self.target):
                cons[w] = (BOUNDARY, i)
            for n, node in self.nodes.items():
                for i, w in enumerate(node.outputs):
                    prod[w] = (n, i)
                for i, w in enumerate(node.inputs):
                    cons[w] = (n, i)
            self._ports = (prod, cons)
        return self._ports

    def rebind(self, sig: Polygraph) -> Diagram:
        return Diagram(sig, self.wires, self.nodes, self.source, self.target, self.start, self.end)

    def labels(self, wires: Iterable[int]) -> tuple[tuple[int, int], ...]:
        return tuple(self.wires[w] for w in wires)

    @property
    def is_plain(self) -> bool:
        """No units, counits or holes, and all windings zero."""
        return all(n.label.kind == "gen" for n in self.nodes.values()) and all(
            k == 0 for _, k in self.wires.values()
        )

    @property
    def holes(self) -> list[int]:
        return [n for n, node in self.nodes.items() if node.label.kind == "hole"]

    def renumbered(self) -> Diagram:
        """Same diagram with ids 0..k in canonical order."""
        _, worder, norder = _canonical(self)
        wmap = {w: i for i, w in enumerate(worder)}
        nmap = {n: i for i, n in enumerate(norder)}
        return self.relabeled(wmap, nmap)

    def relabeled(self, wmap: dict, nmap: dict) -> Diagram:
        return Diagram(
            self.sig,
            {wmap[w]: lab for w, lab in self.wires.items()},
            {
                nmap[n]: Node(node.label, tuple(wmap[w] for w in node.inputs), tuple(wmap[w] for w in node.outputs))
                for n, node in self.nodes.items()
            },
            tuple(wmap[w] for w in self.source),
            tuple(wmap[w] for w in self.target),
            self.start,
            self.end,
        )

    def shifted(self, wo: int, no: int) -> Diagram:
        return self.relabeled({w: w + wo for w in self.wires}, {n: n + no for n in self.nodes})


def fresh_ids(d: Diagram) -> tuple[int, int]:
    """Smallest wire id and node id greater than every id used in ``d``."""
    return max(d.wires, default=-1) + 1, max(d.nodes, default=-1) + 1


# -- construction ------------------------------------------------------------


def single_node(sig: Polygraph, label: Label, ins, outs, start: int, end: int) -> Diagram:
    """A diagram with one node whose ports carry the given wire labels."""
    wires = {}
    for i, lab in enumerate(list(ins) + list(outs)):
        wires[i] = tuple(lab)
    k = len(ins)
    inputs = tuple(range(k))
    outputs = tuple(range(k, k + len(outs)))
    return Diagram(sig, wires, {0: Node(label, inputs, outputs)}, inputs, outputs, start, end)


def of_generator(sig: Polygraph, alpha) -> Diagram:
    """The diagram with a single node labeled by the 2-generator ``alpha``."""
    if isinstance(alpha, str):
        alpha = sig.index(2, alpha)
    if hasattr(alpha, "index"):
        alpha = alpha.index
    if alpha not in sig.src2:
        raise UnknownGenerator(f"unknown 2-generator {alpha!r}")
    s, t = sig.src2[alpha], sig.tgt2[alpha]
    return single_node(sig, Gen(alpha), s.letters, t.letters, s.start, s.end)


def identity(sig: Polygraph, q: Path) -> Diagram:
    """The node-free diagram on the path ``q``."""
    ws = tuple(range(len(q.letters)))
    return Diagram(sig, {i: lab for i, lab in enumerate(q.letters)}, {}, ws, ws, q.start, q.end)


def vcompose(d1: Diagram, d2: Diagram) -> Diagram:
    """``d1`` followed by ``d2`` (``d2 o d1`` in function order)."""
    if d1.sig is not d2.sig:
        raise BoundaryMismatch("diagrams over different polygraphs")
    if (
        d1.labels(d1.target) != d2.labels(d2.source)
        or d1.start != d2.start
        or d1.end != d2.end
    ):
        raise BoundaryMismatch("target of the first diagram differs from source of the second")
    wo, no = fresh_ids(d1)
    remap = {w: w + wo for w in d2.wires}
    for i, w in enumerate(d2.source):
        remap[w] = d1.target[i]
    srcset = set(d2.source)
    wires = dict(d1.wires)
    for w, lab in d2.wires.items():
        if w not in srcset:
            wires[w + wo] = lab
    nodes = dict(d1.nodes)
    for n, node in d2.nodes.items():
        nodes[n + no] = Node(
            node.label, tuple(remap[w] for w in node.inputs), tuple(remap[w] for w in node.outputs)
        )
    return Diagram(d1.sig, wires, nodes, d1.source, tuple(remap[w] for w in d2.target), d1.start, d1.end)


def hcompose(d1: Diagram, d2: Diagram) -> Diagram:
    """``d1`` placed to the left of ``d2``."""
    if d1.sig is not d2.sig:
        raise EndpointMismatch("diagrams over different polygraphs")
    if d1.end != d2.start:
        raise EndpointMismatch("the first diagram does not end where the second starts")
    wo, no = fresh_ids(d1)
    e = d2.shifted(wo, no)
    wires = dict(d1.wires)
    wires.update(e.wires)
    nodes = dict(d1.nodes)
    nodes.update(e.nodes)
    return Diagram(d1.sig, wires, nodes, d1.source + e.source, d1.target + e.target, d1.start, e.end)


def tensor(*ds: Diagram) -> Diagram:
    out = ds[0]
    for d in ds[1:]:
        out = hcompose(out, d)
    return out


def seq(*ds: Diagram) -> Diagram:
    out = ds[0]
    for d in ds[1:]:
        out = vcompose(out, d)
    return out


def whisker(d: Diagram, left: Path, right: Path) -> Diagram:
    """``id(left) * d * id(right)``."""
    return tensor(identity(d.sig, left), d, identity(d.sig, right))


# -- boundaries, size --------------------------------------------------------


def source2(d: Diagram) -> Path:
    return path_of(d.sig, d.labels(d.source), start=d.start)


def target2(d: Diagram) -> Path:
    return path_of(d.sig, d.labels(d.target), start=d.start)


def size(d: Diagram, count_units: bool = False) -> int:
    """Number of 2-generator nodes, optionally counting units and counits."""
    kinds = ("gen", "eta", "eps") if count_units else ("gen",)
    return sum(1 for n in d.nodes.values() if n.label.kind in kinds)


def weight(d: Diagram, alpha: int) -> int:
    return sum(1 for n in d.nodes.values() if n.label == Gen(alpha))


# -- well-formedness ---------------------------------------------------------


def node_type(sig: Polygraph, label: Label):
    """Expected ``(input labels, output labels)`` of a non-hole node."""
    if label.kind == "gen":
        if label.gen not in sig.src2:
            raise UnknownGenerator(f"unknown 2-generator {label.gen}")
        return sig.src2[label.gen].letters, sig.tgt2[label.gen].letters
    f, n = label.gen, label.winding
    if f not in sig.src1:
        raise UnknownGenerator(f"unknown 1-generator {f}")
    if label.kind == "eta":
        return (), ((f, n - 1), (f, n))
    if label.kind == "eps":
        return ((f, n), (f, n - 1)), ()
    return None


def check_diagram(d: Diagram) -> None:
    """Raise :class:`IllFormed` unless ``d`` satisfies every diagram invariant."""
    produced: dict[int, int] = {}
    consumed: dict[int, int] = {}
    for w in d.source:
        produced[w] = produced.get(w, 0) + 1
    for w in d.target:
        consumed[w] = consumed.get(w, 0) + 1
    for n, node in d.nodes.items():
        for w in node.outputs:
            produced[w] = produced.get(w, 0) + 1
        for w in node.inputs:
            consumed[w] = consumed.get(w, 0) + 1
        ty = node_type(d.sig, node.label)
        if ty is not None:
            if d.labels(node.inputs) != tuple(ty[0]) or d.labels(node.outputs) != tuple(ty[1]):
                raise IllFormed(f"node {n} is not typed like its label")
    for w in set(produced) | set(consumed) | set(d.wires):
        if w not in d.wires:
            raise IllFormed(f"wire {w} has no label")
        if produced.get(w, 0) != 1 or consumed.get(w, 0) != 1:
            raise IllFormed(f"wire {w} is not used linearly")
    try:
        source2(d)
        target2(d)
    except PolygraphError as e:
        raise IllFormed(f"boundary does not chain: {e}") from None
    decompose(d)


def _is_acyclic(d: Diagram) -> bool:
    prod, cons = d.ports()
    indeg = {n: 0 for n in d.nodes}
    succ: dict[int, list[int]] = {n: [] for n in d.nodes}
    for w in d.wires:
        p, c = prod[w][0], cons[w][0]
        if p != BOUNDARY and c != BOUNDARY:
            succ[p].append(c)
            indeg[c] += 1
    todo = [n for n, k in indeg.items() if k == 0]
    seen = 0
    while todo:
        n = todo.pop()
        seen += 1
        for m in succ[n]:
            indeg[m] -= 1
            if indeg[m] == 0:
                todo.append(m)
    return seen == len(d.nodes)


# -- sequentialization -------------------------------------------------------


def decompose(d: Diagram) -> list[Layer]:
    """Cut ``d`` into layers ``id(left) * node * id(right)``, top to bottom.

    Nodes with inputs are placed greedily as soon as their inputs are adjacent
    and in order on the current frontier. Nodes without inputs are placed next
    to the wire their outputs must end up beside; when no such constraint is
    available the possible positions are searched. Raises :class:`IllFormed`
    if no layering exists.
    """
    prod, cons = d.ports()
    if len(prod) != len(d.wires) or len(cons) != len(d.wires):
        raise IllFormed("some wire lacks a producer or a consumer")
    if not _is_acyclic(d):
        raise IllFormed("the diagram has a directed cycle")
    steps = _sequentialize(d, prod, cons)
    if steps is None:
        raise IllFormed("the diagram cannot be cut into layers")
    layers: list[Layer] = []
    frontier = list(d.source)
    for pos, n in steps:
        node = d.nodes[n]
        k = len(node.inputs)
        obj = d.start
        for w in frontier[:pos]:
            obj = letter_endpoints(d.sig, *d.wires[w])[1]
        left = Path(d.start, obj, d.labels(frontier[:pos]))
        mid = obj
        for w in node.inputs:
            mid = letter_endpoints(d.sig, *d.wires[w])[1]
        try:
            right = path_of(d.sig, d.labels(frontier[pos + k:]), start=mid)
        except PolygraphError as e:
            raise IllFormed(str(e)) from None
        if right.end != d.end:
            raise IllFormed("layer does not end at the diagram's end object")
        layers.append(Layer(left, n, right))
        frontier[pos:pos + k] = node.outputs
    return layers


def _faces(d: Diagram, prod: dict, cons: dict):
    """Faces of the planar map of ``d``, as union-find classes of gaps.

    Returns ``(left, right, top)``: the face on each side of every wire and
    the face just above every node. ``None`` when some component does not
    reach the boundary, since its placement is then not determined.
    """
    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    comp = {n: n for n in d.nodes}
    comp[BOUNDARY] = BOUNDARY

    def croot(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    left, right = {}, {}
    for w in d.wires:
        p, j = prod[w]
        c, k = cons[w]
        comp[croot(p)] = croot(c)
        if p == BOUNDARY:
            top = (("s", j), ("s", j + 1))
        else:
            n = len(d.nodes[p].outputs)
            top = (("L", p) if j == 0 else ("o", p, j - 1), ("R", p) if j == n - 1 else ("o", p, j))
        if c == BOUNDARY:
            bot = (("t", k), ("t", k + 1))
        else:
            n = len(d.nodes[c].inputs)
            bot = (("L", c) if k == 0 else ("i", c, k - 1), ("R", c) if k == n - 1 else ("i", c, k))
        union(top[0], bot[0])
        union(top[1], bot[1])
        left[w], right[w] = top[0], top[1]
    if any(croot(n) != croot(BOUNDARY) for n in d.nodes):
        return None
    for n, node in d.nodes.items():
        if not node.inputs or not node.outputs:
            union(("L", n), ("R", n))
    union(("s", 0), ("t", 0))
    union(("s", len(d.source)), ("t", len(d.target)))
    return (
        {w: find(x) for w, x in left.items()},
        {w: find(x) for w, x in right.items()},
        {n: find(("L", n)) for n in d.nodes},
        find(("s", 0)),
    )


def _sequentialize(d: Diagram, prod: dict, cons: dict):
    nodes = d.nodes
    target = tuple(d.target)
    zero_in = sorted(n for n, node in nodes.items() if not node.inputs)
    failed: set = set()

    def greedy(frontier: list, placed: set, steps: list) -> None:
        # place nodes with inputs as long as possible, leftmost first
        progress = True
        while progress:
            progress = False
            for pos, w in enumerate(frontier):
                c, j = cons[w]
                if c == BOUNDARY or j != 0 or c in placed:
                    continue
                ins = nodes[c].inputs
                if tuple(frontier[pos:pos + len(ins)]) == ins:
                    frontier[pos:pos + len(ins)] = nodes[c].outputs
                    placed.add(c)
                    steps.append((pos, c))
                    progress = True
                    break

    def neighbour(w: int, side: int):
        # wire that must sit immediately left (side=-1) or right (+1) of w
        c, j = cons[w]
        seq_ = target if c == BOUNDARY else nodes[c].inputs
        k = j + side
        if 0 <= k < len(seq_):
            return seq_[k]
        return None

    faces = _faces(d, prod, cons)

    def slot_face(frontier: list, i: int):
        fl, fr, _, outer = faces
        if not frontier:
            return outer
        return fr[frontier[i - 1]] if i > 0 else fl[frontier[0]]

    def candidates(z: int, frontier: list, relaxed: bool = False):
        cand = _candidates(z, frontier, relaxed)
        if cand is None or faces is None:
            return cand
        return [i for i in cand if slot_face(frontier, i) == faces[2][z]]

    def _candidates(z: int, frontier: list, relaxed: bool = False):
        outs = nodes[z].outputs
        if not outs:
            return list(range(len(frontier) + 1))
        where = {w: i for i, w in enumerate(frontier)}
        lw = neighbour(outs[0], -1)
        rw = neighbour(outs[-1], +1)
        forced = set()
        pending = False
        if lw is not None:
            if lw in where:
                forced.add(where[lw] + 1)
            else:
                pending = True
        if rw is not None:
            if rw in where:
                forced.add(where[rw])
            else:
                pending = True
        if len(forced) > 1:
            return []
        if forced:
            return sorted(forced)
        if pending and not relaxed:
            return None
        if lw is None and cons[outs[0]][0] == BOUNDARY:
            return [0]
        if rw is None and cons[outs[-1]][0] == BOUNDARY:
            return [len(frontier)]
        return list(range(len(frontier) + 1))

    def consistent(frontier: list) -> bool:
        # wires feeding the same consumer keep their relative order forever
        last: dict = {}
        for w in frontier:
            c, j = cons[w]
            if last.get(c, -1) >= j:
                return False
            last[c] = j
        return True

    def search(frontier: list, placed: set, steps: list):
        greedy(frontier, placed, steps)
        if len(placed) == len(nodes):
            return steps if tuple(frontier) == target else None
        key = (tuple(frontier), frozenset(placed))
        if key in failed or not consistent(frontier):
            failed.add(key)
            return None
        # units constrained by a wire already present come first; the others
        # may have to wait, so every unit is a possible next move
        firm, loose = [], []
        for z in zero_in:
            if z in placed:
                continue
            cand = candidates(z, frontier)
            if cand is None:
                loose.append((z, candidates(z, frontier, True)))
            elif len(cand) == 1 and len(frontier) > 0:
                firm.append((z, cand))
            else:
                loose.append((z, cand))
        loose.sort(key=lambda zc: len(zc[1]))
        for z, cand in firm + loose:
            for pos in cand:
                f2, p2, s2 = list(frontier), set(placed), list(steps)
                f2[pos:pos] = nodes[z].outputs
                p2.add(z)
                s2.append((pos, z))
                res = search(f2, p2, s2)
                if res is not None:
                    return res
        failed.add(key)
        return None

    return search(list(d.source), set(), [])


def layer_diagram(d: Diagram, layer: Layer) -> Diagram:
    """The single-node diagram ``id(left) * node * id(right)`` of a layer."""
    node = d.nodes[layer.node]
    core = single_node(
        d.sig, node.label, d.labels(node.inputs), d.labels(node.outputs), layer.left.end, layer.right.start
    )
    return whisker(core, layer.left, layer.right)


def recompose(d: Diagram, layers: list[Layer]) -> Diagram:
    out = identity(d.sig, source2(d))
    for layer in layers:
        out = vcompose(out, layer_diagram(d, layer))
    return out


# -- isomorphism -------------------------------------------------------------


def _label_key(label: Label, ignore_holes: bool):
    if label.kind == "hole" and ignore_holes:
        return ("hole", -1, 0, "")
    return (label.kind, label.gen, label.winding, label.hole)


def _traverse(d: Diagram, cons_prod, roots_wires, root_node, marks, ignore_holes):
    prod, cons = cons_prod
    wnum: dict[int, int] = {}
    nnum: dict[int, int] = {}
    worder: list[int] = []
    norder: list[int] = []
    queue: deque = deque()

    def see_wire(w):
        if w not in wnum:
            wnum[w] = len(worder)
            worder.append(w)
            queue.append(w)

    def see_node(n):
        if n not in nnum:
            nnum[n] = len(norder)
            norder.append(n)
            node = d.nodes[n]
            for w in node.inputs:
                see_wire(w)
            for w in node.outputs:
                see_wire(w)

    for w in roots_wires:
        see_wire(w)
    if root_node is not None:
        see_node(root_node)
    while queue:
        w = queue.popleft()
        p = prod[w][0]
        if p != BOUNDARY:
            see_node(p)
        c = cons[w][0]
        if c != BOUNDARY:
            see_node(c)
    return wnum, nnum, worder, norder


def _encode(d, wnum, worder, norder, marks, ignore_holes):
    nodes = []
    for n in norder:
        node = d.nodes[n]
        lk = _label_key(node.label, ignore_holes)
        if marks is not None:
            lk = lk + (marks.get(n, ""),)
        nodes.append((lk, tuple(wnum[w] for w in node.inputs), tuple(wnum[w] for w in node.outputs)))
    return (tuple(d.wires[w] for w in worder), tuple(nodes))


def _canonical(d: Diagram, marks: dict | None = None, ignore_holes: bool = False):
    pc = d.ports()
    wnum, nnum, worder, norder = _traverse(d, pc, list(d.source) + list(d.target), None, marks, ignore_holes)
    main = _encode(d, wnum, worder, norder, marks, ignore_holes)
    # components not attached to the boundary: try every root, keep the least code
    rest = [n for n in sorted(d.nodes) if n not in nnum]
    comps = []
    while rest:
        best = None
        seen_here: set = set()
        for r in rest:
            w2, n2, wo2, no2 = _traverse(d, pc, [], r, marks, ignore_holes)
            if not seen_here:
                seen_here = set(no2)
            elif r not in seen_here:
                continue
            code = _encode(d, w2, wo2, no2, marks, ignore_holes)
            if best is None or code < best[0]:
                best = (code, wo2, no2)
        comps.append(best)
        rest = [n for n in rest if n not in seen_here]
    comps.sort(key=lambda c: c[0])
    for _, wo2, no2 in comps:
        worder.extend(wo2)
        norder.extend(no2)
    key = (
        d.start,
        d.end,
        main,
        tuple(wnum[w] for w in d.source),
        tuple(wnum[w] for w in d.target),
        tuple(c[0] for c in comps),
    )
    return key, worder, norder


def canonical_key(d: Diagram, marks: dict | None = None, ignore_holes: bool = False):
    """A hashable key with ``canonical_key(d1) == canonical_key(d2)`` iff ``d1 ≅ d2``.

    Args:
        marks: optional node id -> tag; tags must then match as well.
        ignore_holes: compare hole nodes without their names.
    """
    return _canonical(d, marks, ignore_holes)[0]


def iso(d1: Diagram, d2: Diagram, ignore_holes: bool = False) -> IsoWitness | None:
    """Isomorphism witness between ``d1`` and ``d2``, or ``None``."""
    if len(d1.nodes) != len(d2.nodes) or len(d1.wires) != len(d2.wires):
        return None
    k1, w1, n1 = _canonical(d1, None, ignore_holes)
    k2, w2, n2 = _canonical(d2, None, ignore_holes)
    if k1 != k2:
        return None
    return IsoWitness(dict(zip(w1, w2)), dict(zip(n1, n2)))


def is_iso(d1: Diagram, d2: Diagram, ignore_holes: bool = False) -> bool:
    return iso(d1, d2, ignore_holes) is not None


def connected_components(d: Diagram) -> list[list[int]]:
    """Node sets connected through internal wires (boundary wires do not link)."""
    prod, cons = d.ports()
    parent = {n: n for n in d.nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for w in d.wires:
        p, c = prod[w][0], cons[w][0]
        if p != BOUNDARY and c != BOUNDARY:
            parent[find(p)] = find(c)
    groups: dict[int, list[int]] = {}
    for n in sorted(d.nodes):
        groups.setdefault(find(n), []).append(n)
    return list(groups.values())
