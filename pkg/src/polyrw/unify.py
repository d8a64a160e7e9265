"""Critical pairs of 3-polygraphs by unification in compact contexts.

The search works on *closed* diagrams: every source wire is bent into the
target, so a diagram is a single cyclic boundary around a planar port graph.
Starting from the closed left-hand side of one rule, the nodes of the second
left-hand side are placed one wire at a time. When a wire of the second rule
reaches the boundary, either a new node is glued there (attach) or the wire is
connected to a loose end of the first rule (merge), which may enclose part of
the boundary in a hole. Units and counits introduced by these operations are
called bends; they are the only nodes that zig-zag normalization may remove.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .compact import eps, eta, has_units, open_form, regular_split, zigzag_normalize
from .context import Context, HoleType, carve, match_with_maps, substitute
from .diagram import (
    BOUNDARY,
    Diagram,
    Eps,
    Eta,
    Hole,
    Node,
    canonical_key,
    connected_components,
    fresh_ids,
    is_iso,
    of_generator,
    size,
    vcompose,
    whisker,
)
from .path import Path, letter_endpoints, path_of
from .signature import Polygraph


# -- closed diagrams ---------------------------------------------------------


def close(d: Diagram) -> Diagram:
    """Closed form of ``d`` keeping node ids: one unit per source wire.

    Source wire ``k`` (label ``g^n``) becomes the second output of
    ``eta_{g^n}``, whose first output is appended to the front of the target,
    so the target reads ``adjoint(source, -1)`` followed by the old target.
    """
    wires = dict(d.wires)
    nodes = dict(d.nodes)
    wo, no = fresh_ids(d)
    front = []
    for w in d.source:
        g, n = d.wires[w]
        t = wo
        wo += 1
        wires[t] = (g, n - 1)
        nodes[no] = Node(Eta(g, n), (), (t, w))
        no += 1
        front.insert(0, t)
    return Diagram(d.sig, wires, nodes, (), tuple(front) + d.target, d.end, d.end)


def shift(G: Diagram, steps: int, protect=frozenset()) -> Diagram:
    """Cyclic rotation of a closed diagram, keeping node ids.

    A positive step moves the first boundary wire to the end (winding +2), a
    negative step the last wire to the front (winding -2).
    """
    if steps == 0:
        return G
    sig = G.sig
    wires = dict(G.wires)
    nodes = dict(G.nodes)
    target = list(G.target)
    start = G.start
    wo, no = fresh_ids(G)
    for _ in range(abs(steps)):
        if steps > 0:
            x = target.pop(0)
            g, n = wires[x]
            y, z = wo, wo + 1
            wires[y], wires[z] = (g, n + 1), (g, n + 2)
            nodes[no] = Node(Eps(g, n + 1), (y, x), ())
            nodes[no + 1] = Node(Eta(g, n + 2), (), (y, z))
            target.append(z)
            start = letter_endpoints(sig, g, n)[1]
        else:
            x = target.pop()
            g, n = wires[x]
            z, y = wo, wo + 1
            wires[z], wires[y] = (g, n - 2), (g, n - 1)
            nodes[no] = Node(Eta(g, n - 1), (), (z, y))
            nodes[no + 1] = Node(Eps(g, n), (x, y), ())
            target.insert(0, z)
            start = letter_endpoints(sig, g, n)[0]
        wo += 2
        no += 2
    return zigzag_normalize(Diagram(sig, wires, nodes, (), tuple(target), start, start), protect=protect)


def shift_to(G: Diagram, pos: int, winding: int, last: bool, protect=frozenset()) -> Diagram:
    """Rotate so that boundary wire ``pos`` is first (or last) with the given winding."""
    L = len(G.target)
    w = G.wires[G.target[pos]][1]
    if (winding - w) % 2:
        raise ValueError("winding parity cannot change under rotation")
    k = (winding - w) // 2
    steps = pos + 1 + (k - 1) * L if last else pos + k * L
    return shift(G, steps, protect)


def juxtapose(G: Diagram, V: Diagram, v_first: bool) -> tuple[Diagram, int]:
    """Place two closed diagrams side by side, keeping the ids of ``G``.

    Returns the combined diagram and the node id offset applied to ``V``.
    """
    wo, no = fresh_ids(G)
    V = V.shifted(wo, no)
    wires = dict(G.wires)
    wires.update(V.wires)
    nodes = dict(G.nodes)
    nodes.update(V.nodes)
    if v_first:
        target, start, end = V.target + G.target, V.start, G.end
    else:
        target, start, end = G.target + V.target, G.start, V.end
    return Diagram(G.sig, wires, nodes, (), target, start, end), no


def cap(G: Diagram, i: int, j: int, protect=frozenset(), hole: str | None = None) -> tuple[Diagram, HoleType | None]:
    """Join boundary wires ``i < j`` of a closed diagram by a counit.

    Wire ``i`` must be ``g^m`` and wire ``j`` be ``g^{m-1}``. The wires strictly
    between them go into a new hole named ``hole`` (required if there are any).
    """
    t = G.target
    (g, m), (g2, m2) = G.wires[t[i]], G.wires[t[j]]
    if g != g2 or m2 != m - 1:
        raise ValueError("cap needs labels g^m then g^{m-1}")
    wo, no = fresh_ids(G)
    nodes = dict(G.nodes)
    arc = t[i + 1:j]
    ty = None
    if arc:
        if hole is None:
            raise ValueError("a hole name is needed to enclose wires")
        a = letter_endpoints(G.sig, g, m)[1]
        ty = HoleType(path_of(G.sig, G.labels(arc), start=a), Path(a, a, ()))
        nodes[no + 1] = Node(Hole(hole), tuple(arc), ())
    nodes[no] = Node(Eps(g, m), (t[i], t[j]), ())
    D = Diagram(G.sig, dict(G.wires), nodes, (), t[:i] + t[j + 1:], G.start, G.end)
    prot = set(protect)
    if ty is not None:
        prot.add(no + 1)
    return zigzag_normalize(D, protect=frozenset(prot)), ty


def link(G: Diagram, p: int, q: int, protect=frozenset(), hole: str | None = None):
    """Connect loose ends ``p`` and ``q`` of a closed diagram, if windings allow.

    Exactly one of the two cyclic arcs between them can be spanned by a
    counit; the wires on that arc are enclosed in a hole. Returns
    ``(diagram, hole type or None)``, or ``None`` if impossible.
    """
    if p == q:
        return None
    L = len(G.target)
    for a, b in ((p, q), (q, p)):
        (ga, wa), (gb, wb) = G.wires[G.target[a]], G.wires[G.target[b]]
        if ga != gb:
            return None
        wrap = 1 if b < a else 0
        if wb + 2 * wrap != wa - 1:
            continue
        G1 = shift(G, a, protect)
        j = (b - a) % L
        if j > 1 and hole is None:
            return None
        return cap(G1, 0, j, protect, hole if j > 1 else None)
    return None


def rotation_key(G: Diagram, marks: dict | None = None):
    """Canonical key of a closed diagram up to iso and cyclic rotation."""
    L = len(G.target)
    if L == 0:
        return canonical_key(G, marks, ignore_holes=True)
    total = sum(G.wires[w][1] for w in G.target)
    s0 = -(total // 2)
    protect = frozenset(marks or ())
    best = None
    for s in range(s0, s0 + L):
        k = canonical_key(shift(G, s, protect), marks, ignore_holes=True)
        if best is None or k < best:
            best = k
    return best


# -- critical pairs ----------------------------------------------------------


@dataclass
class CompactCriticalPair:
    """Two rules and a most general compact unifier of their left-hand sides.

    ``overlap`` is a closed diagram (empty source) containing both left-hand
    sides; ``amap``/``bmap`` send the nodes of each left-hand side to it.
    ``K1``/``K2`` are the overlap with one left-hand side replaced by the hole
    ``"A"`` (resp. ``"B"``); further holes come from merging.
    """

    r1: object
    r2: object
    overlap: Diagram
    amap: dict
    bmap: dict
    K1: Context
    K2: Context
    holes: list = field(default_factory=list)

    @property
    def marks(self) -> dict:
        m: dict[int, str] = {}
        for x in self.amap.values():
            m[x] = "a"
        for x in self.bmap.values():
            m[x] = m.get(x, "") + "b"
        return m

    @property
    def hole_free(self) -> bool:
        return not self.holes

    @property
    def regular(self) -> bool:
        """Hole-free and isomorphic to the closed form of a plain diagram."""
        return self.hole_free and self.plain_overlap() is not None

    def plain_overlap(self) -> Diagram | None:
        if self.holes:
            return None
        d = open_form(self.overlap)
        if d is None or has_units(d):
            return None
        return d

    def reducts(self) -> tuple[Diagram, Diagram]:
        """The two one-step reducts of the overlap, opened when regular."""
        d1 = substitute(self.K1, "A", self.r1.rhs).body
        d2 = substitute(self.K2, "B", self.r2.rhs).body
        if self.regular:
            o1, o2 = open_form(d1), open_form(d2)
            if o1 is not None and o2 is not None:
                return o1, o2
        return zigzag_normalize(d1), zigzag_normalize(d2)

    def key(self):
        k = rotation_key(self.overlap, self.marks)
        if self.r1.index == self.r2.index:
            swapped = {n: _swap_mark(m) for n, m in self.marks.items()}
            k = min(k, rotation_key(self.overlap, swapped))
        return (self.r1.index, self.r2.index, k)


def _swap_mark(m: str) -> str:
    return {"a": "b", "b": "a"}.get(m, m)


@dataclass
class _State:
    G: Diagram
    amap: dict
    bmap: dict
    holes: list
    verified: frozenset

    def protect(self) -> frozenset:
        hs = {n for n, node in self.G.nodes.items() if node.label.kind == "hole"}
        return frozenset(self.amap.values()) | frozenset(self.bmap.values()) | frozenset(hs)


def _trace(G: Diagram, protect: frozenset, w: int, down: bool):
    """Follow a strand through bends until a real node port or the boundary."""
    prod, cons = G.ports()
    for _ in range(len(G.wires) + 1):
        if down:
            c, j = cons[w]
            if c == BOUNDARY:
                return ("loose", j)
            node = G.nodes[c]
            if c in protect or node.label.kind != "eps":
                return ("in", c, j)
            w = node.inputs[1 - j]
            down = False
        else:
            p, i = prod[w]
            if p == BOUNDARY:
                return ("top", i)
            node = G.nodes[p]
            if p in protect or node.label.kind != "eta":
                return ("out", p, i)
            w = node.outputs[1 - i]
            down = True
    raise RuntimeError("strand does not terminate")


def _closed_node(beta: Diagram, v: int) -> tuple[Diagram, int]:
    """Closed form of a lone copy of ``beta``'s node ``v``; returns (diagram, node id)."""
    lab = beta.nodes[v].label
    if lab.kind == "eta":
        return close(eta(beta.sig, lab.gen, lab.winding)), 0
    if lab.kind == "eps":
        return close(eps(beta.sig, lab.gen, lab.winding)), 0
    return close(of_generator(beta.sig, lab.gen)), 0


def _attach(st: _State, p: int, beta: Diagram, v: int, port: int, below: bool, hole_count: list) -> _State | None:
    """Glue a copy of ``beta``'s node ``v`` at loose end ``p``.

    ``below``: the strand ends at an output of the overlap, and ``v``'s input
    ``port`` is glued to it; otherwise ``v``'s output ``port`` is glued to a
    loose input strand.
    """
    G = st.G
    prot = st.protect()
    V, vid = _closed_node(beta, v)
    node = beta.nodes[v]
    wp = G.wires[G.target[p]][1]
    if below:
        n = beta.wires[node.inputs[port]][1]
        if (wp - n) % 2:
            return None
        G1 = shift_to(G, p, n, last=True, protect=prot)
        V1 = shift(V, len(node.inputs) - 1 - port, frozenset([vid]))
        comb, off = juxtapose(G1, V1, v_first=False)
        i = len(G1.target) - 1
    else:
        n = beta.wires[node.outputs[port]][1]
        if (wp - n + 1) % 2:
            return None
        G1 = shift_to(G, p, n - 1, last=False, protect=prot)
        V1 = shift(V, -(len(node.outputs) - 1 - port), frozenset([vid]))
        comb, off = juxtapose(G1, V1, v_first=True)
        i = len(V1.target) - 1
    new = vid + off
    G2, _ = cap(comb, i, i + 1, prot | {new})
    bmap = dict(st.bmap)
    bmap[v] = new
    return _State(G2, st.amap, bmap, st.holes, st.verified)


def _link_state(st: _State, p: int, q: int, hole_count: list) -> _State | None:
    name = f"H{len(st.holes)}"
    res = link(st.G, p, q, st.protect(), hole=name)
    if res is None:
        return None
    G2, ty = res
    holes = st.holes + ([(name, ty)] if ty is not None else [])
    return _State(G2, st.amap, st.bmap, holes, st.verified)


def _bfs_wires(beta: Diagram, seed: int) -> list[int]:
    prod, cons = beta.ports()
    order, seen_n, seen_w = [], {seed}, set()
    queue = [seed]
    while queue:
        n = queue.pop(0)
        node = beta.nodes[n]
        for w in node.inputs + node.outputs:
            if w in seen_w:
                continue
            seen_w.add(w)
            u, v = prod[w][0], cons[w][0]
            if u == BOUNDARY or v == BOUNDARY:
                continue
            order.append(w)
            for m in (u, v):
                if m not in seen_n:
                    seen_n.add(m)
                    queue.append(m)
    return order


def _expand(st: _State, alpha: Diagram, beta: Diagram, w: int, hole_count: list) -> list[_State]:
    bprod, bcons = beta.ports()
    u, i = bprod[w]
    v, j = bcons[w]
    G = st.G
    prot = st.protect()
    done = st.verified | {w}
    bimg = set(st.bmap.values())
    aimg = set(st.amap.values())

    def finish(s: _State | None) -> list[_State]:
        if s is None:
            return []
        return [_State(s.G, s.amap, s.bmap, s.holes, done)]

    if u in st.bmap and v in st.bmap:
        e1 = _trace(G, prot, G.nodes[st.bmap[u]].outputs[i], True)
        if e1 == ("in", st.bmap[v], j):
            return finish(st)
        if e1[0] == "loose":
            e2 = _trace(G, prot, G.nodes[st.bmap[v]].inputs[j], False)
            if e2[0] == "loose":
                return finish(_link_state(st, e1[1], e2[1], hole_count))
        return []

    if u in st.bmap:
        known, new, kport, nport, down = u, v, i, j, True
        e1 = _trace(G, prot, G.nodes[st.bmap[u]].outputs[i], True)
        want = "in"
    else:
        known, new, kport, nport, down = v, u, j, i, False
        e1 = _trace(G, prot, G.nodes[st.bmap[v]].inputs[j], False)
        want = "out"
    label = beta.nodes[new].label
    if e1[0] == want:
        x, xp = e1[1], e1[2]
        if xp == nport and x in aimg and x not in bimg and G.nodes[x].label == label:
            bmap = dict(st.bmap)
            bmap[new] = x
            return finish(_State(G, st.amap, bmap, st.holes, st.verified))
        return []
    if e1[0] != "loose":
        return []
    out = finish(_attach(st, e1[1], beta, new, nport, down, hole_count))
    for x in sorted(aimg - bimg):
        if G.nodes[x].label != label:
            continue
        xw = G.nodes[x].inputs[nport] if down else G.nodes[x].outputs[nport]
        e2 = _trace(G, prot, xw, not down)
        if e2[0] != "loose":
            continue
        s2 = _link_state(st, e1[1], e2[1], hole_count)
        if s2 is None:
            continue
        bmap = dict(s2.bmap)
        bmap[new] = x
        out += finish(_State(s2.G, s2.amap, bmap, s2.holes, s2.verified))
    return out


def unifier_search(alpha: Diagram, beta: Diagram, seed_a: int, seed_b: int, max_states: int = 100000):
    """All completed search states for one seed pair, in deterministic order."""
    G0 = close(alpha)
    amap = {n: n for n in alpha.nodes}
    st = _State(G0, amap, {seed_b: seed_a}, [], frozenset())
    order = _bfs_wires(beta, seed_b)
    bprod, bcons = beta.ports()
    results = []
    stack = [st]
    explored = 0
    hole_count = [0]
    while stack:
        st = stack.pop()
        explored += 1
        if explored > max_states:
            raise RuntimeError("unification search exceeded its state bound")
        nxt = None
        for w in order:
            if w in st.verified:
                continue
            if bprod[w][0] in st.bmap or bcons[w][0] in st.bmap:
                nxt = w
                break
        if nxt is None:
            if len(st.bmap) == len(beta.nodes):
                results.append(st)
            continue
        children = _expand(st, alpha, beta, nxt, hole_count)
        stack.extend(reversed(children))
    return results


def _rules(rs: Polygraph):
    from .rewrite import rules

    return rules(rs)


def _untwist(G: Diagram, protect: frozenset) -> Diagram:
    """Undo full turns of a closed diagram: they only change the
    representative, not the overlap up to rotation. A turn count giving a
    plain diagram once opened is preferred."""
    L = len(G.target)
    if L == 0:
        return G
    total = sum(G.wires[w][1] for w in G.target)
    k0 = -round(total / (2 * L))
    fallback = None
    for k in (k0, k0 + 1, k0 - 1):
        H = shift(G, k * L, protect)
        if fallback is None:
            fallback = H
        if not any(n.label.kind == "hole" for n in H.nodes.values()):
            d = open_form(H)
            if d is not None and not has_units(d):
                return H
    return fallback


def _make_cp(r1, r2, st: _State) -> CompactCriticalPair | None:
    prot = st.protect()
    G = _untwist(zigzag_normalize(st.G, protect=prot), prot)
    K1 = carve(r1.lhs, G, st.amap, "A")
    K2 = carve(r2.lhs, G, st.bmap, "B")
    if K1 is None or K2 is None:
        return None
    K1 = Context(K1.body, K1.holes + list(st.holes))
    K2 = Context(K2.body, K2.holes + list(st.holes))
    return CompactCriticalPair(r1, r2, G, dict(st.amap), dict(st.bmap), K1, K2, list(st.holes))


def check_cp(cp: CompactCriticalPair) -> bool:
    """Soundness: both contexts give back the overlap."""
    a = substitute(cp.K1, "A", cp.r1.lhs).body
    b = substitute(cp.K2, "B", cp.r2.lhs).body
    return is_iso(a, cp.overlap, ignore_holes=False) and is_iso(b, cp.overlap, ignore_holes=False)


def critical_pairs(rs: Polygraph, verify: bool = True) -> list[CompactCriticalPair]:
    """Compact critical pairs of all rule pairs ``r1 <= r2``, deduplicated.

    Seeds are pairs of equally labeled nodes ordered by (rule index, node id);
    attaching is explored before merging. For a rule against itself the
    identity overlap is dropped.
    """
    if rs.dimension <= 2 and rs.gens[2]:
        from .strings import suspend

        rs = suspend(rs)
    R = _rules(rs)
    for r in R:
        if not r.lhs.nodes:
            raise ValueError(f"rule {r.name} has an empty left-hand side")
        if set(r.lhs.source) & set(r.lhs.target):
            raise ValueError(f"rule {r.name}: left-hand side has wires from source to target")
        if len(connected_components(r.lhs)) != 1:
            raise ValueError(f"rule {r.name}: left-hand side is not connected")
    out: list[CompactCriticalPair] = []
    seen = set()
    for a_i, r1 in enumerate(R):
        for r2 in R[a_i:]:
            alpha, beta = r1.lhs, r2.lhs
            for sa in sorted(alpha.nodes):
                for sb in sorted(beta.nodes):
                    if alpha.nodes[sa].label != beta.nodes[sb].label:
                        continue
                    for st in unifier_search(alpha, beta, sa, sb):
                        if r1.index == r2.index and st.bmap == st.amap and not st.holes:
                            continue
                        cp = _make_cp(r1, r2, st)
                        if cp is None:
                            continue
                        k = cp.key()
                        if k in seen:
                            continue
                        if verify and not check_cp(cp):
                            raise AssertionError(f"unsound critical pair for {r1.name}/{r2.name}")
                        seen.add(k)
                        out.append(cp)
    return out


def dedup(pairs: list[CompactCriticalPair]) -> list[CompactCriticalPair]:
    """Keep the first pair of every class up to iso, rotation and hole names."""
    seen = set()
    out = []
    for cp in pairs:
        k = cp.key()
        if k not in seen:
            seen.add(k)
            out.append(cp)
    return out


def is_trivial(cp: CompactCriticalPair) -> bool:
    """Trivial when the two left-hand sides share no node."""
    return not (set(cp.amap.values()) & set(cp.bmap.values()))


def is_minimal(cp: CompactCriticalPair, all_pairs: list | None = None) -> bool:
    """Minimal when every 2-generator of the overlap belongs to a left-hand side.

    Bends and holes do not count: the remaining context around the two
    left-hand sides is then a hole only, hence invertible.
    """
    covered = set(cp.amap.values()) | set(cp.bmap.values())
    return all(n in covered for n, node in cp.overlap.nodes.items() if node.label.kind == "gen")


# -- instantiation -----------------------------------------------------------


def instantiate(cp: CompactCriticalPair, fillers: dict | None = None, outer: Context | None = None):
    """Fill the merge holes of a critical pair and put it in an outer context.

    ``fillers`` maps hole names to diagrams of the hole's type; ``outer`` is a
    unary context whose hole ``"O"`` has the type of the closed overlap.
    Returns ``(K1, K2)``, opened into plain-boundary form when possible.
    """
    K1, K2 = cp.K1, cp.K2
    for h, f in (fillers or {}).items():
        K1 = substitute(K1, h, f)
        K2 = substitute(K2, h, f)
    if outer is not None:
        K1 = substitute(outer, "O", K1)
        K2 = substitute(outer, "O", K2)
    out = []
    for K in (K1, K2):
        body = open_form(K.body) if not K.body.source else None
        out.append(Context(body, K.holes) if body is not None else K)
    return out[0], out[1]


def link_outer(G: Diagram, p: int, q: int) -> Context:
    """The outer context that links loose ends ``p`` and ``q`` of a closed diagram."""
    from .context import hole_context

    tp = path_of(G.sig, G.labels(G.target), start=G.start)
    K = hole_context(G.sig, Path(G.start, G.start, ()), tp, "O")
    hn = K.hole_node("O")
    res = link(K.body, p, q, frozenset([hn]))
    if res is None or res[1] is not None:
        raise ValueError("these loose ends cannot be linked without enclosing wires")
    return Context(res[0], K.holes)


def cap_matchings(labels: list[tuple[int, int]]):
    """All complete non-crossing counit matchings of a row of wires.

    A pair ``(i, j)`` can be capped when wire ``i`` is ``g^m`` and ``j`` is
    ``g^{m-1}``. Yields lists of pairs.
    """
    n = len(labels)
    if n == 0:
        yield []
        return
    if n % 2:
        return
    (g, m) = labels[0]
    for j in range(1, n, 2):
        if labels[j] == (g, m - 1):
            for inner in cap_matchings(labels[1:j]):
                for rest in cap_matchings(labels[j + 1:]):
                    yield [(0, j)] + [(a + 1, b + 1) for a, b in inner] + [(a + j + 1, b + j + 1) for a, b in rest]


def _cap_fill(G: Diagram, h: int, row: list[int], protect: frozenset):
    """Replace hole ``h`` by counits matching the wires of ``row``, all ways."""
    for m in cap_matchings(list(G.labels(row))):
        nodes = dict(G.nodes)
        del nodes[h]
        _, no = fresh_ids(G)
        for k, (a, b) in enumerate(m):
            g, w = G.wires[row[a]]
            nodes[no + k] = Node(Eps(g, w), (row[a], row[b]), ())
        D = Diagram(G.sig, dict(G.wires), nodes, (), G.target, G.start, G.end)
        yield zigzag_normalize(D, protect=protect)


def _fillings(G: Diagram, protect: frozenset, max_filler_size: int):
    """All ways to fill every hole of ``G`` with counits and, for each hole, at
    most ``max_filler_size`` (0 or 1) generator."""
    holes = sorted(n for n, node in G.nodes.items() if node.label.kind == "hole")
    if not holes:
        yield G
        return
    h = holes[0]
    hole = G.nodes[h]
    if hole.outputs:
        return
    rest = protect - {h}
    arc = list(hole.inputs)
    for F in _cap_fill(G, h, arc, rest):
        yield from _fillings(F, rest, max_filler_size)
    if max_filler_size < 1:
        return
    seen = set()
    for a in sorted(G.sig.src2):
        V0 = close(of_generator(G.sig, a))
        span = len(arc) + len(V0.target)
        for s in range(-span, span + 1):
            V = shift(V0, s, frozenset([0]))
            comb, off = juxtapose(G, V, v_first=False)
            new = 0 + off
            for k in range(len(arc) + 1):
                row = arc[:k] + list(comb.target[len(G.target):]) + arc[k:]
                base = Diagram(comb.sig, comb.wires, comb.nodes, (), G.target, G.start, G.end)
                for F in _cap_fill(base, h, row, rest | {new}):
                    key = canonical_key(F, {n: "x" for n in rest | {new}}, ignore_holes=True)
                    if key in seen:
                        continue
                    seen.add(key)
                    yield from _fillings(F, rest, max_filler_size)


def regular_closure(cp: CompactCriticalPair, max_size: int | None = None, max_filler_size: int = 0) -> dict:
    """Regular unifiers obtained by instantiating ``cp``.

    Holes are filled with counits plus at most ``max_filler_size`` generators
    each, and loose boundary ends are linked by an outer context without
    nodes. Returns ``{key: closed diagram}`` where the
    key identifies the marked unifier up to iso and rotation.
    """
    if max_size is not None and size(cp.overlap) > max_size:
        return {}
    marks = cp.marks
    prot = frozenset(marks) | frozenset(n for n, node in cp.overlap.nodes.items() if node.label.kind == "hole")
    out: dict = {}
    seen: set = set()
    same = cp.r1.index == cp.r2.index

    def record(G: Diagram):
        if regular_split([G.wires[w][1] for w in G.target]) is None:
            return
        opened = open_form(G)
        if opened is None or has_units(opened):
            return
        out[unifier_key(cp.r1.index, cp.r2.index, G, marks, same)] = G

    def explore(G: Diagram):
        k = rotation_key(G, marks)
        if k in seen:
            return
        seen.add(k)
        record(G)
        L = len(G.target)
        for i in range(L):
            nxt = link(G, i, (i + 1) % L, frozenset(marks))
            if nxt is not None and nxt[1] is None:
                explore(nxt[0])

    for F in _fillings(cp.overlap, prot, max_filler_size):
        if max_size is None or size(F) <= max_size:
            explore(F)
    return out


def unifier_key(i1: int, i2: int, G: Diagram, marks: dict, same: bool):
    k = rotation_key(G, marks)
    if same:
        k = min(k, rotation_key(G, {n: _swap_mark(m) for n, m in marks.items()}))
    return (i1, i2, k)


# -- brute force oracle ------------------------------------------------------


def _source_paths(sig: Polygraph, width: int):
    def extend(prefix, obj):
        if len(prefix) == width:
            yield Path(prefix[0][2] if prefix else obj, obj, tuple((f, 0) for f, _, _ in prefix))
            return
        for f in sorted(sig.src1):
            if sig.src1[f] == obj:
                yield from extend(prefix + [(f, 0, obj)], sig.tgt1[f])

    for a in range(len(sig.gens[0])):
        for p in extend([], a):
            yield Path(a, p.end, p.letters)


def enumerate_diagrams(sig: Polygraph, max_size: int) -> list[Diagram]:
    """Connected plain diagrams with 1..max_size nodes and no wire going
    straight from source to target, up to iso."""
    from .diagram import identity

    gens = sorted(sig.src2)
    max_in = max((len(sig.src2[a]) for a in gens), default=0)
    found: dict = {}
    for width in range(0, max_size * max_in + 1):
        for src in _source_paths(sig, width):
            level = {canonical_key(identity(sig, src)): identity(sig, src)}
            for depth in range(1, max_size + 1):
                nxt = {}
                for d in level.values():
                    labs = d.labels(d.target)
                    for a in gens:
                        s = sig.src2[a].letters
                        for pos in range(len(labs) - len(s) + 1):
                            if labs[pos:pos + len(s)] != s:
                                continue
                            left = path_of(sig, labs[:pos], start=d.start)
                            if sig.src2[a].start != left.end:
                                continue
                            right = path_of(sig, labs[pos + len(s):], start=sig.tgt2[a].end)
                            e = vcompose(d, whisker(of_generator(sig, a), left, right))
                            untouched = set(e.source) & set(e.target)
                            if len(untouched) > (max_size - depth) * max_in:
                                continue
                            nxt.setdefault(canonical_key(e), e)
                level = nxt
                for k, e in level.items():
                    if set(e.source) & set(e.target):
                        continue
                    if len(connected_components(e)) != 1:
                        continue
                    found.setdefault(k, e)
    return list(found.values())


def brute_force_unifiers(
    d1: Diagram,
    d2: Diagram,
    max_size: int,
    same_rule: bool | None = None,
    include_trivial: bool = False,
    diagrams: list[Diagram] | None = None,
    indices: tuple[int, int] = (0, 0),
) -> dict:
    """Regular unifiers of ``d1`` and ``d2`` among all diagrams of size ``<= max_size``.

    A unifier is a diagram ``g`` with an occurrence of each pattern such that
    the two occurrences together cover ``g``; unless ``include_trivial``, they
    must share a node. Returns ``{key: (g, phi1, phi2)}`` keyed like
    :func:`regular_closure`.
    """
    sig = d1.sig
    if same_rule is None:
        same_rule = d1 is d2
    if diagrams is None:
        diagrams = enumerate_diagrams(sig, max_size)
    out: dict = {}
    for g in diagrams:
        occ1 = match_with_maps(d1, g)
        occ2 = match_with_maps(d2, g)
        for phi1, _ in occ1:
            for phi2, _ in occ2:
                i1, i2 = set(phi1.values()), set(phi2.values())
                if i1 | i2 != set(g.nodes):
                    continue
                if not include_trivial and not (i1 & i2):
                    continue
                if same_rule and phi1 == phi2:
                    continue
                marks = {}
                for x in i1:
                    marks[x] = "a"
                for x in i2:
                    marks[x] = marks.get(x, "") + "b"
                G = zigzag_normalize(close(g), protect=frozenset(g.nodes))
                k = unifier_key(indices[0], indices[1], G, marks, same_rule)
                out.setdefault(k, (g, phi1, phi2))
    return out


def oracle_compare(rs: Polygraph, max_size: int = 3, cps: list | None = None) -> dict:
    """Compare brute force with the instantiation closure, per rule pair.

    Returns ``{(i, j): (brute keys, closure keys)}``.
    """
    R = _rules(rs)
    if cps is None:
        cps = critical_pairs(rs)
    diagrams = enumerate_diagrams(rs, max_size)
    report = {}
    for a, r1 in enumerate(R):
        for r2 in R[a:]:
            brute = brute_force_unifiers(
                r1.lhs, r2.lhs, max_size, same_rule=r1.index == r2.index,
                diagrams=diagrams, indices=(r1.index, r2.index),
            )
            clos: dict = {}
            for cp in cps:
                if (cp.r1.index, cp.r2.index) == (r1.index, r2.index):
                    clos.update(regular_closure(cp, max_size))
            report[(r1.index, r2.index)] = (set(brute), set(clos))
    return report
