"""Builtin polygraphs, the translation of term rewriting systems, and the
N-matrix semantics of bialgebra diagrams."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .compact import eps as eps_cell
from .compact import eta as eta_cell
from .diagram import Diagram, decompose, identity, of_generator, seq, tensor
from .errors import ArityMismatch, UnknownName, UnknownSymbol
from .path import Path, path_of
from .signature import Polygraph

WIRE = "1"


# -- building cells on a single wire type ------------------------------------


def _wires(p: Polygraph, k: int) -> Diagram:
    return identity(p, Path(0, 0, ((p.index(1, WIRE), 0),) * k))


def cell(p: Polygraph, *layers) -> Diagram:
    """Diagram over a one-object, one-wire polygraph, given layer by layer.

    Each layer lists generator names and integers (that many identity wires),
    placed side by side; layers are composed top to bottom.
    """
    rows = []
    for layer in layers:
        parts = [_wires(p, x) if isinstance(x, int) else of_generator(p, x) for x in layer]
        rows.append(tensor(*parts) if parts else _wires(p, 0))
    return seq(*rows)


def _one_object(name: str, gens: list[tuple[str, int, int]]) -> Polygraph:
    p = Polygraph(name)
    p.add_generator(0, "*")
    p.add_generator(1, WIRE, "*", "*")
    f = p.index(1, WIRE)
    for g, k, m in gens:
        p.add_generator(2, g, Path(0, 0, ((f, 0),) * k), Path(0, 0, ((f, 0),) * m))
    return p


def _rules(p: Polygraph, table) -> Polygraph:
    for name, lhs, rhs in table:
        p.add_generator(3, name, lhs, rhs)
    return p


def monoid() -> Polygraph:
    """The theory of monoids: associativity and the two unit laws."""
    p = _one_object("monoid", [("mu", 2, 1), ("eta", 0, 1)])
    return _rules(p, [
        ("a", cell(p, ["mu", 1], ["mu"]), cell(p, [1, "mu"], ["mu"])),
        ("l", cell(p, ["eta", 1], ["mu"]), _wires(p, 1)),
        ("r", cell(p, [1, "eta"], ["mu"]), _wires(p, 1)),
    ])


def symmetry() -> Polygraph:
    """The theory of symmetries: Yang-Baxter and involution."""
    p = _one_object("symmetry", [("gamma", 2, 2)])
    return _rules(p, [
        ("yb", cell(p, ["gamma", 1], [1, "gamma"], ["gamma", 1]),
         cell(p, [1, "gamma"], ["gamma", 1], [1, "gamma"])),
        ("sym", cell(p, ["gamma"], ["gamma"]), _wires(p, 2)),
    ])


def srs_nz2() -> Polygraph:
    """The string rewriting system ``ba -> ab``, ``bb -> 1`` presenting N x Z/2Z."""
    p = Polygraph("srs-nz2")
    p.add_generator(0, "*")
    a = p.add_generator(1, "a", "*", "*").index
    b = p.add_generator(1, "b", "*", "*").index
    p.add_generator(2, "ba", path_of(p, [(b, 0), (a, 0)]), path_of(p, [(a, 0), (b, 0)]))
    p.add_generator(2, "bb", path_of(p, [(b, 0), (b, 0)]), Path(0, 0, ()))
    return p


def delta(n: int) -> Polygraph:
    """The simplicial category as a 2-polygraph, truncated to objects ``0..n``.

    The 1-generator ``mu{i}_{m}`` is ``m+1 -> m`` and ``eta{i}_{m}`` is
    ``m -> m+1``; a rule is kept when every object it passes through is at
    most ``n``.
    """
    p = Polygraph(f"delta({n})")
    for k in range(n + 1):
        p.add_generator(0, str(k))
    for m in range(1, n):
        for i in range(m):
            p.add_generator(1, f"mu{i}_{m}", str(m + 1), str(m))
    for m in range(n):
        for i in range(m + 1):
            p.add_generator(1, f"eta{i}_{m}", str(m), str(m + 1))

    def word(*names):
        return path_of(p, [(p.index(1, x), 0) for x in names])

    def empty(k):
        return Path(k, k, ())

    for m in range(n + 1):
        # mu_j^{m+1} mu_i^{m+2} => mu_i^{m+1} mu_{j+1}^{m+2}, i <= j
        if m + 3 <= n:
            for j in range(m + 1):
                for i in range(j + 1):
                    p.add_generator(
                        2, f"mm_{i}_{j}_{m}",
                        word(f"mu{i}_{m + 2}", f"mu{j}_{m + 1}"),
                        word(f"mu{j + 1}_{m + 2}", f"mu{i}_{m + 1}"),
                    )
        # eta_i^{m+1} eta_j^m => eta_{j+1}^{m+1} eta_i^m, i <= j
        if m + 2 <= n:
            for j in range(m + 1):
                for i in range(j + 1):
                    p.add_generator(
                        2, f"ee_{i}_{j}_{m}",
                        word(f"eta{j}_{m}", f"eta{i}_{m + 1}"),
                        word(f"eta{i}_{m}", f"eta{j + 1}_{m + 1}"),
                    )
        # mu_j^{m+1} eta_i^{m+1}
        if m + 2 <= n:
            for j in range(m + 1):
                for i in range(m + 2):
                    lhs = word(f"eta{i}_{m + 1}", f"mu{j}_{m + 1}")
                    if i < j:
                        rhs = word(f"mu{j - 1}_{m}", f"eta{i}_{m}")
                    elif i in (j, j + 1):
                        rhs = empty(m + 1)
                    else:
                        rhs = word(f"mu{j}_{m}", f"eta{i - 1}_{m}")
                    p.add_generator(2, f"me_{i}_{j}_{m}", lhs, rhs)
    return p


def bialgebra() -> Polygraph:
    """Bicommutative bialgebras, written out rule by rule.

    Commutativity is oriented ``mu . gamma`` to ``mu`` so that it removes a
    symmetry.
    """
    p = _one_object("bialgebra", [
        ("mu", 2, 1), ("eta", 0, 1), ("delta", 1, 2), ("epsilon", 1, 0), ("gamma", 2, 2),
    ])
    return _rules(p, [
        ("coassoc", cell(p, ["delta"], ["delta", 1]), cell(p, ["delta"], [1, "delta"])),
        ("counit_l", cell(p, ["delta"], ["epsilon", 1]), _wires(p, 1)),
        ("counit_r", cell(p, ["delta"], [1, "epsilon"]), _wires(p, 1)),
        ("cocomm", cell(p, ["delta"], ["gamma"]), cell(p, ["delta"])),
        ("sym", cell(p, ["gamma"], ["gamma"]), _wires(p, 2)),
        ("yb", cell(p, ["gamma", 1], [1, "gamma"], ["gamma", 1]),
         cell(p, [1, "gamma"], ["gamma", 1], [1, "gamma"])),
        ("delta_mu", cell(p, ["mu"], ["delta"]),
         cell(p, ["delta", "delta"], [1, "gamma", 1], ["mu", "mu"])),
        ("epsilon_mu", cell(p, ["mu"], ["epsilon"]), cell(p, ["epsilon", "epsilon"])),
        ("gamma_mu_l", cell(p, ["mu", 1], ["gamma"]), cell(p, [1, "gamma"], ["gamma", 1], [1, "mu"])),
        ("gamma_mu_r", cell(p, [1, "mu"], ["gamma"]), cell(p, ["gamma", 1], [1, "gamma"], ["mu", 1])),
        ("delta_eta", cell(p, ["eta"], ["delta"]), cell(p, ["eta", "eta"])),
        ("epsilon_eta", cell(p, ["eta"], ["epsilon"]), _wires(p, 0)),
        ("gamma_eta_l", cell(p, ["eta", 1], ["gamma"]), cell(p, [1, "eta"])),
        ("gamma_eta_r", cell(p, [1, "eta"], ["gamma"]), cell(p, ["eta", 1])),
        ("assoc", cell(p, ["mu", 1], ["mu"]), cell(p, [1, "mu"], ["mu"])),
        ("unit_l", cell(p, ["eta", 1], ["mu"]), _wires(p, 1)),
        ("unit_r", cell(p, [1, "eta"], ["mu"]), _wires(p, 1)),
        ("comm", cell(p, ["gamma"], ["mu"]), cell(p, ["mu"])),
    ])


def zigzag(windings=(0,)) -> Polygraph:
    """The zig-zag system F on one 1-generator, for the given winding numbers.

    ``zig_n`` removes a unit whose right output feeds a counit's left input,
    ``zag_n`` a unit whose left output feeds a counit's right input.
    """
    p = Polygraph("zigzag", compact_rules=True)
    p.add_generator(0, "*")
    f = p.add_generator(1, WIRE, "*", "*").index
    for n in windings:
        a = Path(0, 0, ((f, n - 1),))
        b = Path(0, 0, ((f, n),))
        zig = seq(tensor(eta_cell(p, f, n), identity(p, a)), tensor(identity(p, a), eps_cell(p, f, n)))
        zag = seq(tensor(identity(p, b), eta_cell(p, f, n)), tensor(eps_cell(p, f, n), identity(p, b)))
        p.add_generator(3, f"zig{n}", zig, identity(p, a))
        p.add_generator(3, f"zag{n}", zag, identity(p, b))
    return p


def dms() -> Polygraph:
    """Two rules with left members ``(s*s*s*s) o delta`` and ``mu o (s*s*s*s)``."""
    p = _one_object("dms", [("delta", 1, 4), ("mu", 4, 1), ("sigma", 1, 1)])
    s4 = ["sigma"] * 4
    return _rules(p, [
        ("alpha", cell(p, ["delta"], s4), cell(p, ["delta"])),
        ("beta", cell(p, s4, ["mu"]), cell(p, ["mu"])),
    ])


BUILTINS = {
    "monoid": monoid,
    "symmetry": symmetry,
    "srs-nz2": srs_nz2,
    "bialgebra": bialgebra,
    "zigzag": zigzag,
    "dms": dms,
}


def builtin(name: str) -> Polygraph:
    """A builtin polygraph; ``delta(n)`` takes its truncation bound in the name."""
    if name.startswith("delta(") and name.endswith(")"):
        try:
            return delta(int(name[6:-1]))
        except ValueError:
            raise UnknownName(f"bad truncation bound in {name!r}") from None
    if name not in BUILTINS:
        raise UnknownName(f"no builtin polygraph named {name!r}")
    return BUILTINS[name]()


def builtin_names() -> list[str]:
    return sorted(BUILTINS) + ["delta(n)"]


# -- term rewriting systems --------------------------------------------------


@dataclass(frozen=True)
class Var:
    index: int  # 1-based, as in x_1, x_2, ...


@dataclass(frozen=True)
class App:
    symbol: str
    args: tuple = ()


Term = Var | App


def _variables(t: Term, acc: list) -> list:
    if isinstance(t, Var):
        acc.append(t.index)
    else:
        for a in t.args:
            _variables(a, acc)
    return acc


def _linear(p: Polygraph, t: Term) -> Diagram:
    if isinstance(t, Var):
        return _wires(p, 1)
    parts = [_linear(p, a) for a in t.args]
    top = tensor(*parts) if parts else _wires(p, 0)
    return seq(top, of_generator(p, t.symbol))


def _permutation(p: Polygraph, order: list[int]) -> Diagram:
    """Symmetries sorting wires so that wire ``k`` ends at position ``order[k]``.

    Adjacent transpositions are applied leftmost first, which uses the least
    number of crossings.
    """
    cur = list(order)
    d = _wires(p, len(cur))
    while True:
        i = next((i for i in range(len(cur) - 1) if cur[i] > cur[i + 1]), None)
        if i is None:
            return d
        d = seq(d, cell(p, [i, "gamma", len(cur) - i - 2]))
        cur[i], cur[i + 1] = cur[i + 1], cur[i]


def _copies(p: Polygraph, c: int) -> Diagram:
    if c == 0:
        return of_generator(p, "epsilon")
    d = _wires(p, 1)
    for k in range(1, c):
        d = seq(d, cell(p, [k - 1, "delta"]))
    return d


def _tensor_all(p: Polygraph, parts: list[Diagram]) -> Diagram:
    return tensor(*parts) if parts else _wires(p, 0)


def term_cell(p: Polygraph, terms, m: int) -> Diagram:
    """The diagram ``m -> len(terms)`` of a tuple of terms over variables x_1..x_m.

    Variables are first copied (nested ``delta``) or erased (``epsilon``),
    then permuted into occurrence order by symmetries, then fed to the linear
    part of the terms.
    """
    occ = []
    for t in terms:
        _variables(t, occ)
    counts = [occ.count(v) for v in range(1, m + 1)]
    prefix = _tensor_all(p, [_copies(p, c) for c in counts])
    # the k-th copy of x_v goes to the k-th occurrence of x_v
    where = {v: [i for i, x in enumerate(occ) if x == v] for v in range(1, m + 1)}
    order = [pos for v in range(1, m + 1) for pos in where[v]]
    perm = _permutation(p, order)
    body = _tensor_all(p, [_linear(p, t) for t in terms])
    return seq(prefix, perm, body)


def _structural_rules(p: Polygraph, symbols: dict) -> list:
    out = [
        ("coassoc", cell(p, ["delta"], ["delta", 1]), cell(p, ["delta"], [1, "delta"])),
        ("counit_l", cell(p, ["delta"], ["epsilon", 1]), _wires(p, 1)),
        ("counit_r", cell(p, ["delta"], [1, "epsilon"]), _wires(p, 1)),
        ("cocomm", cell(p, ["delta"], ["gamma"]), cell(p, ["delta"])),
        ("sym", cell(p, ["gamma"], ["gamma"]), _wires(p, 2)),
        ("yb", cell(p, ["gamma", 1], [1, "gamma"], ["gamma", 1]),
         cell(p, [1, "gamma"], ["gamma", 1], [1, "gamma"])),
    ]
    for f, n in symbols.items():
        interleave = [i // 2 + (i % 2) * n for i in range(2 * n)]
        out += [
            (f"delta_{f}", cell(p, [f], ["delta"]),
             seq(_tensor_all(p, [of_generator(p, "delta")] * n), _permutation(p, interleave), cell(p, [f, f]))),
            (f"epsilon_{f}", cell(p, [f], ["epsilon"]), _tensor_all(p, [of_generator(p, "epsilon")] * n)),
            (f"gamma_{f}_l", cell(p, [f, 1], ["gamma"]),
             seq(_permutation(p, [k + 1 for k in range(n)] + [0]), cell(p, [1, f]))),
            (f"gamma_{f}_r", cell(p, [1, f], ["gamma"]),
             seq(_permutation(p, [n] + list(range(n))), cell(p, [f, 1]))),
        ]
    return out


def trs_to_polygraph(symbols: dict, rules, name: str = "trs") -> Polygraph:
    """The 3-polygraph of a term rewriting system.

    Args:
        symbols: arity of every function symbol, in declaration order.
        rules: ``(lhs, rhs)`` term pairs, or ``(name, lhs, rhs)`` triples.
    """
    reserved = {"delta", "epsilon", "gamma"} & set(symbols)
    if reserved:
        raise ArityMismatch(f"symbol names clash with structural generators: {sorted(reserved)}")
    p = _one_object(name, [(f, n, 1) for f, n in symbols.items()]
                    + [("delta", 1, 2), ("epsilon", 1, 0), ("gamma", 2, 2)])

    def check(t: Term):
        if isinstance(t, App):
            if t.symbol not in symbols:
                raise UnknownSymbol(f"unknown symbol {t.symbol!r}")
            if len(t.args) != symbols[t.symbol]:
                raise ArityMismatch(f"{t.symbol} expects {symbols[t.symbol]} arguments, got {len(t.args)}")
            for a in t.args:
                check(a)
        elif t.index < 1:
            raise ArityMismatch("variables are numbered from 1")

    _rules(p, _structural_rules(p, symbols))
    for k, r in enumerate(rules):
        rname, lhs, rhs = r if len(r) == 3 else (f"R{k}", *r)
        check(lhs)
        check(rhs)
        m = max(_variables(lhs, []) + _variables(rhs, []) + [0])
        p.add_generator(3, rname, term_cell(p, [lhs], m), term_cell(p, [rhs], m))
    return p


def commutative_monoid_trs() -> Polygraph:
    """The TRS of commutative monoids, translated, with ``m``/``e`` named ``mu``/``eta``."""
    x, y, z = Var(1), Var(2), Var(3)
    m = lambda a, b: App("mu", (a, b))  # noqa: E731
    e = App("eta")
    return trs_to_polygraph(
        {"mu": 2, "eta": 0},
        [
            ("assoc", m(m(x, y), z), m(x, m(y, z))),
            ("unit_l", m(e, x), x),
            ("unit_r", m(x, e), x),
            ("comm", m(x, y), m(y, x)),
        ],
        name="commutative-monoid",
    )


# -- N-matrix semantics ------------------------------------------------------


NODE_MATRICES = {
    "mu": np.array([[1, 1]], dtype=np.int64),
    "m": np.array([[1, 1]], dtype=np.int64),
    "eta": np.zeros((1, 0), dtype=np.int64),
    "e": np.zeros((1, 0), dtype=np.int64),
    "delta": np.array([[1], [1]], dtype=np.int64),
    "epsilon": np.zeros((0, 1), dtype=np.int64),
    "gamma": np.array([[0, 1], [1, 0]], dtype=np.int64),
}


def _block(*ms: np.ndarray) -> np.ndarray:
    rows = sum(m.shape[0] for m in ms)
    cols = sum(m.shape[1] for m in ms)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for m in ms:
        out[r:r + m.shape[0], c:c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out


def matrix_semantics(d: Diagram) -> np.ndarray:
    """The N-matrix of a bialgebra diagram: one row per output, one column per input.

    Entry ``(i, j)`` counts the paths from input ``j`` to output ``i``.
    Vertical composition is the matrix product, juxtaposition the direct sum.
    """
    for node in d.nodes.values():
        if node.label.kind != "gen":
            raise UnknownSymbol("matrix semantics is defined on plain diagrams only")
        if d.sig.name_of(2, node.label.gen) not in NODE_MATRICES:
            raise UnknownSymbol(f"no matrix for generator {d.sig.name_of(2, node.label.gen)!r}")
    total = np.eye(len(d.source), dtype=np.int64)
    for layer in decompose(d):
        node = d.nodes[layer.node]
        m = NODE_MATRICES[d.sig.name_of(2, node.label.gen)]
        step = _block(np.eye(len(layer.left), dtype=np.int64), m, np.eye(len(layer.right), dtype=np.int64))
        total = step @ total
    return total
