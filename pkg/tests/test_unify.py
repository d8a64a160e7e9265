from __future__ import annotations

import dataclasses

import pytest

from polyrw.compact import open_form
from polyrw.context import carve, match_with_maps, substitute
from polyrw.diagram import Diagram, Hole, Node, is_iso, of_generator, seq, tensor
from polyrw.errors import TypeMismatch
from polyrw.examples import builtin, cell
from polyrw.path import Path
from polyrw.rewrite import rules
from polyrw.signature import Polygraph
from polyrw.unify import (
    CompactCriticalPair,
    brute_force_unifiers,
    check_cp,
    close,
    critical_pairs,
    dedup,
    instantiate,
    is_minimal,
    is_trivial,
    regular_closure,
    rotation_key,
    shift,
)

MONOID = builtin("monoid")


def candidate(rs, n1, n2, g, pick=lambda a, b: True):
    """A hand-made unifier of rules ``n1`` and ``n2`` inside the plain diagram ``g``."""
    R = {r.name: r for r in rules(rs)}
    r1, r2 = R[n1], R[n2]
    for phi1, _ in match_with_maps(r1.lhs, g):
        for phi2, _ in match_with_maps(r2.lhs, g):
            if pick(set(phi1.values()), set(phi2.values())):
                G = close(g)
                K1, K2 = carve(r1.lhs, G, phi1, "A"), carve(r2.lhs, G, phi2, "B")
                return CompactCriticalPair(r1, r2, G, phi1, phi2, K1, K2)
    raise AssertionError("no such unifier")


def test_monoid_pairs():
    cps = critical_pairs(MONOID)
    assert len(cps) == 5
    names = sorted((cp.r1.name, cp.r2.name) for cp in cps)
    assert names == [("a", "a"), ("a", "l"), ("a", "r"), ("a", "r"), ("l", "r")]
    for cp in cps:
        assert cp.regular and check_cp(cp)
        assert not is_trivial(cp) and is_minimal(cp)


def test_triviality_and_minimality():
    side_by_side = tensor(cell(MONOID, ["eta", 1], ["mu"]), cell(MONOID, [1, "eta"], ["mu"]))
    t = candidate(MONOID, "l", "r", side_by_side, lambda a, b: not a & b)
    assert is_trivial(t)
    genuine = cell(MONOID, ["eta", "eta"], ["mu"])
    g = candidate(MONOID, "l", "r", genuine)
    assert not is_trivial(g) and is_minimal(g)
    padded = cell(MONOID, ["eta", "eta", 1], ["mu", 1], ["mu"])
    p = candidate(MONOID, "l", "r", padded)
    assert not is_trivial(p) and not is_minimal(p)


def test_determinism():
    a = [cp.key() for cp in critical_pairs(builtin("dms"))]
    b = [cp.key() for cp in critical_pairs(builtin("dms"))]
    assert a == b


@pytest.mark.parametrize("name", ["monoid", "symmetry", "zigzag", "dms", "srs-nz2"])
def test_soundness(name):
    for cp in critical_pairs(builtin(name)):
        assert check_cp(cp)


def test_symmetry_pairs():
    p = builtin("symmetry")
    cps = critical_pairs(p)
    kinds = sorted((cp.r1.name, cp.r2.name, cp.regular) for cp in cps)
    assert kinds == [("sym", "sym", True), ("yb", "sym", True), ("yb", "sym", True), ("yb", "yb", False)]


def test_instantiate_hole_free():
    for cp in critical_pairs(MONOID):
        K1, K2 = instantiate(cp)
        assert is_iso(substitute(K1, "A", cp.r1.lhs).body, cp.plain_overlap())
        assert is_iso(substitute(K2, "B", cp.r2.lhs).body, cp.plain_overlap())


def test_instantiate_wrong_filler():
    holed = next(cp for cp in critical_pairs(builtin("dms")) if cp.holes)
    h, _ = holed.holes[0]
    with pytest.raises(TypeMismatch):
        instantiate(holed, {h: of_generator(holed.overlap.sig, "delta")})


def test_holed_pairs_fill_to_regular_unifiers():
    # every holed delta/mu/sigma pair has at least one regular instance
    cps = [cp for cp in critical_pairs(builtin("dms")) if cp.holes]
    assert len(cps) == 47
    assert sum(1 for cp in cps if regular_closure(cp, max_filler_size=1)) >= 1


def test_brute_force_gamma():
    p = builtin("symmetry")
    lhs = cell(p, ["gamma"], ["gamma"])
    found = brute_force_unifiers(lhs, lhs, 3)
    keys = {k[2] for k in found}
    triple = cell(p, ["gamma"], ["gamma"], ["gamma"])
    assert any(is_iso(g, triple) for g, _, _ in found.values())
    assert len(keys) == len(found)


def test_brute_force_disjoint_symbols():
    p = Polygraph("ab")
    p.add_generator(0, "*")
    one = p.add_generator(1, "1", "*", "*").index
    w = Path(0, 0, ((one, 0),))
    p.add_generator(2, "a", w, w)
    p.add_generator(2, "b", w, w)
    a, b = of_generator(p, "a"), of_generator(p, "b")
    assert brute_force_unifiers(a, b, 2) == {}
    trivial = brute_force_unifiers(a, b, 2, include_trivial=True)
    assert any(is_iso(g, seq(a, b)) for g, _, _ in trivial.values())


def test_dedup_rotation_and_hole_names():
    cp = critical_pairs(MONOID)[0]
    prot = frozenset(cp.marks)
    turned = dataclasses.replace(cp, overlap=shift(cp.overlap, 1, prot))
    assert rotation_key(turned.overlap) == rotation_key(cp.overlap)
    assert len(dedup([cp, turned])) == 1

    holed = next(cp for cp in critical_pairs(builtin("dms")) if cp.holes)
    G = holed.overlap
    nodes = {
        n: Node(Hole("renamed"), node.inputs, node.outputs) if node.label.kind == "hole" else node
        for n, node in G.nodes.items()
    }
    renamed = dataclasses.replace(holed, overlap=Diagram(G.sig, G.wires, nodes, G.source, G.target, G.start, G.end))
    assert len(dedup([holed, renamed])) == 1


def test_distinct_pairs_survive_dedup():
    cps = critical_pairs(MONOID)
    assert len(dedup(cps + cps)) == 5


def test_regular_pairs_open_to_plain_overlaps():
    for cp in critical_pairs(builtin("dms")):
        if cp.regular:
            d = open_form(cp.overlap)
            assert d is not None and d.is_plain
