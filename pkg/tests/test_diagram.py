from __future__ import annotations

import random

import pytest
from gen import random_compact, random_plain, shuffled
from hypothesis import given
from hypothesis import strategies as st

from polyrw.compact import eta
from polyrw.diagram import (
    Diagram,
    Gen,
    Node,
    check_diagram,
    decompose,
    hcompose,
    identity,
    is_iso,
    iso,
    of_generator,
    recompose,
    seq,
    size,
    source2,
    target2,
    tensor,
    vcompose,
    weight,
)
from polyrw.errors import BoundaryMismatch, EndpointMismatch, IllFormed
from polyrw.examples import builtin, cell
from polyrw.io import format_diagram
from polyrw.path import Path, compose, id_path, path_of
from polyrw.signature import Polygraph

MONOID = builtin("monoid")
BIALG = builtin("bialgebra")


def rho_sig():
    """f : A -> B, g : B -> A and rho : f g f g => f g."""
    p = Polygraph("rho")
    p.add_generator(0, "A")
    p.add_generator(0, "B")
    f = p.add_generator(1, "f", "A", "B").index
    g = p.add_generator(1, "g", "B", "A").index
    fg = [(f, 0), (g, 0)]
    p.add_generator(2, "rho", path_of(p, fg * 2), path_of(p, fg))
    return p


def test_of_generator_shapes():
    mu = of_generator(MONOID, "mu")
    assert (len(mu.nodes), len(mu.source), len(mu.target)) == (1, 2, 1)
    e = of_generator(MONOID, "eta")
    assert (len(e.nodes), len(e.source), len(e.target)) == (1, 0, 1)
    assert size(of_generator(BIALG, "gamma")) == 1


def test_identity():
    q = Path(0, 0, ())
    assert not identity(MONOID, q).wires and not identity(MONOID, q).nodes
    one = MONOID.index(1, "1")
    two = identity(MONOID, Path(0, 0, ((one, 0), (one, 0))))
    assert (len(two.wires), len(two.nodes)) == (2, 0)
    assert target2(two) == source2(two)
    d = cell(MONOID, ["mu", 1], ["mu"])
    assert is_iso(vcompose(identity(MONOID, source2(d)), d), d)


def test_vcompose_rho():
    p = rho_sig()
    f, g = 0, 1
    rho = of_generator(p, "rho")
    top = hcompose(rho, identity(p, path_of(p, [(f, 0), (g, 0)])))
    two = vcompose(top, rho)
    assert format_diagram(two) == "rho * f * g . rho"
    assert size(two) == 2
    assert len(decompose(two)) == 2
    assert source2(rho) == path_of(p, [(f, 0), (g, 0)] * 2)
    with pytest.raises(BoundaryMismatch):
        vcompose(rho, rho)


def test_hcompose_rho():
    p = rho_sig()
    rho = of_generator(p, "rho")
    par = hcompose(rho, rho)
    assert len(par.source) == 8 and size(par) == 2
    assert source2(par) == compose(source2(rho), source2(rho))
    assert is_iso(hcompose(identity(p, id_path(p, 0)), rho), rho)


def test_hcompose_endpoint_mismatch():
    p = rho_sig()
    f = identity(p, path_of(p, [(0, 0)]))  # A -> B
    with pytest.raises(EndpointMismatch):
        hcompose(f, f)


def test_iso_ignores_numbering():
    d = cell(MONOID, ["mu", 1], ["mu"])
    e = shuffled(random.Random(0), d)
    assert set(e.nodes) != set(d.nodes)
    w = iso(d, e)
    assert w is not None and len(w.nodes) == 2
    assert not is_iso(of_generator(MONOID, "mu"), of_generator(BIALG, "gamma"))
    # the two trees of three multiplications are different cells
    assert not is_iso(cell(MONOID, ["mu", 1], ["mu"]), cell(MONOID, [1, "mu"], ["mu"]))


def test_size_and_weight():
    d = cell(MONOID, ["mu", 1], ["mu"])
    mu, e = MONOID.index(2, "mu"), MONOID.index(2, "eta")
    assert size(d) == 2
    assert weight(d, mu) == 2 and weight(d, e) == 0
    one = MONOID.index(1, "1")
    assert size(identity(MONOID, Path(0, 0, ((one, 0),)))) == 0
    u = eta(MONOID, one, 0)
    assert size(u) == 0 and size(u, count_units=True) == 1


def test_decompose_tree():
    d = cell(MONOID, ["mu", 1], ["mu"])
    layers = decompose(d)
    assert [(len(lay.left), len(lay.right)) for lay in layers] == [(0, 1), (0, 0)]
    assert decompose(identity(MONOID, Path(0, 0, ()))) == []
    assert is_iso(recompose(d, layers), d)


def test_cycle_is_ill_formed():
    one = MONOID.index(1, "1")
    mu = MONOID.index(2, "mu")
    # mu feeding its own first input
    wires = {0: (one, 0), 1: (one, 0), 2: (one, 0)}
    nodes = {0: Node(Gen(mu), (2, 0), (1,))}
    bad = Diagram(MONOID, {**wires}, nodes, (0,), (1,), 0, 0)
    with pytest.raises(IllFormed):
        check_diagram(bad)
    with pytest.raises(IllFormed):
        decompose(bad)


def test_decompose_units_side_by_side():
    one = MONOID.index(1, "1")
    d = tensor(eta(MONOID, one, 0), eta(MONOID, one, 0))
    assert is_iso(recompose(d, decompose(d)), d)


def test_decompose_nested_overlaps():
    # every compact overlap found for the delta/mu/sigma system sequentializes
    from polyrw.unify import critical_pairs

    for cp in critical_pairs(builtin("dms")):
        assert is_iso(recompose(cp.overlap, decompose(cp.overlap)), cp.overlap)


@given(st.randoms(use_true_random=False))
def test_recompose_plain(rng):
    d = random_plain(rng, BIALG, max_nodes=8)
    assert is_iso(recompose(d, decompose(d)), d)


@given(st.randoms(use_true_random=False))
def test_recompose_compact(rng):
    d = random_compact(rng, MONOID, max_nodes=8)
    assert is_iso(recompose(d, decompose(d)), d)


@given(st.randoms(use_true_random=False))
def test_iso_is_an_equivalence(rng):
    d = random_plain(rng, BIALG)
    e = shuffled(rng, d)
    f = shuffled(rng, e)
    assert is_iso(d, d) and is_iso(d, e) and is_iso(e, d) and is_iso(d, f)
    assert size(d) == size(e)
    for g in BIALG.gens[2]:
        assert weight(d, g.index) == weight(e, g.index)


@given(st.randoms(use_true_random=False))
def test_composition_laws(rng):
    a = random_plain(rng, BIALG, max_nodes=3)
    b = random_plain(rng, BIALG, max_nodes=3, width=len(a.target))
    c = random_plain(rng, BIALG, max_nodes=3, width=len(b.target))
    assert is_iso(seq(seq(a, b), c), seq(a, seq(b, c)))
    assert is_iso(vcompose(a, identity(BIALG, target2(a))), a)
    assert size(vcompose(a, b)) == size(a) + size(b)
    assert is_iso(tensor(tensor(a, b), c), tensor(a, tensor(b, c)))
    assert size(hcompose(a, c)) == size(a) + size(c)
    assert source2(hcompose(a, c)) == compose(source2(a), source2(c))


@given(st.randoms(use_true_random=False))
def test_exchange_law(rng):
    a1 = random_plain(rng, BIALG, max_nodes=3)
    b1 = random_plain(rng, BIALG, max_nodes=3, width=len(a1.target))
    a2 = random_plain(rng, BIALG, max_nodes=3)
    b2 = random_plain(rng, BIALG, max_nodes=3, width=len(a2.target))
    assert is_iso(tensor(seq(a1, b1), seq(a2, b2)), seq(tensor(a1, a2), tensor(b1, b2)))
