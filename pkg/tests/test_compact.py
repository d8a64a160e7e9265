from __future__ import annotations

import random

import pytest
from gen import random_compact, random_plain, snaky
from hypothesis import given
from hypothesis import strategies as st

from polyrw.compact import (
    closed_form,
    cyclic_shift,
    embed,
    eps,
    eta,
    has_units,
    is_regular,
    open_form,
    partial_compose,
    regular_split,
    rotate_left,
    rotate_right,
    zigzag_normalize,
    zigzag_redexes,
)
from polyrw.diagram import identity, is_iso, of_generator, seq, source2, target2, tensor, vcompose
from polyrw.errors import EmptyBoundary, LabelMismatch
from polyrw.examples import builtin, cell
from polyrw.path import Path, path_of
from polyrw.signature import Polygraph

MONOID = builtin("monoid")
ONE = MONOID.index(1, "1")


def wire(n: int):
    return identity(MONOID, Path(0, 0, ((ONE, n),)))


def zig(n: int = 0):
    """``(eta_n * f^{n-1}) . (f^{n-1} * eps_n)`` in diagrammatic order."""
    return seq(tensor(eta(MONOID, ONE, n), wire(n - 1)), tensor(wire(n - 1), eps(MONOID, ONE, n)))


def zag(n: int = 0):
    return seq(tensor(wire(n), eta(MONOID, ONE, n)), tensor(eps(MONOID, ONE, n), wire(n)))


def test_embed():
    mu = of_generator(MONOID, "mu")
    assert is_iso(embed(mu), mu)
    q = Path(0, 0, ((ONE, 0),))
    assert is_iso(embed(identity(MONOID, q)), identity(MONOID, q))


def test_unit_and_counit_types():
    e = eta(MONOID, ONE, 0)
    assert source2(e) == Path(0, 0, ())
    assert target2(e) == Path(0, 0, ((ONE, -1), (ONE, 0)))
    c = eps(MONOID, ONE, 0)
    assert source2(c) == Path(0, 0, ((ONE, 0), (ONE, -1)))
    assert target2(c) == Path(0, 0, ())


def test_unit_endpoints_follow_parity():
    p = Polygraph()
    p.add_generator(0, "A")
    p.add_generator(0, "B")
    f = p.add_generator(1, "f", "A", "B").index
    # f^0 : A -> B, f^-1 : B -> A, so eta_{f^0} lives on B
    assert (eta(p, f, 0).start, eta(p, f, 0).end) == (1, 1)
    assert (eta(p, f, 1).start, eta(p, f, 1).end) == (0, 0)
    assert (eps(p, f, 0).start, eps(p, f, 0).end) == (0, 0)


def test_zig_and_zag_laws():
    assert is_iso(zigzag_normalize(zig()), wire(-1))
    assert is_iso(zigzag_normalize(zag()), wire(0))
    d = cell(MONOID, ["mu", 1], ["mu"])
    assert is_iso(zigzag_normalize(d), d)


def test_triple_snake():
    d = seq(zag(), zag(), zag())
    # neighbouring snakes share units, so redexes overlap
    assert len(zigzag_redexes(d)) == 5
    assert is_iso(zigzag_normalize(d), wire(0))
    for strategy in ("leftmost", "rightmost", "random"):
        assert is_iso(zigzag_normalize(d, strategy, random.Random(1)), wire(0))
    assert is_regular(d)


def test_is_regular():
    assert is_regular(embed(cell(MONOID, ["mu", 1], ["mu"])))
    assert not is_regular(eta(MONOID, ONE, 0))
    assert is_regular(zigzag_normalize(zag()))


def test_rotations():
    mu = of_generator(MONOID, "mu")
    r = rotate_left(mu)
    assert [w for _, w in r.labels(r.source)] == [0]
    assert [w for _, w in r.labels(r.target)] == [-1, 0]
    assert is_iso(rotate_right(r), mu)
    assert is_iso(rotate_left(wire(0)), eta(MONOID, ONE, 0))
    with pytest.raises(EmptyBoundary):
        rotate_left(of_generator(MONOID, "eta"))
    with pytest.raises(EmptyBoundary):
        rotate_right(identity(MONOID, Path(0, 0, ())))


def test_closed_and_open_forms():
    d = cell(MONOID, ["mu", 1], ["mu"])
    c = closed_form(d)
    assert not c.source and [w for _, w in c.labels(c.target)] == [-1, -1, -1, 0]
    assert is_iso(open_form(c), d)
    for s in range(-4, 5):
        assert is_iso(open_form(cyclic_shift(c, s)), d)
    assert regular_split([0, 1]) is not None
    assert regular_split([0, 0, 1, 1]) == (-2, 2)
    assert regular_split([-1, -1, 0, 0, 0, 1, 0, 1]) is None
    # a unit on its own is a bent identity wire
    assert is_iso(open_form(closed_form(eta(MONOID, ONE, 3))), wire(0))


def test_partial_composition_boundary():
    p = Polygraph("pc")
    p.add_generator(0, "*")
    names = ["f", "f1", "g", "f2", "h1", "h2", "h"]
    ix = {n: p.add_generator(1, n, "*", "*").index for n in names}

    def path(*ns):
        return path_of(p, [(ix[n], 0) for n in ns], start=0)

    p.add_generator(2, "alpha", path("f"), path("f1", "g", "f2"))
    p.add_generator(2, "beta", path("h1", "g", "h2"), path("h"))
    a, b = of_generator(p, "alpha"), of_generator(p, "beta")
    d = partial_compose(a, b, 1, 1)
    assert source2(d) == path("f")
    want = [(ix["f1"], 0), (ix["h1"], -1), (ix["h"], 0), (ix["h2"], 1), (ix["f2"], 0)]
    assert list(target2(d).letters) == want
    # gluing an identity wire changes nothing
    g = identity(p, path("g"))
    assert is_iso(partial_compose(a, g, 1, 0), a)
    with pytest.raises(LabelMismatch):
        partial_compose(a, b, 0, 1)


@given(st.randoms(use_true_random=False))
def test_normalization_is_confluent(rng):
    d = random_compact(rng, MONOID, max_nodes=8)
    a = zigzag_normalize(d, "leftmost")
    assert is_iso(a, zigzag_normalize(d, "rightmost"))
    assert is_iso(a, zigzag_normalize(d, "random", random.Random(rng.random())))
    assert is_iso(zigzag_normalize(a), a)
    assert not zigzag_redexes(a)


@given(st.randoms(use_true_random=False))
def test_snakes_straighten(rng):
    d = random_plain(rng, MONOID)
    assert is_iso(zigzag_normalize(snaky(rng, embed(d), bends=4)), d)


@given(st.randoms(use_true_random=False))
def test_rotations_are_inverse(rng):
    d = zigzag_normalize(random_compact(rng, MONOID, max_nodes=6))
    if d.source:
        assert is_iso(rotate_right(rotate_left(d)), d)
    if d.target:
        assert is_iso(rotate_left(rotate_right(d)), d)


@given(st.randoms(use_true_random=False))
def test_regular_normal_forms_have_no_units(rng):
    d = random_compact(rng, MONOID, max_nodes=8, width=rng.randint(0, 2))
    if all(w == 0 for _, w in d.labels(d.source + d.target)):
        assert not has_units(zigzag_normalize(d))


@given(st.randoms(use_true_random=False))
def test_faithful(rng):
    b = builtin("bialgebra")
    d1 = random_plain(rng, b, max_nodes=5)
    d2 = random_plain(rng, b, max_nodes=5)
    n1 = zigzag_normalize(snaky(rng, embed(d1)))
    n2 = zigzag_normalize(snaky(rng, embed(d2)))
    assert is_iso(d1, d2) == is_iso(n1, n2)


def test_vcompose_with_units_typechecks():
    # eta_{f^0} followed by the counit eps_{f^0} with the wires crossed is not
    # composable: the target f^-1 f^0 is not the source f^0 f^-1
    from polyrw.errors import BoundaryMismatch

    with pytest.raises(BoundaryMismatch):
        vcompose(eta(MONOID, ONE, 0), eps(MONOID, ONE, 0))
