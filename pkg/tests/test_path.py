from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyrw.errors import EndpointMismatch
from polyrw.path import Path, adjoint, compose, endpoints, format_path, id_path, path_of
from polyrw.signature import Polygraph


# objects A, B with f : A -> B and g : B -> A
SIG = Polygraph("ab")
SIG.add_generator(0, "A")
SIG.add_generator(0, "B")
SIG.add_generator(1, "f", "A", "B")
SIG.add_generator(1, "g", "B", "A")


@pytest.fixture(scope="module")
def two_objects():
    return SIG


A, B, F, G = 0, 1, 0, 1


def test_identity(two_objects):
    p = two_objects
    e = id_path(p, A)
    assert e == Path(A, A, ())
    assert adjoint(e, 1) == e == adjoint(e, -1)
    q = path_of(p, [(F, 0), (G, 0)])
    assert compose(e, q) == q == compose(q, id_path(p, A))


def test_compose(two_objects):
    p = two_objects
    f = path_of(p, [(F, 0)])
    g = path_of(p, [(G, 0)])
    fg = compose(f, g)
    assert fg.letters == ((F, 0), (G, 0)) and endpoints(fg) == (A, A)
    with pytest.raises(EndpointMismatch):
        compose(f, f)
    with pytest.raises(EndpointMismatch):
        path_of(p, [(F, 0), (F, 0)])


def test_adjoint(two_objects):
    p = two_objects
    fg = path_of(p, [(F, 0), (G, 0)])
    assert adjoint(fg, 1).letters == ((G, 1), (F, 1))
    assert adjoint(adjoint(fg, 1), -1) == fg


def test_endpoints(two_objects):
    p = two_objects
    assert endpoints(path_of(p, [(F, 0), (G, 0)])) == (A, A)
    assert endpoints(path_of(p, [(F, 1)])) == (B, A)
    assert endpoints(id_path(p, A)) == (A, A)
    assert format_path(path_of(p, [(F, 1), (G, -1)]), p) == "f^1 g^-1"
    assert format_path(id_path(p, B), p) == "id(B)"


@st.composite
def paths(draw, p, start=None):
    """A random chainable path of the two-object signature."""
    cur = draw(st.sampled_from([A, B])) if start is None else start
    first = cur
    letters = []
    for _ in range(draw(st.integers(0, 5))):
        n = draw(st.integers(-3, 3))
        # f goes A -> B at even winding; pick the generator leaving cur
        if n % 2 == 0:
            f = F if cur == A else G
        else:
            f = G if cur == A else F
        letters.append((f, n))
        cur = p.tgt1[f] if n % 2 == 0 else p.src1[f]
    return Path(first, cur, tuple(letters))


@given(st.data())
def test_paths_chain(data):
    q = data.draw(paths(SIG))
    assert path_of(SIG, q.letters, start=q.start) == q


@given(st.data(), st.sampled_from([1, -1]))
def test_adjoint_involution(data, s):
    q = data.draw(paths(SIG))
    a = adjoint(q, s)
    assert adjoint(a, -s) == q
    assert endpoints(a) == (q.end, q.start)
    # adjoints are well-typed paths again
    assert path_of(SIG, a.letters, start=a.start) == a


@given(st.data())
def test_compose_associative(data):
    x = data.draw(paths(SIG))
    y = data.draw(paths(SIG, start=x.end))
    z = data.draw(paths(SIG, start=y.end))
    assert compose(compose(x, y), z) == compose(x, compose(y, z))
