from __future__ import annotations

import numpy as np
import pytest
from gen import random_plain
from hypothesis import given
from hypothesis import strategies as st

from polyrw.diagram import is_iso, of_generator, seq, tensor
from polyrw.errors import ArityMismatch, UnknownName, UnknownSymbol
from polyrw.examples import (
    App,
    Var,
    builtin,
    builtin_names,
    cell,
    commutative_monoid_trs,
    matrix_semantics,
    term_cell,
    trs_to_polygraph,
)
from polyrw.rewrite import one_step
from polyrw.signature import validate

BIALG = builtin("bialgebra")


def mu(s, t):
    return App("mu", (s, t))


@pytest.mark.parametrize(
    "name, rules",
    [("monoid", ["a", "l", "r"]), ("symmetry", ["yb", "sym"]), ("srs-nz2", [])],
)
def test_builtin_rules(name, rules):
    p = builtin(name)
    assert [g.name for g in p.gens[3]] == rules
    assert validate(p) == []


def test_srs_is_a_two_polygraph():
    p = builtin("srs-nz2")
    assert [g.name for g in p.gens[2]] == ["ba", "bb"]


def test_builtin_names():
    names = builtin_names()
    assert "delta(n)" in names
    for n in names:
        if n != "delta(n)":
            assert validate(builtin(n)) == []
    with pytest.raises(UnknownName):
        builtin("groups")
    with pytest.raises(UnknownName):
        builtin("delta(x)")


def test_delta_truncation():
    small, big = builtin("delta(2)"), builtin("delta(3)")
    assert [g.name for g in small.gens[0]] == ["0", "1", "2"]
    assert len(big.gens[0]) == 4
    assert {g.name for g in small.gens[1]} < {g.name for g in big.gens[1]}
    assert {g.name for g in small.gens[2]} <= {g.name for g in big.gens[2]}
    assert validate(big) == []
    # every cell stays inside the truncation
    top = big.index(0, "3")
    for g in big.gens[1]:
        assert big.src1[g.index] <= top and big.tgt1[g.index] <= top


def test_linear_rule_has_no_structure():
    p = trs_to_polygraph({"f": 2, "g": 1}, [(App("f", (Var(1), Var(2))), App("g", (Var(2),)))])
    assert [g.name for g in p.gens[3]][-1] == "R0"
    lhs = p.src3[p.index(3, "R0")]
    labels = {p.name_of(2, n.label.gen) for n in lhs.nodes.values()}
    assert labels == {"f"}


def test_trs_errors():
    with pytest.raises(ArityMismatch):
        trs_to_polygraph({"f": 2}, [(App("f", (Var(1),)), Var(1))])
    with pytest.raises(UnknownSymbol):
        trs_to_polygraph({"f": 1}, [(App("h", (Var(1),)), Var(1))])
    with pytest.raises(ArityMismatch):
        trs_to_polygraph({"delta": 1}, [])


def test_trs_output_validates():
    assert validate(commutative_monoid_trs()) == []
    x1, x2 = Var(1), Var(2)
    p = trs_to_polygraph({"f": 2, "g": 2}, [(App("f", (App("g", (x2, x1)), x2)), App("g", (x1, x1)))])
    assert validate(p) == []


def test_matrix_of_generators():
    assert matrix_semantics(cell(BIALG, [1])).tolist() == [[1]]
    assert matrix_semantics(of_generator(BIALG, "gamma")).tolist() == [[0, 1], [1, 0]]
    assert matrix_semantics(of_generator(BIALG, "eta")).shape == (1, 0)
    assert matrix_semantics(cell(BIALG, ["delta"], ["mu"])).tolist() == [[2]]


def test_term_cell_matrix():
    x1, x2 = Var(1), Var(2)
    d = term_cell(BIALG, [mu(mu(x1, x1), x2), App("eta"), x2], 2)
    assert matrix_semantics(d).tolist() == [[2, 1], [0, 0], [0, 1]]
    swap = term_cell(BIALG, [x2, x1], 2)
    assert is_iso(swap, of_generator(BIALG, "gamma"))


@given(st.randoms(use_true_random=False))
def test_matrix_semantics_is_functorial(rng):
    d = random_plain(rng, BIALG, max_nodes=4)
    e = random_plain(rng, BIALG, max_nodes=4, width=len(d.target))
    if len(e.source) == len(d.target):
        assert np.array_equal(matrix_semantics(seq(d, e)), matrix_semantics(e) @ matrix_semantics(d))
    md, me = matrix_semantics(d), matrix_semantics(e)
    t = matrix_semantics(tensor(d, e))
    assert np.array_equal(t[: md.shape[0], : md.shape[1]], md)
    assert np.array_equal(t[md.shape[0]:, md.shape[1]:], me)
    assert not t[: md.shape[0], md.shape[1]:].any() and not t[md.shape[0]:, : md.shape[1]].any()


@given(st.randoms(use_true_random=False))
def test_rules_preserve_matrices(rng):
    d = random_plain(rng, BIALG, max_nodes=5)
    for s in one_step(BIALG, d):
        assert np.array_equal(matrix_semantics(s.before), matrix_semantics(s.after)), s.rule.name
