from __future__ import annotations

from gen import random_plain
from hypothesis import given
from hypothesis import strategies as st

from polyrw.diagram import identity, is_iso, of_generator, size
from polyrw.examples import builtin, cell
from polyrw.path import Path
from polyrw.rewrite import (
    Joined,
    NotJoinable,
    joinable,
    local_confluence,
    normalize,
    one_step,
    rules,
    size_decreasing_terminating,
)
from polyrw.signature import Polygraph, truncate
from polyrw.strings import suspend, word, word_diagram

MONOID = builtin("monoid")


def wires(p, k):
    one = p.index(1, "1")
    return identity(p, Path(0, 0, ((one, 0),) * k))


def test_one_step_in_a_comb():
    host = cell(MONOID, ["mu", 1, 1], ["mu", 1], ["mu"])
    steps = [s for s in one_step(MONOID, host) if s.rule.name == "a"]
    assert len(steps) == 2
    assert all(s.check() for s in steps)


def test_one_step_on_identity_and_root():
    assert one_step(MONOID, wires(MONOID, 3)) == []
    lhs_l = cell(MONOID, ["eta", 1], ["mu"])
    steps = one_step(MONOID, lhs_l)
    assert any(s.rule.name == "l" and is_iso(s.after, wires(MONOID, 1)) for s in steps)


def test_normalize_examples():
    d, status, trace = normalize(MONOID, cell(MONOID, ["eta", 1], ["mu"]))
    assert status == "normal" and is_iso(d, wires(MONOID, 1)) and len(trace) == 1
    nf = cell(MONOID, [1, "mu"], ["mu"])
    d, status, trace = normalize(MONOID, nf)
    assert status == "normal" and is_iso(d, nf) and trace == []
    sym = builtin("symmetry")
    d, status, _ = normalize(sym, cell(sym, ["gamma"], ["gamma"]))
    assert status == "normal" and is_iso(d, wires(sym, 2))


def test_fuel():
    p = truncate(builtin("symmetry"), 2)
    g = of_generator(p, "gamma")
    p.add_generator(3, "loop", g, g)
    d, status, trace = normalize(p, g, fuel=7)
    assert status == "fuel-exhausted" and len(trace) == 7


def test_joinable_examples():
    q = suspend(builtin("srs-nz2"))
    srs = builtin("srs-nz2")
    bba = word_diagram(q, word(srs, "bba"))
    reducts = [s.after for s in one_step(q, bba)]
    assert len(reducts) == 2
    res = joinable(q, *reducts)
    assert isinstance(res, Joined) and is_iso(res.reduct, word_diagram(q, word(srs, "a")))
    d = cell(MONOID, ["mu", 1], ["mu"])
    assert isinstance(joinable(MONOID, d, d), Joined)


def test_size_criterion():
    assert size_decreasing_terminating(builtin("zigzag"), count_units=True)
    assert not size_decreasing_terminating(builtin("zigzag"), count_units=False)
    assert not size_decreasing_terminating(MONOID)
    assert size_decreasing_terminating(truncate(MONOID, 2))


def test_local_confluence_verdicts():
    v = local_confluence(MONOID, fuel=50)
    assert v.status == "locally-confluent" and v.joined == 5 == len(v.pairs)
    assert not v.terminating and not v.confluent
    v = local_confluence(MONOID, fuel=50, assume_terminating=True)
    assert v.confluent and v.terminating_reason == "assumed"
    v = local_confluence(builtin("srs-nz2"))
    assert v.status == "locally-confluent" and v.joined == 2 == len(v.pairs)


def forked():
    """Two rules from the same left member to distinct normal forms."""
    p = Polygraph("fork")
    p.add_generator(0, "*")
    one = p.add_generator(1, "1", "*", "*").index
    w = Path(0, 0, ((one, 0),))
    for n in ("a", "b", "c"):
        p.add_generator(2, n, w, w)
    p.add_generator(3, "ab", of_generator(p, "a"), of_generator(p, "b"))
    p.add_generator(3, "ac", of_generator(p, "a"), of_generator(p, "c"))
    return p


def test_counterexample():
    v = local_confluence(forked())
    assert v.status == "counterexample"
    assert any(isinstance(r, NotJoinable) for r in v.results)
    assert v.counterexample is not None and not v.confluent


@given(st.randoms(use_true_random=False))
def test_steps_replay(rng):
    b = builtin("bialgebra")
    d = random_plain(rng, b, max_nodes=6)
    for s in one_step(b, d):
        assert s.check()


@given(st.randoms(use_true_random=False))
def test_strategies_agree_on_monoid(rng):
    d = random_plain(rng, MONOID, max_nodes=7)
    a, s1, _ = normalize(MONOID, d, "leftmost")
    b, s2, _ = normalize(MONOID, d, "fair")
    assert s1 == s2 == "normal" and is_iso(a, b)
    assert one_step(MONOID, a) == []


@given(st.text(alphabet="ab", max_size=8))
def test_strategies_agree_on_strings(text):
    srs = builtin("srs-nz2")
    q = suspend(srs)
    d = word_diagram(q, word(srs, text))
    a, _, _ = normalize(q, d, "leftmost")
    b, _, _ = normalize(q, d, "fair")
    assert is_iso(a, b)


@given(st.randoms(use_true_random=False))
def test_size_decreases_along_traces(rng):
    p = truncate(MONOID, 2)
    for g in MONOID.gens[3]:
        if g.name != "a":
            p.add_generator(3, g.name, MONOID.src3[g.index].rebind(p), MONOID.tgt3[g.index].rebind(p))
    assert size_decreasing_terminating(p)
    d = random_plain(rng, p, max_nodes=7)
    _, status, trace = normalize(p, d)
    assert status == "normal"
    sizes = [size(s.before) for s in trace] + [size(trace[-1].after)] if trace else []
    assert all(x > y for x, y in zip(sizes, sizes[1:]))


def test_rules_listing():
    assert [r.name for r in rules(MONOID)] == ["a", "l", "r"]
