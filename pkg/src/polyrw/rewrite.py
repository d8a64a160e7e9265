"""Rewriting diagrams with the 3-generators of a polygraph."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .compact import zigzag_normalize
from .context import Context, match, substitute
from .diagram import Diagram, canonical_key, decompose, is_iso, size
from .errors import PolygraphError
from .signature import Polygraph


@dataclass(frozen=True)
class Rule:
    index: int
    name: str
    lhs: Diagram
    rhs: Diagram


@dataclass
class RewriteStep:
    """``before = context(lhs)`` rewrites to ``after = context(rhs)``."""

    rule: Rule
    context: Context
    before: Diagram
    after: Diagram

    def check(self) -> bool:
        a = substitute(self.context, "X", self.rule.lhs).body
        b = substitute(self.context, "X", self.rule.rhs).body
        if not self.after.is_plain:
            b = zigzag_normalize(b)
        return is_iso(a, self.before) and is_iso(b, self.after)


@dataclass(frozen=True)
class Joined:
    reduct: Diagram


@dataclass(frozen=True)
class NotJoinable:
    """Both reduct sets were explored completely and are disjoint."""

    reducts1: int
    reducts2: int


@dataclass(frozen=True)
class Unknown:
    reason: str


@dataclass
class Verdict:
    """Outcome of a local confluence check.

    ``status`` is ``"locally-confluent"``, ``"counterexample"`` or
    ``"unknown"``; ``confluent`` is set when Newman's lemma applies.
    """

    status: str
    pairs: list = field(default_factory=list)
    results: list = field(default_factory=list)
    terminating: bool = False
    terminating_reason: str = ""
    confluent: bool = False
    counterexample: object = None

    @property
    def joined(self) -> int:
        return sum(isinstance(r, Joined) for r in self.results)


def rules(rs: Polygraph) -> list[Rule]:
    return [Rule(g.index, g.name, rs.src3[g.index], rs.tgt3[g.index]) for g in rs.gens[3]]


def _rank(d: Diagram) -> dict:
    try:
        return {layer.node: k for k, layer in enumerate(decompose(d))}
    except PolygraphError:
        return {n: n for n in d.nodes}


def one_step(rs: Polygraph | list[Rule], d: Diagram) -> list[RewriteStep]:
    """All one-step rewrites of ``d``, by rule index then occurrence."""
    R = rules(rs) if isinstance(rs, Polygraph) else rs
    compact = not d.is_plain
    out = []
    for r in R:
        if not r.lhs.nodes:
            continue
        for K in match(r.lhs, d, verify=False):
            after = substitute(K, "X", r.rhs).body
            if compact:
                after = zigzag_normalize(after)
            out.append(RewriteStep(r, K, d, after))
    return out


def _occurrence_rank(step: RewriteStep, rank: dict) -> tuple:
    K = step.context
    hn = K.hole_node("X")
    hole = K.body.nodes[hn]
    # the host nodes of the occurrence are the ones missing from the context
    missing = [n for n in step.before.nodes if n not in K.body.nodes]
    return (min((rank.get(n, n) for n in missing), default=0), step.rule.index, len(hole.inputs))


def normalize(rs: Polygraph | list[Rule], d: Diagram, strategy: str = "leftmost", fuel: int = 100):
    """Rewrite until no rule applies or ``fuel`` steps were made.

    Returns ``(diagram, status, trace)`` with status ``"normal"`` or
    ``"fuel-exhausted"``. ``leftmost`` picks the redex that starts earliest in
    a layer decomposition; ``fair`` cycles through the rules.
    """
    R = rules(rs) if isinstance(rs, Polygraph) else rs
    trace: list[RewriteStep] = []
    cur = d
    turn = 0
    while True:
        steps = one_step(R, cur)
        if not steps:
            return cur, "normal", trace
        if len(trace) >= fuel:
            return cur, "fuel-exhausted", trace
        if strategy == "fair" and R:
            by_rule = {}
            for s in steps:
                by_rule.setdefault(s.rule.index, []).append(s)
            order = sorted(by_rule)
            pick = next((i for i in order if i >= turn % (max(order) + 1)), order[0])
            step = by_rule[pick][0]
            turn = pick + 1
        elif strategy == "leftmost":
            rank = _rank(cur)
            step = min(steps, key=lambda s: _occurrence_rank(s, rank))
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        trace.append(step)
        cur = step.after


def _reducts(R: list[Rule], d: Diagram, limit: int):
    """Breadth-first set of reducts, keyed canonically; flag if complete."""
    seen = {canonical_key(d): d}
    queue = deque([d])
    while queue:
        if len(seen) > limit:
            return seen, False
        x = queue.popleft()
        for s in one_step(R, x):
            k = canonical_key(s.after)
            if k not in seen:
                seen[k] = s.after
                queue.append(s.after)
    return seen, True


def joinable(rs: Polygraph | list[Rule], d1: Diagram, d2: Diagram, fuel: int = 50):
    """Search for a common reduct of ``d1`` and ``d2``.

    Both sides are first normalized; if the normal forms differ, a breadth-first
    search over all reducts (at most ``fuel`` diagrams per side) looks for one.
    """
    R = rules(rs) if isinstance(rs, Polygraph) else rs
    n1, s1, _ = normalize(R, d1, fuel=fuel)
    n2, s2, _ = normalize(R, d2, fuel=fuel)
    if is_iso(n1, n2):
        return Joined(n1)
    a, done_a = _reducts(R, d1, fuel)
    b, done_b = _reducts(R, d2, fuel)
    common = sorted(set(a) & set(b), key=repr)
    if common:
        return Joined(a[common[0]])
    if done_a and done_b:
        return NotJoinable(len(a), len(b))
    return Unknown("fuel exhausted before a common reduct was found")


def size_decreasing_terminating(rs: Polygraph, count_units: bool = False) -> bool:
    """True when every rule strictly decreases the number of nodes."""
    return all(size(r.lhs, count_units) > size(r.rhs, count_units) for r in rules(rs))


def local_confluence(rs: Polygraph, fuel: int = 50, assume_terminating: bool = False) -> Verdict:
    """Check joinability of every critical pair and apply Newman's lemma."""
    from .unify import critical_pairs

    if rs.dimension <= 2 and rs.gens[2]:
        from .strings import suspend

        rs = suspend(rs)
    cps = critical_pairs(rs)
    results = []
    status = "locally-confluent"
    counterexample = None
    for cp in cps:
        d1, d2 = cp.reducts()
        res = joinable(rs, d1, d2, fuel)
        if isinstance(res, NotJoinable) and not cp.regular:
            res = Unknown("compact critical pair is not joinable")
        results.append(res)
        if isinstance(res, NotJoinable) and status != "counterexample":
            status, counterexample = "counterexample", cp
        elif isinstance(res, Unknown) and status == "locally-confluent":
            status = "unknown"
    units = bool(rs.compact_rules)
    term = size_decreasing_terminating(rs, count_units=units)
    reason = "size decreasing" if term else ""
    if not term and assume_terminating:
        term, reason = True, "assumed"
    return Verdict(
        status,
        cps,
        results,
        terminating=term,
        terminating_reason=reason,
        confluent=term and status == "locally-confluent",
        counterexample=counterexample,
    )
