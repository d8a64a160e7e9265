"""String rewriting: 2-polygraphs seen as rewriting systems on typed words.

A word is a winding-free path. Words are also diagrams after *suspension*,
which turns the objects into wires and the letters into one-input one-output
generators; this is how the 3-dimensional machinery applies to them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable

from .diagram import Diagram, identity, of_generator, seq
from .errors import CollisionAtBound, PolygraphError, RuleNotRespected
from .path import Path, path_of
from .signature import Polygraph

Word = Path


@dataclass(frozen=True)
class StringRule:
    index: int
    name: str
    lhs: Word
    rhs: Word


@dataclass(frozen=True)
class SRSCriticalPair:
    r1: StringRule
    r2: StringRule
    overlap: Word
    pos1: int
    pos2: int
    reduct1: Word
    reduct2: Word


@dataclass(frozen=True)
class PresentationVerdict:
    rules_respected: bool
    normal_forms: int
    bound: int


def string_rules(p: Polygraph) -> list[StringRule]:
    """The 2-generators of ``p`` read as string rewriting rules."""
    return [StringRule(g.index, g.name, p.src2[g.index], p.tgt2[g.index]) for g in p.gens[2]]


def _as_rules(rules) -> list[StringRule]:
    return string_rules(rules) if isinstance(rules, Polygraph) else list(rules)


def word(p: Polygraph, text: str, start: int | None = None) -> Word:
    """Parse a word: space-separated letter names, or single-letter names run together.

    ``"1"`` is the empty word, as printed by :func:`show`, unless some letter
    is called ``1``.
    """
    names = text.split() if " " in text.strip() else list(text.strip())
    if names == ["1"] and not p.has(1, "1"):
        names = []
    if start is None and not names:
        start = 0
    return path_of(p, [(p.index(1, x), 0) for x in names], start=start)


def show(p: Polygraph, w: Word) -> str:
    names = [p.name_of(1, f) for f, _ in w.letters]
    if not names:
        return "1"
    sep = "" if all(len(x) == 1 for x in names) else " "
    return sep.join(names)


def _splice(u: Word, pos: int, k: int, v: Word) -> Word:
    return Path(u.start, u.end, u.letters[:pos] + v.letters + u.letters[pos + k:])


def word_one_step(rules, u: Word) -> list[tuple[StringRule, int, Word]]:
    """Every ``u = w1 lhs w2`` with its reduct ``w1 rhs w2``, by rule then position."""
    out = []
    for r in _as_rules(rules):
        k = len(r.lhs.letters)
        for pos in range(len(u.letters) - k + 1):
            if u.letters[pos:pos + k] != r.lhs.letters:
                continue
            out.append((r, pos, _splice(u, pos, k, r.rhs)))
    return out


def word_normalize(rules, u: Word, fuel: int = 1000) -> tuple[Word, bool]:
    """Leftmost-innermost normal form; the flag is false if fuel ran out."""
    R = _as_rules(rules)
    for _ in range(fuel):
        steps = word_one_step(R, u)
        if not steps:
            return u, True
        _, _, u = min(steps, key=lambda s: (s[1], s[0].index))
    return u, not word_one_step(R, u)


def srs_critical_pairs(rules) -> list[SRSCriticalPair]:
    """Overlaps (a proper suffix of one left member is a prefix of the other)
    and inclusions of left members, with both reducts."""
    R = _as_rules(rules)
    out = []
    for r1 in R:
        l1 = r1.lhs.letters
        for r2 in R:
            l2 = r2.lhs.letters
            # r2 starts inside r1 and sticks out on the right
            for k in range(1, min(len(l1), len(l2))):
                if l1[len(l1) - k:] == l2[:k] and k < len(l2):
                    w = Path(r1.lhs.start, r2.lhs.end, l1 + l2[k:])
                    pos2 = len(l1) - k
                    out.append(SRSCriticalPair(
                        r1, r2, w, 0, pos2,
                        _splice(w, 0, len(l1), r1.rhs),
                        _splice(w, pos2, len(l2), r2.rhs),
                    ))
            # r2 inside r1
            if r1.index != r2.index and 0 < len(l2) <= len(l1):
                for pos in range(len(l1) - len(l2) + 1):
                    if l1[pos:pos + len(l2)] == l2:
                        w = r1.lhs
                        out.append(SRSCriticalPair(
                            r1, r2, w, 0, pos,
                            r1.rhs, _splice(w, pos, len(l2), r2.rhs),
                        ))
    return out


def srs_joinable(rules, cp: SRSCriticalPair, fuel: int = 1000) -> bool:
    """Both reducts have the same normal form (assumes termination)."""
    R = _as_rules(rules)
    a, ok1 = word_normalize(R, cp.reduct1, fuel)
    b, ok2 = word_normalize(R, cp.reduct2, fuel)
    return ok1 and ok2 and a == b


def all_words(p: Polygraph, max_len: int) -> list[Word]:
    """All composable winding-free words of length at most ``max_len``, by
    length, then start object, then letter indices."""
    out = []
    letters = sorted(p.src1)
    for n in range(max_len + 1):
        for a in range(len(p.gens[0])):
            if n == 0:
                out.append(Path(a, a, ()))
                continue
            for combo in product(letters, repeat=n):
                obj = a
                ok = True
                for f in combo:
                    if p.src1[f] != obj:
                        ok = False
                        break
                    obj = p.tgt1[f]
                if ok:
                    out.append(Path(a, obj, tuple((f, 0) for f in combo)))
    return out


def enumerate_normal_forms(p: Polygraph, max_len: int) -> list[Word]:
    """Words of length at most ``max_len`` containing no left member."""
    R = string_rules(p)
    return [w for w in all_words(p, max_len) if not word_one_step(R, w)]


def check_presentation(
    p: Polygraph,
    images: dict,
    multiply: Callable,
    unit,
    bound: int = 6,
) -> PresentationVerdict:
    """Check that ``f`` (letters to ``images``) respects the rules and is
    injective on normal forms up to length ``bound``.

    ``multiply(x, y)`` is the product of the target monoid (``x`` first) and
    ``unit`` its neutral element. Raises :class:`RuleNotRespected` or
    :class:`CollisionAtBound`.
    """

    def f(w: Word):
        x = unit
        for g, _ in w.letters:
            x = multiply(x, images[p.name_of(1, g)])
        return x

    for r in string_rules(p):
        if f(r.lhs) != f(r.rhs):
            raise RuleNotRespected(f"rule {r.name}: {f(r.lhs)!r} != {f(r.rhs)!r}")
    seen = {}
    nfs = enumerate_normal_forms(p, bound)
    for w in nfs:
        x = f(w)
        if x in seen:
            raise CollisionAtBound(f"{show(p, seen[x])} and {show(p, w)} both map to {x!r}")
        seen[x] = w
    return PresentationVerdict(True, len(nfs), bound)


# -- suspension --------------------------------------------------------------


def suspend(p: Polygraph) -> Polygraph:
    """The 3-polygraph with one object whose wires are the objects of ``p``,
    whose 2-generators are its letters and whose rules are its 2-generators."""
    if p.gens[3]:
        raise PolygraphError("only polygraphs of dimension at most 2 can be suspended")
    q = Polygraph(p.name)
    q.add_generator(0, "*")
    for g in p.gens[0]:
        q.add_generator(1, g.name, "*", "*")
    for g in p.gens[1]:
        q.add_generator(2, g.name, Path(0, 0, ((p.src1[g.index], 0),)), Path(0, 0, ((p.tgt1[g.index], 0),)))
    for g in p.gens[2]:
        q.add_generator(3, g.name, word_diagram(q, p.src2[g.index]), word_diagram(q, p.tgt2[g.index]))
    return q


def word_diagram(q: Polygraph, w: Word) -> Diagram:
    """A word as a vertical chain of nodes in the suspension ``q``."""
    if not w.letters:
        return identity(q, Path(0, 0, ((w.start, 0),)))
    return seq(*(of_generator(q, f) for f, _ in w.letters))


def diagram_word(d: Diagram) -> Word:
    """Inverse of :func:`word_diagram` on chains."""
    prod, cons = d.ports()
    w = d.source[0]
    start = d.wires[w][0]
    letters = []
    while True:
        c, _ = cons[w]
        if c < 0:
            break
        node = d.nodes[c]
        letters.append((node.label.gen, 0))
        w = node.outputs[0]
    return Path(start, d.wires[w][0], tuple(letters))


__all__ = [
    "Word", "StringRule", "SRSCriticalPair", "PresentationVerdict", "string_rules", "word", "show",
    "word_one_step", "word_normalize", "srs_critical_pairs", "srs_joinable", "all_words",
    "enumerate_normal_forms", "check_presentation", "suspend", "word_diagram", "diagram_word",
]
