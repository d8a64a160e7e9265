"""Polygraphs up to dimension 3.

A polygraph lists generators per dimension. 1-generators have 0-generators as
source and target, 2-generators have paths, 3-generators (rewriting rules)
have diagrams. Generators are referred to by their integer index inside their
dimension; names are only used for display and parsing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .errors import DuplicateName, GlobularViolation, PolygraphError, UnknownGenerator
from .path import Path, letter_endpoints

if TYPE_CHECKING:
    from .diagram import Diagram

MAX_DIM = 3


@dataclass(frozen=True)
class Generator:
    dim: int
    index: int
    name: str


@dataclass(frozen=True)
class Violation:
    """One failed invariant, as reported by :func:`validate`."""

    kind: str
    generator: str
    message: str


class Polygraph:
    """A 3-polygraph (or a lower-dimensional one, if the top sets are empty).

    Args:
        name: display name, used by the file format.
        compact_rules: allow 3-generators whose sides contain units and counits.
            Only the zig-zag system uses this.
    """

    def __init__(self, name: str = "", compact_rules: bool = False):
        self.name = name
        self.compact_rules = compact_rules
        self.gens: list[list[Generator]] = [[] for _ in range(MAX_DIM + 1)]
        self.src1: dict[int, int] = {}
        self.tgt1: dict[int, int] = {}
        self.src2: dict[int, Path] = {}
        self.tgt2: dict[int, Path] = {}
        self.src3: dict[int, Diagram] = {}
        self.tgt3: dict[int, Diagram] = {}
        self._names: list[dict[str, int]] = [{} for _ in range(MAX_DIM + 1)]

    def __repr__(self) -> str:
        counts = ", ".join(str(len(g)) for g in self.gens)
        return f"Polygraph({self.name!r}, gens=[{counts}])"

    @property
    def dimension(self) -> int:
        """Highest dimension with at least one generator (0 if empty)."""
        for k in range(MAX_DIM, -1, -1):
            if self.gens[k]:
                return k
        return 0

    def index(self, dim: int, name: str) -> int:
        """Index of the generator called ``name`` in dimension ``dim``."""
        try:
            return self._names[dim][name]
        except KeyError:
            raise UnknownGenerator(f"no {dim}-generator named {name!r}") from None

    def has(self, dim: int, name: str) -> bool:
        return name in self._names[dim]

    def name_of(self, dim: int, index: int) -> str:
        return self.gens[dim][index].name

    def add_generator(self, dim: int, name: str, src=None, tgt=None) -> Generator:
        """Declare a generator and check the globular conditions.

        For ``dim == 1`` the endpoints are 0-generators (index or name), for
        ``dim == 2`` paths, for ``dim == 3`` diagrams.
        """
        if not 0 <= dim <= MAX_DIM:
            raise PolygraphError(f"dimension {dim} out of range")
        if name in self._names[dim]:
            raise DuplicateName(f"{dim}-generator {name!r} already declared")
        idx = len(self.gens[dim])
        if dim == 0:
            if src is not None or tgt is not None:
                raise PolygraphError("0-generators have no source or target")
        elif dim == 1:
            s, t = self._object(src), self._object(tgt)
            self.src1[idx], self.tgt1[idx] = s, t
        elif dim == 2:
            self._check_path(src)
            self._check_path(tgt)
            if (src.start, src.end) != (tgt.start, tgt.end):
                raise GlobularViolation(
                    f"2-generator {name!r}: source and target paths are not parallel"
                )
            if not (src.winding_free and tgt.winding_free):
                raise GlobularViolation(f"2-generator {name!r}: boundaries must be winding-free")
            self.src2[idx], self.tgt2[idx] = src, tgt
        else:
            for err in _rule_problems(self, name, src, tgt):
                raise err
            self.src3[idx], self.tgt3[idx] = src, tgt
        gen = Generator(dim, idx, name)
        self.gens[dim].append(gen)
        self._names[dim][name] = idx
        return gen

    def _object(self, a) -> int:
        if isinstance(a, Generator):
            a = a.index
        if isinstance(a, str):
            return self.index(0, a)
        if not isinstance(a, int) or not 0 <= a < len(self.gens[0]):
            raise UnknownGenerator(f"unknown 0-generator {a!r}")
        return a

    def _check_path(self, q) -> None:
        if not isinstance(q, Path):
            raise PolygraphError("expected a Path")
        for f, n in q.letters:
            if f not in self.src1:
                raise UnknownGenerator(f"unknown 1-generator {f}")
            letter_endpoints(self, f, n)
        if not (0 <= q.start < len(self.gens[0]) and 0 <= q.end < len(self.gens[0])):
            raise UnknownGenerator("path mentions an unknown 0-generator")

    def copy(self) -> Polygraph:
        return truncate(self, MAX_DIM)


def new_polygraph(name: str = "") -> Polygraph:
    return Polygraph(name)


def truncate(p: Polygraph, n: int) -> Polygraph:
    """Copy of ``p`` keeping only the generators of dimension at most ``n``."""
    q = Polygraph(p.name, p.compact_rules)
    for k in range(min(n, MAX_DIM) + 1):
        q.gens[k] = list(p.gens[k])
        q._names[k] = dict(p._names[k])
    if n >= 1:
        q.src1, q.tgt1 = dict(p.src1), dict(p.tgt1)
    if n >= 2:
        q.src2, q.tgt2 = dict(p.src2), dict(p.tgt2)
    if n >= 3:
        q.src3 = {r: d.rebind(q) for r, d in p.src3.items()}
        q.tgt3 = {r: d.rebind(q) for r, d in p.tgt3.items()}
    return q


def _rule_problems(p: Polygraph, name: str, lhs, rhs) -> list[PolygraphError]:
    from .diagram import Diagram, check_diagram, source2, target2

    errs: list[PolygraphError] = []
    for side in (lhs, rhs):
        if not isinstance(side, Diagram):
            return [PolygraphError(f"3-generator {name!r}: sides must be diagrams")]
    for side in (lhs, rhs):
        for node in side.nodes.values():
            kind = node.label.kind
            if kind == "gen" and node.label.gen not in p.src2:
                errs.append(UnknownGenerator(f"3-generator {name!r} uses unknown 2-generator"))
            elif kind == "hole":
                errs.append(GlobularViolation(f"3-generator {name!r}: rules cannot contain holes"))
            elif kind in ("eta", "eps") and not p.compact_rules:
                errs.append(GlobularViolation(f"3-generator {name!r}: rules must be winding-free"))
        for f, n in side.wires.values():
            if f not in p.src1:
                errs.append(UnknownGenerator(f"3-generator {name!r} uses unknown 1-generator"))
            elif n != 0 and not p.compact_rules:
                errs.append(GlobularViolation(f"3-generator {name!r}: rules must be winding-free"))
    if errs:
        return errs
    for side in (lhs, rhs):
        try:
            check_diagram(side)
        except PolygraphError as e:
            errs.append(e)
    if errs:
        return errs
    if source2(lhs) != source2(rhs) or target2(lhs) != target2(rhs):
        errs.append(
            GlobularViolation(f"3-generator {name!r}: sides do not have the same boundary")
        )
    return errs


def validate(p: Polygraph) -> list[Violation]:
    """Check every invariant of ``p``; an empty list means valid."""
    out: list[Violation] = []

    def add(err: PolygraphError, gen: str) -> None:
        out.append(Violation(type(err).__name__, gen, str(err)))

    n0 = len(p.gens[0])
    for g in p.gens[1]:
        for a in (p.src1.get(g.index), p.tgt1.get(g.index)):
            if a is None or not 0 <= a < n0:
                add(UnknownGenerator(f"1-generator {g.name!r} has a dangling endpoint"), g.name)
                break
    for g in p.gens[2]:
        s, t = p.src2.get(g.index), p.tgt2.get(g.index)
        try:
            if s is None or t is None:
                raise UnknownGenerator(f"2-generator {g.name!r} lacks a boundary")
            p._check_path(s)
            p._check_path(t)
            if (s.start, s.end) != (t.start, t.end):
                raise GlobularViolation(f"2-generator {g.name!r}: boundaries not parallel")
            if not (s.winding_free and t.winding_free):
                raise GlobularViolation(f"2-generator {g.name!r}: boundaries must be winding-free")
        except PolygraphError as e:
            add(e, g.name)
    for g in p.gens[3]:
        lhs, rhs = p.src3.get(g.index), p.tgt3.get(g.index)
        if lhs is None or rhs is None:
            add(UnknownGenerator(f"3-generator {g.name!r} lacks a side"), g.name)
            continue
        for e in _rule_problems(p, g.name, lhs, rhs):
            add(e, g.name)
    return out
