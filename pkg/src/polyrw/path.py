"""1-cells of the free category with formal adjoints.

A path is a composable word of 1-generators, each letter carrying a winding
number. A letter ``(f, n)`` with ``f : A -> B`` goes from ``A`` to ``B`` when
``n`` is even and from ``B`` to ``A`` when ``n`` is odd. Equality of paths is
syntactic equality of the letter lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable

from .errors import EndpointMismatch, UnknownGenerator

if TYPE_CHECKING:
    from .signature import Polygraph

Letter = tuple[int, int]


@dataclass(frozen=True)
class Path:
    """A composable word of 1-generators with winding numbers.

    Attributes:
        start: index of the source 0-generator.
        end: index of the target 0-generator.
        letters: tuple of ``(1-generator index, winding)`` pairs.
    """

    start: int
    end: int
    letters: tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    @property
    def winding_free(self) -> bool:
        return all(n == 0 for _, n in self.letters)


def letter_endpoints(p: Polygraph, f: int, n: int) -> tuple[int, int]:
    """Endpoints of the letter ``f^n``; odd windings reverse the direction."""
    if f not in p.src1:
        raise UnknownGenerator(f"unknown 1-generator {f}")
    a, b = p.src1[f], p.tgt1[f]
    return (a, b) if n % 2 == 0 else (b, a)


def id_path(p: Polygraph, a: int) -> Path:
    """The empty path on the 0-generator ``a``."""
    if not 0 <= a < len(p.gens[0]):
        raise UnknownGenerator(f"unknown 0-generator {a}")
    return Path(a, a, ())


def path_of(p: Polygraph, letters: Iterable[Letter], start: int | None = None) -> Path:
    """Build a path from letters, checking that consecutive letters chain.

    ``start`` is only needed for the empty path; otherwise it is inferred from
    the first letter (and checked if given).
    """
    letters = tuple((int(f), int(n)) for f, n in letters)
    if not letters:
        if start is None:
            raise EndpointMismatch("empty path needs an explicit start object")
        return id_path(p, start)
    a, cur = letter_endpoints(p, *letters[0])
    if start is not None and start != a:
        raise EndpointMismatch(f"path starts at {a}, expected {start}")
    for f, n in letters[1:]:
        s, t = letter_endpoints(p, f, n)
        if s != cur:
            raise EndpointMismatch(
                f"letter {p.gens[1][f].name}^{n} starts at {p.gens[0][s].name}, "
                f"previous letter ends at {p.gens[0][cur].name}"
            )
        cur = t
    return Path(a, cur, letters)


def compose(p: Path, q: Path) -> Path:
    """Concatenate ``p`` then ``q``."""
    if p.end != q.start:
        raise EndpointMismatch(f"cannot compose: path ends at {p.end}, next starts at {q.start}")
    return Path(p.start, q.end, p.letters + q.letters)


def adjoint(p: Path, shift: int) -> Path:
    """Formal adjoint: reverse the word and shift every winding by ``shift``."""
    if shift not in (1, -1):
        raise ValueError("shift must be +1 or -1")
    return Path(p.end, p.start, tuple((f, n + shift) for f, n in reversed(p.letters)))


def endpoints(p: Path) -> tuple[int, int]:
    return p.start, p.end


def format_path(p: Path, sig: Polygraph) -> str:
    """Render as ``f g^-1``; the empty path is ``id(A)``."""
    if not p.letters:
        return f"id({sig.gens[0][p.start].name})"
    out = []
    for f, n in p.letters:
        name = sig.gens[1][f].name
        out.append(name if n == 0 else f"{name}^{n}")
    return " ".join(out)
