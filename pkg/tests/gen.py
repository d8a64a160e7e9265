"""Random diagram generators shared by the property tests.

Every generator takes a ``random.Random`` so that hypothesis can drive it
through ``st.randoms()`` and scripts can reuse it with a fixed seed.
"""

from __future__ import annotations

import random

from polyrw.compact import eps, eta
from polyrw.diagram import identity, of_generator, vcompose, whisker
from polyrw.path import Path


def _path(f: int, windings) -> Path:
    return Path(0, 0, tuple((f, w) for w in windings))


def _arities(sig):
    return [(g.index, len(sig.src2[g.index]), len(sig.tgt2[g.index])) for g in sig.gens[2]]


def random_plain(rng: random.Random, sig, max_nodes: int = 6, width: int | None = None, max_width: int = 5):
    """A random plain diagram over a one-object, one-wire signature, built
    layer by layer from a source of ``width`` wires."""
    f = 0
    w = rng.randint(0, 3) if width is None else width
    d = identity(sig, _path(f, [0] * w))
    gens = _arities(sig)
    for _ in range(rng.randint(0, max_nodes)):
        choices = [(g, k, m) for g, k, m in gens if k <= w and w - k + m <= max_width]
        if not choices:
            break
        g, k, m = rng.choice(choices)
        i = rng.randint(0, w - k)
        d = vcompose(d, whisker(of_generator(sig, g), _path(f, [0] * i), _path(f, [0] * (w - k - i))))
        w += m - k
    return d


def random_compact(rng: random.Random, sig, max_nodes: int = 8, width: int | None = None, windings=(-1, 0, 1, 2)):
    """A random compact diagram: generators on winding-0 wires, units with a
    random winding, and counits wherever two neighbours ``f^m f^{m-1}`` allow."""
    f = 0
    ws = [0] * (rng.randint(0, 3) if width is None else width)
    d = identity(sig, _path(f, ws))
    gens = _arities(sig)
    for _ in range(rng.randint(0, max_nodes)):
        caps = [i for i in range(len(ws) - 1) if ws[i + 1] == ws[i] - 1]
        plain = [(g, k, i) for g, k, _ in gens for i in range(len(ws) - k + 1) if all(x == 0 for x in ws[i:i + k])]
        r = rng.random()
        if caps and r < 0.45:
            i = rng.choice(caps)
            node, k, outs = eps(sig, f, ws[i]), 2, []
        elif plain and r < 0.75:
            g, k, i = rng.choice(plain)
            node, outs = of_generator(sig, g), [0] * len(sig.tgt2[g])
        else:
            n = rng.choice(windings)
            i, k = rng.randint(0, len(ws)), 0
            node, outs = eta(sig, f, n), [n - 1, n]
        d = vcompose(d, whisker(node, _path(f, ws[:i]), _path(f, ws[i + k:])))
        ws = ws[:i] + outs + ws[i + k:]
    return d


def snaky(rng: random.Random, d, bends: int = 3):
    """``d`` with some of its boundary wires replaced by zig-zags; the zig-zag
    normal form of the result is ``d`` again."""
    f = 0
    for _ in range(bends):
        ws = [w for _, w in d.labels(d.target)]
        if not ws:
            break
        i = rng.randrange(len(ws))
        n = ws[i]
        left, right = _path(f, ws[:i]), _path(f, ws[i + 1:])
        if rng.random() < 0.5:
            # zig: (eta_{n+1} * f^n) . (f^n * eps_{n+1})
            top = whisker(identity(d.sig, _path(f, [n])), Path(0, 0, ()), Path(0, 0, ()))
            zz = vcompose(
                vcompose(top, whisker(eta(d.sig, f, n + 1), _path(f, []), _path(f, [n]))),
                whisker(eps(d.sig, f, n + 1), _path(f, [n]), _path(f, [])),
            )
        else:
            # zag: (f^n * eta_n) . (eps_n * f^n)
            zz = vcompose(
                whisker(eta(d.sig, f, n), _path(f, [n]), _path(f, [])),
                whisker(eps(d.sig, f, n), _path(f, []), _path(f, [n])),
            )
        d = vcompose(d, whisker(zz, left, right))
    return d


def shuffled(rng: random.Random, d):
    """An isomorphic copy of ``d`` with scrambled wire and node ids."""
    ws = list(d.wires)
    ns = list(d.nodes)
    wt = rng.sample(range(100, 100 + 3 * len(ws) + 1), len(ws))
    nt = rng.sample(range(100, 100 + 3 * len(ns) + 1), len(ns))
    return d.relabeled(dict(zip(ws, wt)), dict(zip(ns, nt)))
