"""Command-line front end: ``polyrw SUBCOMMAND ...``.

Exit codes: 0 on success, 1 on a negative verdict (a critical pair that is
not joinable, a diverging normalization, an oracle mismatch) and 2 on usage
or parse errors.
"""

from __future__ import annotations

import argparse
import sys

from .errors import ParseError, PolygraphError
from .io import (
    cp_to_json,
    diagram_to_json,
    dump,
    format_diagram,
    parse,
    parse_cell,
    render_dot,
    render_tikz,
    to_json,
)
from .path import format_path

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2
# windings this large usually mean an encoding mistake
WINDING_WARN = 8


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise _Usage(f"cannot read {path}: {e.strerror}") from None
    try:
        p = parse(text)
    except ParseError as e:
        e.origin = path
        raise
    for r in p.src3:
        _warn_windings(p.src3[r], f"{path}: rule {p.name_of(3, r)}")
        _warn_windings(p.tgt3[r], f"{path}: rule {p.name_of(3, r)}")
    return p


def _warn_windings(d, where: str) -> None:
    big = max((abs(n) for _, n in d.wires.values()), default=0)
    if big > WINDING_WARN:
        print(f"polyrw: warning: {where} has winding {big} (above {WINDING_WARN})", file=sys.stderr)


def _cell(p, text: str):
    try:
        d = parse_cell(p, text)
    except ParseError as e:
        e.origin = "--cell"
        raise
    _warn_windings(d, "--cell")
    return d


def _hole_text(cp) -> str:
    sig = cp.overlap.sig
    return ", ".join(f"{h} : {format_path(t.src, sig)} => {format_path(t.tgt, sig)}" for h, t in cp.holes)


def _cp_line(k: int, cp) -> str:
    kind = "regular" if cp.regular else ("holed" if cp.holes else "compact")
    plain = cp.plain_overlap()
    shown = format_diagram(plain if plain is not None else cp.overlap)
    line = f"{k}. {cp.r1.name}/{cp.r2.name} [{kind}] {shown}"
    if cp.holes:
        line += f"  where {_hole_text(cp)}"
    return line


# -- subcommands -------------------------------------------------------------


def cmd_validate(args) -> int:
    p = _load(args.file)
    counts = " ".join(f"{len(p.gens[k])}" for k in range(4))
    print(f"ok: {p.name} (generators by dimension: {counts})")
    return EXIT_OK


def cmd_nf(args) -> int:
    from .rewrite import normalize

    p = _load(args.file)
    d = _cell(p, args.cell)
    res, status, trace = normalize(p, d, strategy=args.strategy, fuel=args.fuel)
    if args.json:
        print(to_json({
            "status": status,
            "steps": [s.rule.name for s in trace],
            "normal_form": diagram_to_json(res),
            "expression": format_diagram(res),
        }))
    else:
        print(format_diagram(res))
        print(f"# {status} after {len(trace)} steps")
    return EXIT_OK if status == "normal" else EXIT_NEGATIVE


def cmd_cp(args) -> int:
    from .unify import critical_pairs, regular_closure

    p = _load(args.file)
    cps = critical_pairs(p)
    if args.regular:
        found = []
        for cp in cps:
            for G in regular_closure(cp, args.max_size).values():
                found.append((cp, G))
        if args.json:
            print(to_json({"regular_unifiers": [
                {"rules": [cp.r1.name, cp.r2.name], "unifier": diagram_to_json(G)} for cp, G in found
            ]}))
        else:
            from .compact import open_form

            for k, (cp, G) in enumerate(found, 1):
                print(f"{k}. {cp.r1.name}/{cp.r2.name} {format_diagram(open_form(G))}")
            print(f"# {len(found)} regular unifiers from {len(cps)} critical pairs")
        return EXIT_OK
    if args.json:
        print(to_json({"critical_pairs": [cp_to_json(cp) for cp in cps]}))
    else:
        for k, cp in enumerate(cps, 1):
            print(_cp_line(k, cp))
        print(f"# {len(cps)} critical pairs")
    return EXIT_OK


def cmd_confluence(args) -> int:
    from .rewrite import Joined, NotJoinable, local_confluence

    p = _load(args.file)
    v = local_confluence(p, fuel=args.fuel, assume_terminating=args.assume_terminating)
    if v.confluent:
        verdict = "confluent-by-Newman"
    else:
        verdict = v.status
    if args.json:
        print(to_json({
            "status": v.status,
            "verdict": verdict,
            "terminating": v.terminating,
            "terminating_reason": v.terminating_reason,
            "confluent": v.confluent,
            "pairs": [
                {"rules": [cp.r1.name, cp.r2.name], "result": type(r).__name__} for cp, r in zip(v.pairs, v.results)
            ],
        }))
    else:
        for k, (cp, r) in enumerate(zip(v.pairs, v.results), 1):
            if isinstance(r, Joined):
                what = "joinable"
            elif isinstance(r, NotJoinable):
                what = "not joinable"
            else:
                what = f"unknown ({r.reason})"
            print(f"{k}. {cp.r1.name}/{cp.r2.name}: {what}")
        term = f"terminating ({v.terminating_reason})" if v.terminating else "termination not shown"
        print(f"{verdict}; {v.joined}/{len(v.pairs)} pairs joinable; {term}")
    return EXIT_OK if v.status == "locally-confluent" else EXIT_NEGATIVE


def cmd_render(args) -> int:
    p = _load(args.file)
    d = _cell(p, args.cell)
    sys.stdout.write(render_dot(d) if args.format == "dot" else render_tikz(d))
    return EXIT_OK


def cmd_examples(args) -> int:
    from .examples import builtin, builtin_names

    if args.list:
        for name in builtin_names():
            print(name)
        return EXIT_OK
    try:
        p = builtin(args.dump)
    except PolygraphError as e:
        raise _Usage(str(e)) from None
    sys.stdout.write(dump(p))
    return EXIT_OK


def cmd_oracle(args) -> int:
    from .unify import oracle_compare

    p = _load(args.file)
    report = oracle_compare(p, args.max_size)
    names = {g.index: g.name for g in p.gens[3]} if p.gens[3] else {}
    ok = True
    rows = []
    for (i, j), (brute, clos) in sorted(report.items()):
        same = brute == clos
        ok &= same
        rows.append({"rules": [names.get(i, str(i)), names.get(j, str(j))], "brute_force": len(brute),
                     "closure": len(clos), "equal": same})
    if args.json:
        print(to_json({"max_size": args.max_size, "pairs": rows, "equal": ok}))
    else:
        for r in rows:
            mark = "=" if r["equal"] else "!="
            print(f"{r['rules'][0]}/{r['rules'][1]}: brute force {r['brute_force']} {mark} closure {r['closure']}")
        print("oracle agrees" if ok else "oracle disagrees")
    return EXIT_OK if ok else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="polyrw", description="Rewriting with 3-polygraphs over string diagrams.")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("validate", help="parse and validate a .poly file")
    s.add_argument("file")
    s.set_defaults(run=cmd_validate)

    s = sub.add_parser("nf", help="normalize a cell")
    s.add_argument("file")
    s.add_argument("--cell", required=True)
    s.add_argument("--fuel", type=int, default=100)
    s.add_argument("--strategy", choices=["leftmost", "fair"], default="leftmost")
    s.add_argument("--json", action="store_true")
    s.set_defaults(run=cmd_nf)

    s = sub.add_parser("cp", help="list the critical pairs")
    s.add_argument("file")
    s.add_argument("--regular", action="store_true", help="list regular unifiers obtained by instantiation")
    s.add_argument("--max-size", type=int, default=None)
    s.add_argument("--json", action="store_true")
    s.set_defaults(run=cmd_cp)

    s = sub.add_parser("confluence", help="check local confluence")
    s.add_argument("file")
    s.add_argument("--fuel", type=int, default=50)
    s.add_argument("--assume-terminating", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(run=cmd_confluence)

    s = sub.add_parser("render", help="draw a cell")
    s.add_argument("file")
    s.add_argument("--cell", required=True)
    s.add_argument("--format", choices=["dot", "tikz"], default="dot")
    s.set_defaults(run=cmd_render)

    s = sub.add_parser("examples", help="builtin polygraphs")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--list", action="store_true")
    g.add_argument("--dump", metavar="NAME")
    s.set_defaults(run=cmd_examples)

    s = sub.add_parser("oracle", help="compare unification with brute force")
    s.add_argument("file")
    s.add_argument("--max-size", type=int, default=3)
    s.add_argument("--json", action="store_true")
    s.set_defaults(run=cmd_oracle)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        if not getattr(args, "run", None):
            raise _Usage("a subcommand is required")
        return args.run(args)
    except _Usage as e:
        print(f"polyrw: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as e:
        print(f"{getattr(e, 'origin', 'polyrw')}:{e}", file=sys.stderr)
        return EXIT_USAGE
    except PolygraphError as e:
        print(f"polyrw: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
