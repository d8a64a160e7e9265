"""Critical pairs and local confluence of every builtin polygraph.

    python3 scripts/critical_pair_survey.py --fuel 50 --json survey.json
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from polyrw.examples import builtin, builtin_names
from polyrw.rewrite import local_confluence
from polyrw.unify import critical_pairs


@dataclass
class SurveyConfig:
    names: list[str] = field(default_factory=lambda: [n for n in builtin_names() if n != "delta(n)"] + ["delta(3)"])
    fuel: int = 50
    assume_terminating: bool = False


@dataclass
class SurveyRow:
    name: str
    pairs: int
    regular: int
    holed: int
    joined: int
    status: str
    seconds: float


def survey(cfg: SurveyConfig) -> list[SurveyRow]:
    rows = []
    for name in cfg.names:
        p = builtin(name)
        t0 = time.perf_counter()
        cps = critical_pairs(p)
        v = local_confluence(p, fuel=cfg.fuel, assume_terminating=cfg.assume_terminating)
        rows.append(SurveyRow(
            name=name,
            pairs=len(cps),
            regular=sum(cp.regular for cp in cps),
            holed=sum(1 for cp in cps if cp.holes),
            joined=v.joined,
            status=v.status,
            seconds=round(time.perf_counter() - t0, 3),
        ))
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fuel", type=int, default=50)
    ap.add_argument("--assume-terminating", action="store_true")
    ap.add_argument("--json", metavar="FILE")
    args = ap.parse_args()
    cfg = SurveyConfig(fuel=args.fuel, assume_terminating=args.assume_terminating)
    rows = survey(cfg)
    print(f"{'system':<12} {'pairs':>5} {'regular':>7} {'holed':>5} {'joined':>6}  status")
    for r in rows:
        print(f"{r.name:<12} {r.pairs:>5} {r.regular:>7} {r.holed:>5} {r.joined:>6}  {r.status} ({r.seconds}s)")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump({"config": asdict(cfg), "rows": [asdict(r) for r in rows]}, fh, indent=2)


if __name__ == "__main__":
    main()
