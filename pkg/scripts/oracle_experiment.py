"""Compare critical-pair unification with brute-force enumeration of small unifiers.

For each pair of rules, every plain diagram of at most ``max_size`` nodes that
contains both left members with a shared node is enumerated; the same set is
rebuilt from the critical pairs by regular closure. Both sets are compared up
to isomorphism.

    python3 scripts/oracle_experiment.py monoid symmetry --max-size 3
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from polyrw.examples import builtin
from polyrw.unify import oracle_compare


@dataclass
class OracleConfig:
    names: list[str] = field(default_factory=lambda: ["monoid", "symmetry"])
    max_size: int = 3


def run(cfg: OracleConfig) -> bool:
    ok = True
    for name in cfg.names:
        p = builtin(name)
        rule_names = {g.index: g.name for g in p.gens[3]}
        t0 = time.perf_counter()
        report = oracle_compare(p, cfg.max_size)
        dt = time.perf_counter() - t0
        print(f"== {name} (max size {cfg.max_size}, {dt:.2f}s)")
        for (i, j), (brute, closure) in sorted(report.items()):
            same = brute == closure
            ok &= same
            print(f"  {rule_names[i]}/{rule_names[j]}: brute force {len(brute)}, closure {len(closure)}"
                  f"{'' if same else '  MISMATCH'}")
    return ok


def main() -> None:
    ap = argparse.ArgumentParser(description="compare unification with brute force")
    ap.add_argument("names", nargs="*", default=["monoid", "symmetry"])
    ap.add_argument("--max-size", type=int, default=3)
    args = ap.parse_args()
    ok = run(OracleConfig(args.names, args.max_size))
    print("all equal" if ok else "some pairs differ")
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
