"""Grid sweep of symplectic existence on the first dimension-8 component.

Compares each verdict with the factor test a4*(a2+a4)*(2*a2-a4)*(a2+2*a4) != 0
and prints a JSON summary.
"""

import argparse
import itertools
import json
from dataclasses import asdict, dataclass, field

from filiform.ceforms import symplectic_exists
from filiform.families import instantiate


@dataclass
class SweepConfig:
    values: list = field(default_factory=lambda: [-2, -1, 0, 1, 2])
    fixed: dict = field(default_factory=lambda: {"a7": 0, "a8": 0})
    seed: int = 0


def factor_test(a2, a4) -> bool:
    if 5 * a4 + 2 * a2 == 0:
        return a2 == 0 and a4 == 0
    return a4 * (a2 + a4) * (2 * a2 - a4) * (a2 + 2 * a4) != 0


def run(cfg: SweepConfig) -> dict:
    counts = {"symplectic": 0, "not_symplectic": 0}
    mismatches = []
    for a2, a4, a5, a6 in itertools.product(cfg.values, repeat=4):
        pt = {"a2": a2, "a4": a4, "a5": a5, "a6": a6, **cfg.fixed}
        res = symplectic_exists(instantiate("fil8c1", pt), seed=cfg.seed)
        counts["symplectic" if res.exists else "not_symplectic"] += 1
        if res.exists != factor_test(a2, a4):
            mismatches.append(pt)
    return {"config": asdict(cfg), "counts": counts, "mismatches": mismatches}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--range", type=int, default=2, help="sweep integers in [-R, R]")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = SweepConfig(values=list(range(-args.range, args.range + 1)), seed=args.seed)
    print(json.dumps(run(cfg), indent=2, default=str))


if __name__ == "__main__":
    main()
