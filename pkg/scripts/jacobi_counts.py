"""Table of Jacobi equation counts and shift-reduced generators for n = 2p + 1."""

import argparse
import json
from dataclasses import asdict, dataclass

from filiform.vergnegen import equation_count, generic_filiform, jacobi_ideal, reduce_ideal, reduced_count_for


@dataclass
class CountConfig:
    p_min: int = 3
    p_max: int = 6
    brute_force: bool = True
    reduce: bool = True


def row(p: int, cfg: CountConfig) -> dict:
    out = equation_count(p, brute_force=cfg.brute_force)
    out["reduced_formula"] = reduced_count_for(p)["value"]
    if cfg.reduce:
        eqs = jacobi_ideal(generic_filiform(2 * p + 1))
        out["reduced_generators"] = len(reduce_ideal(eqs).generators)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p-min", type=int, default=3)
    ap.add_argument("--p-max", type=int, default=6)
    ap.add_argument("--no-brute-force", action="store_true")
    ap.add_argument("--no-reduce", action="store_true")
    args = ap.parse_args()
    cfg = CountConfig(args.p_min, args.p_max, not args.no_brute_force, not args.no_reduce)
    rows = [row(p, cfg) for p in range(cfg.p_min, cfg.p_max + 1)]
    print(json.dumps({"config": asdict(cfg), "rows": rows}, indent=2))


if __name__ == "__main__":
    main()
