"""Restricted H2 dimensions over a parameter grid of a family."""

import argparse
import json
from dataclasses import asdict, dataclass, field

from filiform.cohomdef import sweep


@dataclass
class H2Config:
    family: str = "fil8c1"
    grid: dict = field(default_factory=lambda: {"a2": [-1, 0, 1, 2], "a4": [-1, 1, 2]})
    fixed: dict = field(default_factory=lambda: {"a5": 1})
    workers: int = 1


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", default=H2Config.family)
    ap.add_argument("--grid", help="JSON object mapping parameter names to value lists")
    ap.add_argument("--fixed", help="JSON object of fixed parameter values")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    cfg = H2Config(family=args.family, workers=args.workers)
    if args.grid:
        cfg.grid = json.loads(args.grid)
    if args.fixed is not None:
        cfg.fixed = json.loads(args.fixed)
    rows = sweep(cfg.family, cfg.grid, fixed=cfg.fixed, workers=cfg.workers)
    hist = {}
    for r in rows:
        if "dimH2" in r:
            hist[r["dimH2"]] = hist.get(r["dimH2"], 0) + 1
    print(json.dumps({"config": asdict(cfg), "histogram": hist, "rows": rows}, indent=2, default=str))


if __name__ == "__main__":
    main()
