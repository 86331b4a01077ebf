"""Left-symmetry of the tabulated adjoint-type matrices on the t2t8 family.

Each tabulated matrix is tried raw and with ad X0 added back; the second table
is also tried with its (6, 1) entry replaced by 2*alpha3.
"""

import argparse
import itertools
import json
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from filiform.affine import (
    adjoint_type_build,
    check_left_symmetric,
    corrected_l1_second,
    l1_from_tabulated,
    tabulated_l1_first,
    tabulated_l1_second,
)
from filiform.families import instantiate


@dataclass
class AffineConfig:
    t_values: list = field(default_factory=lambda: [-1, 0, 1, 2])
    samples: int = 5
    seed: int = 0


TABLES = [
    ("first", tabulated_l1_first),
    ("second", tabulated_l1_second),
    ("second_corrected", corrected_l1_second),
]


def run(cfg: AffineConfig) -> list[dict]:
    rng = random.Random(cfg.seed)
    rows = []
    for t, (name, build) in itertools.product(cfg.t_values, TABLES):
        T = instantiate("t2t8", {"t": t})
        raw_ok = with_ad_ok = 0
        for _ in range(cfg.samples):
            alphas = [Fraction(rng.randint(-3, 3)) for _ in range(6)]
            raw = build(t, alphas)
            raw_ok += bool(check_left_symmetric(adjoint_type_build(T, raw), T, stop_early=True))
            fixed = l1_from_tabulated(T, raw)
            with_ad_ok += bool(check_left_symmetric(adjoint_type_build(T, fixed), T, stop_early=True))
        rows.append({"t": t, "table": name, "raw_ok": raw_ok,
                     "with_ad_ok": with_ad_ok, "samples": cfg.samples})
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = AffineConfig(samples=args.samples, seed=args.seed)
    print(json.dumps({"config": asdict(cfg), "rows": run(cfg)}, indent=2))


if __name__ == "__main__":
    main()
