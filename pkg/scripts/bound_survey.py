"""Bound reports for random instances, as CSV (same columns as the CLI).

    python3 scripts/bound_survey.py --count 200 --mixed > survey.csv
"""

import argparse
import csv
import sys
from dataclasses import dataclass

import numpy as np

from uncertainty_bounds import bounds
from uncertainty_bounds.cli import CSV_COLUMNS
from uncertainty_bounds.quantum import random_density, random_observable, random_pure_state


@dataclass
class SurveyConfig:
    count: int = 100
    d_max: int = 5
    k_max: int = 6
    mixed: bool = False
    seed: int = 0


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--d-max", type=int, default=5)
    p.add_argument("--k-max", type=int, default=6)
    p.add_argument("--mixed", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    cfg = SurveyConfig(**vars(p.parse_args(argv)))

    rng = np.random.default_rng(cfg.seed)
    w = csv.DictWriter(sys.stdout, CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for i in range(cfg.count):
        d, k = int(rng.integers(2, cfg.d_max + 1)), int(rng.integers(2, cfg.k_max + 1))
        obs = [random_observable(rng, d, f"A{j + 1}") for j in range(k)]
        s = random_density(rng, d) if cfg.mixed else random_pure_state(rng, d)
        rep = bounds.bound_report(obs, s, permute=True, sweep=False)
        prod = rep.deviation_product
        w.writerow({
            "instance_id": f"random-{i}", "k": k, "d": d, "product": prod,
            "w_id": rep.radius_exact_id, "w_perm": rep.radius_permuted, "t22": rep.bound_theorem22,
            "chain": rep.bound_robertson_chain, "norm": rep.norm_based,
            "ratio": rep.bound_theorem22 / prod if prod > 1e-12 else "",
        })


if __name__ == "__main__":
    main()
