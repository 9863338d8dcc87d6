"""Best bound/product ratios found by random search for random observables.

For odd k >= 5 it is not known whether the correlation bound can be
attained; this script only reports what the search finds.

    python3 scripts/odd_k_tightness.py --k 3 5 --dims 2 3 --trials 5
"""

import argparse
from dataclasses import dataclass, field

import numpy as np

from uncertainty_bounds.quantum import random_observable
from uncertainty_bounds.search import SearchConfig, tightness_search


@dataclass
class StudyConfig:
    ks: list = field(default_factory=lambda: [3, 5])
    dims: list = field(default_factory=lambda: [2, 3])
    trials: int = 5
    samples: int = 2000
    refine: int = 200
    seed: int = 0


def run(cfg: StudyConfig):
    rng = np.random.default_rng(cfg.seed)
    print("k  d  trial  best_ratio   mean_ratio   refine_accepted")
    for k in cfg.ks:
        for d in cfg.dims:
            for t in range(cfg.trials):
                obs = [random_observable(rng, d, f"A{j + 1}") for j in range(k)]
                search_seed = int(rng.integers(2**32))
                res = tightness_search(obs, SearchConfig(samples=cfg.samples, seed=search_seed,
                                                         refine_steps=cfg.refine))
                tr = res.trace
                print(f"{k}  {d}  {t:5d}  {res.ratio:.8f}   {tr['ratio_mean']:.8f}   {tr['refine_accepted']}")


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--k", dest="ks", type=int, nargs="+", default=[3, 5])
    p.add_argument("--dims", type=int, nargs="+", default=[2, 3])
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--refine", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    run(StudyConfig(**vars(p.parse_args(argv))))


if __name__ == "__main__":
    main()
