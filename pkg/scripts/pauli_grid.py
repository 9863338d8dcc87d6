"""Evaluate the Pauli-triple bounds over Bloch-sphere and Bloch-ball grids.

Writes one CSV row per grid point and prints the extrema and the Pauli
verification table.

    python3 scripts/pauli_grid.py --resolution 201 --out pauli_grid.csv
"""

import argparse
import csv
import json
from dataclasses import asdict, dataclass

import numpy as np

from uncertainty_bounds import search
from uncertainty_bounds.bounds import theorem22_value
from uncertainty_bounds.quantum import pauli


@dataclass
class GridConfig:
    resolution: int = 101
    ball_points_per_axis: int = 21
    out: str = "pauli_grid.csv"
    samples: int = 1000
    seed: int = 0


def rows(points, kind):
    xyz = [pauli(p) for p in "XYZ"]
    means, alphas, devs = search.qubit_moments(xyz, points)
    product = np.prod(devs, axis=0)
    t22 = theorem22_value(alphas, devs)
    mp = np.abs(np.prod(means, axis=0))
    for i, r in enumerate(points):
        yield {
            "kind": kind, "r1": r[0], "r2": r[1], "r3": r[2],
            "product_sq": product[i] ** 2,
            "theorem22": t22[i],
            "rhs_linear": 8 / (3 * np.sqrt(3)) * mp[i],
            "rhs_power": 8 * 3**0.25 / 3 * mp[i] ** 1.5,
        }


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, val in asdict(GridConfig()).items():
        p.add_argument(f"--{name.replace('_', '-')}", type=type(val), default=val)
    cfg = GridConfig(**vars(p.parse_args(argv)))

    xyz = [pauli(c) for c in "XYZ"]
    report = search.bloch_grid(xyz, cfg.resolution, cfg.ball_points_per_axis)
    print(json.dumps(report.to_dict(), indent=2))

    sphere = search.cubed_sphere(cfg.resolution)
    ball = search.ball_grid(cfg.ball_points_per_axis)
    with open(cfg.out, "w", newline="") as fh:
        w = None
        for row in [*rows(sphere, "sphere"), *rows(ball, "ball")]:
            if w is None:
                w = csv.DictWriter(fh, list(row))
                w.writeheader()
            w.writerow(row)
    print(f"wrote {len(sphere) + len(ball)} rows to {cfg.out}")

    suite = search.pauli_suite(samples=cfg.samples, seed=cfg.seed)
    for c in suite.checks:
        print(c.line())


if __name__ == "__main__":
    main()
