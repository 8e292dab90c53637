"""Compare the stem-disc formula for the ball L2 norm with a 4D Monte Carlo estimate.

The ball is covered twice by (x, y, v) and (x, -y, -v), so the full-disc
integral of y^2 |F|^2 carries a factor 2 pi. This prints both candidate
constants next to the Monte Carlo value.

    python3 scripts/bulk_norm_convention.py --samples 1000000
"""
import argparse
import math
from dataclasses import dataclass

import numpy as np

from slicereg import StemPolynomial
from slicereg.norms import bulk_l2, bulk_l2_mc


@dataclass(frozen=True)
class Config:
    samples: int = 1_000_000
    seed: int = 0
    radius: float = 1.0


def main(cfg: Config) -> None:
    rng = np.random.default_rng(cfg.seed)
    cases = {
        "1": StemPolynomial.from_real([1]),
        "q": StemPolynomial.from_real([0, 1]),
        "random cubic": StemPolynomial(rng.normal(size=(4, 4))),
    }
    print(f"{'f':14s} {'2pi * disc':>12s} {'4pi * disc':>12s} {'Monte Carlo':>12s} {'stderr':>9s}")
    for name, f in cases.items():
        quad = bulk_l2(f, cfg.radius)
        est, err = bulk_l2_mc(f, cfg.radius, n=cfg.samples, seed=cfg.seed)
        print(f"{name:14s} {quad:12.6f} {2 * quad:12.6f} {est:12.6f} {err:9.4f}")
    print(f"exact for f=1: pi^2/2 r^4 = {math.pi**2 / 2 * cfg.radius**4:.6f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--radius", type=float, default=Config.radius)
    main(Config(**vars(ap.parse_args())))
