"""Monte Carlo convergence of the sphere L2 identity for one random polynomial.

    python3 scripts/sphere_l2_mc.py --degree 4 --seed 3
"""
import argparse
from dataclasses import dataclass

import numpy as np

from slicereg import StemPolynomial
from slicereg.norms import norm_sandwich, sphere_l2, sphere_l2_mc


@dataclass(frozen=True)
class Config:
    degree: int = 4
    seed: int = 0
    x: float = 0.3
    y: float = 0.8


def main(cfg: Config) -> None:
    f = StemPolynomial(np.random.default_rng(cfg.seed).normal(size=(cfg.degree + 1, 4)))
    exact = sphere_l2(f, cfg.x, cfg.y)
    print(f"closed form 4 pi |F|^2 = {exact:.8f}")
    for n in (10**3, 10**4, 10**5, 10**6):
        est, err = sphere_l2_mc(f, cfg.x, cfg.y, n=n, seed=cfg.seed)
        print(f"n={n:>8d}  estimate={est:.8f}  stderr={err:.2e}  deviation={(est - exact) / err:+.2f} se")
    s = norm_sandwich(f, cfg.x, cfg.y)
    print(f"min |f| on sphere ~ {s.min_sample:.6f} <= |F| = {s.stem_norm:.6f} <= |alpha|+|beta| = {s.max_closed:.6f}")
    print(f"sampled max |f| = {s.max_sample:.6f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        ap.add_argument(f"--{name}", type=type(default), default=default)
    main(Config(**vars(ap.parse_args())))
