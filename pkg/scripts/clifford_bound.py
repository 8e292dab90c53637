"""Winding of Phi_8 o F against the constructed zero content in R_3.

Each example is (q - p) * S * G with p = x + y u (u a random unit of R_3),
an optional real quadratic S with a non-real root, and a random G. Only p is
a known zero, so the winding is an upper bound rather than a count.

    python3 scripts/clifford_bound.py --examples 20
"""
import argparse
from dataclasses import dataclass

import numpy as np

from slicereg.clifford import Clifford3, CliffordPolynomial, count_upper_bound, random_S3
from slicereg.zeros import Contour


@dataclass(frozen=True)
class Config:
    examples: int = 20
    seed: int = 0


def main(cfg: Config) -> None:
    rng = np.random.default_rng(cfg.seed)
    one = np.eye(8)[0]
    print(f"{'#':>3s} {'content':>8s} {'2*content':>10s} {'winding':>8s} {'deg':>4s}")
    for k in range(cfg.examples):
        x, y = rng.normal(), rng.uniform(0.2, 1.5)
        p = Clifford3(x * one + y * random_S3(rng).as_array())
        f, content, radius = CliffordPolynomial.linear(p), 1, abs(complex(x, y))
        if rng.random() < 0.5:
            w = complex(rng.normal(), rng.uniform(0.2, 1.5))
            f = f * CliffordPolynomial([abs(w) ** 2 * one, -2 * w.real * one, one])
            content, radius = content + 2, max(radius, abs(w))
        f = f * CliffordPolynomial(rng.normal(size=(int(rng.integers(1, 3)), 8)))
        bound = count_upper_bound(f, Contour.circle(0.0, radius + 1.0))
        print(f"{k:3d} {content:8d} {2 * content:10d} {bound:8d} {f.coeffs.shape[0] - 1:4d}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--examples", type=int, default=Config.examples)
    ap.add_argument("--seed", type=int, default=Config.seed)
    main(Config(**vars(ap.parse_args())))
