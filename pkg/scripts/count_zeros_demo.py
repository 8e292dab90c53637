"""Classify and count zeros of a few polynomials that share a symmetrization.

    python3 scripts/count_zeros_demo.py --radius 2
"""
import argparse
from dataclasses import dataclass

from slicereg import Contour, Quaternion, StemPolynomial, count_in_region, find_zeros, symmetrize


@dataclass(frozen=True)
class Config:
    radius: float = 2.0


CASES = {
    "q^2 + 1": StemPolynomial.from_real([1, 0, 1]),
    "(q - i)*(q - j)": StemPolynomial.linear(Quaternion(0, 1, 0, 0)) * StemPolynomial.linear(Quaternion(0, 0, 1, 0)),
    "(q - i)*(q + i)": StemPolynomial.linear(Quaternion(0, 1, 0, 0)) * StemPolynomial.linear(Quaternion(0, -1, 0, 0)),
    "q (q - 1/2)": StemPolynomial.from_real([0, -0.5, 1]),
}


def main(cfg: Config) -> None:
    c = Contour.circle(0.0, cfg.radius)
    for name, f in CASES.items():
        print(f"{name}: Phi o F = {symmetrize(f).coeffs.real.round(12).tolist()}")
        for rec in find_zeros(f):
            unit = None if rec.unit is None else rec.unit.as_array().round(12).tolist()
            print(f"    {rec.kind:9s} stem={rec.stem_point:.6g} order={rec.order} unit={unit}")
        rep = count_in_region(f, c)
        print(f"    tallies={rep.tallies()} winding={rep.winding} predicted={rep.predicted_winding()}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--radius", type=float, default=Config.radius)
    main(Config(**vars(ap.parse_args())))
