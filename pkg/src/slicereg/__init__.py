"""Numerical toolkit for slice-regular polynomials over the quaternions (and R_3)."""
from .errors import ContractViolation, SliceError
from .hypercomplex import ComplexQuad, ImaginaryUnit, Quaternion, phi, rho, star
from .stem import ComplexPoly, StemPolynomial, StemRational, star_inverse, star_product, symmetrize
from .zeros import Contour, CountReport, ZeroRecord, count_in_region, find_zeros, weighted_zero_count

__all__ = [
    "ComplexPoly",
    "ComplexQuad",
    "ContractViolation",
    "Contour",
    "CountReport",
    "ImaginaryUnit",
    "Quaternion",
    "SliceError",
    "StemPolynomial",
    "StemRational",
    "ZeroRecord",
    "count_in_region",
    "find_zeros",
    "phi",
    "rho",
    "star",
    "star_inverse",
    "star_product",
    "symmetrize",
    "weighted_zero_count",
]
