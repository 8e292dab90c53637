"""The Clifford algebra R_3 (three anticommuting generators squaring to -1).

Basis order: 1, e0, e1, e2, e0e1, e0e2, e1e2, e0e1e2. Blades are tracked as
bitmasks over the generators and the product table is built once.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import BoundaryZeroError
from .stem import ComplexPoly
from .zeros import BOUNDARY_RTOL, Contour, winding_log_derivative

BLADES = [0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111]
LABELS = ["1", "e0", "e1", "e2", "e0e1", "e0e2", "e1e2", "e0e1e2"]
# quaternion basis 1, i, j, k inside R_3
QUATERNION_SLOTS = [0, 1, 2, 4]


def _blade_product(a: int, b: int) -> tuple[int, int]:
    swaps = 0
    x = a >> 1
    while x:
        swaps += bin(x & b).count("1")
        x >>= 1
    # each shared generator squares to -1
    swaps += bin(a & b).count("1")
    return (-1 if swaps % 2 else 1), a ^ b


def _table() -> np.ndarray:
    index = {blade: n for n, blade in enumerate(BLADES)}
    T = np.zeros((8, 8, 8))
    for i, a in enumerate(BLADES):
        for j, b in enumerate(BLADES):
            sign, c = _blade_product(a, b)
            T[i, j, index[c]] = sign
    return T


TABLE = _table()


def mul_array(a, b):
    """Product of arrays with trailing axis 8; complex entries give the star product."""
    return np.einsum("...i,...j,ijk->...k", a, b, TABLE)


@dataclass(frozen=True)
class Clifford3:
    c: tuple = (0.0,) * 8

    def __post_init__(self):
        c = tuple(float(t) for t in np.asarray(self.c, dtype=float).reshape(8))
        object.__setattr__(self, "c", c)

    @classmethod
    def basis(cls, n: int) -> Clifford3:
        c = [0.0] * 8
        c[n] = 1.0
        return cls(c)

    def as_array(self) -> np.ndarray:
        return np.array(self.c)

    def __mul__(self, other: Clifford3) -> Clifford3:
        return cl3_mul(self, other)

    def __add__(self, other: Clifford3) -> Clifford3:
        return Clifford3(self.as_array() + other.as_array())

    def __sub__(self, other: Clifford3) -> Clifford3:
        return Clifford3(self.as_array() - other.as_array())

    def norm(self) -> float:
        return float(np.linalg.norm(self.c))


@dataclass(frozen=True, eq=False)
class ComplexOct:
    z: np.ndarray

    def __post_init__(self):
        z = np.asarray(self.z, dtype=complex).reshape(8).copy()
        z.setflags(write=False)
        object.__setattr__(self, "z", z)

    def as_array(self) -> np.ndarray:
        return self.z


def cl3_mul(a: Clifford3, b: Clifford3) -> Clifford3:
    return Clifford3(mul_array(a.as_array(), b.as_array()))


def star8(z: ComplexOct, w: ComplexOct) -> ComplexOct:
    return ComplexOct(mul_array(z.as_array(), w.as_array()))


def phi8(z: ComplexOct) -> complex:
    a = z.as_array()
    return complex(np.sum(a * a))


def _bilinear(u) -> complex:
    return u[0] * u[7] - u[1] * u[6] + u[2] * u[5] - u[3] * u[4]


def in_S3(u: Clifford3, tol: float = 1e-9) -> bool:
    """``u_0 = u_7 = 0``, ``u_1^2 + ... + u_6^2 = 1``, ``u_1 u_6 - u_2 u_5 + u_3 u_4 = 0``."""
    c = u.as_array()
    return bool(
        abs(c[0]) <= tol
        and abs(c[7]) <= tol
        and abs(np.sum(c[1:7] ** 2) - 1.0) <= tol
        and abs(c[1] * c[6] - c[2] * c[5] + c[3] * c[4]) <= tol
    )


def in_Z8(z: ComplexOct, tol: float = 1e-9) -> bool:
    a = z.as_array()
    scale = max(1.0, float(np.sum(np.abs(a) ** 2)))
    return abs(_bilinear(a)) <= tol * scale and abs(phi8(z)) <= tol * scale


def random_S3(rng: np.random.Generator) -> Clifford3:
    """A random imaginary unit: vector part ``a``, bivector part with dual orthogonal to ``a``."""
    a = rng.standard_normal(3)
    d = rng.standard_normal(3)
    d -= a * (a @ d) / (a @ a)
    u = np.zeros(8)
    u[1:4] = a
    # dual (u6, -u5, u4) = d makes u1 u6 - u2 u5 + u3 u4 = a . d = 0
    u[6], u[5], u[4] = d[0], -d[1], d[2]
    u /= np.linalg.norm(u)
    return Clifford3(u)


def embed_quaternion(q) -> Clifford3:
    c = np.zeros(8)
    c[QUATERNION_SLOTS] = np.asarray(list(q), dtype=float)
    return Clifford3(c)


def rho_u(u: Clifford3, z: ComplexOct) -> Clifford3:
    a = z.as_array()
    return Clifford3(a.real + mul_array(u.as_array(), a.imag))


@dataclass(frozen=True, eq=False)
class CliffordPolynomial:
    """``f(q) = sum q^n a_n`` with R_3 coefficients on the right; ``coeffs`` has shape (N+1, 8)."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_2d(np.asarray(self.coeffs, dtype=float)).copy()
        if c.shape[1] != 8:
            raise ValueError("R_3 coefficients need 8 components")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def linear(cls, p: Clifford3) -> CliffordPolynomial:
        return cls(np.stack([-p.as_array(), Clifford3.basis(0).as_array()]))

    def stem_array(self, z) -> np.ndarray:
        return np.moveaxis(npoly.polyval(np.asarray(z, dtype=complex), self.coeffs), 0, -1)

    def evaluate(self, q: Clifford3) -> Clifford3:
        qa = q.as_array()
        acc = self.coeffs[-1].copy()
        for a in self.coeffs[-2::-1]:
            acc = mul_array(qa, acc) + a
        return Clifford3(acc)

    def __mul__(self, other: CliffordPolynomial) -> CliffordPolynomial:
        n, m = self.coeffs.shape[0], other.coeffs.shape[0]
        out = np.zeros((n + m - 1, 8))
        for k in range(n):
            out[k : k + m] += mul_array(np.broadcast_to(self.coeffs[k], (m, 8)), other.coeffs)
        return CliffordPolynomial(out)


def symmetrize8(f: CliffordPolynomial) -> ComplexPoly:
    out = ComplexPoly()
    for m in range(8):
        comp = ComplexPoly(f.coeffs[:, m])
        out = out + comp * comp
    return out


def count_upper_bound(f: CliffordPolynomial, c: Contour) -> int:
    """Winding of ``Phi_8 o F`` along ``c``.

    The zero variety in C^8 has codimension two, so this bounds twice the
    weighted number of zeros from above instead of counting it.
    """
    P = symmetrize8(f)
    if P.is_zero():
        raise BoundaryZeroError("Phi_8 o F vanishes identically")
    if P.degree >= 1:
        roots = np.atleast_1d(npoly.polyroots(P.coeffs / np.abs(P.coeffs).max()))
        if np.any(c.distance(roots) <= BOUNDARY_RTOL * c.scale()):
            raise BoundaryZeroError("a zero of Phi_8 o F lies on the contour")
    return winding_log_derivative(P, c)
