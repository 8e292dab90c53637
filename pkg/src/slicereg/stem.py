"""Slice-regular polynomials and their stem maps.

A :class:`StemPolynomial` stores quaternion coefficients ``a_0 .. a_N`` for
``f(q) = sum q^n a_n`` (coefficients on the right). Its stem map
``F = (f_0, f_1, f_2, f_3)`` consists of four real-coefficient polynomials, one
per quaternion component, evaluated at complex arguments; on every slice
``f(x + v y) = rho_v(F(x + iota y))``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import DegenerateInputError
from .hypercomplex import (
    ComplexQuad,
    Quaternion,
    conj_array,
    hamilton,
)

TRIM_RTOL = 1e-14


def _trim(c: np.ndarray) -> np.ndarray:
    """Drop trailing (leading-degree) coefficients that are negligible."""
    if c.shape[0] == 0:
        return c
    mags = np.abs(c) if c.ndim == 1 else np.linalg.norm(c, axis=1)
    top = mags.max()
    if top == 0.0:
        return c[:0]
    keep = np.nonzero(mags > TRIM_RTOL * top)[0]
    return c[: keep[-1] + 1]


@dataclass(frozen=True, eq=False)
class ComplexPoly:
    """Real-coefficient polynomial evaluated at complex points, lowest degree first."""

    coeffs: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=float)).copy()
        if c.ndim != 1:
            raise ValueError("ComplexPoly coefficients must be one-dimensional")
        c = _trim(c)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    def __call__(self, z):
        if self.is_zero():
            return np.zeros_like(np.asarray(z, dtype=complex))
        return npoly.polyval(z, self.coeffs)

    def __mul__(self, other: ComplexPoly) -> ComplexPoly:
        if self.is_zero() or other.is_zero():
            return ComplexPoly()
        return ComplexPoly(npoly.polymul(self.coeffs, other.coeffs))

    def __add__(self, other: ComplexPoly) -> ComplexPoly:
        return ComplexPoly(npoly.polyadd(self._padded(), other._padded()))

    def __sub__(self, other: ComplexPoly) -> ComplexPoly:
        return ComplexPoly(npoly.polysub(self._padded(), other._padded()))

    def _padded(self):
        return self.coeffs if len(self.coeffs) else np.zeros(1)

    def __pow__(self, n: int) -> ComplexPoly:
        out = ComplexPoly([1.0])
        for _ in range(n):
            out = out * self
        return out

    def allclose(self, other: ComplexPoly, rtol: float = 1e-12) -> bool:
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.pad(self.coeffs, (0, n - len(self.coeffs)))
        b = np.pad(other.coeffs, (0, n - len(other.coeffs)))
        scale = max(np.abs(a).max(initial=0.0), np.abs(b).max(initial=0.0), 1e-300)
        return bool(np.all(np.abs(a - b) <= rtol * scale))

    def __repr__(self):
        return f"ComplexPoly({self.coeffs.tolist()})"


def derivative(P: ComplexPoly) -> ComplexPoly:
    if P.degree < 1:
        return ComplexPoly()
    return ComplexPoly(npoly.polyder(P.coeffs))


@dataclass(frozen=True, eq=False)
class StemPolynomial:
    """``f(q) = sum_n q^n a_n``; ``coeffs[n]`` is ``a_n`` as ``[w, x, y, z]``."""

    coeffs: np.ndarray = field(default_factory=lambda: np.zeros((0, 4)))

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.size == 0:
            c = np.zeros((0, 4))
        c = np.atleast_2d(c).copy()
        if c.shape[1] != 4:
            raise ValueError("each coefficient needs four real components")
        c = _trim(c)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_quaternions(cls, qs) -> StemPolynomial:
        return cls(np.array([q.as_array() for q in qs]).reshape(-1, 4))

    @classmethod
    def from_real(cls, coeffs) -> StemPolynomial:
        c = np.zeros((len(coeffs), 4))
        c[:, 0] = coeffs
        return cls(c)

    @classmethod
    def linear(cls, a: Quaternion) -> StemPolynomial:
        """The monic factor ``q - a``."""
        return cls(np.array([(-a).as_array(), [1.0, 0, 0, 0]]))

    @classmethod
    def spherical(cls, a: Quaternion) -> StemPolynomial:
        """``q^2 - 2 Re(a) q + |a|^2``, vanishing on the whole sphere of ``a``."""
        return cls.from_real([a.norm2(), -2.0 * a.w, 1.0])

    @classmethod
    def monomial(cls, n: int, a: Quaternion | None = None) -> StemPolynomial:
        c = np.zeros((n + 1, 4))
        c[n] = (a if a is not None else Quaternion(1.0)).as_array()
        return cls(c)

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1

    def is_zero(self) -> bool:
        return self.coeffs.shape[0] == 0

    def scale(self) -> float:
        """Largest coefficient norm; 0 for the zero polynomial."""
        if self.is_zero():
            return 0.0
        return float(np.linalg.norm(self.coeffs, axis=1).max())

    def __mul__(self, other):
        if isinstance(other, StemPolynomial):
            return star_product(self, other)
        return NotImplemented

    def __add__(self, other: StemPolynomial) -> StemPolynomial:
        n = max(self.coeffs.shape[0], other.coeffs.shape[0])
        out = np.zeros((n, 4))
        out[: self.coeffs.shape[0]] += self.coeffs
        out[: other.coeffs.shape[0]] += other.coeffs
        return StemPolynomial(out)

    def __neg__(self):
        return StemPolynomial(-self.coeffs)

    def __sub__(self, other: StemPolynomial) -> StemPolynomial:
        return self + (-other)

    def __repr__(self):
        return f"StemPolynomial({self.coeffs.tolist()})"

    # evaluation on both sides of the diagram

    def stem_array(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        if self.is_zero():
            return np.zeros(z.shape + (4,), dtype=complex)
        return np.moveaxis(npoly.polyval(z, self.coeffs), 0, -1)

    def slice_array(self, q) -> np.ndarray:
        """Direct evaluation ``sum q^n a_n`` by Horner, ``q`` of shape ``(..., 4)``."""
        q = np.asarray(q, dtype=float)
        if self.is_zero():
            return np.zeros_like(q)
        acc = np.broadcast_to(self.coeffs[-1], q.shape).copy()
        for a in self.coeffs[-2::-1]:
            acc = hamilton(q, acc) + a
        return acc


def components(p: StemPolynomial) -> tuple[ComplexPoly, ComplexPoly, ComplexPoly, ComplexPoly]:
    return tuple(ComplexPoly(p.coeffs[:, m]) for m in range(4))  # type: ignore[return-value]


def eval_stem(p: StemPolynomial, z: complex) -> ComplexQuad:
    return ComplexQuad.from_array(p.stem_array(complex(z)))


def eval_slice(p: StemPolynomial, q: Quaternion) -> Quaternion:
    return Quaternion.from_array(p.slice_array(q.as_array()))


def star_product(p: StemPolynomial, r: StemPolynomial) -> StemPolynomial:
    """Coefficient convolution with order-preserving quaternion products."""
    if p.is_zero() or r.is_zero():
        return StemPolynomial()
    n, m = p.coeffs.shape[0], r.coeffs.shape[0]
    out = np.zeros((n + m - 1, 4))
    for k in range(n):
        out[k : k + m] += hamilton(np.broadcast_to(p.coeffs[k], (m, 4)), r.coeffs)
    return StemPolynomial(out)


def symmetrize(p: StemPolynomial) -> ComplexPoly:
    """The real polynomial ``Phi o F = f_0^2 + f_1^2 + f_2^2 + f_3^2``."""
    out = ComplexPoly()
    for comp in components(p):
        out = out + comp * comp
    return out


def star_conjugate_poly(p: StemPolynomial) -> StemPolynomial:
    return StemPolynomial(conj_array(p.coeffs))


@dataclass(frozen=True, eq=False)
class StemRational:
    """``den^-1 * num`` with a real denominator; the stem is ``num_stem / den``."""

    num: StemPolynomial
    den: ComplexPoly

    def __post_init__(self):
        if self.den.is_zero():
            raise DegenerateInputError("denominator is identically zero")

    def stem_array(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        return self.num.stem_array(z) / self.den(z)[..., None]

    def slice_array(self, q) -> np.ndarray:
        # den has real coefficients, so den(q) lies in the slice of q and the
        # inverse can go on the left
        q = np.asarray(q, dtype=float)
        d = StemPolynomial.from_real(self.den.coeffs).slice_array(q)
        return hamilton(conj_array(d) / np.sum(d * d, axis=-1, keepdims=True), self.num.slice_array(q))

    def symmetrized(self) -> tuple[ComplexPoly, ComplexPoly]:
        """``Phi o H`` as the pair (numerator, denominator) = ``(Phi o N, den^2)``."""
        return symmetrize(self.num), self.den * self.den

    def __repr__(self):
        return f"StemRational(num={self.num!r}, den={self.den!r})"


def star_inverse(p: StemPolynomial) -> StemRational:
    if p.is_zero():
        raise DegenerateInputError("the zero polynomial has no star inverse")
    return StemRational(star_conjugate_poly(p), symmetrize(p))


def star_product_rational(h: StemRational | StemPolynomial, g: StemRational | StemPolynomial) -> StemRational:
    """Star product when either factor is rational; real denominators are central."""
    h = as_rational(h)
    g = as_rational(g)
    return StemRational(star_product(h.num, g.num), h.den * g.den)


def as_rational(f) -> StemRational:
    if isinstance(f, StemRational):
        return f
    return StemRational(f, ComplexPoly([1.0]))


def eval_stem_any(f, z) -> ComplexQuad:
    return ComplexQuad.from_array(f.stem_array(complex(z)))


def eval_slice_any(f, q: Quaternion) -> Quaternion:
    return Quaternion.from_array(f.slice_array(q.as_array()))
