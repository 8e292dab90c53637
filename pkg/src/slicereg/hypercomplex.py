"""Quaternions, imaginary units and the complexified algebra H (x) C = C^4.

Values are small immutable dataclasses. The heavy lifting (vectorised loops in
quadrature and Monte Carlo code) goes through :func:`hamilton`, which applies
the quaternion multiplication table to arrays of shape ``(..., 4)`` of any
dtype. With complex entries it is exactly the star product on C^4, because the
complex unit commutes with everything.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidUnitError, NotOnVarietyError

DEFAULT_TOL = 1e-9
# construction within this distance of |v| = 1 renormalises, farther rejects
UNIT_SNAP_TOL = 1e-6


def hamilton(a, b):
    """Quaternion product of two arrays with trailing axis of length 4."""
    a = np.asarray(a)
    b = np.asarray(b)
    a0, a1, a2, a3 = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    b0, b1, b2, b3 = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ],
        axis=-1,
    )


def conj_array(a):
    """Quaternionic conjugation (1, -1, -1, -1) on the trailing axis."""
    a = np.asarray(a)
    return a * np.array([1.0, -1.0, -1.0, -1.0])


def inverse_array(a):
    a = np.asarray(a, dtype=float)
    return conj_array(a) / np.sum(a * a, axis=-1, keepdims=True)


@dataclass(frozen=True)
class Quaternion:
    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @classmethod
    def from_array(cls, arr) -> Quaternion:
        a = np.asarray(arr, dtype=float).reshape(4)
        return cls(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    @classmethod
    def real(cls, t: float) -> Quaternion:
        return cls(float(t), 0.0, 0.0, 0.0)

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z], dtype=float)

    def __iter__(self):
        return iter((self.w, self.x, self.y, self.z))

    def __add__(self, other):
        other = _coerce(other)
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return Quaternion(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        return quat_mul(self, _coerce(other))

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self * other
        return quat_mul(_coerce(other), self)

    def __truediv__(self, other):
        """Right division: ``a / b = a * b^-1``."""
        if isinstance(other, (int, float)):
            return self * (1.0 / other)
        return self * _coerce(other).inverse()

    def conjugate(self) -> Quaternion:
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self) -> float:
        return self.w**2 + self.x**2 + self.y**2 + self.z**2

    def norm(self) -> float:
        return math.sqrt(self.norm2())

    def inverse(self) -> Quaternion:
        n2 = self.norm2()
        if n2 == 0.0:
            raise ZeroDivisionError("quaternion 0 has no inverse")
        return self.conjugate() * (1.0 / n2)

    @property
    def vector(self) -> Quaternion:
        return Quaternion(0.0, self.x, self.y, self.z)

    def split(self) -> tuple[float, float, ImaginaryUnit | None]:
        """Write ``q = x + v y`` with ``y >= 0``; ``v`` is None for real q."""
        y = math.sqrt(self.x**2 + self.y**2 + self.z**2)
        if y == 0.0:
            return self.w, 0.0, None
        return self.w, y, ImaginaryUnit(self.x / y, self.y / y, self.z / y)


def _coerce(value) -> Quaternion:
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, ImaginaryUnit):
        return value.as_quaternion()
    if isinstance(value, (int, float)):
        return Quaternion.real(value)
    return Quaternion.from_array(value)


ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def quat_mul(a: Quaternion, b: Quaternion) -> Quaternion:
    return Quaternion.from_array(hamilton(a.as_array(), b.as_array()))


@dataclass(frozen=True)
class ImaginaryUnit:
    """A point of the unit sphere of purely imaginary quaternions, ``v^2 = -1``."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        n = math.sqrt(self.a**2 + self.b**2 + self.c**2)
        if not math.isfinite(n) or abs(n - 1.0) > UNIT_SNAP_TOL:
            raise InvalidUnitError(f"|v| = {n!r} is not 1")
        object.__setattr__(self, "a", float(self.a / n))
        object.__setattr__(self, "b", float(self.b / n))
        object.__setattr__(self, "c", float(self.c / n))

    @classmethod
    def from_vector(cls, vec) -> ImaginaryUnit:
        """Normalise an arbitrary nonzero 3-vector (no snapping tolerance)."""
        v = np.asarray(vec, dtype=float).reshape(3)
        n = float(np.linalg.norm(v))
        if n == 0.0:
            raise InvalidUnitError("zero vector has no direction")
        return cls(*(v / n))

    @classmethod
    def random(cls, rng: np.random.Generator) -> ImaginaryUnit:
        return cls.from_vector(rng.standard_normal(3))

    def as_quaternion(self) -> Quaternion:
        return Quaternion(0.0, self.a, self.b, self.c)

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c])

    def __neg__(self) -> ImaginaryUnit:
        return ImaginaryUnit(-self.a, -self.b, -self.c)

    def point(self, x: float, y: float) -> Quaternion:
        """The quaternion ``x + v y``."""
        return Quaternion(x, self.a * y, self.b * y, self.c * y)


@dataclass(frozen=True)
class ComplexQuad:
    """Element of H (x) C, coordinates in the complex basis {1, i, j, k}."""

    c0: complex = 0j
    c1: complex = 0j
    c2: complex = 0j
    c3: complex = 0j

    @classmethod
    def from_array(cls, arr) -> ComplexQuad:
        a = np.asarray(arr, dtype=complex).reshape(4)
        return cls(complex(a[0]), complex(a[1]), complex(a[2]), complex(a[3]))

    @classmethod
    def embed(cls, q: Quaternion) -> ComplexQuad:
        return cls(complex(q.w), complex(q.x), complex(q.y), complex(q.z))

    def as_array(self) -> np.ndarray:
        return np.array([self.c0, self.c1, self.c2, self.c3], dtype=complex)

    def __add__(self, other: ComplexQuad) -> ComplexQuad:
        return ComplexQuad.from_array(self.as_array() + other.as_array())

    def __sub__(self, other: ComplexQuad) -> ComplexQuad:
        return ComplexQuad.from_array(self.as_array() - other.as_array())

    def __mul__(self, scalar) -> ComplexQuad:
        return ComplexQuad.from_array(self.as_array() * complex(scalar))

    __rmul__ = __mul__

    @property
    def re(self) -> Quaternion:
        return Quaternion.from_array(self.as_array().real)

    @property
    def im(self) -> Quaternion:
        return Quaternion.from_array(self.as_array().imag)

    def conj(self) -> ComplexQuad:
        """Componentwise complex conjugation (not the quaternionic one)."""
        return ComplexQuad.from_array(np.conj(self.as_array()))

    def norm(self) -> float:
        return float(np.linalg.norm(self.as_array()))


def rho(v: ImaginaryUnit, A: ComplexQuad) -> Quaternion:
    """Realise ``A`` on the slice C_v: ``sum_m rho_v(c_m) e_m = Re A + v Im A``."""
    if not isinstance(v, ImaginaryUnit):
        raise InvalidUnitError("rho needs an ImaginaryUnit")
    arr = A.as_array()
    return Quaternion.from_array(arr.real + hamilton(v.as_quaternion().as_array(), arr.imag))


def rho_array(v, arr):
    """Vectorised :func:`rho` over arrays of shape ``(..., 4)`` complex."""
    arr = np.asarray(arr, dtype=complex)
    vq = np.array([0.0, v.a, v.b, v.c])
    return arr.real + hamilton(np.broadcast_to(vq, arr.shape), arr.imag)


def star(A: ComplexQuad, B: ComplexQuad) -> ComplexQuad:
    return ComplexQuad.from_array(hamilton(A.as_array(), B.as_array()))


def phi(A: ComplexQuad) -> complex:
    """``c0^2 + c1^2 + c2^2 + c3^2`` with complex squares, no conjugation."""
    arr = A.as_array()
    return complex(np.sum(arr * arr))


def star_conjugate(A: ComplexQuad) -> ComplexQuad:
    return ComplexQuad(A.c0, -A.c1, -A.c2, -A.c3)


def in_variety(A: ComplexQuad, q: Quaternion | None = None, tol: float = DEFAULT_TOL) -> bool:
    """Membership of ``A`` in Z(q), the zero locus of ``Phi(z - q)``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    q = q if q is not None else Quaternion()
    shifted = A - ComplexQuad.embed(q)
    return abs(phi(shifted)) <= tol * max(1.0, A.norm() ** 2)


def unit_from_zero(A: ComplexQuad, tol: float = DEFAULT_TOL) -> ImaginaryUnit:
    """Recover the unit ``v`` with ``rho_v(A) = 0`` for a point of Z minus the origin.

    Writing ``A = alpha + iota beta`` with quaternions alpha, beta, the
    condition ``alpha + v beta = 0`` gives ``v = -alpha beta^-1``.
    """
    if not in_variety(A, tol=tol):
        raise NotOnVarietyError(f"Phi(A) = {phi(A)!r} is not 0")
    alpha, beta = A.re, A.im
    scale = A.norm()
    if scale == 0.0 or beta.norm() < 1e-12 * scale:
        raise NotOnVarietyError("imaginary part vanishes; only A = 0 is a real point of Z")
    v = -(alpha * beta.inverse())
    # v has a small real part only from rounding when A is on Z
    if abs(v.w) > math.sqrt(tol) * max(1.0, v.norm()):
        raise NotOnVarietyError(f"recovered value {v} is not purely imaginary")
    unit = ImaginaryUnit.from_vector([v.x, v.y, v.z])
    if rho(unit, A).norm() > math.sqrt(tol) * max(1.0, scale):
        raise NotOnVarietyError("no imaginary unit annihilates A")
    return unit
