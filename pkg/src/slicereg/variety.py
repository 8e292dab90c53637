"""Linear algebra of the planes Z_v and their Pluecker coordinates.

For an imaginary unit ``v = a i + b j + c k`` the plane ``Z_v`` (stem values
that vanish on the slice C_v) is the kernel of a 4x4 complex matrix of rank 2.
Its Hermitian orthogonal complement, pushed through the Pluecker embedding of
Gr(2, 4) into CP^5, lands on a conic inside the Klein quadric.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, InvalidUnitError
from .hypercomplex import ComplexQuad, ImaginaryUnit, unit_from_zero

RANK_RTOL = 1e-10
# (row pair) for w0 .. w5
MINORS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def unit_matrix(v: ImaginaryUnit) -> np.ndarray:
    if not isinstance(v, ImaginaryUnit):
        raise InvalidUnitError("unit_matrix needs an ImaginaryUnit")
    a, b, c = v.a, v.b, v.c
    return np.array(
        [
            [-1j, a, b, c],
            [-a, -1j, c, -b],
            [-b, -c, -1j, a],
            [-c, b, -a, -1j],
        ],
        dtype=complex,
    )


def numerical_rank(M: np.ndarray, rtol: float = RANK_RTOL) -> int:
    sv = np.linalg.svd(M, compute_uv=False)
    return int(np.sum(sv > rtol * sv[0]))


def zv_basis(v: ImaginaryUnit) -> tuple[ComplexQuad, ComplexQuad]:
    """Orthonormal basis of ``Z_v = ker A_v`` from the SVD."""
    A = unit_matrix(v)
    _, sv, vh = np.linalg.svd(A)
    null = vh[sv <= RANK_RTOL * sv[0]].conj()
    if null.shape[0] != 2:
        raise DegenerateInputError(f"kernel has dimension {null.shape[0]}, expected 2")
    return ComplexQuad.from_array(null[0]), ComplexQuad.from_array(null[1])


def zv_perp_basis(v: ImaginaryUnit) -> tuple[ComplexQuad, ComplexQuad]:
    """Orthonormal basis of the range of ``conj(A_v)^T``."""
    u, sv, _ = np.linalg.svd(unit_matrix(v).conj().T)
    return ComplexQuad.from_array(u[:, 0]), ComplexQuad.from_array(u[:, 1])


@dataclass(frozen=True, eq=False)
class PlueckerPoint:
    """Homogeneous point of CP^5, scaled so the largest coordinate equals 1."""

    w: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.w, dtype=complex).reshape(6)
        mods = np.abs(w)
        if mods.max() == 0:
            raise DegenerateInputError("all Pluecker coordinates vanish")
        # first coordinate of (nearly) maximal modulus, so ties break the same way
        k = int(np.nonzero(mods >= (1 - 1e-9) * mods.max())[0][0])
        w = w / w[k]
        w.setflags(write=False)
        object.__setattr__(self, "w", w)

    def grassmann_residual(self) -> complex:
        w = self.w
        return complex(w[0] * w[5] - w[1] * w[4] + w[2] * w[3])

    def same_point(self, other: PlueckerPoint, tol: float = 1e-9) -> bool:
        """Projective equality: all 2x2 minors of the pair vanish."""
        a, b = self.w, other.w
        return bool(np.abs(np.outer(a, b) - np.outer(b, a)).max() <= tol)


def pluecker(z1: ComplexQuad, z2: ComplexQuad) -> PlueckerPoint:
    """The six 2x2 minors ``z1[r] z2[s] - z1[s] z2[r]``."""
    a, b = z1.as_array(), z2.as_array()
    w = np.array([a[r] * b[s] - a[s] * b[r] for r, s in MINORS])
    if np.abs(w).max() <= 1e-12 * max(1.0, np.linalg.norm(a) * np.linalg.norm(b)):
        raise DegenerateInputError("vectors are linearly dependent")
    return PlueckerPoint(w)


def on_conic_S(w: PlueckerPoint, tol: float = 1e-10) -> bool:
    """``w0 = w5``, ``w1 = -w4``, ``w2 = w3`` and the Klein relation."""
    x = w.w
    checks = [x[0] - x[5], x[1] + x[4], x[2] - x[3], w.grassmann_residual()]
    return bool(max(abs(c) for c in checks) <= tol)


def conic_point(v: ImaginaryUnit) -> PlueckerPoint:
    """Pluecker point of ``Z_v^perp``."""
    return pluecker(*zv_perp_basis(v))


def unit_from_plane(z1: ComplexQuad, z2: ComplexQuad) -> ImaginaryUnit:
    """Recover ``v`` from a basis of ``Z_v`` by solving ``rho_v(z) = 0``."""
    # the vector with the larger imaginary part gives the better-conditioned division
    z = z1 if z1.im.norm() >= z2.im.norm() else z2
    return unit_from_zero(z, tol=1e-8)


def unit_from_conic(w: PlueckerPoint) -> ImaginaryUnit:
    """Closed-form inverse of ``v -> [Z_v^perp]`` through ``zeta1 = w1/w0``, ``zeta2 = w2/w0``.

    Needs ``w0 != 0`` and non-real ``zeta1``, ``zeta2`` (``a != +-1``, ``b, c != 0``).
    """
    x = w.w
    if abs(x[0]) < 1e-12:
        raise DegenerateInputError("w0 = 0; use unit_from_plane")
    z1, z2 = x[1] / x[0], x[2] / x[0]
    if abs(z1.imag) < 1e-12 or abs(z2.imag) < 1e-12:
        raise DegenerateInputError("zeta1 or zeta2 is real; the closed form divides by zero")
    a = z2.real / z1.imag
    b = (z2.imag**2 - z1.real**2) / z2.imag
    c = (z2.real**2 - z1.imag**2) / z1.imag
    return ImaginaryUnit(a, b, c)
