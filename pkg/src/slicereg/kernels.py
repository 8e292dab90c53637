"""Integral kernels on one slice: Cauchy, general real-coefficient kernels, Bergman.

Boundary integrals run over a circle ``s = c + R e^{v t}`` in the slice C_v
(``c`` real). With ``ds = v (s - c) dt`` the measure ``ds / v`` is simply
``(s - c) dt``, so every boundary quadrature below is a trapezoid sum of
``kernel * (s - c) * f(s)`` over equally spaced angles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import SingularKernelError
from .hypercomplex import (
    ImaginaryUnit,
    Quaternion,
    conj_array,
    hamilton,
    inverse_array,
    rho_array,
)
from .stem import ComplexPoly, StemPolynomial

BERGMAN_TAIL = 1e-12


@dataclass(frozen=True)
class SliceCircle:
    unit: ImaginaryUnit
    center: float = 0.0
    radius: float = 1.0
    nodes: int = 512

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        if self.nodes < 8 or self.nodes % 2:
            raise ValueError("nodes must be an even number >= 8")

    def complex_nodes(self) -> np.ndarray:
        t = 2.0 * np.pi * np.arange(self.nodes) / self.nodes
        return self.center + self.radius * np.exp(1j * t)

    def quaternion_nodes(self) -> np.ndarray:
        return rho_array(self.unit, _as_quad(self.complex_nodes()))

    def contains(self, q: Quaternion) -> bool:
        x, y, _ = q.split()
        return abs(complex(x, y) - self.center) < self.radius


def _as_quad(z) -> np.ndarray:
    """Complex scalars as elements ``(z, 0, 0, 0)`` of C^4."""
    z = np.asarray(z, dtype=complex)
    out = np.zeros(z.shape + (4,), dtype=complex)
    out[..., 0] = z
    return out


def _cauchy_kernel_array(q: np.ndarray, s: np.ndarray) -> np.ndarray:
    q2 = hamilton(q, q)
    re_s = s[..., :1]
    den = q2 - 2.0 * re_s * q
    den[..., 0] += np.sum(s * s, axis=-1)
    norms = np.sqrt(np.sum(den * den, axis=-1))
    scale = np.maximum(1.0, np.sum(q * q, axis=-1) + np.sum(s * s, axis=-1))
    if np.any(norms <= 1e-14 * scale):
        raise SingularKernelError("q lies on the sphere of s")
    return -hamilton(inverse_array(den), q - conj_array(s))


def cauchy_kernel(q: Quaternion, s: Quaternion) -> Quaternion:
    """``-(q^2 - 2 Re(s) q + |s|^2)^-1 (q - conj(s))``."""
    return Quaternion.from_array(_cauchy_kernel_array(q.as_array(), s.as_array()))


def cauchy_eval(f: StemPolynomial, circle: SliceCircle, q: Quaternion) -> Quaternion:
    """Recover ``f(q)`` from the values of ``f`` on one slice circle."""
    if not circle.contains(q):
        raise SingularKernelError("q is not inside the axially symmetric domain of the circle")
    s = circle.quaternion_nodes()
    ker = _cauchy_kernel_array(np.broadcast_to(q.as_array(), s.shape), s)
    ds_over_v = s.copy()
    ds_over_v[:, 0] -= circle.center
    integrand = hamilton(hamilton(ker, ds_over_v), f.slice_array(s))
    return Quaternion.from_array(integrand.mean(axis=0))


@dataclass(frozen=True)
class KernelSeries:
    """Finite double series ``K(z, w) = sum a_nm z^n w^m`` with real coefficients."""

    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (n, m), a in self.terms.items():
            if int(n) != n or n < 0 or int(m) != m:
                raise ValueError(f"bad exponent pair {(n, m)!r}")
            a = float(a)
            if not math.isfinite(a):
                raise ValueError("coefficients must be finite reals")
            clean[(int(n), int(m))] = a
        object.__setattr__(self, "terms", clean)

    @classmethod
    def cauchy_truncation(cls, N: int) -> KernelSeries:
        """``(1/2pi) sum_{n<=N} z^n w^{-n-1}``, the expansion of the Cauchy kernel."""
        return cls({(n, -n - 1): 1.0 / (2.0 * np.pi) for n in range(N + 1)})

    def complex_eval(self, z: complex, w: np.ndarray) -> np.ndarray:
        w = np.asarray(w, dtype=complex)
        out = np.zeros_like(w)
        for (n, m), a in self.terms.items():
            out += a * z**n * w**m
        return out


def _quaternion_powers(q: np.ndarray, top: int) -> list[np.ndarray]:
    powers = [np.array([1.0, 0.0, 0.0, 0.0])]
    for _ in range(top):
        powers.append(hamilton(powers[-1], q))
    return powers


def kernel_extend_eval(K: KernelSeries, f: StemPolynomial, circle: SliceCircle, q: Quaternion) -> Quaternion:
    """Quaternionic operator ``int K(q, s) (1/v) ds f(s)`` with ``q, s`` substituted formally."""
    sigma = circle.complex_nodes()
    s = circle.quaternion_nodes()
    fs = f.slice_array(s)
    ds_over_v = s.copy()
    ds_over_v[:, 0] -= circle.center
    ds_over_v *= 2.0 * np.pi / circle.nodes
    top = max((n for n, _ in K.terms), default=0)
    qpow = _quaternion_powers(q.as_array(), top)
    ker = np.zeros_like(s)
    for (n, m), a in K.terms.items():
        # s^m lives in C_v, where rho_v is an isomorphism from C
        s_m = rho_array(circle.unit, _as_quad(sigma**m))
        ker += a * hamilton(np.broadcast_to(qpow[n], s.shape), s_m)
    return Quaternion.from_array(hamilton(hamilton(ker, ds_over_v), fs).sum(axis=0))


def kernel_componentwise_eval(K: KernelSeries, f: StemPolynomial, circle: SliceCircle, q: Quaternion) -> Quaternion:
    """Apply the complex operator to each stem component, then realise on the slice of ``q``.

    The complex operator is ``Kh(z) = int K(z, w) h(w) dw / iota``, the
    normalisation that matches ``(1/v) ds`` on the quaternion side.
    """
    x, y, v = q.split()
    v = v if v is not None else circle.unit
    z = complex(x, y)
    sigma = circle.complex_nodes()
    dw_over_i = (sigma - circle.center) * (2.0 * np.pi / circle.nodes)
    kern = K.complex_eval(z, sigma) * dw_over_i
    values = f.stem_array(sigma)
    KF = np.sum(kern[:, None] * values, axis=0)
    return Quaternion.from_array(rho_array(v, KF))


def _bergman_terms(t: float) -> int:
    """Smallest N with ``(N+2) t^(N+1) / (1-t)^2 < BERGMAN_TAIL``."""
    if t == 0.0:
        return 0
    N = 0
    while (N + 2) * t ** (N + 1) / (1.0 - t) ** 2 >= BERGMAN_TAIL:
        N += 1
    return N


def bergman_kernel(q: Quaternion, s: Quaternion) -> Quaternion:
    """Slice-regular extension of the unit-disc Bergman kernel, ``(1/pi) sum (n+1) q^n conj(s)^n``."""
    if q.norm() >= 1.0 or s.norm() >= 1.0:
        raise SingularKernelError("Bergman kernel of the unit ball needs |q| < 1 and |s| < 1")
    N = _bergman_terms(q.norm() * s.norm())
    qa, sb = q.as_array(), s.conjugate().as_array()
    qn = np.array([1.0, 0.0, 0.0, 0.0])
    sn = np.array([1.0, 0.0, 0.0, 0.0])
    total = np.zeros(4)
    for n in range(N + 1):
        total += (n + 1) * hamilton(qn, sn)
        qn = hamilton(qn, qa)
        sn = hamilton(sn, sb)
    return Quaternion.from_array(total / np.pi)


def _disc_nodes(radial_nodes: int, angular_nodes: int):
    t, w = np.polynomial.legendre.leggauss(radial_nodes)
    r = (t + 1.0) / 2.0
    wr = w / 2.0 * r
    theta = 2.0 * np.pi * np.arange(angular_nodes) / angular_nodes
    sigma = (r[:, None] * np.exp(1j * theta)[None, :]).ravel()
    weights = np.repeat(wr, angular_nodes) * (2.0 * np.pi / angular_nodes)
    return sigma, weights


def bergman_reproduce(
    f: StemPolynomial,
    v: ImaginaryUnit,
    q,
    radial_nodes: int = 64,
    angular_nodes: int = 512,
):
    """``int_{B cap C_v} K(q, s) f(s) dmu`` by Gauss-Legendre x trapezoid quadrature.

    ``q`` may be a single Quaternion or a sequence; the moment sums over the
    disc are shared between all points.
    """
    single = isinstance(q, Quaternion)
    qs = [q] if single else list(q)
    if any(p.norm() >= 1.0 for p in qs):
        raise SingularKernelError("reproduction point must satisfy |q| < 1")
    sigma, weights = _disc_nodes(radial_nodes, angular_nodes)
    s = rho_array(v, _as_quad(sigma))
    A = f.slice_array(s) * weights[:, None]
    B = hamilton(np.broadcast_to(v.as_quaternion().as_array(), A.shape), A)
    N = _bergman_terms(max(p.norm() for p in qs) * float(np.abs(sigma).max()))
    sbar = np.conj(sigma)
    power = np.ones_like(sbar)
    moments = []
    for _ in range(N + 1):
        # rho_v(a + iota b) F = a F + b v F
        moments.append(power.real @ A + power.imag @ B)
        power = power * sbar
    out = []
    for p in qs:
        pa = p.as_array()
        qn = np.array([1.0, 0.0, 0.0, 0.0])
        total = np.zeros(4)
        for n, mom in enumerate(moments):
            total += (n + 1) * hamilton(qn, mom)
            qn = hamilton(qn, pa)
        out.append(Quaternion.from_array(total / np.pi))
    return out[0] if single else out


def rho_commutes_with_rational(
    p, den: ComplexPoly, v: ImaginaryUnit, z: complex
) -> tuple[Quaternion, Quaternion]:
    """Both sides of ``rho_v(p(z) / den(z)) = den(rho_v z)^-1 p(rho_v z)``.

    ``p`` may be a real :class:`ComplexPoly` or a :class:`StemPolynomial`.
    With quaternion coefficients the real denominator has to act on the left.
    """
    if isinstance(p, ComplexPoly):
        p = StemPolynomial.from_real(p.coeffs)
    z = complex(z)
    dz = den(z)
    if dz == 0:
        raise SingularKernelError("denominator vanishes at z")
    lhs = rho_array(v, p.stem_array(z) / dz)
    x = rho_array(v, _as_quad(z))
    d = StemPolynomial.from_real(den.coeffs).slice_array(x)
    if np.sum(d * d) == 0.0:
        raise SingularKernelError("denominator is not invertible at rho_v(z)")
    rhs = hamilton(inverse_array(d), p.slice_array(x))
    return Quaternion.from_array(lhs), Quaternion.from_array(rhs)


def bergman_cr_residual(s: Quaternion, v: ImaginaryUnit, x: float, y: float, h: float = 1e-5) -> float:
    """Central-difference ``|d/dx K + v d/dy K|`` of ``q -> K(q, s)`` at ``x + v y``."""
    def K(a, b):
        return bergman_kernel(v.point(a, b), s).as_array()

    dx = (K(x + h, y) - K(x - h, y)) / (2 * h)
    dy = (K(x, y + h) - K(x, y - h)) / (2 * h)
    res = dx + hamilton(v.as_quaternion().as_array(), dy)
    return float(np.linalg.norm(res))


__all__ = [
    "SliceCircle",
    "KernelSeries",
    "cauchy_kernel",
    "cauchy_eval",
    "kernel_extend_eval",
    "kernel_componentwise_eval",
    "bergman_kernel",
    "bergman_reproduce",
    "rho_commutes_with_rational",
    "bergman_cr_residual",
]
