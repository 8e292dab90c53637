"""Norm relations between a slice function and its stem map.

Pointwise, ``|F(x + iota y)|^2 = |alpha|^2 + |beta|^2`` is the mean of
``|f|^2`` over the sphere ``x + S y``; the maximum over the sphere is
``|alpha| + |beta|``. Integrated versions give slice and ball L2 norms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hypercomplex import ImaginaryUnit
from .stem import StemPolynomial


def uniform_units(n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` uniform points on the unit 2-sphere (area-preserving cylinder map)."""
    z = rng.uniform(-1.0, 1.0, n)
    phi = rng.uniform(0.0, 2.0 * np.pi, n)
    rho = np.sqrt(1.0 - z * z)
    return np.stack([rho * np.cos(phi), rho * np.sin(phi), z], axis=-1)


def fibonacci_sphere(n: int) -> np.ndarray:
    k = np.arange(n) + 0.5
    z = 1.0 - 2.0 * k / n
    phi = np.pi * (3.0 - math.sqrt(5.0)) * k
    rho = np.sqrt(1.0 - z * z)
    return np.stack([rho * np.cos(phi), rho * np.sin(phi), z], axis=-1)


@dataclass(frozen=True, eq=False)
class SphereSample:
    """Quadrature on the unit 2-sphere: unit vectors (n, 3) and positive weights summing to 4 pi."""

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).reshape(-1, 3)
        w = np.asarray(self.weights, dtype=float).reshape(-1)
        if pts.shape[0] != w.shape[0]:
            raise ValueError("points and weights differ in length")
        if np.any(w <= 0) or abs(w.sum() - 4.0 * np.pi) > 1e-12:
            raise ValueError("weights must be positive and sum to 4 pi")
        if np.any(np.abs(np.linalg.norm(pts, axis=1) - 1.0) > 1e-12):
            raise ValueError("points must be unit vectors")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)

    @classmethod
    def fibonacci(cls, n: int) -> SphereSample:
        return cls(fibonacci_sphere(n), np.full(n, 4.0 * np.pi / n))

    @classmethod
    def uniform(cls, n: int, seed: int = 0) -> SphereSample:
        return cls(uniform_units(n, np.random.default_rng(seed)), np.full(n, 4.0 * np.pi / n))

    def integrate(self, f: StemPolynomial, x: float, y: float) -> float:
        """``sum_k w_k |f(x + v_k y)|^2``."""
        vals = np.sum(f.slice_array(_points(x, y, self.points)) ** 2, axis=-1)
        return float(self.weights @ vals)


def _points(x: float, y: float, units: np.ndarray) -> np.ndarray:
    q = np.empty((units.shape[0], 4))
    q[:, 0] = x
    q[:, 1:] = y * units
    return q


def sphere_l2(f: StemPolynomial, x: float, y: float) -> float:
    """Closed form ``4 pi |F(x + iota y)|^2`` of the integral of ``|f|^2`` over the sphere."""
    F = f.stem_array(complex(x, y))
    return float(4.0 * np.pi * np.sum(np.abs(F) ** 2))


def sphere_l2_mc(f: StemPolynomial, x: float, y: float, n: int = 100_000, seed: int = 0) -> tuple[float, float]:
    """Monte Carlo estimate and standard error, evaluating ``f`` directly."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    vals = np.sum(f.slice_array(_points(x, y, uniform_units(n, rng))) ** 2, axis=-1)
    est = 4.0 * np.pi * float(vals.mean())
    err = 4.0 * np.pi * float(vals.std(ddof=1)) / math.sqrt(n) if n > 1 else math.inf
    return est, err


def _disc_rule(radius: float, radial: int, angular: int):
    t, w = np.polynomial.legendre.leggauss(radial)
    r = radius * (t + 1.0) / 2.0
    wr = w * radius / 2.0 * r
    theta = 2.0 * np.pi * np.arange(angular) / angular
    x = (r[:, None] * np.cos(theta)[None, :]).ravel()
    y = (r[:, None] * np.sin(theta)[None, :]).ravel()
    wt = np.repeat(wr, angular) * (2.0 * np.pi / angular)
    return x, y, wt


def slice_l2(f: StemPolynomial, v: ImaginaryUnit, radius: float, nodes: int = 64) -> float:
    """``int |f(x + v y)|^2 dx dy`` over the disc of given radius in the slice C_v."""
    if not radius > 0:
        raise ValueError("radius must be positive")
    x, y, wt = _disc_rule(radius, nodes, 4 * nodes)
    q = np.stack([x, v.a * y, v.b * y, v.c * y], axis=-1)
    return float(np.sum(wt * np.sum(f.slice_array(q) ** 2, axis=-1)))


def bulk_l2(f: StemPolynomial, radius: float, nodes: int = 64) -> float:
    """L2 norm squared of ``f`` over the ball ``|q| < radius`` in H.

    Reduced to ``2 pi int_disc y^2 |F|^2 dx dy`` over the full stem disc,
    i.e. ``4 pi`` times the integral over the upper half disc, since each
    point of the ball is covered twice by ``(x, y, v)`` and ``(x, -y, -v)``.
    """
    if not radius > 0:
        raise ValueError("radius must be positive")
    x, y, wt = _disc_rule(radius, nodes, 4 * nodes)
    F = f.stem_array(x + 1j * y)
    return float(2.0 * np.pi * np.sum(wt * y * y * np.sum(np.abs(F) ** 2, axis=-1)))


def bulk_l2_mc(f: StemPolynomial, radius: float, n: int = 200_000, seed: int = 0) -> tuple[float, float]:
    """4D Monte Carlo oracle for :func:`bulk_l2`: uniform points in the enclosing cube."""
    rng = np.random.default_rng(seed)
    q = rng.uniform(-radius, radius, (n, 4))
    inside = np.sum(q * q, axis=-1) < radius * radius
    vals = np.where(inside, np.sum(f.slice_array(q) ** 2, axis=-1), 0.0)
    vol = (2.0 * radius) ** 4
    return vol * float(vals.mean()), vol * float(vals.std(ddof=1)) / math.sqrt(n)


@dataclass(frozen=True)
class NormSandwich:
    min_sample: float
    stem_norm: float
    max_closed: float
    max_sample: float

    def holds(self, tol: float = 1e-12) -> bool:
        return self.min_sample <= self.stem_norm + tol and self.stem_norm <= self.max_closed + tol


def norm_sandwich(f: StemPolynomial, x: float, y: float, grid: int = 4096) -> NormSandwich:
    """``min_v |f(x+vy)| <= |F(x+iota y)| <= |alpha| + |beta|``; the min is a grid scan."""
    F = f.stem_array(complex(x, y))
    alpha, beta = F.real, F.imag
    vals = np.sqrt(np.sum(f.slice_array(_points(x, y, fibonacci_sphere(grid))) ** 2, axis=-1))
    return NormSandwich(
        min_sample=float(vals.min()),
        stem_norm=float(np.linalg.norm(F)),
        max_closed=float(np.linalg.norm(alpha) + np.linalg.norm(beta)),
        max_sample=float(vals.max()),
    )


def degree_growth_estimate(f: StemPolynomial, radii, samples: int = 256) -> float:
    """Least-squares slope of ``log max_{|z|=R} |F|`` against ``log R``."""
    radii = np.asarray(radii, dtype=float)
    if radii.size < 2 or np.any(np.diff(radii) <= 0):
        raise ValueError("need at least two increasing radii")
    theta = 2.0 * np.pi * np.arange(samples) / samples
    logs = []
    for R in radii:
        F = f.stem_array(R * np.exp(1j * theta))
        logs.append(math.log(float(np.linalg.norm(F, axis=-1).max())))
    slope, _ = np.polyfit(np.log(radii), logs, 1)
    return float(slope)
