"""Zeros and poles of slice polynomials and slice rational functions.

Everything is read off the symmetrisation ``P = Phi o F``: a real polynomial
whose roots are the stem points of zeros of ``f``. A non-real root ``w`` of
multiplicity ``mu`` carries a spherical zero of order ``s`` (the order to which
the vector ``F`` itself vanishes at ``w``) plus an isolated zero of order
``mu - 2 s``; a real root of multiplicity ``mu`` is a real zero of order
``mu / 2``.

Winding numbers are computed by quadrature of ``P'/P`` and never from the
classification, so the two routes can be compared.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import (
    AsymmetricContourError,
    BoundaryZeroError,
    ConvergenceError,
    DegenerateInputError,
    NotOnVarietyError,
    UndefinedAtOriginError,
)
from .hypercomplex import ComplexQuad, ImaginaryUnit, Quaternion, unit_from_zero
from .stem import ComplexPoly, StemPolynomial, StemRational, as_rational, derivative, symmetrize

MAX_POINTS = 2**20
CLUSTER_RTOL = 1e-6
SPHERICAL_RTOL = 1e-8
BOUNDARY_RTOL = 1e-6
SYMMETRY_TOL = 1e-12
# multiplicity circles are at most this fraction of the local scale
MULT_RADIUS = 1e-2


@dataclass(frozen=True)
class Contour:
    """Counterclockwise circle or axis-aligned rectangle in the stem plane."""

    kind: str
    center: complex = 0j
    radius: float = 0.0
    corner_min: complex = 0j
    corner_max: complex = 0j

    def __post_init__(self):
        if self.kind == "circle":
            if not self.radius > 0:
                raise ValueError("circle radius must be positive")
        elif self.kind == "rectangle":
            lo, hi = complex(self.corner_min), complex(self.corner_max)
            if not (lo.real < hi.real and lo.imag < hi.imag):
                raise ValueError("corner_min must be strictly below corner_max in both coordinates")
        else:
            raise ValueError(f"unknown contour kind {self.kind!r}")

    @classmethod
    def circle(cls, center: complex, radius: float) -> Contour:
        return cls("circle", center=complex(center), radius=float(radius))

    @classmethod
    def rectangle(cls, corner_min: complex, corner_max: complex) -> Contour:
        return cls("rectangle", corner_min=complex(corner_min), corner_max=complex(corner_max))

    def scale(self) -> float:
        if self.kind == "circle":
            return max(1.0, abs(self.center) + self.radius)
        return max(1.0, abs(self.corner_min), abs(self.corner_max))

    def contains(self, z):
        z = np.asarray(z, dtype=complex)
        if self.kind == "circle":
            return np.abs(z - self.center) < self.radius
        lo, hi = self.corner_min, self.corner_max
        return (z.real > lo.real) & (z.real < hi.real) & (z.imag > lo.imag) & (z.imag < hi.imag)

    def distance(self, z):
        """Distance from ``z`` to the contour itself."""
        z = np.asarray(z, dtype=complex)
        if self.kind == "circle":
            return np.abs(np.abs(z - self.center) - self.radius)
        lo, hi = self.corner_min, self.corner_max
        x, y = z.real, z.imag
        cx = np.clip(x, lo.real, hi.real)
        cy = np.clip(y, lo.imag, hi.imag)
        outside = np.hypot(x - cx, y - cy)
        inside = np.minimum.reduce([x - lo.real, hi.real - x, y - lo.imag, hi.imag - y])
        return np.where(outside > 0, outside, np.abs(inside))

    def is_symmetric(self, tol: float = SYMMETRY_TOL) -> bool:
        if self.kind == "circle":
            return abs(self.center.imag) <= tol * self.scale()
        return abs(self.corner_min.imag + self.corner_max.imag) <= tol * self.scale()

    def point_at(self, s):
        """Boundary point at parameter ``s`` in [0, 1), counterclockwise."""
        s = np.mod(np.asarray(s, dtype=float), 1.0)
        if self.kind == "circle":
            return self.center + self.radius * np.exp(2j * np.pi * s)
        lo, hi = self.corner_min, self.corner_max
        corners = [lo, complex(hi.real, lo.imag), hi, complex(lo.real, hi.imag), lo]
        lengths = np.abs(np.diff(corners))
        cum = np.concatenate([[0.0], np.cumsum(lengths)]) / lengths.sum()
        edge = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, 3)
        t = (s - cum[edge]) / (cum[edge + 1] - cum[edge])
        starts = np.array(corners[:4])[edge]
        ends = np.array(corners[1:])[edge]
        return starts + t * (ends - starts)

    def nodes(self, n: int):
        """Quadrature nodes and weights ``dz`` for an n-point rule.

        Circles use the composite trapezoid rule with ``n`` points; rectangles
        use ``n`` Gauss-Legendre points on each edge.
        """
        if self.kind == "circle":
            theta = 2.0 * np.pi * np.arange(n) / n
            e = np.exp(1j * theta)
            return self.center + self.radius * e, 1j * self.radius * e * (2.0 * np.pi / n)
        t, w = np.polynomial.legendre.leggauss(n)
        lo, hi = self.corner_min, self.corner_max
        corners = [lo, complex(hi.real, lo.imag), hi, complex(lo.real, hi.imag), lo]
        zs, dzs = [], []
        for a, b in zip(corners[:-1], corners[1:]):
            zs.append(a + (b - a) * (t + 1.0) / 2.0)
            dzs.append((b - a) / 2.0 * w)
        return np.concatenate(zs), np.concatenate(dzs)


def _log_derivative_terms(P):
    """Normalise P to a list of (poly, sign) whose log derivatives are summed."""
    if isinstance(P, ComplexPoly):
        return [(P, 1)]
    num, den = P
    return [(num, 1), (den, -1)]


def _eval_noise(poly: ComplexPoly, z):
    # rounding floor of Horner evaluation at z
    return 1e-14 * npoly.polyval(np.abs(z), np.abs(poly.coeffs))


def winding_log_derivative(P, c: Contour, start: int = 64) -> int:
    """Winding number of ``P`` (or of ``num / den`` for a pair) along ``c``.

    Quadrature of ``P'/P`` with the point count doubled until two successive
    estimates round to the same integer and differ by less than 0.25.
    """
    terms = _log_derivative_terms(P)
    for poly, _ in terms:
        if poly.is_zero():
            raise DegenerateInputError("winding of the zero polynomial is undefined")
    derivs = [(poly, derivative(poly), sign) for poly, sign in terms if poly.degree >= 1]
    if not derivs:
        return 0
    per_pass = 1 if c.kind == "circle" else 4
    n = start
    previous = None
    while n * per_pass <= MAX_POINTS:
        z, dz = c.nodes(n)
        total = 0j
        for poly, dpoly, sign in derivs:
            vals = poly(z)
            if np.any(np.abs(vals) <= _eval_noise(poly, z)):
                k = int(np.argmin(np.abs(vals)))
                raise BoundaryZeroError(f"polynomial vanishes on the contour near {z[k]}")
            total += sign * np.sum(dpoly(z) / vals * dz)
        estimate = (total / (2j * np.pi)).real
        if previous is not None:
            if (
                round(previous) == round(estimate)
                and abs(previous - estimate) < 0.25
                and abs(estimate - round(estimate)) < 0.25
            ):
                return int(round(estimate))
        previous = estimate
        n *= 2
    raise ConvergenceError(f"winding quadrature did not settle with {MAX_POINTS} points")


# root finding


def _local_scale(z) -> float:
    return max(1.0, abs(z))


def _newton_polish(P: ComplexPoly, z0: complex, mult: int, radius: float) -> complex:
    """Polish a cluster centre on the simple root of ``P^(mult-1)``."""
    D = P
    for _ in range(mult - 1):
        D = derivative(D)
    dD = derivative(D)
    if D.degree < 1:
        return z0
    z = z0
    for _ in range(8):
        d = dD(z)
        if d == 0:
            break
        step = D(z) / d
        z = z - step
        if abs(step) <= 1e-16 * _local_scale(z):
            break
    return z if abs(z - z0) <= radius else z0


def roots_with_multiplicity(P: ComplexPoly) -> list[tuple[complex, int]]:
    """Roots of a real polynomial grouped into clusters with multiplicities.

    Multiplicity of each cluster is the winding number of ``P`` on a circle
    around it, small enough to exclude every other cluster. A cluster whose
    winding disagrees with its size is merged with its nearest neighbour and
    retried; multiple roots split by rounding are reassembled this way.
    """
    if P.degree < 1:
        raise DegenerateInputError("a constant has no roots")
    raw = npoly.polyroots(P.coeffs / np.abs(P.coeffs).max())
    raw = np.atleast_1d(raw).astype(complex)

    # initial single-linkage merge
    clusters: list[list[complex]] = []
    for r in raw:
        hits = [cl for cl in clusters if min(abs(r - x) for x in cl) <= CLUSTER_RTOL * _local_scale(r)]
        merged = [r]
        for cl in hits:
            merged.extend(cl)
            clusters.remove(cl)
        clusters.append(merged)

    def merge_nearest(idx: int):
        cl = clusters[idx]
        best, best_d = None, math.inf
        for j, other in enumerate(clusters):
            if j == idx:
                continue
            d = min(abs(a - b) for a in cl for b in other)
            if d < best_d:
                best, best_d = j, d
        if best is None:
            raise ConvergenceError("root clustering failed to verify multiplicities")
        clusters[idx] = cl + clusters[best]
        del clusters[best]

    verified: list[tuple[complex, int, float]] = []
    while True:
        verified = []
        retry = False
        for idx, cl in enumerate(clusters):
            centre = complex(np.mean(cl))
            spread = max(abs(x - centre) for x in cl)
            gap = min(
                (abs(centre - x) for j, other in enumerate(clusters) if j != idx for x in other),
                default=math.inf,
            )
            radius = min(MULT_RADIUS * _local_scale(centre), 0.45 * gap)
            if len(clusters) > 1 and radius <= 2.0 * spread:
                merge_nearest(idx)
                retry = True
                break
            radius = max(radius, 2.0 * spread) if len(clusters) == 1 else radius
            try:
                w = winding_log_derivative(P, Contour.circle(centre, radius))
            except (BoundaryZeroError, ConvergenceError):
                w = -1
            if w != len(cl):
                if len(clusters) == 1:
                    raise ConvergenceError("could not verify root multiplicity")
                merge_nearest(idx)
                retry = True
                break
            verified.append((centre, len(cl), radius))
        if not retry:
            break

    out = []
    for centre, mult, radius in verified:
        # the circle excludes every other cluster, so containing the mirror
        # image means the cluster is its own conjugate: a real root
        if 2.0 * abs(centre.imag) < radius:
            centre = complex(centre.real, 0.0)
        z = _newton_polish(P, centre, mult, radius)
        if centre.imag == 0.0:
            z = complex(z.real, 0.0)
        out.append((z, mult))
    # enforce conjugate symmetry using the upper half-plane representatives
    upper = [(z, m) for z, m in out if z.imag > 0]
    real = [(z, m) for z, m in out if z.imag == 0]
    result = real + upper + [(z.conjugate(), m) for z, m in upper]
    if sum(m for _, m in result) != P.degree:
        raise ConvergenceError("conjugate pairing of roots is inconsistent")
    return sorted(result, key=lambda t: (t[0].real, t[0].imag))


# classification


@dataclass(frozen=True)
class ZeroRecord:
    """A classified zero (or pole) with its upper half-plane stem point.

    ``order`` is the zero multiplicity for real, isolated and spherical
    records. For poles it is the pole order of ``Phi o H`` at the stem point,
    halved at real points, which is the weight entering the pole tallies.
    """

    kind: str
    stem_point: complex
    order: int
    unit: ImaginaryUnit | None = None

    def __post_init__(self):
        object.__setattr__(self, "stem_point", complex(self.stem_point))
        object.__setattr__(self, "order", int(self.order))


@dataclass(frozen=True)
class CountReport:
    k0: int = 0
    k1: int = 0
    m0: int = 0
    m1: int = 0
    r: int = 0
    p0: int = 0
    p1: int = 0
    winding: int = 0
    records: tuple = field(default=(), compare=False)

    def predicted_winding(self) -> int:
        return 2 * self.k0 + self.k1 + 2 * self.r + 4 * self.m0 + 2 * self.m1 - 2 * self.p0 - self.p1

    def is_consistent(self) -> bool:
        return self.predicted_winding() == self.winding

    def tallies(self) -> dict:
        return {k: getattr(self, k) for k in ("k0", "k1", "m0", "m1", "r", "p0", "p1")}


def _deflate_quadratic(p: StemPolynomial, w: complex) -> StemPolynomial:
    Q = np.array([abs(w) ** 2, -2.0 * w.real, 1.0])
    cols = []
    for m in range(4):
        quo, _ = npoly.polydiv(p.coeffs[:, m], Q) if p.degree >= 2 else (np.zeros(1), None)
        cols.append(quo)
    n = max(len(c) for c in cols)
    return StemPolynomial(np.stack([np.pad(c, (0, n - len(c))) for c in cols], axis=1))


def _vanishes(p: StemPolynomial, w: complex) -> bool:
    if p.is_zero():
        return True
    ref = p.scale() * _local_scale(w) ** max(p.degree, 0)
    return np.linalg.norm(p.stem_array(w)) <= SPHERICAL_RTOL * ref


def _classify_root(num: StemPolynomial, w: complex, mult: int) -> list[ZeroRecord]:
    if w.imag == 0.0:
        if mult % 2:
            raise ConvergenceError(f"real root {w} of the symmetrisation has odd multiplicity {mult}")
        return [ZeroRecord("real", w, mult // 2)]
    sph = 0
    g = num
    while 2 * (sph + 1) <= mult and g.degree >= 2 and _vanishes(g, w):
        g = _deflate_quadratic(g, w)
        sph += 1
    out = []
    if sph:
        out.append(ZeroRecord("spherical", w, sph))
    iso = mult - 2 * sph
    if iso:
        value = ComplexQuad.from_array(g.stem_array(w))
        try:
            unit = unit_from_zero(value, tol=1e-6)
        except NotOnVarietyError:
            unit = None
        out.append(ZeroRecord("isolated", w, iso, unit))
    return out


def _symmetrised_parts(f):
    h = as_rational(f)
    if h.num.is_zero():
        raise DegenerateInputError("the function is identically zero")
    return h, symmetrize(h.num), h.den


def _relevant(z: complex, region: Contour | None) -> bool:
    if region is None:
        return True
    return bool(region.contains(z) or region.contains(z.conjugate()))


def find_zeros(f, region: Contour | None = None) -> list[ZeroRecord]:
    """Classified zeros (and poles, for rational input) touching ``region``.

    A record is kept when its stem point or the conjugate lies inside; the
    stored stem point is always the one with non-negative imaginary part.
    """
    h, P, den = _symmetrised_parts(f)
    records: list[ZeroRecord] = []
    if P.degree >= 1:
        for w, mult in roots_with_multiplicity(P):
            if w.imag < 0 or not _relevant(w, region):
                continue
            records.extend(_classify_root(h.num, w, mult))
    if den.degree >= 1:
        for w, mult in roots_with_multiplicity(den):
            if w.imag < 0 or not _relevant(w, region):
                continue
            order = mult if w.imag == 0.0 else 2 * mult
            records.append(ZeroRecord("pole", w, order))
    return records


def _guard_boundary(f, c: Contour):
    """Reject contours passing within BOUNDARY_RTOL * scale of a zero or pole."""
    _, P, den = _symmetrised_parts(f)
    tol = BOUNDARY_RTOL * c.scale()
    for poly in (P, den):
        if poly.degree < 1:
            continue
        roots = np.atleast_1d(npoly.polyroots(poly.coeffs / np.abs(poly.coeffs).max()))
        d = c.distance(roots)
        if np.any(d <= tol):
            raise BoundaryZeroError(f"zero or pole at {roots[np.argmin(d)]} lies on the contour")


def _order_of_root(P: ComplexPoly, w: complex, rtol: float = 1e-8) -> int:
    """Order of vanishing of P at w from its Taylor coefficients."""
    if P.is_zero():
        raise DegenerateInputError("order of the zero polynomial is undefined")
    ref = np.abs(P.coeffs).max() * _local_scale(w) ** P.degree
    D = P
    for k in range(P.degree + 1):
        if abs(D(w)) / math.factorial(k) > rtol * ref:
            return k
        D = derivative(D)
    return P.degree


def sphere_order(f, q: Quaternion) -> int:
    """Order of ``f`` on the sphere of ``q`` (negative for poles)."""
    x, y, _ = q.split()
    w = complex(x, y)
    h, P, den = _symmetrised_parts(f)
    order = _order_of_root(P, w) - _order_of_root(den * den, w)
    if y == 0.0:
        return order // 2
    return order


def count_in_region(f, c: Contour) -> CountReport:
    _guard_boundary(f, c)
    h, P, den = _symmetrised_parts(f)
    records = find_zeros(h, c)
    t = dict(k0=0, k1=0, m0=0, m1=0, r=0, p0=0, p1=0)
    for rec in records:
        w = rec.stem_point
        a, b = bool(c.contains(w)), bool(c.contains(w.conjugate()))
        if rec.kind == "real":
            t["r"] += rec.order
            continue
        both = a and b
        key = {"isolated": "k", "spherical": "m", "pole": "p"}[rec.kind]
        if rec.kind == "pole" and w.imag == 0.0:
            t["p0"] += rec.order
        else:
            t[key + ("0" if both else "1")] += rec.order
    winding = winding_log_derivative((P, den * den), c)
    return CountReport(winding=winding, records=tuple(records), **t)


def weighted_zero_count(f: StemPolynomial, c: Contour) -> int:
    """``k + 2 m`` inside a contour symmetric about the real axis."""
    if not c.is_symmetric():
        raise AsymmetricContourError("weighted counts need a contour symmetric about the real axis")
    _guard_boundary(f, c)
    winding = winding_log_derivative(symmetrize(as_rational(f).num), c)
    if winding % 2:
        raise ConvergenceError(f"odd winding {winding} on a symmetric contour")
    return winding // 2


@dataclass(frozen=True)
class RoucheResult:
    conclusive: bool
    count_f: int | None = None
    count_g: int | None = None
    witness: complex | None = None
    margin: float = 0.0


def rouche_same_count(f: StemPolynomial, g: StemPolynomial, c: Contour, samples: int = 512) -> RoucheResult:
    """Check the symmetric Rouche inequality on the boundary and compare counts.

    The inequality ``|P - Q| < |P| + |Q|`` fails exactly where ``P/Q`` is a
    non-positive real. Besides testing the samples, sign changes of
    ``Im(P/Q)`` between neighbouring samples with a negative real part are
    bisected to a witness.
    """
    if not c.is_symmetric():
        raise AsymmetricContourError("Rouche comparison needs a symmetric contour")
    P, Q = symmetrize(f), symmetrize(g)
    s = np.arange(samples) / samples
    z = c.point_at(s)
    p, q = P(z), Q(z)
    lhs = np.abs(p - q)
    rhs = np.abs(p) + np.abs(q)
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(rhs > 0, (rhs - lhs) / rhs, -1.0)
    bad = np.nonzero(rel <= 1e-13)[0]
    if bad.size:
        k = int(bad[0])
        return RoucheResult(False, witness=complex(z[k]), margin=float(rel.min()))
    ratio = p / q
    for k in range(samples):
        a, b = ratio[k], ratio[(k + 1) % samples]
        if np.sign(a.imag) != np.sign(b.imag) and min(a.real, b.real) < 0:
            lo, hi = s[k], s[k] + 1.0 / samples
            fa = a.imag
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                zm = c.point_at(mid)
                fm = (P(zm) / Q(zm)).imag
                if np.sign(fm) == np.sign(fa):
                    lo, fa = mid, fm
                else:
                    hi = mid
            zw = complex(c.point_at(0.5 * (lo + hi)))
            if (P(zw) / Q(zw)).real < 0:
                return RoucheResult(False, witness=zw, margin=float(rel.min()))
    return RoucheResult(
        True,
        count_f=weighted_zero_count(f, c),
        count_g=weighted_zero_count(g, c),
        margin=float(rel.min()),
    )


def jensen_check(f: StemPolynomial, R: float, nodes: int = 4096) -> tuple[float, float]:
    """Both sides of Jensen's formula for the counting function ``n(t) = k(t) + 2 m(t)``.

    The left side integrates the counting function exactly from the located
    zeros; the right side is ``(1/4pi) int log|Phi o F(R e^it)| dt - (1/2) log|Phi o F(0)|``
    by the trapezoid rule.
    """
    P = symmetrize(f)
    p0 = abs(P(0.0)) if not P.is_zero() else 0.0
    if p0 == 0.0:
        raise UndefinedAtOriginError("Phi o F vanishes at the origin")
    lhs = 0.0
    if P.degree >= 1:
        for rec in find_zeros(f, Contour.circle(0.0, R)):
            rad = abs(rec.stem_point)
            if abs(rad - R) <= BOUNDARY_RTOL * max(1.0, R):
                raise BoundaryZeroError(f"zero of modulus {rad} on the circle of radius {R}")
            weight = 2 * rec.order if rec.kind == "spherical" else rec.order
            lhs += weight * math.log(R / rad)
    theta = 2.0 * np.pi * np.arange(nodes) / nodes
    vals = np.abs(P(R * np.exp(1j * theta)))
    if np.any(vals == 0.0):
        raise BoundaryZeroError("Phi o F vanishes on the circle")
    rhs = float(np.mean(np.log(vals))) / 2.0 - 0.5 * math.log(p0)
    return lhs, rhs


@dataclass(frozen=True)
class HurwitzReport:
    counts: tuple
    limit_count: int
    stable_from: int | None

    @property
    def eventually_matches(self) -> bool:
        return self.stable_from is not None


def hurwitz_probe(fs, region: Contour, limit: StemPolynomial | None = None) -> HurwitzReport:
    """Weighted counts along a sequence and at its limit.

    ``stable_from`` is the first index from which every count equals the
    limit count, or None when the tail disagrees. Without an explicit
    ``limit`` the last element stands in for it.
    """
    fs = list(fs)
    counts = tuple(weighted_zero_count(f, region) for f in fs)
    limit_count = weighted_zero_count(limit if limit is not None else fs[-1], region)
    stable = None
    for i in range(len(counts) - 1, -1, -1):
        if counts[i] != limit_count:
            break
        stable = i
    return HurwitzReport(counts, limit_count, stable)


def pole_blowup(f: StemRational, w: complex, steps: int = 6) -> np.ndarray:
    """Component moduli of the stem along points approaching ``w``.

    Returns an array of shape ``(steps, 4)``; row ``n`` is ``|f_m(w + d_n)|``
    with ``d_n = 10^-(n+1)`` times a fixed non-axis direction.
    """
    direction = complex(math.cos(0.7), math.sin(0.7))
    ds = 10.0 ** -(np.arange(steps) + 1.0) * direction * _local_scale(w)
    return np.abs(f.stem_array(w + ds))
