import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from slicereg.errors import (
    AsymmetricContourError,
    BoundaryZeroError,
    DegenerateInputError,
    UndefinedAtOriginError,
)
from slicereg.hypercomplex import I, J, ComplexQuad, ImaginaryUnit, Quaternion, rho
from slicereg.stem import (
    ComplexPoly,
    StemPolynomial,
    StemRational,
    eval_slice,
    star_inverse,
    star_product_rational,
    symmetrize,
)
from slicereg.zeros import (
    Contour,
    count_in_region,
    find_zeros,
    hurwitz_probe,
    jensen_check,
    pole_blowup,
    roots_with_multiplicity,
    rouche_same_count,
    sphere_order,
    weighted_zero_count,
    winding_log_derivative,
)

Q2P1 = StemPolynomial.from_real([1, 0, 1])
F_IJ = StemPolynomial([[0, 0, 0, 1], [0, -1, -1, 0], [1, 0, 0, 0]])
Q = StemPolynomial.from_real([0, 1])
C2 = Contour.circle(0, 2)


def test_winding_examples():
    assert winding_log_derivative(ComplexPoly([1, 0, 2, 0, 1]), C2) == 4
    assert winding_log_derivative(ComplexPoly([1, 0, 1]), Contour.circle(0, 0.5)) == 0
    assert winding_log_derivative(ComplexPoly([1, 0, 1]), Contour.rectangle(-0.5 + 0.5j, 0.5 + 1.5j)) == 1
    assert winding_log_derivative((ComplexPoly([0, 1]), ComplexPoly([1, 0, 1])), C2) == -1
    assert winding_log_derivative(ComplexPoly([3]), C2) == 0


def test_winding_errors():
    with pytest.raises(BoundaryZeroError):
        winding_log_derivative(ComplexPoly([-1, 0, 1]), Contour.circle(0, 1))
    with pytest.raises(DegenerateInputError):
        winding_log_derivative(ComplexPoly(), C2)
    with pytest.raises(ValueError):
        Contour.circle(0, 0)
    with pytest.raises(ValueError):
        Contour.rectangle(1 + 1j, 0)


def test_contour_geometry():
    c = Contour.rectangle(-1 - 1j, 2 + 1j)
    assert c.is_symmetric() and c.contains(0.5j) and not c.contains(3)
    assert not Contour.rectangle(-1 + 0.5j, 1 + 2j).is_symmetric()
    assert not Contour.circle(0.1j, 1).is_symmetric()
    assert math.isclose(Contour.circle(1, 2).distance(np.array([4.0]))[0], 1.0)


def test_roots_with_multiplicity_examples():
    r = roots_with_multiplicity(ComplexPoly([1, 0, 2, 0, 1]))
    assert [m for _, m in r] == [2, 2]
    assert {complex(round(z.real, 10), round(z.imag, 10)) for z, _ in r} == {1j, -1j}
    assert roots_with_multiplicity(ComplexPoly([0, 0, 1])) == [(0j, 2)]
    r = roots_with_multiplicity(ComplexPoly([0, -1, 0, 1]))
    assert [(round(z.real, 12), m) for z, m in r] == [(-1.0, 1), (0.0, 1), (1.0, 1)]
    assert all(z.imag == 0 for z, _ in r)
    with pytest.raises(DegenerateInputError):
        roots_with_multiplicity(ComplexPoly([2]))


@given(st.integers(0, 2**32 - 1), st.integers(1, 3), st.integers(1, 3))
def test_multiplicities_of_constructed_products(seed, m1, m2):
    rng = np.random.default_rng(seed)
    a, b = rng.normal(), complex(rng.normal(), abs(rng.normal()) + 0.3)
    P = ComplexPoly([-a, 1]) ** m1 * ComplexPoly([abs(b) ** 2, -2 * b.real, 1]) ** m2
    roots = roots_with_multiplicity(P)
    got = {}
    for z, m in roots:
        assert abs(z - a) < 1e-5 or abs(z - b) < 1e-5 or abs(z - b.conjugate()) < 1e-5
        got[m] = got.get(m, 0) + 1
    assert sum(m for _, m in roots) == P.degree
    assert sorted(m for _, m in roots) == sorted([m1, m2, m2])


def test_find_zeros_examples():
    (rec,) = find_zeros(Q2P1)
    assert (rec.kind, rec.order, rec.unit) == ("spherical", 1, None)
    assert abs(rec.stem_point - 1j) < 1e-10
    (rec,) = find_zeros(F_IJ)
    assert (rec.kind, rec.order) == ("isolated", 2)
    assert np.allclose(rec.unit.as_array(), [1, 0, 0], atol=1e-10)
    (rec,) = find_zeros(StemPolynomial.linear(I))
    assert (rec.kind, rec.order) == ("isolated", 1)
    assert np.allclose(rec.unit.as_array(), [1, 0, 0], atol=1e-10)
    (rec,) = find_zeros(Q)
    assert (rec.kind, rec.order, rec.stem_point) == ("real", 1, 0j)
    assert find_zeros(Q2P1, Contour.circle(0, 0.5)) == []
    with pytest.raises(DegenerateInputError):
        find_zeros(StemPolynomial())


def test_mixed_spherical_and_isolated_on_one_sphere():
    f = Q2P1 * StemPolynomial.linear(J)
    recs = find_zeros(f)
    kinds = sorted((r.kind, r.order) for r in recs)
    assert kinds == [("isolated", 1), ("spherical", 1)]
    assert sum(r.kind == "isolated" for r in recs) == 1


def test_weighted_count_examples():
    assert weighted_zero_count(Q2P1, C2) == 2
    assert weighted_zero_count(F_IJ, C2) == 2
    assert weighted_zero_count(Q, Contour.circle(0, 1)) == 1
    with pytest.raises(AsymmetricContourError):
        weighted_zero_count(Q2P1, Contour.rectangle(-2 - 0.5j, 2 + 2j))
    with pytest.raises(BoundaryZeroError):
        weighted_zero_count(Q2P1, Contour.circle(0, 1))


def test_sphere_order_examples():
    assert sphere_order(Q2P1, I) == 2
    assert sphere_order(Q, Quaternion(0)) == 1
    assert sphere_order(Q2P1, Quaternion(3)) == 0
    h = star_product_rational(star_inverse(Q2P1), StemPolynomial([[0, 0, 0, -1], [0, 1, -1, 0], [1, 0, 0, 0]]))
    assert sphere_order(h, I) == 0


def test_count_in_region_examples():
    rep = count_in_region(Q2P1, Contour.rectangle(-2 - 0.5j, 2 + 2j))
    assert rep.m1 == 1 and rep.winding == 2 and rep.is_consistent()
    rep = count_in_region(Q2P1, C2)
    assert rep.m0 == 1 and rep.winding == 4 and rep.is_consistent()
    rep = count_in_region(Q, Contour.rectangle(-1 - 1j, 1 + 1j))
    assert rep.r == 1 and rep.winding == 2


def test_meromorphic_example_bookkeeping():
    # Phi o H is identically 1, yet the stem has a zero and a pole on the sphere of i
    g = StemPolynomial([[0, 0, 0, -1], [0, 1, -1, 0], [1, 0, 0, 0]])
    h = StemRational(g, ComplexPoly([1, 0, 1]))
    num, den = h.symmetrized()
    assert num.allclose(den)
    rep = count_in_region(h, C2)
    assert (rep.k0, rep.p0, rep.winding) == (2, 2, 0) and rep.is_consistent()
    # the unreduced product f^-* * g keeps the common spherical factor
    h2 = star_product_rational(star_inverse(Q2P1), g)
    rep = count_in_region(h2, C2)
    assert (rep.m0, rep.k0, rep.p0, rep.winding) == (1, 2, 4, 0) and rep.is_consistent()


def test_poles_of_inverse_match_zeros():
    rng = np.random.default_rng(4)
    for _ in range(10):
        p = StemPolynomial(rng.normal(size=(3, 4)))
        h = star_inverse(p)
        P = symmetrize(p)
        for z, mult in roots_with_multiplicity(P):
            if z.imag < 0:
                continue
            q = ImaginaryUnit(1, 0, 0).point(z.real, z.imag)
            expected = -mult if z.imag > 0 else -(mult // 2)
            assert sphere_order(h, q) == expected
            assert sphere_order(p, q) == -expected
        # pole records sit exactly at the roots of Phi o p
        poles = sorted((r.stem_point for r in find_zeros(h) if r.kind == "pole"), key=lambda z: (z.real, z.imag))
        upper = sorted((z for z, _ in roots_with_multiplicity(P) if z.imag >= 0), key=lambda z: (z.real, z.imag))
        assert np.allclose(poles, upper)


def test_pole_blowup():
    # every component with nonzero numerator at the pole diverges
    p = StemPolynomial([[0.3, -1, 0.5, 2], [1, 0, 0, 0]])
    h = star_inverse(p)
    (rec,) = [r for r in find_zeros(h) if r.kind == "pole"]
    mods = pole_blowup(h, rec.stem_point, steps=6)
    assert np.all(np.diff(mods, axis=0) > 0)
    assert np.all(mods[-1] > 1e4)
    # q - i: components 2 and 3 of the inverse vanish identically, only |H| diverges
    h = star_inverse(StemPolynomial.linear(I))
    mods = pole_blowup(h, 1j, steps=6)
    assert np.all(mods[:, 2:] == 0)
    assert np.all(np.diff(np.linalg.norm(mods, axis=1)) > 0)


def test_rouche_examples():
    res = rouche_same_count(Q2P1, StemPolynomial.from_real([1.1, 0, 1]), C2)
    assert res.conclusive and res.count_f == res.count_g == 2
    res = rouche_same_count(F_IJ, F_IJ, C2)
    assert res.conclusive and res.count_f == res.count_g == 2
    res = rouche_same_count(Q2P1, StemPolynomial.from_real([-9, 0, 1]), C2)
    assert not res.conclusive and res.witness is not None
    P, G = symmetrize(Q2P1), symmetrize(StemPolynomial.from_real([-9, 0, 1]))
    w = res.witness
    assert abs(P(w) - G(w)) >= (abs(P(w)) + abs(G(w))) * (1 - 1e-6)
    with pytest.raises(AsymmetricContourError):
        rouche_same_count(Q2P1, Q2P1, Contour.circle(0.5j, 2))


def test_jensen_examples():
    lhs, rhs = jensen_check(Q2P1, 2.0)
    assert abs(lhs - 2 * math.log(2)) < 1e-12 and abs(rhs - 2 * math.log(2)) < 1e-8
    lhs, rhs = jensen_check(StemPolynomial.linear(I), 2.0)
    assert abs(lhs - math.log(2)) < 1e-12 and abs(rhs - math.log(2)) < 1e-8
    lhs, rhs = jensen_check(Q2P1, 0.5)
    assert lhs == 0 and abs(rhs) < 1e-12
    with pytest.raises(UndefinedAtOriginError):
        jensen_check(Q, 1.0)
    with pytest.raises(BoundaryZeroError):
        jensen_check(Q2P1, 1.0)


def test_jensen_non_unit_value_at_origin():
    # Phi o F(0) = 16 here, which exercises the 1/2 log|Phi o F(0)| term
    f = StemPolynomial.from_real([4, 0, 1]) * StemPolynomial.linear(Quaternion(0.3, 0.2, -0.4, 0.1))
    lhs, rhs = jensen_check(f, 3.0)
    assert abs(lhs - rhs) < 1e-8


def test_hurwitz_examples():
    seq = [StemPolynomial.from_real([1 + 1 / n, 0, 1]) for n in range(1, 8)]
    rep = hurwitz_probe(seq, Contour.circle(0, 0.5), limit=Q2P1)
    assert set(rep.counts) == {0} and rep.limit_count == 0 and rep.stable_from == 0
    rep = hurwitz_probe(seq, C2, limit=Q2P1)
    assert set(rep.counts) == {2} and rep.limit_count == 2 and rep.eventually_matches
    seq = [StemPolynomial.linear(Quaternion(0, 1 / n, 0, 0)) for n in range(2, 9)]
    rep = hurwitz_probe(seq, Contour.circle(0, 1), limit=Q)
    assert set(rep.counts) == {1} and rep.limit_count == 1


@given(st.integers(0, 2**32 - 1), st.integers(1, 5))
def test_degree_identity_and_isolated_zero_values(seed, deg):
    rng = np.random.default_rng(seed)
    f = StemPolynomial(rng.normal(size=(deg + 1, 4)))
    recs = find_zeros(f)
    R = 2 + max(abs(r.stem_point) for r in recs)
    assert winding_log_derivative(symmetrize(f), Contour.circle(0, R)) == 2 * deg
    total = sum(2 * r.order if r.kind == "spherical" else r.order for r in recs)
    assert total == deg
    stems = [r.stem_point for r in recs if r.kind == "isolated"]
    assert len(stems) == len(set(np.round(stems, 8)))
    for r in recs:
        if r.kind == "isolated":
            q = r.unit.point(r.stem_point.real, r.stem_point.imag)
            assert eval_slice(f, q).norm() <= 1e-8 * f.scale() * max(1.0, abs(r.stem_point)) ** deg
            assert rho(r.unit, ComplexQuad.from_array(f.stem_array(r.stem_point))).norm() <= 1e-7 * f.scale()
