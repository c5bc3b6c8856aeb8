import random
from fractions import Fraction

import numpy as np
import pytest

from toricapolar.antipolar import (ForbiddenVerdict, antipolar, antipolar_difference,
                                   antipolar_eval, forbidden_certificate, forbidden_scan_quartic,
                                   kleppe_annotations, point_square, rs_membership,
                                   tangential_point_form)
from toricapolar.apolarity import catalecticant, middle_catalecticant
from toricapolar.errors import (DegenerateInputError, DimensionError, SingularCatalecticantError,
                                UnsupportedAmbientError)
from toricapolar.exactalg import GradedForm, Ring, adjugate, det_exact
from toricapolar.realcert import random_biform
from toricapolar.syntax import parse_form

EXAMPLE_F = ("4*x^2*z^2 + 6*x^2*z*w + 2*x^2*w^2 + 8*x*y*z^2 + 7*x*y*z*w + 5*x*y*w^2"
             " + 3*y^2*z^2 + 7*y^2*z*w + 2*y^2*w^2")


def _q(rng, num=9, den=5):
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def _point(rng, sizes=(2, 2)):
    out = []
    for n in sizes:
        v = [_q(rng) for _ in range(n)]
        while not any(v):
            v = [_q(rng) for _ in range(n)]
        out.append(tuple(v))
    return tuple(out)


def _invertible_biform(rng, d):
    while True:
        f = random_biform(d, rng)
        if det_exact(catalecticant(f, (1, d)).matrix):
            return f


@pytest.fixture(scope="module")
def example():
    return antipolar(parse_form(EXAMPLE_F), (1, 1))


def test_example_values(example):
    assert antipolar_eval(example, ((1, 0), (1, 0))) == -1728
    assert example(((0, 1), (0, 1))) == -1344
    assert example.det_phi == -4751
    assert example.form.degree == (2, 2)


def test_zero_vector_and_scaling(example):
    rng = random.Random(1)
    assert example(((0, 0), (1, 2))) == 0
    assert example(((3, 1), (0, 0))) == 0
    for _ in range(10):
        (s, t), c = _point(rng), _q(rng)
        assert example(((c * s[0], c * s[1]), t)) == c ** 2 * example((s, t))
        assert example((s, (c * t[0], c * t[1]))) == c ** 2 * example((s, t))


def test_classical_dual_quadric():
    f = parse_form("x^2 + y^2 + z^2", ring="ternary")
    omega = antipolar(f, (1,))
    a, b, c = omega.ring.gens()
    assert omega.form == (a * a + b * b + c * c) * 8


@pytest.mark.parametrize("d", [1, 2, 3])
def test_trace_adjugate_equals_determinant_difference(d):
    rng = np.random.default_rng(100 + d)
    prng = random.Random(d)
    trials = {1: 50, 2: 30, 3: 20}[d]
    for _ in range(trials):
        f = _invertible_biform(rng, d)
        omega = antipolar(f, (1, d))
        pt = _point(prng)
        assert omega(pt) == antipolar_difference(f, (1, d), pt)


def test_difference_identity_on_p2_x_p1():
    rng = random.Random(21)
    R = Ring.pn_p1(2)
    monos = R.monomials((2, 2))
    for _ in range(5):
        f = GradedForm(R, {m: rng.randint(-9, 9) for m in monos}, (2, 2))
        if not det_exact(catalecticant(f, (1, 1)).matrix):
            continue
        omega = antipolar(f, (1, 1))
        pt = _point(rng, (3, 2))
        assert omega(pt) == antipolar_difference(f, (1, 1), pt)


def test_classical_quartic_difference_identity():
    rng = random.Random(4)
    f = parse_form("x^4 + 2*y^4 + 3*z^4 + x*y*z^2 - x^2*y^2", ring="ternary")
    omega = antipolar(f, (2,))
    for _ in range(10):
        pt = _point(rng, (3,))
        assert omega(pt) == antipolar_difference(f, (2,), pt)


def test_omega_is_adjugate_quadratic_form():
    # Omega(l) = v(l)^T adj(phi) v(l) where v(l) is the rank-one update vector
    rng = random.Random(8)
    f = parse_form(EXAMPLE_F)
    cat = catalecticant(f, (1, 1))
    adj = adjugate(cat.as_symmetric())
    omega = antipolar(f, (1, 1))
    for _ in range(10):
        pt = _point(rng)
        upd = catalecticant(point_square(f.ring, (1, 1), pt), (1, 1)).as_symmetric()
        # a rank-one symmetric matrix equals col col^T / upd[j, j] for any nonzero diagonal slot
        assert upd.rank() == 1
        j = next(k for k in range(4) if upd[k, k])
        col = [upd[i, j] for i in range(4)]
        quad = sum(col[i] * adj[i, k] * col[k] for i in range(4) for k in range(4)) / upd[j, j]
        assert quad == omega(pt)


def test_polarization_is_bilinear(example):
    # the symmetric bilinear form B(u, v) = (Q(u+v) - Q(u) - Q(v)) / 2 in the s block
    rng = random.Random(9)
    for _ in range(10):
        s, u, t = _point(rng, (2,))[0], _point(rng, (2,))[0], _point(rng, (2,))[0]
        c = _q(rng)

        def Q(vec):
            return example((vec, t))

        def Bf(p, q):
            return (Q(tuple(a + b for a, b in zip(p, q))) - Q(p) - Q(q)) / 2

        su = tuple(c * a for a in s)
        assert Bf(su, u) == c * Bf(s, u)
        assert Bf(s, u) == Bf(u, s)


@pytest.mark.parametrize("d", [1, 2])
def test_scaling_degree_in_coefficients(d):
    rng = np.random.default_rng(300 + d)
    f = _invertible_biform(rng, d)
    c = Fraction(-3, 2)
    assert antipolar(f * c, (1, d)).form == antipolar(f, (1, d)).form * c ** (2 * d + 1)


def test_singular_catalecticant_raises():
    with pytest.raises(SingularCatalecticantError):
        antipolar(parse_form("x^2*z^2"), (1, 1))


def test_shape_errors():
    with pytest.raises(DimensionError):
        antipolar(parse_form(EXAMPLE_F), (1, 2))
    R = Ring([("x", "y"), ("z", "w"), ("u", "v")])
    x, y, z, w, u, v = R.gens()
    with pytest.raises(UnsupportedAmbientError):
        antipolar((x * z * u) ** 2, (1, 1, 1))


@pytest.mark.parametrize("d", [1, 2, 3])
def test_tangential_construction_lies_in_rs_locus(d):
    rng = random.Random(50 + d)
    R = Ring.p1p1()
    for _ in range(3):
        star, tangent = _point(rng), _point(rng)
        points = [_point(rng) for _ in range(2 * d)]
        weights = [_q(rng) or 1 for _ in range(2 * d)]
        f = tangential_point_form(R, d, star, tangent, points, weights)
        if not det_exact(catalecticant(f, (1, d)).matrix):
            continue
        omega = antipolar(f, (1, d))
        assert rs_membership(omega, point=star)
        assert forbidden_certificate(omega, point=star) is ForbiddenVerdict.FORBIDDEN_CANDIDATE
        # rescaling each block of the point does not change the verdict
        scaled = tuple(tuple(c * k for c in blk) for blk, k in zip(star, (3, Fraction(-2, 5))))
        assert rs_membership(omega, point=scaled)
        other = _point(rng)
        if omega(other) != 0:
            assert not rs_membership(f, (1, d), other)
            assert forbidden_certificate(f, (1, d), other) is ForbiddenVerdict.NOT_DECIDED


def test_random_point_not_in_rs_locus(example):
    assert not rs_membership(example, point=((1, 0), (1, 0)))


def test_quartic_scan_generic_case():
    f = parse_form("x^4 + y^4 + z^4 + 2*x^2*y*z - 3*x*y^3 + y^2*z^2", ring="ternary")
    rep = forbidden_scan_quartic(f)
    assert rep.rank_Cf == 6
    assert rep.nullspace_conditions == []
    assert rep.delta_poly.degree_in("lam") == 1
    assert not rep.delta_poly.is_zero()
    assert "rank 6" in rep.annotations[0]


def test_quartic_scan_delta_is_linear_in_lambda():
    rng = random.Random(12)
    R = Ring.ternary()
    monos = R.monomials((4,))
    for _ in range(5):
        f = GradedForm(R, {m: rng.randint(-5, 5) for m in monos}, (4,))
        rep = forbidden_scan_quartic(f)
        assert rep.delta_poly.is_zero() or rep.delta_poly.degree_in("lam") == 1
        if rep.rank_Cf <= 4:
            assert rep.delta_poly.is_zero()


def test_quartic_scan_delta_matches_determinants():
    f = parse_form("(x+y)^4 + (x^3+y^3)*z", ring="ternary")
    rep = forbidden_scan_quartic(f)
    rng = random.Random(2)
    for _ in range(5):
        pt, lam = _point(rng, (3,))[0], _q(rng)
        g = f + point_square(f.ring, (2,), pt) * lam
        diff = det_exact(middle_catalecticant(g).matrix) - rep.det_Cf
        assert rep.delta_poly.evaluate(tuple(pt) + (lam,)) == diff


def test_quartic_scan_errors():
    with pytest.raises(DegenerateInputError):
        forbidden_scan_quartic(GradedForm.zero(Ring.ternary(), (4,)))
    with pytest.raises(UnsupportedAmbientError):
        forbidden_scan_quartic(parse_form(EXAMPLE_F))


def test_kleppe_annotations():
    R = Ring.ternary()
    x, y, z = R.gens()
    assert "rank 6" in kleppe_annotations([])[0]
    assert "rank 7" in kleppe_annotations([x * x])[0]
    assert "no rank criterion" in kleppe_annotations([x * y])[0]
    assert "rank 4 or 6" in kleppe_annotations([x * x, y * y])[0]


def test_antipolar_json(example):
    doc = example.to_json()
    assert doc["B"] == [1, 1] and doc["det_phi"] == "-4751"
    assert len(doc["terms"]) == 9
