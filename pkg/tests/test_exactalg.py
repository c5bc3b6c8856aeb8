import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_minors_zero, bisection_root_count, leibniz_det
from toricapolar.apolarity import middle_catalecticant
from toricapolar.errors import (DegenerateInputError, DegreeError, DimensionError,
                                InhomogeneousError, RingMismatchError)
from toricapolar.exactalg import (BinaryForm, ExactMatrix, GradedForm, Ring, UniPoly, adjugate,
                                  binary_form_positive, charpoly, det_bareiss_symbolic,
                                  det_cofactor, det_exact, det_symbolic, discriminant,
                                  isolate_real_roots, kernel_basis, poly_gcd, squarefree_part,
                                  sturm_real_root_count)
from toricapolar.syntax import parse_form

EXAMPLE_PHI = [[16, 12, 16, 7], [12, 8, 7, 10], [16, 7, 12, 14], [7, 10, 14, 8]]

small_rationals = st.fractions(min_value=-20, max_value=20, max_denominator=6)


def square_matrices(max_n=5):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(small_rationals, min_size=n, max_size=n),
                           min_size=n, max_size=n))


# -- graded forms -------------------------------------------------------------------------

def test_form_rejects_mixed_multidegree():
    R = Ring.p1p1()
    with pytest.raises(InhomogeneousError) as info:
        GradedForm(R, {(2, 0, 1, 0): 1, (1, 0, 1, 0): 1})
    assert "x^2*z" in str(info.value) and "x*z" in str(info.value)


def test_form_drops_zero_coefficients_and_keeps_degree():
    R = Ring.p1p1()
    x, y, z, w = R.gens()
    f = x * z + y * w - x * z
    assert f.terms == {(0, 1, 0, 1): 1}
    assert f.degree == (1, 1)
    assert (f * f).degree == (2, 2)


def test_form_arithmetic_is_exact():
    R = Ring.binary()
    x, y = R.gens()
    f = (x + y) ** 3 / 3
    assert f.coefficient((2, 1)) == 1
    assert f.coefficient((3, 0)) == Fraction(1, 3)


def test_form_derivative_and_evaluate():
    R = Ring.ternary()
    x, y, z = R.gens()
    f = x ** 2 * y + z ** 3
    assert f.derivative("x") == x * y * 2
    assert f.evaluate((1, 2, Fraction(1, 2))) == Fraction(17, 8)


def test_ring_mismatch_raises():
    a = Ring.binary().variable("x")
    b = Ring.ternary().variable("x")
    with pytest.raises(RingMismatchError):
        a + b


# -- determinants ------------------------------------------------------------------------------

def test_det_trivial_cases():
    assert det_exact(ExactMatrix.identity(3)) == 1
    assert det_exact(ExactMatrix([[1, 2, 3], [1, 2, 3], [4, 5, 6]])) == 0


def test_det_example_matrix_against_oracle():
    m = ExactMatrix(EXAMPLE_PHI)
    assert det_exact(m) == det_cofactor(m) == leibniz_det(EXAMPLE_PHI) == -4751


def test_det_rejects_non_square():
    with pytest.raises(DimensionError):
        det_exact(ExactMatrix([[1, 2, 3], [4, 5, 6]]))


@settings(max_examples=60, deadline=None)
@given(square_matrices())
def test_det_paths_agree(rows):
    m = ExactMatrix(rows)
    expected = leibniz_det(rows)
    assert det_exact(m) == expected
    assert det_cofactor(m) == expected


def test_det_random_size_six_against_sympy():
    rng = random.Random(6)
    for _ in range(5):
        rows = [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(6)]
                for _ in range(6)]
        assert det_exact(ExactMatrix(rows)) == Fraction(str(sympy.Matrix(rows).det()))


def test_det_symbolic_small_examples():
    R = Ring.binary()
    x, y = R.gens()
    zero = GradedForm.zero(R, (1,))
    assert det_symbolic(ExactMatrix([[x, zero], [zero, y]])) == x * y
    assert det_symbolic(ExactMatrix([[x, y], [zero, zero]])).is_zero()


def test_det_symbolic_paths_agree():
    R = Ring([("u", "v", "t")])
    u, v, t = R.gens()
    rows = [[u, v, t, u, v], [v, t, u + v, t, u], [t, u, v, v, t],
            [u - t, v, u, t, v], [v, v, t, u, u + t]]
    m = ExactMatrix(rows)
    assert det_bareiss_symbolic(m) == det_cofactor(m)


def test_det_symbolic_ring_mismatch():
    a = Ring.binary().variable("x")
    b = Ring.ternary().variable("x")
    with pytest.raises(RingMismatchError):
        det_symbolic(ExactMatrix([[a, a], [b, b]]))


# -- adjugate and kernels ------------------------------------------------------------------------

def test_adjugate_two_by_two_and_identity():
    assert adjugate(ExactMatrix([[1, 2], [3, 4]])).tolist() == [[4, -2], [-3, 1]]
    assert adjugate(ExactMatrix.identity(4)).tolist() == ExactMatrix.identity(4).tolist()


def test_adjugate_of_rank_three_catalecticant_vanishes():
    f = parse_form("y^2*(x*y + z^2)", ring="ternary")
    m = middle_catalecticant(f).matrix
    assert m.rank() == 3
    adj = adjugate(m)
    assert all(v == 0 for row in adj.tolist() for v in row)
    assert all(v == 0 for row in (m @ adj).tolist() for v in row)
    assert all_minors_zero(m.tolist(), 5)


@settings(max_examples=40, deadline=None)
@given(square_matrices(4))
def test_adjugate_identity(rows):
    m = ExactMatrix(rows)
    d = det_exact(m)
    prod = (m @ adjugate(m)).tolist()
    n = len(rows)
    assert prod == [[d if i == j else 0 for j in range(n)] for i in range(n)]


def test_kernel_basis_trivial_cases():
    assert kernel_basis(ExactMatrix.identity(3)) == []
    assert len(kernel_basis(ExactMatrix.zeros(2, 3))) == 3


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_kernel_basis_properties(m, n, data):
    rows = data.draw(st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n),
                              min_size=m, max_size=m))
    M = ExactMatrix(rows)
    ker = kernel_basis(M)
    assert len(ker) == n - sympy.Matrix(rows).rank()
    for v in ker:
        assert all(x == 0 for x in M.matvec(v))
        assert all(Fraction(x).denominator == 1 for x in v)
        assert sympy.gcd([int(x) for x in v]) == 1


def test_charpoly_matches_sympy():
    x = sympy.Symbol("x")
    chi = sympy.Matrix(EXAMPLE_PHI).charpoly(x).all_coeffs()
    assert list(charpoly(ExactMatrix(EXAMPLE_PHI)).coeffs) == [int(c) for c in reversed(chi)]


# -- univariate polynomials and Sturm ----------------------------------------------------------

def test_sturm_examples():
    assert sturm_real_root_count(UniPoly([1, 0, 1])) == 0
    assert sturm_real_root_count(UniPoly([-1, 0, 1])) == 2
    quartic = UniPoly([0, 4, 1, 2, 1])
    assert sturm_real_root_count(quartic) == 2 == bisection_root_count(quartic.coeffs)


def test_sturm_zero_polynomial_raises():
    with pytest.raises(DegenerateInputError):
        sturm_real_root_count(UniPoly([0]))


def _random_factored(rng):
    p = UniPoly([1])
    n_real = 0
    roots = set()
    for _ in range(rng.randint(1, 4)):
        r = Fraction(rng.randint(-30, 30), rng.randint(1, 4))
        p = p * UniPoly([-r, 1])
        roots.add(r)
    n_real = len(roots)
    for _ in range(rng.randint(0, 2)):
        a, b = Fraction(rng.randint(-5, 5)), Fraction(rng.randint(1, 6))
        p = p * UniPoly([a * a + b * b, -2 * a, 1])   # (w - a)^2 + b^2
    return p, n_real


def test_sturm_against_bisection_oracle():
    rng = random.Random(200)
    for _ in range(200):
        p, n_real = _random_factored(rng)
        count = sturm_real_root_count(p)
        assert count == n_real == bisection_root_count(p.coeffs)


def test_sturm_interval_counts():
    p = UniPoly.from_roots([-2, 1, 3])
    assert sturm_real_root_count(p, 0, 3) == 2
    assert sturm_real_root_count(p, 1, 3) == 1
    assert sturm_real_root_count(p, -5, -2) == 1


def test_isolating_intervals_contain_one_root_each():
    p = UniPoly.from_roots([Fraction(-7, 3), 0, Fraction(1, 2), 5]) * UniPoly([1, 0, 1])
    intervals = isolate_real_roots(p)
    assert len(intervals) == 4
    for a, b in intervals:
        assert a == b and p(a) == 0 or bisection_root_count(p.coeffs, a, b) == 1


def test_squarefree_part_and_gcd():
    p = UniPoly.from_roots([1, 1, 2, 3, 3, 3])
    assert squarefree_part(p).monic() == UniPoly.from_roots([1, 2, 3])
    assert poly_gcd(p, p.derivative()).monic() == UniPoly.from_roots([1, 3, 3])


# -- binary forms ----------------------------------------------------------------------------------

def test_discriminant_quadratic_convention():
    R = Ring.params_only(("a", "b", "c"))
    a, b, c = R.gens()
    # a x^2 + b x y + c y^2, coefficient k multiplies x^k y^(2-k)
    assert discriminant(BinaryForm([c, b, a])) == b * b - a * c * 4


def test_discriminant_double_root_and_degree_error():
    R = Ring.binary()
    x, y = R.gens()
    assert discriminant(BinaryForm.from_form((x - y) ** 2 * x)) == 0
    with pytest.raises(DegreeError):
        discriminant(BinaryForm([1, 1]))


def test_discriminant_handles_root_at_infinity():
    # x*y*(x - y) has three distinct roots, one at [1:0] after dehomogenizing in x
    R = Ring.binary()
    x, y = R.gens()
    assert discriminant(BinaryForm.from_form(x * y * (x - y))) != 0
    assert discriminant(BinaryForm.from_form(y * y * (x - y))) == 0


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=3, max_size=9))
def test_discriminant_vanishes_iff_common_factor(coeffs):
    p = BinaryForm(coeffs)
    if p.is_zero():
        return
    x, y = sympy.symbols("x y")
    expr = sum(c * x ** k * y ** (len(coeffs) - 1 - k) for k, c in enumerate(coeffs))
    g = sympy.gcd(expr, sympy.diff(expr, x))
    g = sympy.gcd(g, sympy.diff(expr, y))
    repeated = sympy.Poly(g, x, y).total_degree() > 0
    assert (discriminant(p) == 0) == repeated


def test_binary_form_positive_examples():
    R = Ring.binary()
    x, y = R.gens()
    for d in (1, 2, 3):
        assert binary_form_positive(BinaryForm.from_form((x * x + y * y) ** d))
    assert not binary_form_positive(BinaryForm.from_form(x * x * y * y))
    assert not binary_form_positive(BinaryForm.from_form(x ** 4 - y ** 4))
    with pytest.raises(DegenerateInputError):
        binary_form_positive(BinaryForm([0, 0, 0]))
    with pytest.raises(DegreeError):
        binary_form_positive(BinaryForm([1, 0, 0, 1]))


def test_binary_form_positive_against_sign_grid():
    rng = random.Random(11)
    for _ in range(100):
        coeffs = [rng.randint(-3, 9) for _ in range(5)]
        p = BinaryForm(coeffs)
        if p.is_zero():
            continue
        grid = [(Fraction(1), Fraction(i, 4)) for i in range(-40, 41)] + [(Fraction(0), 1)]
        values = [p.evaluate(a, b) for a, b in grid]
        if binary_form_positive(p):
            assert all(v > 0 for v in values)
        elif all(v > 0 for v in values):
            # the grid missed the nonpositive region; confirm a real root exists
            assert sturm_real_root_count(p.to_unipoly()) > 0 or p.coeffs[-1] <= 0
