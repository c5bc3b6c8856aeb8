import random
from fractions import Fraction
from itertools import product

import pytest
import sympy

from oracles import cayley_hyperdet
from toricapolar.errors import DimensionError, ShapeError, SymmetryError
from toricapolar.exactalg import ExactMatrix, Ring, UniPoly, det_exact, discriminant
from toricapolar.hyperdet import (BergqvistVerdict, Pencil, Tensor2222, bergqvist_real_rank,
                                  cayley_hyperdet_222, hyperdet_222, hyperdet_2222, hyperdet_2nn,
                                  pencil_form, slice_polynomial, symbolic_hyperdet_222,
                                  symmetric_tangential_sample, tangential_join_sample)


def _bf_poly(p):
    a1, a2 = sympy.symbols("a1 a2")
    n = p.degree
    return sympy.expand(sum(sympy.Rational(c.numerator, c.denominator) * a1 ** k * a2 ** (n - k)
                            for k, c in enumerate(p.coeffs)))


def _rand_matrix(rng, n):
    return ExactMatrix([[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)])


def _rand_invertible(rng, n):
    while True:
        m = _rand_matrix(rng, n)
        if det_exact(m):
            return m


def test_pencil_form_diagonal():
    T = Pencil(ExactMatrix.identity(3), ExactMatrix.diag([2, -1, 5]))
    a1, a2 = sympy.symbols("a1 a2")
    assert _bf_poly(pencil_form(T)) == sympy.expand((a1 + 2 * a2) * (a1 - a2) * (a1 + 5 * a2))


def test_pencil_form_of_jordan_sample():
    T = tangential_join_sample([1, 2])
    assert T.T2.tolist() == [[1, 1, 0], [0, 1, 0], [0, 0, 2]]
    a1, a2 = sympy.symbols("a1 a2")
    assert _bf_poly(pencil_form(T)) == sympy.expand((a1 + a2) ** 2 * (a1 + 2 * a2))


def test_pencil_form_equal_slices():
    rng = random.Random(1)
    M = _rand_matrix(rng, 3)
    a1, a2 = sympy.symbols("a1 a2")
    assert _bf_poly(pencil_form(Pencil(M, M))) == sympy.expand((a1 + a2) ** 3 * det_exact(M))


def test_pencil_form_against_sympy_det():
    rng = random.Random(2)
    a1, a2 = sympy.symbols("a1 a2")
    for n in range(1, 5):
        T1, T2 = _rand_matrix(rng, n), _rand_matrix(rng, n)
        M = a1 * sympy.Matrix(T1.tolist()) + a2 * sympy.Matrix(T2.tolist())
        assert _bf_poly(pencil_form(Pencil(T1, T2))) == sympy.expand(M.det())


def test_pencil_form_homogeneity():
    rng = random.Random(3)
    for n in range(1, 5):
        T1, T2 = _rand_matrix(rng, n), _rand_matrix(rng, n)
        c = Fraction(-3, 2)
        p = pencil_form(Pencil(T1, T2))
        q = pencil_form(Pencil(T1.scale(c), T2.scale(c)))
        assert list(q.coeffs) == [c ** n * v for v in p.coeffs]


def test_pencil_validation():
    with pytest.raises(ShapeError):
        Pencil([[1, 0], [0, 1]], [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(SymmetryError):
        Pencil([[1, 2], [0, 1]], [[1, 0], [0, 1]], symmetric=True)


def test_pencil_json_round_trip():
    T = symmetric_tangential_sample([1, 2])
    assert Pencil.from_json(T.to_json()) == T


def test_hyperdet_2nn_examples():
    for n in range(2, 6):
        T = Pencil(ExactMatrix.identity(n), ExactMatrix.diag(list(range(1, n + 1))))
        assert hyperdet_2nn(T) != 0
    T = Pencil(ExactMatrix.identity(4), ExactMatrix.diag([1, 1, 3, 4]))
    assert hyperdet_2nn(T) == 0


def test_hyperdet_2nn_degenerate_flag():
    Z = ExactMatrix.zeros(3, 3)
    hd = hyperdet_2nn(Pencil(Z, Z), with_flag=True)
    assert hd.value == 0 and hd.degenerate


def test_hyperdet_2nn_needs_n_at_least_two():
    with pytest.raises(DimensionError):
        hyperdet_2nn(Pencil([[1]], [[2]]))


def test_hyperdet_vanishing_locus_is_gl_invariant():
    rng = random.Random(4)
    for k in range(30):
        n = 2 + k % 3
        if k % 2:
            T = tangential_join_sample([rng.randint(-5, 5) for _ in range(n - 1)])
        else:
            T = Pencil(_rand_matrix(rng, n), _rand_matrix(rng, n))
        P, Q = _rand_invertible(rng, n), _rand_invertible(rng, n)
        moved = Pencil(P @ T.T1 @ Q, P @ T.T2 @ Q)
        assert (hyperdet_2nn(T) == 0) == (hyperdet_2nn(moved) == 0)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_tangential_samples_on_hypersurface(n):
    rng = random.Random(n)
    for _ in range(10):
        lams = [Fraction(rng.randint(-20, 20), rng.randint(1, 7)) for _ in range(n - 1)]
        assert hyperdet_2nn(tangential_join_sample(lams)) == 0
        S = symmetric_tangential_sample(lams)
        assert S.symmetric and S.T1.is_symmetric() and S.T2.is_symmetric()
        assert hyperdet_2nn(S) == 0


def test_sample_shapes():
    assert tangential_join_sample([0]).T2.tolist() == [[0, 1], [0, 0]]
    with pytest.raises(DimensionError):
        tangential_join_sample([])
    with pytest.raises(DimensionError):
        symmetric_tangential_sample([])


def test_symmetric_sample_double_factor():
    a1, a2 = sympy.symbols("a1 a2")
    S = symmetric_tangential_sample([Fraction(1, 3), 2])
    p = _bf_poly(pencil_form(S))
    assert sympy.rem(sympy.Poly(p, a1), sympy.Poly((a1 + a2 / 3) ** 2, a1)).is_zero


def test_hyperdet_222_examples():
    assert hyperdet_222(Pencil(ExactMatrix.identity(2), ExactMatrix.diag([1, -1]))) == 4
    u, v = [1, 2], [3, -1]
    r1 = ExactMatrix.outer(u, v)
    assert hyperdet_222(Pencil(r1, r1.scale(5))) == 0
    with pytest.raises(DimensionError):
        hyperdet_222(Pencil(ExactMatrix.identity(3), ExactMatrix.identity(3)))


def test_hyperdet_222_matches_cayley_numerically():
    rng = random.Random(5)
    for _ in range(50):
        u = [[[rng.randint(-6, 6) for _ in range(2)] for _ in range(2)] for _ in range(2)]
        T = Pencil(ExactMatrix(u[0]), ExactMatrix(u[1]))
        assert hyperdet_222(T) == cayley_hyperdet(u) == cayley_hyperdet_222(u)


def test_symbolic_hyperdet_222_matches_cayley():
    names = [f"u{i}{j}{k}" for i, j, k in product(range(2), repeat=3)]
    R = Ring.params_only(tuple(names))
    g = dict(zip(names, R.gens()))
    u = [[[g[f"u{i}{j}{k}"] for k in range(2)] for j in range(2)] for i in range(2)]
    ours = symbolic_hyperdet_222(u)
    assert ours.total_degree() == 4
    syms = {n: sympy.Symbol(n) for n in names}
    su = [[[syms[f"u{i}{j}{k}"] for k in range(2)] for j in range(2)] for i in range(2)]
    ref = sympy.Poly(cayley_hyperdet(su), *[syms[n] for n in names])
    ours_dict = {e[:8]: c for e, c in ours.terms.items()}
    assert ours_dict == {e: Fraction(int(c)) for e, c in ref.terms()}


def _six_term_tensor():
    e0, e1 = (1, 0), (0, 1)
    return Tensor2222.from_terms([
        (e1, e0, e0, e0), (e0, e1, e0, e0), (e0, e0, e1, e0),
        (e0, e0, e0, e1), (e0, e0, e0, e0), (e1, e1, e1, e1),
    ])


def test_six_term_tensor_2222():
    T = _six_term_tensor()
    p = slice_polynomial(T)
    assert list(p.coeffs) == [0, 4, 1, 2, 1]
    value = hyperdet_2222(T)
    assert value != 0
    w = sympy.Symbol("w")
    assert sympy.discriminant(w ** 4 + 2 * w ** 3 + w ** 2 + 4 * w, w) != 0


def test_tensor_2222_relabeling_invariance():
    # swapping the first two factors permutes the pencil slices consistently
    T = _six_term_tensor()
    swapped = Tensor2222(tuple(T[j, i, k, l] for i, j, k, l in product(range(2), repeat=4)))
    assert (hyperdet_2222(swapped) == 0) == (hyperdet_2222(T) == 0)
    assert slice_polynomial(swapped) == slice_polynomial(T)


def test_rank_one_tensor_2222():
    T = Tensor2222.from_terms([((1, 2), (3, -1), (1, 1), (2, 5))])
    hd = hyperdet_2222(T, with_flag=True)
    assert hd.value == 0 and hd.degenerate


def test_tensor_2222_with_constructed_double_root():
    # only u000 = w - 1 and u111 = w + 1 are nonzero, so p(w) = ((w - 1)(w + 1))^2
    z = [0] * 16

    def put(i, j, k, l, v):
        z[8 * i + 4 * j + 2 * k + l] = v
    put(0, 0, 0, 0, -1)
    put(0, 0, 0, 1, 1)
    put(1, 1, 1, 0, 1)
    put(1, 1, 1, 1, 1)
    T = Tensor2222(tuple(z))
    p = slice_polynomial(T)
    assert p == UniPoly.from_roots([1, 1, -1, -1])
    assert hyperdet_2222(T) == 0


def test_tensor_shape_error():
    with pytest.raises(ShapeError):
        Tensor2222(tuple(range(15)))


def test_bergqvist_examples():
    for n in range(2, 6):
        T = Pencil(ExactMatrix.identity(n), ExactMatrix.diag(list(range(1, n + 1))))
        assert bergqvist_real_rank(T) is BergqvistVerdict.RANK_N
    rot = Pencil(ExactMatrix.identity(2), ExactMatrix([[0, 1], [-1, 0]]))
    assert bergqvist_real_rank(rot) is BergqvistVerdict.RANK_N_PLUS_1
    assert bergqvist_real_rank(tangential_join_sample([3, 1])) is BergqvistVerdict.BOUNDARY
    Z = ExactMatrix.zeros(2, 2)
    assert bergqvist_real_rank(Pencil(Z, Z)) is BergqvistVerdict.BOUNDARY


def test_bergqvist_root_at_infinity():
    # T1 singular: p_T = a2 * (a1 + a2) has roots at [1:0] and [1:-1]
    T = Pencil(ExactMatrix.diag([1, 0]), ExactMatrix.diag([1, 1]))
    verdict, ev = bergqvist_real_rank(T, with_evidence=True)
    assert verdict is BergqvistVerdict.RANK_N and ev["real_roots"] == 2


def test_bergqvist_symmetric_outer_product_sums():
    rng = random.Random(50)
    for trial in range(50):
        n = 2 + trial % 4
        lams = rng.sample(range(-15, 16), n)
        vecs = [_rand_invertible(rng, n).row(0) for _ in range(n)]
        while ExactMatrix(vecs).rank() < n:
            vecs = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        T1 = sum((ExactMatrix.outer(v, v) for v in vecs[1:]), ExactMatrix.outer(vecs[0], vecs[0]))
        T2 = sum((ExactMatrix.outer(v, v).scale(lam) for v, lam in zip(vecs[1:], lams[1:])),
                 ExactMatrix.outer(vecs[0], vecs[0]).scale(lams[0]))
        assert bergqvist_real_rank(Pencil(T1, T2, symmetric=True)) is BergqvistVerdict.RANK_N


def test_hyperdet_is_discriminant_of_pencil_form():
    T = Pencil(ExactMatrix.identity(3), ExactMatrix.diag([1, 2, 3]))
    assert hyperdet_2nn(T) == discriminant(pencil_form(T))
