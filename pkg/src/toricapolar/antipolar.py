"""Antipolar forms, Ranestad-Schreyer membership and the quartic forbidden-locus scan.

For a form ``f`` of multidegree ``A = 2B`` with invertible catalecticant
``phi = phi_{f,B}``, the antipolar is the form in dual point coordinates

    Omega(f)(l) = det(phi_{f + b(l)^2, B}) - det(phi_{f, B}),

where ``b(l)`` is the product over blocks of ``(l_k . x_k)^(B_k)``.  The update
``phi_{b(l)^2, B}`` has rank one, so the difference equals
``trace(adj(phi) M(l))`` with ``M(l)`` the symbolic catalecticant of
``b(l)^2``; that is how it is computed here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .apolarity import catalecticant, middle_catalecticant
from .errors import (DegenerateInputError, DimensionError, SingularCatalecticantError,
                     UnsupportedAmbientError)
from .exactalg import (ExactMatrix, GradedForm, Ring, adjugate, det_exact, kernel_basis,
                       rational_str, to_rational)

GENERICITY_ASSUMPTION = ("f is assumed general with X-rank equal to dim T_B; only the "
                         "invertibility of phi_{f,B} is certified")


def dual_ring(ring: Ring, params=()) -> Ring:
    """Ring of point coordinates dual to the blocks of ``ring``.

    Two blocks give ``s1..sm | t1..tm``; a single ternary block gives
    ``a, b, c`` and a single binary block ``a, b``.
    """
    sizes = ring.block_sizes
    if len(sizes) == 1:
        n = sizes[0]
        names = ("a", "b", "c")[:n] if n <= 3 else tuple(f"a{i}" for i in range(n))
        return Ring([names], params)
    letters = "stuvr"
    if len(sizes) > len(letters):
        raise UnsupportedAmbientError(f"too many blocks: {len(sizes)}")
    return Ring([tuple(f"{letters[k]}{i + 1}" for i in range(n)) for k, n in enumerate(sizes)],
                params)


def _split_point(ring: Ring, point):
    """Normalize ``point`` to a tuple of per-block coordinate tuples."""
    sizes = ring.block_sizes
    pts = list(point)
    if pts and isinstance(pts[0], (list, tuple)):
        blocks = [tuple(to_rational(c) for c in b) for b in pts]
    else:
        flat = [to_rational(c) for c in pts]
        if len(flat) != sum(sizes):
            raise DimensionError(f"point has {len(flat)} coordinates, expected {sum(sizes)}")
        blocks, k = [], 0
        for n in sizes:
            blocks.append(tuple(flat[k:k + n]))
            k += n
    if len(blocks) != len(sizes) or any(len(b) != n for b, n in zip(blocks, sizes)):
        raise DimensionError(f"point {point} does not match block sizes {sizes}")
    return tuple(blocks)


def point_form(ring: Ring, B, point) -> GradedForm:
    """``b(l) = prod_k (l_k . x_k)^(B_k)`` as a form of multidegree ``B``."""
    blocks = _split_point(ring, point)
    out = GradedForm.constant(ring, 1)
    for k, (coords, b) in enumerate(zip(blocks, B)):
        names = ring.blocks[k]
        lin = sum((ring.variable(v) * c for v, c in zip(names, coords)), GradedForm.zero(ring))
        if lin.is_zero() and b:
            raise DegenerateInputError(f"block {k + 1} of the point is the zero vector")
        out = out * lin ** b
    return out


def point_square(ring: Ring, B, point) -> GradedForm:
    """``nu_2(b(l)) = b(l)^2``, of multidegree ``2B``."""
    return point_form(ring, B, point) ** 2


def _check_square_case(f: GradedForm, B):
    B = tuple(B)
    if f.degree is None or tuple(f.degree) != tuple(2 * b for b in B):
        raise DimensionError(f"antipolar needs A = 2B, got A = {f.degree}, B = {B}")
    sizes = f.ring.block_sizes
    if f.ring.params:
        raise UnsupportedAmbientError("antipolar expects a form with rational coefficients")
    if len(sizes) == 1:
        return B
    if len(sizes) == 2 and sizes[1] == 2 and B[0] == 1:
        return B
    raise UnsupportedAmbientError(
        f"antipolar supports one block or P^n x P^1 with B = (1, d); got blocks {sizes}, B = {B}")


@dataclass(frozen=True)
class AntipolarForm:
    """The antipolar ``Omega(f)`` with the data it was computed from.

    Attributes
    ----------
    form : GradedForm
        Form of multidegree ``2B`` in the dual point coordinates.
    source : GradedForm
    B : tuple of int
    det_phi : Fraction
        ``det(phi_{f,B})``.
    """

    form: GradedForm
    source: GradedForm
    B: tuple
    det_phi: Fraction

    @property
    def ring(self) -> Ring:
        return self.form.ring

    def __call__(self, point) -> Fraction:
        return antipolar_eval(self, point)

    def coefficient(self, exps) -> Fraction:
        return self.form.coefficient(exps)

    def to_json(self) -> dict:
        body = self.form.to_json()
        return {"B": list(self.B), "det_phi": rational_str(self.det_phi),
                "variables": body["variables"], "blocks": body["blocks"],
                "terms": body["terms"], "text": str(self.form)}


def _rank_one_form(adj: ExactMatrix, rows, cols, weight, ring: Ring) -> GradedForm:
    """``sum_ij adj[j][i] * weight * s^(rows[i] + cols[j])`` as a form over ``ring``."""
    terms = {}
    pad = (0,) * len(ring.params)
    for i, a in enumerate(rows):
        for j, b in enumerate(cols):
            c = adj[j, i]
            if not c:
                continue
            e = tuple(x + y for x, y in zip(a, b)) + pad
            v = terms.get(e, 0) + c * weight
            if v:
                terms[e] = v
            else:
                terms.pop(e, None)
    return GradedForm(ring, terms)


def antipolar(f: GradedForm, B) -> AntipolarForm:
    """Antipolar of ``f`` with respect to ``B``.

    Parameters
    ----------
    f : GradedForm
        Rational form of multidegree ``2B`` over one block, or over
        ``P^n x P^1`` with ``B = (1, d)``.
    B : sequence of int

    Raises
    ------
    SingularCatalecticantError
        If ``phi_{f,B}`` is singular.
    """
    B = _check_square_case(f, B)
    cat = catalecticant(f, B)
    det_phi = det_exact(cat.matrix)
    if not det_phi:
        raise SingularCatalecticantError(
            f"phi_(f,B) is singular (rank {cat.rank()} < {cat.matrix.nrows})")
    adj = adjugate(cat.matrix)
    weight = 1
    for b in B:
        weight *= factorial(2 * b)
    ring = dual_ring(f.ring)
    omega = _rank_one_form(adj, cat.row_basis, cat.col_basis, weight, ring)
    if omega.is_zero():
        omega = GradedForm.zero(ring, tuple(2 * b for b in B))
    return AntipolarForm(omega, f, B, det_phi)


def antipolar_difference(f: GradedForm, B, point) -> Fraction:
    """Defining expression ``det(phi_{f+b(l)^2}) - det(phi_f)`` at a rational point."""
    B = tuple(B)
    g = f + point_square(f.ring, B, point)
    return det_exact(catalecticant(g, B).matrix) - det_exact(catalecticant(f, B).matrix)


def antipolar_eval(omega: AntipolarForm, point) -> Fraction:
    """Evaluate ``Omega(f)`` at a rational point given per block or flat."""
    blocks = _split_point(omega.source.ring, point)
    flat = [c for b in blocks for c in b]
    return omega.form.evaluate(flat)


def _as_antipolar(f_or_omega, B):
    if isinstance(f_or_omega, AntipolarForm):
        return f_or_omega
    if B is None:
        raise ValueError("B is required when passing a form")
    return antipolar(f_or_omega, B)


def rs_membership(f, B=None, point=None) -> bool:
    """Whether ``point`` lies in the Ranestad-Schreyer locus of ``f``.

    Decided by ``Omega(f)(point) == 0``; ``f`` may be given as a form (with
    ``B``) or as an already computed :class:`AntipolarForm`.  The genericity of
    ``f`` is assumed, not checked.
    """
    omega = _as_antipolar(f, B)
    return antipolar_eval(omega, point) == 0


class ForbiddenVerdict(str, enum.Enum):
    FORBIDDEN_CANDIDATE = "FORBIDDEN_CANDIDATE"
    NOT_DECIDED = "NOT_DECIDED"

    def __str__(self):
        return self.value


def forbidden_certificate(f, B=None, point=None) -> ForbiddenVerdict:
    """``FORBIDDEN_CANDIDATE`` when ``Omega(f)`` vanishes at ``point``.

    Vanishing of the antipolar places the point in the forbidden locus; the
    converse is not available, so a nonzero value gives ``NOT_DECIDED``.
    """
    if rs_membership(f, B, point):
        return ForbiddenVerdict.FORBIDDEN_CANDIDATE
    return ForbiddenVerdict.NOT_DECIDED


def tangential_point_form(ring: Ring, d: int, star, tangent, points, weights) -> GradedForm:
    """Form ``L*N + sum_i w_i b(l_i)^2`` on ``P^1 x P^1`` with ``B = (1, d)``.

    ``L = b(star) = l1 * l2^d`` and ``N`` is its derivative along the tangent
    vector ``tangent = (m1, m2)``: ``N = m1 l2^d + d l1 l2^(d-1) m2``.  Together
    with ``2d`` further points the resulting form has a minimal apolar scheme
    with a non-reduced point at ``star``, so the antipolar vanishes there.
    """
    if ring.block_sizes != (2, 2):
        raise UnsupportedAmbientError("tangential construction is implemented on P^1 x P^1")
    (p1, p2) = _split_point(ring, star)
    (m1, m2) = _split_point(ring, tangent)
    x, y, z, w = ring.gens()
    l1 = x * p1[0] + y * p1[1]
    l2 = z * p2[0] + w * p2[1]
    n1 = x * m1[0] + y * m1[1]
    n2 = z * m2[0] + w * m2[1]
    L = l1 * l2 ** d
    N = n1 * l2 ** d + l1 * l2 ** (d - 1) * n2 * d if d >= 1 else n1
    f = L * N
    for pt, wt in zip(points, weights):
        f = f + point_square(ring, (1, d), pt) * to_rational(wt)
    return f


# -- ternary quartics ------------------------------------------------------------

@dataclass
class QuarticScanReport:
    """Outcome of :func:`forbidden_scan_quartic`.

    Attributes
    ----------
    rank_Cf : int
    delta_poly : GradedForm
        ``det(C_{f + lam l^4}) - det(C_f)`` over the ring with block ``(a, b, c)``
        and parameter ``lam``.
    nullspace_conditions : list of GradedForm
        ``n . v(a, b, c)`` for a basis ``n`` of the left null space of
        ``C_f``; empty when ``C_f`` is invertible.
    annotations : list of str
    kernel : list of GradedForm
        Kernel of ``C_f`` as quadratic differential operators.
    det_Cf : Fraction
    """

    rank_Cf: int
    delta_poly: GradedForm
    nullspace_conditions: list
    annotations: list = field(default_factory=list)
    kernel: list = field(default_factory=list)
    det_Cf: Fraction = Fraction(0)

    def to_json(self) -> dict:
        return {
            "rank_Cf": self.rank_Cf,
            "det_Cf": rational_str(self.det_Cf),
            "delta_poly": str(self.delta_poly),
            "delta_poly_terms": len(self.delta_poly.terms),
            "nullspace_conditions": [str(c) for c in self.nullspace_conditions],
            "kernel": [str(k) for k in self.kernel],
            "annotations": list(self.annotations),
        }


def _quadric_rank(g: GradedForm) -> int:
    """Rank of a ternary quadratic form (its Hessian)."""
    names = g.ring.blocks[0]
    hess = [[g.derivative(u).derivative(v).coefficient((0,) * g.ring.nvars) for v in names]
            for u in names]
    return ExactMatrix(hess).rank()


def kleppe_annotations(kernel) -> list[str]:
    """Rank statements attached to the kernel of the middle catalecticant of a quartic."""
    k = len(kernel)
    if k == 0:
        return ["kernel of C_f is zero: rank 6 (Kleppe, Theorem 3.7)"]
    if k == 1:
        if _quadric_rank(kernel[0]) == 1:
            return ["kernel of C_f is spanned by a double line: rank 7 (Kleppe, Theorem 3.6)"]
        return [f"kernel of C_f is spanned by a quadric of rank {_quadric_rank(kernel[0])}: "
                "no rank criterion encoded"]
    if k == 2:
        return ["kernel of C_f is two-dimensional: rank 4 or 6 (Kleppe, Theorem 3.2)"]
    return [f"kernel of C_f has dimension {k}: no rank criterion encoded"]


def forbidden_scan_quartic(f: GradedForm) -> QuarticScanReport:
    """Symbolic rank-one scan of ``f + lam * (a x + b y + c z)^4``.

    Parameters
    ----------
    f : GradedForm
        Nonzero ternary quartic with rational coefficients.

    Returns
    -------
    QuarticScanReport
    """
    ring = f.ring
    if len(ring.blocks) != 1 or ring.block_sizes != (3,) or ring.params:
        raise UnsupportedAmbientError(f"expected a ternary quartic, got ring {ring}")
    if f.is_zero():
        raise DegenerateInputError("the zero quartic has no scan")
    if f.degree != (4,):
        raise DimensionError(f"expected degree 4, got {f.degree}")
    cat = middle_catalecticant(f)
    C = cat.matrix
    rank = C.rank()
    det_c = det_exact(C)
    scan_ring = Ring([("a", "b", "c")], ("lam",))
    adj = adjugate(C)
    weight = factorial(4)
    delta = _rank_one_form(adj, cat.row_basis, cat.col_basis, weight, scan_ring)
    lam = scan_ring.variable("lam")
    delta = delta * lam if not delta.is_zero() else GradedForm.zero(scan_ring, (4,))
    left_null = kernel_basis(C.transpose())
    cond_ring = Ring([("a", "b", "c")])
    conditions = [GradedForm(cond_ring, {m: n_i * weight for m, n_i in zip(cat.row_basis, n)},
                             (2,))
                  for n in left_null]
    kernel = cat.operators(left_null)
    return QuarticScanReport(rank, delta, conditions, kleppe_annotations(kernel), kernel, det_c)


def quartic_scan_at(f: GradedForm, point, lam) -> ExactMatrix:
    """Middle catalecticant of ``f + lam * l^4`` at a concrete point."""
    g = f + point_square(f.ring, (2,), point) * to_rational(lam)
    return middle_catalecticant(g).matrix
