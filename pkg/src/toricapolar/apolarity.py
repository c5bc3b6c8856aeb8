"""Apolarity: differential operators acting on forms, and catalecticant matrices.

Dual-ring elements are represented as :class:`GradedForm` objects in the same
ring as the forms they act on; the variable ``x`` stands for the operator
``d/dx``.  The pairing is plain iterated differentiation, with no factorial
normalization, so for monomials

    d^alpha (x^gamma) = gamma! / (gamma - alpha)! * x^(gamma - alpha).

The catalecticant of ``f`` in multidegree ``B`` has rows indexed by the
monomials of ``T_B`` and columns by the monomials of ``S_{A-B}``; its entry at
``(alpha, beta)`` is the full contraction ``d^beta d^alpha f``, which equals
``(alpha + beta)! * coeff(f, alpha + beta)``.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil

from .errors import (DegenerateInputError, DegreeError, DimensionError, OrderError,
                     RingMismatchError, UnsupportedAmbientError)
from .exactalg import (BinaryForm, ExactMatrix, GradedForm, Ring, discriminant,
                       kernel_basis, multifactorial, primitive_vector, to_rational)

ROW_ORDER = "grlex"
COL_ORDER = "grevlex"


def check_order(A, B):
    """Raise :class:`OrderError` unless ``B <= A`` componentwise."""
    A, B = tuple(A), tuple(B)
    if len(A) != len(B):
        raise DimensionError(f"multidegrees {A} and {B} have different lengths")
    if any(b < 0 for b in B):
        raise OrderError(f"multidegree {B} has a negative entry")
    if any(b > a for a, b in zip(A, B)):
        raise OrderError(f"operator multidegree {B} is not below form multidegree {A}")


def _falling(g, a):
    out = 1
    for j in range(a):
        out *= g - j
    return out


def apolar_apply(g: GradedForm, f: GradedForm) -> GradedForm:
    """Apply the differential operator ``g`` to ``f``.

    Parameters
    ----------
    g : GradedForm
        Operator of multidegree ``B``; block variables act as partial
        derivatives, parameters as scalars.
    f : GradedForm
        Form of multidegree ``A`` with ``A >= B``.

    Returns
    -------
    GradedForm
        ``g(f)``, of multidegree ``A - B``.
    """
    if g.ring != f.ring:
        raise RingMismatchError(f"{g.ring} vs {f.ring}")
    if f.degree is None or g.degree is None:
        return GradedForm.zero(f.ring)
    check_order(f.degree, g.degree)
    nb = f.ring.nblockvars
    out = {}
    for ge, gc in g.terms.items():
        for fe, fc in f.terms.items():
            c = gc * fc
            for a, b in zip(ge[:nb], fe[:nb]):
                if a > b:
                    c = 0
                    break
                c *= _falling(b, a)
            if not c:
                continue
            e = tuple(b - a for a, b in zip(ge[:nb], fe[:nb])) + tuple(
                a + b for a, b in zip(ge[nb:], fe[nb:]))
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    deg = tuple(a - b for a, b in zip(f.degree, g.degree))
    return GradedForm(f.ring, out, deg)


def _monomial_label(ring, exps, prefix=""):
    parts = []
    for v, k in zip(ring.names, exps):
        if k == 1:
            parts.append(prefix + v)
        elif k > 1:
            parts.append(f"{prefix}{v}^{k}")
    return "*".join(parts) if parts else "1"


class CatalecticantMatrix:
    """Matrix of ``g -> g(f)`` from ``T_B`` to ``S_{A-B}`` with its bases.

    Attributes
    ----------
    matrix : ExactMatrix
        Scalar entries when ``f`` has no parameters, otherwise symbolic entries
        over the parameter ring.
    row_basis, col_basis : list of tuple
        Exponent vectors (block variables only) in the fixed orders: graded
        lex with block 1 outermost for rows, graded reverse lex inside each
        block for columns.  For binary blocks and degree-one blocks the two
        orders coincide.
    form : GradedForm
    B : tuple of int
    """

    def __init__(self, matrix, row_basis, col_basis, form, B):
        self.matrix = matrix
        self.row_basis = list(row_basis)
        self.col_basis = list(col_basis)
        self.form = form
        self.B = tuple(B)

    @property
    def A(self):
        return self.form.degree

    @property
    def shape(self):
        return self.matrix.shape

    def rank(self) -> int:
        return self.matrix.rank()

    def as_symmetric(self) -> ExactMatrix:
        """Columns permuted into row order (requires ``A = 2B``).

        The result is the Gram matrix of the symmetric bilinear pairing
        ``(g, h) -> (g h)(f)`` and is flagged symmetric.
        """
        if tuple(2 * b for b in self.B) != tuple(self.A):
            raise DimensionError(f"A = {self.A} is not twice B = {self.B}")
        pos = {m: j for j, m in enumerate(self.col_basis)}
        perm = [pos[m] for m in self.row_basis]
        m = self.matrix.permute_columns(perm)
        return ExactMatrix(m.entries, symmetric=True)

    def apolar_kernel(self) -> list[list[Fraction]]:
        """Basis of ``I_{f,B}`` as coefficient vectors over ``row_basis``."""
        return kernel_basis(self.matrix.transpose())

    def operators(self, vectors=None) -> list[GradedForm]:
        """Turn row-basis coefficient vectors into differential operators."""
        if vectors is None:
            vectors = self.apolar_kernel()
        ring = Ring(self.form.ring.blocks)
        return [GradedForm(ring, dict(zip(self.row_basis, v)), self.B)
                for v in vectors]

    def row_labels(self):
        ring = Ring(self.form.ring.blocks)
        return [_monomial_label(ring, m, "d") for m in self.row_basis]

    def col_labels(self):
        ring = Ring(self.form.ring.blocks)
        return [_monomial_label(ring, m) for m in self.col_basis]

    def to_json(self) -> dict:
        return {
            "rows": self.matrix.nrows,
            "cols": self.matrix.ncols,
            "B": list(self.B),
            "row_basis": self.row_labels(),
            "col_basis": self.col_labels(),
            "entries": self.matrix.to_json(),
        }

    def __repr__(self):
        return f"CatalecticantMatrix(B={self.B}, shape={self.shape})"


def catalecticant(f: GradedForm, B) -> CatalecticantMatrix:
    """Toric catalecticant ``phi_{f,B}``.

    Parameters
    ----------
    f : GradedForm
        Form of multidegree ``A``; may carry parameters, in which case the
        entries are forms over the parameter ring.
    B : sequence of int
        Multidegree with ``B <= A``.

    Examples
    --------
    >>> R = Ring.binary()
    >>> x, y = R.gens()
    >>> catalecticant(x**2 * y, (1,)).matrix
    ExactMatrix([0, 2, 0; 2, 0, 0])
    """
    if f.degree is None:
        raise DegenerateInputError("catalecticant of the zero form needs a declared degree")
    B = tuple(int(b) for b in B)
    A = tuple(f.degree)
    check_order(A, B)
    ring = f.ring
    C = tuple(a - b for a, b in zip(A, B))
    blocks_only = Ring(ring.blocks)
    nb = ring.nblockvars
    rows = [m[:nb] for m in blocks_only.monomials(B, ROW_ORDER)]
    cols = [m[:nb] for m in blocks_only.monomials(C, COL_ORDER)]
    if ring.params:
        coeffs = f.block_coefficients()
        pring = ring.param_ring()
        zero = GradedForm.zero(pring)
        pad = (0,) * len(ring.params)

        def entry(alpha, beta):
            g = tuple(a + b for a, b in zip(alpha, beta))
            c = coeffs.get(g + pad)
            return zero if c is None else c * multifactorial(g)
    else:
        def entry(alpha, beta):
            g = tuple(a + b for a, b in zip(alpha, beta))
            c = f.terms.get(g)
            return Fraction(0) if c is None else c * multifactorial(g)

    mat = ExactMatrix([[entry(r, c) for c in cols] for r in rows])
    return CatalecticantMatrix(mat, rows, cols, f, B)


def middle_catalecticant(f: GradedForm) -> CatalecticantMatrix:
    """Classical middle catalecticant ``C_f`` of a form of even degree in one block."""
    if len(f.ring.blocks) != 1:
        raise UnsupportedAmbientError("middle catalecticant is defined for a single block")
    (deg,) = f.degree
    if deg % 2:
        raise DegreeError(f"middle catalecticant needs even degree, got {deg}")
    return catalecticant(f, (deg // 2,))


def generic_rank(block_sizes, A) -> int:
    """Generic complex rank for the supported ambients.

    ``block_sizes`` is ``(2, 2)`` for P^1 x P^1 or ``(n + 1, 2)`` for
    P^n x P^1.

    >>> generic_rank((2, 2), (2, 6)), generic_rank((2, 2), (3, 3)), generic_rank((3, 2), (2, 2))
    (8, 6, 6)
    """
    sizes, A = tuple(block_sizes), tuple(A)
    if len(sizes) != 2 or len(A) != 2 or sizes[1] != 2:
        raise UnsupportedAmbientError(f"unsupported ambient {sizes} with A = {A}")
    u, v = A
    if u <= 0 or v <= 0:
        raise UnsupportedAmbientError(f"multidegree {A} must be positive")
    if sizes[0] == 2:
        if u == 2 and v % 2 == 0:
            return v + 2
        return ceil((u + 1) * (v + 1) / 3)
    if sizes[0] > 2 and u == 2 and v % 2 == 0:
        return (v // 2 + 1) * sizes[0]
    raise UnsupportedAmbientError(f"unsupported ambient {sizes} with A = {A}")


# -- binary forms -------------------------------------------------------------------

def _check_binary(f: GradedForm):
    ring = f.ring
    if len(ring.blocks) != 1 or len(ring.blocks[0]) != 2 or ring.params:
        raise UnsupportedAmbientError(f"expected a binary form, got ring {ring}")
    if f.is_zero():
        raise DegenerateInputError("the zero form has no apolar ideal")
    return f.degree[0]


def _apolar_slice(f, r):
    """Kernel vectors of ``T_r -> S_{d-r}`` over the degree-``r`` row basis."""
    d = f.degree[0]
    if r > d:
        ring = Ring(f.ring.blocks)
        mons = ring.monomials((r,), ROW_ORDER)
        return mons, [[Fraction(int(i == j)) for j in range(len(mons))] for i in range(len(mons))]
    cat = catalecticant(f, (r,))
    return cat.row_basis, cat.apolar_kernel()


def _vec_to_op(ring, basis, v, r):
    return GradedForm(ring, dict(zip(basis, v)), (r,))


def _op_to_vec(g, basis):
    return [g.coefficient(m) for m in basis]


def binary_apolar_generators(f: GradedForm):
    """Minimal generators ``(g1, g2)`` of the apolar ideal of a binary form.

    Returns differential operators of degrees ``d1 <= d2`` with
    ``d1 + d2 = d + 2``.  Both are integral with content 1.

    >>> R = Ring.binary()
    >>> x, y = R.gens()
    >>> [str(g) for g in binary_apolar_generators(x**4 * y)]
    ['y^2', 'x^5']
    """
    d = _check_binary(f)
    ring = Ring(f.ring.blocks)
    d1 = next(r for r in range(1, d + 2) if _apolar_slice(f, r)[1])
    d2 = d + 2 - d1
    basis1, ker1 = _apolar_slice(f, d1)
    if d1 == d2:
        g1, g2 = (_vec_to_op(ring, basis1, v, d1) for v in ker1[:2])
        return g1, g2
    g1 = _vec_to_op(ring, basis1, ker1[0], d1)
    basis2, ker2 = _apolar_slice(f, d2)
    multiples = [_op_to_vec(g1 * GradedForm(ring, {m: 1}, (d2 - d1,)), basis2)
                 for m in ring.monomials((d2 - d1,), ROW_ORDER)]
    red, pivots = ExactMatrix(multiples).rref()
    for v in ker2:
        w = list(v)
        for row, p in zip(red, pivots):
            if w[p]:
                c = w[p]
                w = [a - c * b for a, b in zip(w, row)]
        if any(w):
            return g1, _vec_to_op(ring, basis2, primitive_vector(w), d2)
    raise ArithmeticError("apolar ideal has no second generator (inconsistent kernel data)")


def _is_squarefree(g: GradedForm) -> bool:
    (k,) = g.degree
    if k <= 1:
        return True
    return discriminant(BinaryForm.from_form(g)) != 0


def binary_rank_complex(f: GradedForm) -> int:
    """Complex Waring rank of a binary form (Sylvester's algorithm).

    >>> R = Ring.binary()
    >>> x, y = R.gens()
    >>> binary_rank_complex(x**3 + y**3), binary_rank_complex(x**4 * y)
    (2, 5)
    """
    d = _check_binary(f)
    g1, g2 = binary_apolar_generators(f)
    d1 = g1.degree[0]
    if d1 == g2.degree[0]:
        # a pencil of coprime forms has squarefree members
        return d1
    return d1 if _is_squarefree(g1) else d + 2 - d1


def is_power_of_linear_form(f: GradedForm) -> bool:
    d = _check_binary(f)
    return catalecticant(f, (1,)).rank() == 1 if d >= 1 else True


def tangential_membership_binary(f: GradedForm) -> bool:
    """Whether ``f`` lies on the tangential variety of the rational normal curve
    but is not itself a d-th power."""
    d = _check_binary(f)
    if d < 2:
        raise DegreeError(f"tangential membership needs degree >= 2, got {d}")
    return binary_rank_complex(f) == d and not is_power_of_linear_form(f)


def rs_witness_binary(f: GradedForm, point) -> bool:
    """Whether some degree-d element of the apolar ideal is divisible by ``L^2``.

    ``L`` is the linear operator vanishing at ``point = (p, q)``, namely
    ``q dx - p dy``.  Decided by the kernel of ``h -> (L^2 h)(f)`` on
    ``T_{d-2}``.
    """
    d = _check_binary(f)
    if d < 2:
        raise DegreeError(f"need degree >= 2, got {d}")
    p, q = (to_rational(c) for c in point)
    if not p and not q:
        raise DegenerateInputError("the zero vector is not a point of P^1")
    ring = Ring(f.ring.blocks)
    x, y = ring.gens()
    L = x * q - y * p
    L2 = L * L
    fr = f.change_ring(ring)
    values = []
    for m in ring.monomials((d - 2,), ROW_ORDER):
        op = L2 * GradedForm(ring, {m: 1}, (d - 2,))
        values.append([apolar_apply(op, fr).coefficient((0, 0))])
    return len(kernel_basis(ExactMatrix(values).transpose())) > 0
