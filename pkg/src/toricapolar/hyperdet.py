"""Matrix pencils, Schlaefli hyperdeterminants and real ranks of 2 x n x n tensors.

A 2 x n x n tensor is stored as its pencil of slices ``(T1, T2)``; its binary
form is ``p_T(a1, a2) = det(a1 T1 + a2 T2)``.  The hyperdeterminant is taken
to be the discriminant of ``p_T``.  For 2 x 2 x 2 x 2 tensors the last index
is substituted by a parameter ``w`` and the discriminant of the resulting
univariate quartic ``p(w)`` is returned.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import DimensionError, ShapeError, SymmetryError
from .exactalg import (BinaryForm, ExactMatrix, GradedForm, Ring, UniPoly, det_symbolic,
                       discriminant, rational_str, sturm_real_root_count, to_rational)

PENCIL_VARS = ("a1", "a2")


@dataclass(frozen=True)
class Pencil:
    """Pair of ``n x n`` rational slices.

    Parameters
    ----------
    T1, T2 : ExactMatrix or nested sequences
    symmetric : bool
        When set, both slices are checked to be symmetric.
    """

    T1: ExactMatrix
    T2: ExactMatrix
    symmetric: bool = False

    def __post_init__(self):
        t1 = self.T1 if isinstance(self.T1, ExactMatrix) else ExactMatrix(self.T1)
        t2 = self.T2 if isinstance(self.T2, ExactMatrix) else ExactMatrix(self.T2)
        object.__setattr__(self, "T1", t1)
        object.__setattr__(self, "T2", t2)
        if t1.is_symbolic or t2.is_symbolic:
            raise ShapeError("pencil slices must have rational entries")
        if not t1.is_square() or t1.shape != t2.shape:
            raise ShapeError(f"slices must be square of equal size, got {t1.shape} and {t2.shape}")
        if self.symmetric and not (t1.is_symmetric() and t2.is_symmetric()):
            raise SymmetryError("pencil flagged symmetric has a non-symmetric slice")

    @property
    def n(self) -> int:
        return self.T1.nrows

    def to_json(self):
        return {"n": self.n, "T1": self.T1.to_json(), "T2": self.T2.to_json(),
                "symmetric": self.symmetric}

    @classmethod
    def from_json(cls, data):
        return cls(ExactMatrix(data["T1"]), ExactMatrix(data["T2"]),
                   bool(data.get("symmetric", False)))


def _linear_pencil_matrix(T: Pencil, ring: Ring) -> ExactMatrix:
    a1, a2 = ring.variable(PENCIL_VARS[0]), ring.variable(PENCIL_VARS[1])
    rows = []
    for i in range(T.n):
        rows.append([a1 * T.T1[i, j] + a2 * T.T2[i, j] for j in range(T.n)])
    return ExactMatrix(rows)


def pencil_form(T: Pencil) -> BinaryForm:
    """``det(a1 T1 + a2 T2)`` as a binary form of degree ``n`` in ``(a1, a2)``.

    Coefficient ``k`` of the result multiplies ``a1^k a2^(n-k)``.
    """
    ring = Ring([PENCIL_VARS])
    det = det_symbolic(_linear_pencil_matrix(T, ring))
    n = T.n
    return BinaryForm([det.coefficient((k, n - k)) for k in range(n + 1)], PENCIL_VARS)


@dataclass(frozen=True)
class HyperdetValue:
    """Hyperdeterminant value with the binary form it came from."""

    value: Fraction
    form: BinaryForm
    degenerate: bool

    def to_json(self):
        return {"value": rational_str(self.value), "degenerate": self.degenerate,
                "binary_form": self.form.to_json()}


def hyperdet_2nn(T: Pencil, with_flag: bool = False):
    """Schlaefli hyperdeterminant of a 2 x n x n tensor.

    Returns the discriminant of :func:`pencil_form`; ``0`` when the pencil
    form vanishes identically.  With ``with_flag`` a :class:`HyperdetValue`
    carrying the degenerate flag is returned instead.
    """
    p = pencil_form(T)
    if T.n < 2:
        raise DimensionError("hyperdeterminant needs n >= 2")
    degenerate = p.is_zero()
    value = Fraction(0) if degenerate else discriminant(p)
    return HyperdetValue(value, p, degenerate) if with_flag else value


def hyperdet_222(U: Pencil, with_flag: bool = False):
    """2 x 2 x 2 hyperdeterminant via the discriminant of the binary quadratic."""
    if U.n != 2:
        raise DimensionError(f"expected 2 x 2 slices, got n = {U.n}")
    return hyperdet_2nn(U, with_flag)


def cayley_hyperdet_222(u) -> object:
    """Cayley's expansion of the 2 x 2 x 2 hyperdeterminant.

    ``u[i][j][k]`` may hold rationals or forms over a common ring.  Kept as an
    independent formula for cross-checks.
    """
    a = {(i, j, k): u[i][j][k] for i, j, k in product(range(2), repeat=3)}
    g = lambda *idx: a[idx]  # noqa: E731
    return (g(0, 0, 0) ** 2 * g(1, 1, 1) ** 2 + g(0, 0, 1) ** 2 * g(1, 1, 0) ** 2
            + g(0, 1, 0) ** 2 * g(1, 0, 1) ** 2 + g(1, 0, 0) ** 2 * g(0, 1, 1) ** 2
            - 2 * g(0, 0, 0) * g(0, 0, 1) * g(1, 1, 0) * g(1, 1, 1)
            - 2 * g(0, 0, 0) * g(0, 1, 0) * g(1, 0, 1) * g(1, 1, 1)
            - 2 * g(0, 0, 0) * g(0, 1, 1) * g(1, 0, 0) * g(1, 1, 1)
            - 2 * g(0, 0, 1) * g(0, 1, 0) * g(1, 0, 1) * g(1, 1, 0)
            - 2 * g(0, 0, 1) * g(0, 1, 1) * g(1, 1, 0) * g(1, 0, 0)
            - 2 * g(0, 1, 0) * g(0, 1, 1) * g(1, 0, 1) * g(1, 0, 0)
            + 4 * g(0, 0, 0) * g(0, 1, 1) * g(1, 0, 1) * g(1, 1, 0)
            + 4 * g(0, 0, 1) * g(0, 1, 0) * g(1, 0, 0) * g(1, 1, 1))


def symbolic_hyperdet_222(u) -> GradedForm:
    """Discriminant of ``det(a1 U1 + a2 U2)`` with symbolic entries ``u[i][j][k]``.

    Slice ``i`` is ``U_(i+1)``; entries are forms over a parameter ring.
    """
    a = [[[u[i][j][k] for k in range(2)] for j in range(2)] for i in range(2)]
    # det(a1 U1 + a2 U2) expanded by hand, coefficient of a1^k a2^(2-k)
    c2 = a[0][0][0] * a[0][1][1] - a[0][0][1] * a[0][1][0]
    c0 = a[1][0][0] * a[1][1][1] - a[1][0][1] * a[1][1][0]
    c1 = (a[0][0][0] * a[1][1][1] + a[1][0][0] * a[0][1][1]
          - a[0][0][1] * a[1][1][0] - a[1][0][1] * a[0][1][0])
    return c1 * c1 - c2 * c0 * 4


@dataclass(frozen=True)
class Tensor2222:
    """Rational 2 x 2 x 2 x 2 tensor, entries ``z[i][j][k][l]``."""

    entries: tuple

    def __post_init__(self):
        flat = list(self.entries)
        if len(flat) == 2 and not isinstance(flat[0], (int, Fraction, str, float)):
            flat = [flat[i][j][k][l] for i, j, k, l in product(range(2), repeat=4)]
        if len(flat) != 16:
            raise ShapeError(f"expected 16 entries, got {len(flat)}")
        object.__setattr__(self, "entries", tuple(to_rational(v) for v in flat))

    def __getitem__(self, idx):
        i, j, k, l = idx
        return self.entries[8 * i + 4 * j + 2 * k + l]

    @classmethod
    def from_terms(cls, terms):
        """Sum of decomposable terms ``[(v1, v2, v3, v4), ...]`` with ``vi`` in Q^2."""
        z = [Fraction(0)] * 16
        for v1, v2, v3, v4 in terms:
            for i, j, k, l in product(range(2), repeat=4):
                z[8 * i + 4 * j + 2 * k + l] += (to_rational(v1[i]) * to_rational(v2[j])
                                                 * to_rational(v3[k]) * to_rational(v4[l]))
        return cls(tuple(z))

    def to_json(self):
        return [rational_str(v) for v in self.entries]


def slice_polynomial(Z: Tensor2222) -> UniPoly:
    """``p(w)``: the 2 x 2 x 2 hyperdeterminant of ``z_{ijk0} + z_{ijk1} w``."""
    def entry(i, j, k):
        return UniPoly([Z[i, j, k, 0], Z[i, j, k, 1]])
    u = [[[entry(i, j, k) for k in range(2)] for j in range(2)] for i in range(2)]
    c2 = u[0][0][0] * u[0][1][1] - u[0][0][1] * u[0][1][0]
    c0 = u[1][0][0] * u[1][1][1] - u[1][0][1] * u[1][1][0]
    c1 = (u[0][0][0] * u[1][1][1] + u[1][0][0] * u[0][1][1]
          - u[0][0][1] * u[1][1][0] - u[1][0][1] * u[0][1][0])
    return c1 * c1 - c2 * c0 * 4


def hyperdet_2222(Z: Tensor2222, with_flag: bool = False):
    """2 x 2 x 2 x 2 hyperdeterminant as the discriminant of the quartic ``p(w)``.

    ``p`` is read as a binary quartic (formal degree 4), so a drop in degree
    is a root at infinity.  ``p == 0`` gives ``0`` with the degenerate flag.
    """
    p = slice_polynomial(Z)
    form = BinaryForm.from_unipoly(p, 4, ("w", "v"))
    degenerate = p.is_zero()
    value = Fraction(0) if degenerate else discriminant(form)
    return HyperdetValue(value, form, degenerate) if with_flag else value


# -- real rank ------------------------------------------------------------------------------

class BergqvistVerdict(str, enum.Enum):
    RANK_N = "RANK_N"
    RANK_N_PLUS_1 = "RANK_N_PLUS_1"
    BOUNDARY = "BOUNDARY"

    def __str__(self):
        return self.value


def projective_real_root_count(p: BinaryForm) -> int:
    """Distinct real roots of a nonzero binary form on P^1 (``[1:0]`` included)."""
    q = p.to_unipoly()
    at_infinity = 1 if q.degree < p.degree else 0
    finite = sturm_real_root_count(q) if q.degree > 0 else 0
    return finite + at_infinity


def bergqvist_real_rank(T: Pencil, with_evidence: bool = False):
    """Real rank class of a general real 2 x n x n tensor.

    ``RANK_N`` when ``p_T`` is squarefree with ``n`` real roots,
    ``RANK_N_PLUS_1`` when squarefree with fewer, ``BOUNDARY`` when ``p_T``
    vanishes or has a repeated root.
    """
    p = pencil_form(T)
    n = T.n
    ev = {"pencil_form": str(p)}
    if p.is_zero() or n < 1:
        verdict, ev["reason"] = BergqvistVerdict.BOUNDARY, "pencil form vanishes identically"
    elif n >= 2 and discriminant(p) == 0:
        verdict, ev["reason"] = BergqvistVerdict.BOUNDARY, "pencil form has a repeated root"
        ev["discriminant"] = "0"
    else:
        roots = projective_real_root_count(p)
        ev["real_roots"] = roots
        if n >= 2:
            ev["discriminant"] = rational_str(discriminant(p))
        verdict = BergqvistVerdict.RANK_N if roots == n else BergqvistVerdict.RANK_N_PLUS_1
    return (verdict, ev) if with_evidence else verdict


# -- constructions ------------------------------------------------------------------------

def tangential_join_sample(lams) -> Pencil:
    """Pencil ``(Id, J)`` with a Jordan block at ``lams[0]`` and diagonal ``lams[1:]``.

    For ``n = len(lams) + 1``, the slice ``J`` has ``lams[0]`` at positions
    ``(0, 0)`` and ``(1, 1)``, a ``1`` at ``(0, 1)`` and ``lams[i]`` at
    ``(i + 1, i + 1)``.  Its pencil form has a double root, so the tensor lies
    on the hyperdeterminant hypersurface.

    >>> tangential_join_sample([1, 2]).T2
    ExactMatrix([1, 1, 0; 0, 1, 0; 0, 0, 2])
    """
    lams = [to_rational(v) for v in lams]
    if not lams:
        raise DimensionError("need at least one eigenvalue")
    n = len(lams) + 1
    t2 = [[Fraction(0)] * n for _ in range(n)]
    t2[0][0] = t2[1][1] = lams[0]
    t2[0][1] = Fraction(1)
    for i, lam in enumerate(lams[1:], start=2):
        t2[i][i] = lam
    return Pencil(ExactMatrix.identity(n), ExactMatrix(t2))


def symmetric_tangential_sample(lams) -> Pencil:
    """Symmetric rational pencil whose form has the double factor ``(a1 + lams[0] a2)^2``.

    The leading 2 x 2 blocks are ``[[0, 1], [1, 0]]`` in ``T1`` and
    ``[[1, l], [l, 0]]`` in ``T2`` with ``l = lams[0]``, whose pencil
    determinant is ``-(a1 + l a2)^2``; the remaining slots are ``1`` in
    ``T1`` and ``lams[i]`` in ``T2`` on the diagonal.
    """
    lams = [to_rational(v) for v in lams]
    if not lams:
        raise DimensionError("need at least one eigenvalue")
    n = len(lams) + 1
    t1 = [[Fraction(0)] * n for _ in range(n)]
    t2 = [[Fraction(0)] * n for _ in range(n)]
    t1[0][1] = t1[1][0] = Fraction(1)
    t2[0][0] = Fraction(1)
    t2[0][1] = t2[1][0] = lams[0]
    for i, lam in enumerate(lams[1:], start=2):
        t1[i][i] = Fraction(1)
        t2[i][i] = lam
    return Pencil(ExactMatrix(t1), ExactMatrix(t2), symmetric=True)


def cubic_surface_pencil_matrix(lam) -> ExactMatrix:
    """3 x 3 matrix of linear forms in ``a0, a1, a2`` for the 3 x 3 x 3 example.

    ``lam`` maps the names ``l01, l02, l03, l11, l12, l13`` to rationals or
    forms; pass ``None`` to use symbolic parameters of those names.
    """
    names = ("l01", "l02", "l03", "l11", "l12", "l13")
    if lam is None:
        ring = Ring([("a0", "a1", "a2")], names)
        L = {n: ring.variable(n) for n in names}
    else:
        ring = Ring([("a0", "a1", "a2")])
        L = {n: to_rational(lam[n]) for n in names}
    a0, a1, a2 = (ring.variable(v) for v in ("a0", "a1", "a2"))
    zero = GradedForm.zero(ring, (1,))
    return ExactMatrix([
        [a0, zero, a2 * L["l02"]],
        [zero, a1, a2 * L["l12"]],
        [a2 * L["l03"], a2 * L["l13"], a0 * L["l01"] + a1 * L["l11"] + a2],
    ])
