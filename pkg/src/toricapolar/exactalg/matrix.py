"""Exact dense matrices with rational or polynomial entries.

Two entry modes share one container:

* *scalar* mode, entries are :class:`~fractions.Fraction`;
* *symbolic* mode, entries are :class:`GradedForm` over a common ring.

Determinants in scalar mode use integer fraction-free (Bareiss) elimination
after clearing denominators; Laplace expansion is kept as an independent
cross-check.  Symbolic determinants expand along rows below size 5 and switch
to Bareiss elimination with exact polynomial division above.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import gcd, lcm

from ..errors import DimensionError, RingMismatchError, SymmetryError
from .forms import GradedForm, Ring, exact_divide, to_rational
from .unipoly import UniPoly


class ExactMatrix:
    """Immutable rectangular matrix of exact entries.

    Parameters
    ----------
    rows : sequence of sequences
        Entries; rationals (anything accepted by ``to_rational``) or
        :class:`GradedForm` objects sharing one ring.
    symmetric : bool, optional
        If set, symmetry is verified entry by entry.
    """

    __slots__ = ("entries", "nrows", "ncols", "ring", "symmetric")

    def __init__(self, rows, symmetric=False):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise DimensionError("matrices must have at least one row and one column")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged matrix rows")
        ring = None
        for r in rows:
            for e in r:
                if isinstance(e, GradedForm):
                    if ring is None:
                        ring = e.ring
                    elif e.ring != ring:
                        raise RingMismatchError(f"matrix entries live in {ring} and {e.ring}")
        if ring is None:
            ents = tuple(tuple(to_rational(e) for e in r) for r in rows)
        else:
            ents = tuple(tuple(e if isinstance(e, GradedForm) else _const(ring, e) for e in r)
                         for r in rows)
        self.entries = ents
        self.nrows = len(ents)
        self.ncols = ncols
        self.ring = ring
        self.symmetric = False
        if symmetric:
            if not self.is_symmetric():
                raise SymmetryError("matrix flagged symmetric is not symmetric")
            self.symmetric = True

    # -- constructors ---------------------------------------------------------------
    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], symmetric=True)

    @classmethod
    def zeros(cls, m, n):
        return cls([[0] * n for _ in range(m)])

    @classmethod
    def diag(cls, values):
        values = list(values)
        n = len(values)
        if n and isinstance(values[0], GradedForm):
            ring = values[0].ring
            z = GradedForm.zero(ring)
            return cls([[values[i] if i == j else z for j in range(n)] for i in range(n)])
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def outer(cls, u, v):
        return cls([[to_rational(a) * to_rational(b) for b in v] for a in u])

    # -- basic queries ----------------------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def is_symbolic(self) -> bool:
        return self.ring is not None

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        e = self.entries
        return all(e[i][j] == e[j][i] for i in range(self.nrows) for j in range(i + 1, self.nrows))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return list(self.entries[i])

    def col(self, j):
        return [r[j] for r in self.entries]

    def tolist(self):
        return [list(r) for r in self.entries]

    def __eq__(self, other):
        if isinstance(other, ExactMatrix):
            return self.entries == other.entries
        try:
            return self.entries == ExactMatrix(other).entries
        except (TypeError, ValueError, DimensionError):
            return NotImplemented

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in r) for r in self.entries)
        return f"ExactMatrix([{body}])"

    def to_json(self):
        return [[str(e) for e in r] for r in self.entries]

    # -- arithmetic -----------------------------------------------------------------------
    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([list(c) for c in zip(*self.entries)])

    T = property(transpose)

    def _zero(self):
        return GradedForm.zero(self.ring) if self.ring is not None else Fraction(0)

    def __add__(self, other):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return ExactMatrix([[a + b for a, b in zip(r1, r2)]
                            for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "ExactMatrix":
        return ExactMatrix([[e * c for e in r] for r in self.entries])

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.entries))
        out = []
        for r in self.entries:
            row = []
            for c in cols:
                acc = None
                for a, b in zip(r, c):
                    t = a * b
                    acc = t if acc is None else acc + t
                row.append(acc)
            out.append(row)
        return ExactMatrix(out)

    def matvec(self, v):
        if len(v) != self.ncols:
            raise DimensionError(f"vector of length {len(v)} for {self.shape} matrix")
        out = []
        for r in self.entries:
            acc = self._zero()
            for a, b in zip(r, v):
                acc = acc + a * b
            out.append(acc)
        return out

    def trace(self):
        self._require_square()
        acc = self._zero()
        for i in range(self.nrows):
            acc = acc + self.entries[i][i]
        return acc

    def submatrix(self, rows, cols) -> "ExactMatrix":
        return ExactMatrix([[self.entries[i][j] for j in cols] for i in rows])

    def minor_matrix(self, i, j) -> "ExactMatrix":
        return self.submatrix([r for r in range(self.nrows) if r != i],
                              [c for c in range(self.ncols) if c != j])

    def permute_columns(self, perm) -> "ExactMatrix":
        return ExactMatrix([[r[j] for j in perm] for r in self.entries])

    def _require_square(self):
        if not self.is_square():
            raise DimensionError(f"square matrix required, got {self.nrows}x{self.ncols}")

    def _require_scalar(self):
        if self.is_symbolic:
            raise TypeError("operation requires a matrix in scalar mode")

    # -- scalar linear algebra ------------------------------------------------------------
    def rref(self):
        """Reduced row echelon form and pivot columns (scalar mode)."""
        self._require_scalar()
        a = [list(r) for r in self.entries]
        m, n = self.nrows, self.ncols
        pivots = []
        r = 0
        for c in range(n):
            p = next((i for i in range(r, m) if a[i][c]), None)
            if p is None:
                continue
            a[r], a[p] = a[p], a[r]
            inv = 1 / a[r][c]
            a[r] = [x * inv for x in a[r]]
            for i in range(m):
                if i != r and a[i][c]:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
            if r == m:
                break
        return a, pivots

    def rank(self) -> int:
        if self.is_symbolic:
            raise TypeError("rank is only defined here for scalar matrices")
        return len(self.rref()[1])


def _const(ring, value):
    return GradedForm.constant(ring, value) if to_rational(value) else GradedForm.zero(ring)


def as_matrix(m) -> ExactMatrix:
    return m if isinstance(m, ExactMatrix) else ExactMatrix(m)


def _integer_rows(m: ExactMatrix):
    """Scale each row to integers; returns (int rows, product of row scales)."""
    rows, scale = [], 1
    for r in m.entries:
        den = 1
        for e in r:
            den = lcm(den, e.denominator)
        rows.append([int(e * den) for e in r])
        scale *= den
    return rows, scale


def det_exact(m) -> Fraction:
    """Determinant of a scalar matrix by integer Bareiss elimination."""
    m = as_matrix(m)
    m._require_square()
    m._require_scalar()
    a, scale = _integer_rows(m)
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k]), None)
            if p is None:
                return Fraction(0)
            a[k], a[p] = a[p], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return Fraction(sign * a[n - 1][n - 1], scale)


def det_cofactor(m):
    """Determinant by Laplace expansion along the first row (either mode)."""
    m = as_matrix(m)
    m._require_square()
    return _laplace(m.entries, list(range(m.nrows)), m._zero())


def _laplace(e, cols, zero, row=0):
    if len(cols) == 1:
        return e[row][cols[0]]
    acc = zero
    for k, c in enumerate(cols):
        a = e[row][c]
        if not a:
            continue
        sub = _laplace(e, cols[:k] + cols[k + 1:], zero, row + 1)
        term = a * sub
        acc = acc - term if k % 2 else acc + term
    return acc


def det_leibniz(m):
    """Determinant as a signed sum over permutations; slow, used as an oracle."""
    m = as_matrix(m)
    m._require_square()
    n = m.nrows
    acc = m._zero()
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        t = None
        for i, j in enumerate(perm):
            t = m.entries[i][j] if t is None else t * m.entries[i][j]
        acc = acc - t if inv % 2 else acc + t
    return acc


def det_symbolic(m) -> GradedForm:
    """Determinant of a matrix whose entries are forms over one ring."""
    m = as_matrix(m)
    m._require_square()
    if not m.is_symbolic:
        raise TypeError("det_symbolic expects symbolic entries; use det_exact for rationals")
    if m.nrows < 5:
        return det_cofactor(m)
    return det_bareiss_symbolic(m)


def det_bareiss_symbolic(m) -> GradedForm:
    """Fraction-free elimination over the polynomial ring (exact divisions)."""
    m = as_matrix(m)
    m._require_square()
    a = [list(r) for r in m.entries]
    n = len(a)
    sign = 1
    prev = None
    for k in range(n - 1):
        if a[k][k].is_zero():
            p = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if p is None:
                return GradedForm.zero(m.ring)
            a[k], a[p] = a[p], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = a[i][j] * akk - aik * a[k][j]
                a[i][j] = num if prev is None else exact_divide(num, prev) if num else num
            a[i][k] = GradedForm.zero(m.ring)
        prev = akk
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def determinant(m):
    """Dispatch to :func:`det_exact` or :func:`det_symbolic` by entry mode."""
    m = as_matrix(m)
    return det_symbolic(m) if m.is_symbolic else det_exact(m)


def adjugate(m) -> ExactMatrix:
    """Classical adjoint: ``M @ adjugate(M) == det(M) * I`` (also for singular M)."""
    m = as_matrix(m)
    m._require_square()
    n = m.nrows
    if n == 1:
        return ExactMatrix([[1]]) if not m.is_symbolic else ExactMatrix([[_const(m.ring, 1)]])
    cof = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = determinant(m.minor_matrix(i, j))
            cof[j][i] = -minor if (i + j) % 2 else minor
    return ExactMatrix(cof)


def kernel_basis(m) -> list[list[Fraction]]:
    """Basis of the right null space, each vector integral with content 1.

    The vectors are normalized so that the entry at their free variable is
    positive.  The list is empty iff the matrix is injective.
    """
    m = as_matrix(m)
    m._require_scalar()
    red, pivots = m.rref()
    n = m.ncols
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(primitive_vector(v))
    return basis


def primitive_vector(v) -> list[Fraction]:
    """Rescale a rational vector to coprime integers (sign kept)."""
    v = [to_rational(x) for x in v]
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return v
    return [Fraction(x // g) for x in ints]


def charpoly(m) -> UniPoly:
    """Characteristic polynomial ``det(x I - M)`` by Faddeev-LeVerrier."""
    m = as_matrix(m)
    m._require_square()
    m._require_scalar()
    n = m.nrows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    ident = ExactMatrix.identity(n)
    mk = ExactMatrix.zeros(n, n)
    c = Fraction(1)
    for k in range(1, n + 1):
        mk = m @ (mk + ident.scale(c))
        c = -mk.trace() / k
        coeffs[n - k] = c
    return UniPoly(coeffs)


def symbolic_matrix(rows, ring: Ring) -> ExactMatrix:
    """Build a symbolic matrix, lifting rational entries into ``ring``."""
    return ExactMatrix([[e if isinstance(e, GradedForm) else _const(ring, e) for e in r]
                        for r in rows])
