"""Homogeneous binary forms, discriminants and a positivity test.

A :class:`BinaryForm` of degree ``n`` in variables ``(X, Y)`` stores
``coeffs[k]`` = coefficient of ``X^k Y^(n-k)``.  Setting ``Y = 1`` therefore
gives the univariate polynomial with the same (lowest-first) coefficient list.
Coefficients are rationals or, for symbolic work, :class:`GradedForm` objects
over a parameter ring.
"""

from __future__ import annotations

from ..errors import DegenerateInputError, DegreeError, DimensionError
from .forms import GradedForm, Ring, exact_divide, to_rational
from .matrix import ExactMatrix, det_exact, det_symbolic
from .unipoly import UniPoly, sturm_real_root_count


class BinaryForm:
    """Binary form of fixed (formal) degree.

    Parameters
    ----------
    coeffs : sequence
        ``coeffs[k]`` multiplies ``X^k Y^(n-k)``; the degree is ``len - 1``
        even when the top coefficients vanish (a root at infinity).
    names : pair of str
        Variable names, used for printing and conversion.
    """

    __slots__ = ("coeffs", "names")

    def __init__(self, coeffs, names=("x", "y")):
        coeffs = list(coeffs)
        if not coeffs:
            raise DimensionError("a binary form needs at least one coefficient")
        symbolic = [c for c in coeffs if isinstance(c, GradedForm)]
        if symbolic:
            ring = symbolic[0].ring
            coeffs = [c if isinstance(c, GradedForm) else
                      (GradedForm.constant(ring, c) if to_rational(c) else GradedForm.zero(ring))
                      for c in coeffs]
        else:
            coeffs = [to_rational(c) for c in coeffs]
        self.coeffs = tuple(coeffs)
        self.names = tuple(names)

    @classmethod
    def from_form(cls, f: GradedForm) -> "BinaryForm":
        """Convert a form over a single two-variable block (no parameters)."""
        ring = f.ring
        if len(ring.blocks) != 1 or len(ring.blocks[0]) != 2 or ring.params:
            raise DimensionError(f"not a binary form ring: {ring}")
        if f.degree is None:
            raise DegenerateInputError("zero form without a declared degree")
        n = f.degree[0]
        return cls([f.coefficient((k, n - k)) for k in range(n + 1)], ring.blocks[0])

    @classmethod
    def from_unipoly(cls, p: UniPoly, degree=None, names=("x", "y")):
        n = p.degree if degree is None else degree
        if n < p.degree:
            raise DegreeError(f"formal degree {n} below the actual degree {p.degree}")
        return cls([p[k] for k in range(n + 1)], names)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_symbolic(self) -> bool:
        return isinstance(self.coeffs[0], GradedForm)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_unipoly(self) -> UniPoly:
        """Dehomogenize at ``Y = 1`` (rational coefficients only)."""
        if self.is_symbolic:
            raise TypeError("symbolic binary form has no rational dehomogenization")
        return UniPoly(self.coeffs)

    def to_form(self, ring: Ring = None) -> GradedForm:
        if self.is_symbolic:
            raise TypeError("symbolic coefficients cannot be placed in a block-only ring")
        ring = ring or Ring.binary(self.names)
        n = self.degree
        return GradedForm(ring, {(k, n - k): c for k, c in enumerate(self.coeffs)}, (n,))

    def evaluate(self, x, y):
        x, y = to_rational(x), to_rational(y)
        n = self.degree
        acc = 0
        for k, c in enumerate(self.coeffs):
            acc = acc + c * (x ** k * y ** (n - k))
        return acc

    def shear(self, k) -> "BinaryForm":
        """``q(X, Y) = p(X, Y + kX)``, a unimodular substitution."""
        k = to_rational(k)
        n = self.degree
        out = [0] * (n + 1)
        # X^a (Y + kX)^(n-a) = sum_j C(n-a, j) k^j X^(a+j) Y^(n-a-j)
        from math import comb
        for a, c in enumerate(self.coeffs):
            for j in range(n - a + 1):
                out[a + j] = out[a + j] + c * (comb(n - a, j) * k ** j)
        return BinaryForm(out, self.names)

    def __eq__(self, other):
        return isinstance(other, BinaryForm) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        x, y = self.names
        parts = []
        n = self.degree
        for k in range(n, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "*".join(p for p in (_pw(x, k), _pw(y, n - k)) if p)
            cs = str(c)
            if isinstance(c, GradedForm) and len(c.terms) > 1:
                cs = f"({cs})"
            if mono and cs in ("1", "-1"):
                parts.append(mono if cs == "1" else "-" + mono)
            else:
                parts.append(f"{cs}*{mono}" if mono else cs)
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def __repr__(self):
        return f"BinaryForm({self})"

    def to_json(self):
        return {"degree": self.degree, "variables": list(self.names),
                "coefficients": [str(c) for c in self.coeffs]}


def _pw(v, k):
    return "" if k == 0 else (v if k == 1 else f"{v}^{k}")


def sylvester_matrix(p, q):
    """Sylvester matrix of two coefficient lists given highest degree first."""
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    zero = p[0] * 0
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(p) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(q) + [zero] * (size - n - 1 - i))
    return rows


def discriminant(p):
    """Discriminant of a binary form.

    Normalized as ``(-1)^(n(n-1)/2) Res(p, p') / lc(p)`` with ``p``
    dehomogenized at the second variable; this gives ``b^2 - 4ac`` for
    ``a x^2 + b x y + c y^2`` and the classical formula
    ``a1^2 a2^2 - 4 a0 a2^3 - 4 a1^3 a3 - 27 a0^2 a3^2 + 18 a0 a1 a2 a3`` for
    ``a0 x^3 + a1 x^2 y + a2 x y^2 + a3 y^3``.  When the ``x^n`` coefficient
    vanishes identically the form is sheared first, which leaves the
    discriminant unchanged.

    Parameters
    ----------
    p : BinaryForm, GradedForm or UniPoly
        A UniPoly is read as a binary form of its actual degree.

    Returns
    -------
    Fraction or GradedForm
    """
    if isinstance(p, UniPoly):
        p = BinaryForm.from_unipoly(p)
    elif isinstance(p, GradedForm):
        p = BinaryForm.from_form(p)
    n = p.degree
    if n < 2:
        raise DegreeError(f"discriminant needs degree >= 2, got {n}")
    if p.is_zero():
        return p.coeffs[0] * 0
    if not p.coeffs[n]:
        k = 1
        # p(1, k) is a nonzero univariate polynomial in k, so some k <= n+1 works
        while not p.evaluate(1, k):
            k += 1
        p = p.shear(k)
    coeffs = list(p.coeffs)
    high = coeffs[::-1]
    dhigh = [c * (n - i) for i, c in enumerate(high[:-1])]
    syl = sylvester_matrix(high, dhigh)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    lead = coeffs[n]
    if p.is_symbolic:
        res = det_symbolic(ExactMatrix(syl))
        out = exact_divide(res, lead) if not lead.is_constant() else res * (1 / lead.constant_value())
        return out if sign > 0 else -out
    return sign * det_exact(ExactMatrix(syl)) / lead


def binary_form_positive(p) -> bool:
    """Whether a rational binary form of even degree is positive off the origin.

    Decided exactly: both points ``[1:0]`` and ``[0:1]`` must give positive
    values and the dehomogenization must have no real root (Sturm count 0).
    """
    if isinstance(p, GradedForm):
        p = BinaryForm.from_form(p)
    elif isinstance(p, UniPoly):
        raise TypeError("pass a BinaryForm so that the degree is explicit")
    if p.is_symbolic:
        raise TypeError("positivity needs rational coefficients")
    if p.is_zero():
        raise DegenerateInputError("the zero form has no sign")
    if p.degree % 2:
        raise DegreeError(f"odd-degree form (degree {p.degree}) changes sign")
    if p.coeffs[-1] <= 0 or p.coeffs[0] <= 0:
        return False
    return sturm_real_root_count(p.to_unipoly()) == 0


__all__ = ["BinaryForm", "discriminant", "binary_form_positive", "sylvester_matrix"]
