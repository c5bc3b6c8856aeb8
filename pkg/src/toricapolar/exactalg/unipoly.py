"""Dense univariate polynomials over the rationals and exact real-root counting."""

from __future__ import annotations

from fractions import Fraction

from ..errors import DegenerateInputError
from .forms import to_rational


class UniPoly:
    """Dense polynomial with :class:`~fractions.Fraction` coefficients.

    Coefficients are stored lowest degree first, with trailing zeros stripped,
    so ``UniPoly([1, 0, 1])`` is ``1 + w^2``.  The zero polynomial has an empty
    coefficient list and degree ``-1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [to_rational(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_roots(cls, roots):
        p = cls([1])
        for r in roots:
            p = p * cls([-to_rational(r), 1])
        return p

    @classmethod
    def monomial(cls, k, c=1):
        return cls([0] * k + [c])

    # -- queries --------------------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        x = to_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x) -> int:
        v = self(x)
        return (v > 0) - (v < 0)

    def sign_at_inf(self, positive=True) -> int:
        if not self.coeffs:
            return 0
        s = 1 if self.lc > 0 else -1
        if not positive and self.degree % 2:
            s = -s
        return s

    # -- arithmetic -------------------------------------------------------------------
    def _coerce(self, other):
        return other if isinstance(other, UniPoly) else UniPoly([other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = UniPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == UniPoly([other]).coeffs
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.lc
        quot = [Fraction(0)] * max(len(rem) - dq, 1)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if not c:
                continue
            q = c / lc
            quot[k - dq] = q
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] -= q * b
        return UniPoly(quot), UniPoly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other):
        return self.divmod(self._coerce(other))[1]

    def derivative(self) -> "UniPoly":
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return UniPoly([c / self.lc for c in self.coeffs])

    def primitive(self) -> "UniPoly":
        """Integer polynomial with content 1 and positive leading coefficient."""
        if self.is_zero():
            return self
        from math import gcd, lcm
        den = 1
        for c in self.coeffs:
            den = lcm(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        s = 1 if ints[-1] > 0 else -1
        return UniPoly([s * v // g for v in ints])

    def compose_shift(self, a) -> "UniPoly":
        """``p(w + a)``."""
        a = to_rational(a)
        out = UniPoly()
        for c in reversed(self.coeffs):
            out = out * UniPoly([a, 1]) + c
        return out

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("w" if k == 1 else f"w^{k}")
            a = abs(c)
            body = str(a) if not mono else (mono if a == 1 else f"{a}*{mono}")
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            text += f" {s} {b}"
        return text

    def __repr__(self):
        return f"UniPoly({self})"

    def to_json(self):
        return [str(c) for c in self.coeffs]


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd (zero if both inputs are zero)."""
    while not q.is_zero():
        p, q = q, p % q
    return p.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.is_zero():
        raise DegenerateInputError("the zero polynomial has no squarefree part")
    if p.degree <= 0:
        return UniPoly([1])
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def sturm_chain(p: UniPoly) -> list[UniPoly]:
    """Sturm sequence of ``p`` (intended for squarefree ``p``)."""
    chain = [p, p.derivative()]
    while not chain[-1].is_zero():
        r = chain[-2] % chain[-1]
        if r.is_zero():
            break
        chain.append(-r)
    return [c for c in chain if not c.is_zero()]


def _variations(signs) -> int:
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at(chain, x) -> int:
    if x == "+inf":
        return _variations([c.sign_at_inf(True) for c in chain])
    if x == "-inf":
        return _variations([c.sign_at_inf(False) for c in chain])
    return _variations([c.sign_at(x) for c in chain])


def root_bound(p: UniPoly) -> Fraction:
    """Cauchy bound: every real root has absolute value below the result."""
    lc = abs(p.lc)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def sturm_real_root_count(p: UniPoly, lo=None, hi=None) -> int:
    """Number of distinct real roots of ``p``.

    With ``lo``/``hi`` given, counts roots in the half-open interval
    ``(lo, hi]``; by default the whole real line.
    """
    if p.is_zero():
        raise DegenerateInputError("cannot count the roots of the zero polynomial")
    q = squarefree_part(p)
    if q.degree <= 0:
        return 0
    chain = sturm_chain(q)
    a = "-inf" if lo is None else to_rational(lo)
    b = "+inf" if hi is None else to_rational(hi)
    return _variations_at(chain, a) - _variations_at(chain, b)


def isolate_real_roots(p: UniPoly, max_width=None) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating intervals ``[lo, hi]``, one per distinct real root, sorted.

    Exact rational roots met during bisection are returned as degenerate
    intervals ``[r, r]``.  Otherwise the open interval ``(lo, hi)`` contains
    exactly one root and neither endpoint is a root.  With ``max_width`` the
    intervals are refined until narrower than it.
    """
    if p.is_zero():
        raise DegenerateInputError("cannot isolate the roots of the zero polynomial")
    q = squarefree_part(p)
    if q.degree <= 0:
        return []
    chain = sturm_chain(q)
    bound = root_bound(q)
    out = []
    # V(a) - V(b) counts the roots in the half-open interval (a, b]
    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        n = _variations_at(chain, a) - _variations_at(chain, b)
        if n == 0:
            continue
        if n == 1:
            if q(b) == 0:
                out.append((b, b))
                continue
            if q(a) != 0:
                if max_width is not None:
                    a, b = _refine(q, chain, a, b, to_rational(max_width))
                out.append((a, b))
                continue
        m = (a + b) / 2
        stack.append((a, m))
        stack.append((m, b))
    return sorted(out)


def _refine(q, chain, a, b, width):
    while b - a >= width:
        m = (a + b) / 2
        if q(m) == 0:
            return m, m
        if _variations_at(chain, a) - _variations_at(chain, m) == 1:
            b = m
        else:
            a = m
    return a, b


def sign_samples(p: UniPoly) -> list[Fraction]:
    """One rational point in every open interval cut out by the real roots.

    Together with the signs at ``+-inf`` this determines the sign of ``p``
    everywhere on the real line.
    """
    if p.is_zero():
        raise DegenerateInputError("the zero polynomial has no sign pattern")
    roots = isolate_real_roots(p)
    if not roots:
        return [Fraction(0)]
    pts = [roots[0][0] - 1]
    for (_, b1), (a2, _) in zip(roots, roots[1:]):
        # isolating intervals may share an endpoint, which is then not a root
        pts.append(b1 if b1 == a2 else (b1 + a2) / 2)
    pts.append(roots[-1][1] + 1)
    return pts
