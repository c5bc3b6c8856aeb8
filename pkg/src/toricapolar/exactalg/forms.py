"""Sparse multigraded polynomials over the rationals.

A :class:`Ring` is a list of variable *blocks* (one block per projective
factor) plus optional *parameters*.  Block variables carry the grading; a
:class:`GradedForm` must be homogeneous in every block separately.  Parameters
are ungraded symbols that play the role of symbolic coefficients (the
``lambda`` of a rank-one update, the ``u_ijk`` of a symbolic tensor, ...).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import factorial
from numbers import Rational as _RationalABC

from ..errors import InhomogeneousError, RingMismatchError, DimensionError


def to_rational(value) -> Fraction:
    """Convert ``value`` to an exact :class:`~fractions.Fraction`.

    Strings of the form ``"p/q"`` are accepted.  Floats are read through their
    shortest decimal representation, so ``0.1`` becomes ``1/10``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError(f"cannot convert {value!r} to an exact rational")
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    # numpy scalars and the like
    if hasattr(value, "item"):
        return to_rational(value.item())
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def rational_str(value: Fraction) -> str:
    return str(Fraction(value))


def compositions(total: int, parts: int):
    """All exponent tuples of length ``parts`` summing to ``total``, lex-descending."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def block_monomials(size: int, degree: int, order: str = "grlex") -> list[tuple[int, ...]]:
    """Monomials of one block of the given degree.

    ``grlex`` puts ``x^2, xy, xz, y^2, yz, z^2`` (first variable largest);
    ``grevlex`` gives ``x^2, xy, y^2, xz, yz, z^2``.  In two variables, or in
    degree one, the orders agree.
    """
    monos = list(compositions(degree, size))
    if order == "grlex":
        return monos
    if order == "grevlex":
        return sorted(monos, key=lambda e: tuple(reversed(e)))
    raise ValueError(f"unknown monomial order {order!r}")


def multifactorial(exps) -> int:
    out = 1
    for e in exps:
        out *= factorial(e)
    return out


class Ring:
    """Variable layout of a product of projective spaces (plus parameters)."""

    __slots__ = ("blocks", "params", "names", "_index", "_slices")

    def __init__(self, blocks, params=()):
        self.blocks = tuple(tuple(str(v) for v in b) for b in blocks)
        self.params = tuple(str(p) for p in params)
        if any(len(b) == 0 for b in self.blocks):
            raise DimensionError("variable blocks must be non-empty")
        self.names = tuple(v for b in self.blocks for v in b) + self.params
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        self._index = {v: i for i, v in enumerate(self.names)}
        slices, start = [], 0
        for b in self.blocks:
            slices.append(slice(start, start + len(b)))
            start += len(b)
        self._slices = tuple(slices)

    # -- constructors for the ambients used throughout ------------------------
    @classmethod
    def p1p1(cls, params=()):
        return cls([("x", "y"), ("z", "w")], params)

    @classmethod
    def binary(cls, names=("x", "y"), params=()):
        return cls([tuple(names)], params)

    @classmethod
    def ternary(cls, names=("x", "y", "z"), params=()):
        return cls([tuple(names)], params)

    @classmethod
    def pn_p1(cls, n: int, params=()):
        return cls([tuple(f"x{i}" for i in range(n + 1)), ("z", "w")], params)

    @classmethod
    def params_only(cls, params):
        return cls((), params)

    # -- properties -------------------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    @property
    def nblockvars(self) -> int:
        return sum(self.block_sizes)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"variable {name!r} not in ring {self.names}") from None

    def block_slice(self, k: int) -> slice:
        return self._slices[k]

    def multidegree(self, exps) -> tuple[int, ...]:
        return tuple(sum(exps[s]) for s in self._slices)

    def split(self, exps):
        """Exponent vector -> (per-block exponent tuples, parameter exponents)."""
        return (tuple(tuple(exps[s]) for s in self._slices),
                tuple(exps[self.nblockvars:]))

    def join(self, block_exps, param_exps=None) -> tuple[int, ...]:
        flat = tuple(e for b in block_exps for e in b)
        if param_exps is None:
            param_exps = (0,) * len(self.params)
        return flat + tuple(param_exps)

    def monomials(self, degree, order: str = "grlex") -> list[tuple[int, ...]]:
        """All block monomials of a multidegree, block 1 outermost."""
        degree = tuple(degree)
        if len(degree) != len(self.blocks):
            raise DimensionError(f"multidegree {degree} does not match {len(self.blocks)} blocks")
        per_block = [block_monomials(len(b), d, order) for b, d in zip(self.blocks, degree)]
        return [self.join(combo) for combo in product(*per_block)]

    def param_ring(self) -> "Ring":
        return Ring((), self.params)

    def with_params(self, extra) -> "Ring":
        extra = tuple(p for p in extra if p not in self.params)
        return Ring(self.blocks, self.params + extra)

    def variable(self, name: str) -> "GradedForm":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return GradedForm(self, {tuple(e): 1})

    def gens(self):
        return tuple(self.variable(v) for v in self.names)

    # -- identity ----------------------------------------------------------------
    def _key(self):
        return (self.blocks, self.params)

    def __eq__(self, other):
        return isinstance(other, Ring) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        inner = " | ".join(",".join(b) for b in self.blocks)
        if self.params:
            inner += " ; " + ",".join(self.params)
        return f"Ring({inner})"


def _term_sort_key(ring: Ring, exps):
    blocks, params = ring.split(exps)
    key = []
    for b in blocks:
        key.extend(-e for e in b)
    key.append(-sum(params))
    key.extend(-e for e in params)
    return tuple(key)


class GradedForm:
    """Sparse multihomogeneous polynomial with exact rational coefficients.

    ``terms`` maps exponent vectors (one entry per ring variable, parameters
    last) to coefficients.  Zero coefficients are never stored.  The
    multidegree is checked on construction: every term must have the same
    degree in each block; parameters are free.
    """

    __slots__ = ("ring", "terms", "degree")

    def __init__(self, ring: Ring, terms=None, degree=None):
        self.ring = ring
        clean = {}
        n = ring.nvars
        for exps, coef in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise DimensionError(f"exponent vector {exps} has wrong length for {ring}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            coef = to_rational(coef)
            if coef:
                clean[exps] = clean.get(exps, 0) + coef
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean
        found = None
        first = None
        for exps in clean:
            md = ring.multidegree(exps)
            if found is None:
                found, first = md, exps
            elif md != found:
                raise InhomogeneousError(self._mono_str(first), self._mono_str(exps))
        if degree is not None:
            degree = tuple(degree)
            if found is not None and degree != found:
                raise InhomogeneousError(self._mono_str(first), f"declared degree {degree}",
                                         f"form of multidegree {found} declared as {degree}")
            self.degree = degree
        else:
            self.degree = found

    # -- constructors --------------------------------------------------------------
    @classmethod
    def zero(cls, ring, degree=None):
        return cls(ring, {}, degree)

    @classmethod
    def constant(cls, ring, value):
        return cls(ring, {(0,) * ring.nvars: value}, (0,) * len(ring.blocks))

    @classmethod
    def from_coefficients(cls, ring, degree, coefficients, order="grlex"):
        """Build a form from a coefficient vector in the canonical monomial order."""
        monos = ring.monomials(degree, order)
        coefficients = list(coefficients)
        if len(coefficients) != len(monos):
            raise DimensionError(f"expected {len(monos)} coefficients for degree {tuple(degree)}, "
                                 f"got {len(coefficients)}")
        return cls(ring, dict(zip(monos, coefficients)), degree)

    # -- basic queries -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exps) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def coefficients(self, order="grlex") -> list[Fraction]:
        """Coefficient vector over all block monomials of the form's degree.

        Only meaningful for forms without parameters.
        """
        if self.degree is None:
            raise ValueError("zero form without declared degree has no coefficient vector")
        return [self.coefficient(m) for m in self.ring.monomials(self.degree, order)]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _term_sort_key(self.ring, kv[0]))

    def block_coefficients(self) -> dict:
        """Group terms by their block monomial.

        Returns a dict mapping block exponent vectors to forms in the
        parameters only (i.e. over :meth:`Ring.param_ring`).
        """
        pr = self.ring.param_ring()
        nb = self.ring.nblockvars
        grouped = {}
        for exps, c in self.terms.items():
            key = exps[:nb] + (0,) * len(self.ring.params)
            grouped.setdefault(key, {})[exps[nb:]] = c
        return {k: GradedForm(pr, v) for k, v in grouped.items()}

    # -- arithmetic ----------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, GradedForm):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        c = to_rational(other)
        if not c:
            return GradedForm(self.ring, {}, self.degree)
        return GradedForm.constant(self.ring, c)

    def __add__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            v = terms.get(e, 0) + c
            if v:
                terms[e] = v
            else:
                terms.pop(e, None)
        deg = self.degree if self.degree == other.degree else None
        if deg is None:
            # mixed degrees: the constructor raises with the offending monomials
            return GradedForm(self.ring, terms)
        return GradedForm(self.ring, terms, deg)

    __radd__ = __add__

    def __neg__(self):
        return GradedForm(self.ring, {e: -c for e, c in self.terms.items()}, self.degree)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GradedForm):
            c = to_rational(other)
            if not c:
                deg = self.degree
                return GradedForm(self.ring, {}, deg)
            return GradedForm(self.ring, {e: c * v for e, v in self.terms.items()}, self.degree)
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = terms.get(e, 0) + c1 * c2
                if v:
                    terms[e] = v
                else:
                    del terms[e]
        deg = None
        if self.degree is not None and other.degree is not None:
            deg = tuple(a + b for a, b in zip(self.degree, other.degree))
        return GradedForm(self.ring, terms, deg)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GradedForm):
            if other.is_constant():
                return self * (1 / other.constant_value())
            return exact_divide(self, other)
        return self * (1 / to_rational(other))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = GradedForm.constant(self.ring, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, GradedForm):
            return self.ring == other.ring and self.terms == other.terms
        try:
            c = to_rational(other)
        except (TypeError, ValueError):
            return NotImplemented
        if not c:
            return self.is_zero()
        return self.is_constant() and self.constant_value() == c

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- calculus and evaluation -----------------------------------------------------
    def derivative(self, name: str, order: int = 1) -> "GradedForm":
        i = self.ring.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i] < order:
                continue
            k = 1
            for j in range(order):
                k *= e[i] - j
            ne = e[:i] + (e[i] - order,) + e[i + 1:]
            terms[ne] = c * k
        deg = None
        if self.degree is not None and i < self.ring.nblockvars:
            deg = list(self.degree)
            for b in range(len(self.ring.blocks)):
                s = self.ring.block_slice(b)
                if s.start <= i < s.stop:
                    deg[b] -= order
            deg = tuple(deg) if min(deg) >= 0 else None
        elif self.degree is not None:
            deg = self.degree
        return GradedForm(self.ring, terms, deg)

    def evaluate(self, values) -> Fraction:
        """Evaluate at a full assignment (mapping name -> value, or a sequence)."""
        if isinstance(values, dict):
            try:
                vals = [to_rational(values[v]) for v in self.ring.names]
            except KeyError as exc:
                raise DimensionError(f"missing value for variable {exc.args[0]!r}") from None
        else:
            vals = [to_rational(v) for v in values]
            if len(vals) != self.ring.nvars:
                raise DimensionError(f"expected {self.ring.nvars} values, got {len(vals)}")
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t *= v ** k
            total += t
        return total

    def substitute(self, values: dict) -> "GradedForm":
        """Substitute rationals for *parameters*; the result lives in a smaller ring."""
        bad = [k for k in values if k not in self.ring.params]
        if bad:
            raise ValueError(f"only parameters can be substituted, got {bad}")
        keep = [p for p in self.ring.params if p not in values]
        ring = Ring(self.ring.blocks, keep)
        nb = self.ring.nblockvars
        pidx = {p: nb + i for i, p in enumerate(self.ring.params)}
        terms = {}
        for e, c in self.terms.items():
            t = c
            for p, v in values.items():
                k = e[pidx[p]]
                if k:
                    t *= to_rational(v) ** k
            ne = e[:nb] + tuple(e[pidx[p]] for p in keep)
            terms[ne] = terms.get(ne, 0) + t
        return GradedForm(ring, terms, self.degree)

    def change_ring(self, ring: Ring) -> "GradedForm":
        """Re-express the form in a ring that contains all of its variables."""
        idx = [ring.index(v) for v in self.ring.names]
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for k, j in zip(e, idx):
                ne[j] += k
            terms[tuple(ne)] = c
        return GradedForm(ring, terms)

    # -- printing --------------------------------------------------------------------
    def _mono_str(self, exps) -> str:
        parts = []
        for v, k in zip(self.ring.names, exps):
            if k == 1:
                parts.append(v)
            elif k > 1:
                parts.append(f"{v}^{k}")
        return "*".join(parts) if parts else "1"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = self._mono_str(e)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if mono == "1":
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            out.append((sign, body))
        first_sign, first_body = out[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"GradedForm({self}, degree={self.degree})"

    def to_json(self) -> dict:
        return {
            "variables": list(self.ring.names),
            "blocks": [list(b) for b in self.ring.blocks],
            "degree": list(self.degree) if self.degree is not None else None,
            "terms": [{"exponents": list(e), "coefficient": rational_str(c)}
                      for e, c in self.sorted_terms()],
        }


def exact_divide(p: GradedForm, q: GradedForm) -> GradedForm:
    """Quotient ``p / q`` when ``q`` divides ``p`` exactly (lex division)."""
    if p.ring != q.ring:
        raise RingMismatchError(f"{p.ring} vs {q.ring}")
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lead_q = max(q.terms)
    lc_q = q.terms[lead_q]
    rem = dict(p.terms)
    quot = {}
    while rem:
        lead_r = max(rem)
        diff = tuple(a - b for a, b in zip(lead_r, lead_q))
        if min(diff) < 0:
            raise ArithmeticError("polynomial division is not exact")
        coef = rem[lead_r] / lc_q
        quot[diff] = quot.get(diff, 0) + coef
        for e, c in q.terms.items():
            ne = tuple(a + b for a, b in zip(e, diff))
            v = rem.get(ne, 0) - coef * c
            if v:
                rem[ne] = v
            else:
                rem.pop(ne, None)
    return GradedForm(p.ring, quot)
