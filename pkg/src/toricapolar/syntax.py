"""Text syntax for forms.

Grammar (whitespace ignored)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*      # "/" only by a constant
    unary  := ("+" | "-") unary | power
    power  := atom (("^" | "**") INTEGER)?
    atom   := NUMBER | IDENT | "(" expr ")"

Numbers are integers or decimals; rationals are written as quotients such as
``3/4``.  Error offsets are byte offsets into the UTF-8 encoded text.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import FormSyntaxError, InhomogeneousError
from .exactalg import GradedForm, Ring

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)"
                    r"|(?P<op>\*\*|[-+*/^()]))")
_XI = re.compile(r"x(\d+)$")


class _Poly(dict):
    """Sparse polynomial over variable names: {((name, exp), ...): coeff}."""

    @classmethod
    def const(cls, c):
        return cls({(): Fraction(c)} if c else {})

    @classmethod
    def var(cls, name):
        return cls({((name, 1),): Fraction(1)})

    def is_const(self):
        return all(not m for m in self)

    def value(self):
        return self.get((), Fraction(0))

    def add(self, other, sign=1):
        out = _Poly(self)
        for m, c in other.items():
            v = out.get(m, 0) + sign * c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return out

    def mul(self, other):
        out = _Poly()
        for m1, c1 in self.items():
            for m2, c2 in other.items():
                d = dict(m1)
                for v, e in m2:
                    d[v] = d.get(v, 0) + e
                m = tuple(sorted(d.items()))
                val = out.get(m, 0) + c1 * c2
                if val:
                    out[m] = val
                else:
                    out.pop(m, None)
        return out

    def names(self):
        return {v for m in self for v, _ in m}


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            m = _TOKEN.match(stripped, pos)
            if not m or m.end() == pos:
                bad = pos + (len(stripped[pos:]) - len(stripped[pos:].lstrip()))
                raise FormSyntaxError(f"unexpected character {stripped[bad]!r}", self._byte(bad))
            kind = m.lastgroup
            start = m.start(kind)
            self.tokens.append((kind, m.group(kind), start))
            pos = m.end()
        self.tokens.append(("end", "", len(text)))
        self.i = 0

    def _byte(self, char_index):
        return len(self.text[:char_index].encode("utf-8"))

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return FormSyntaxError(msg, self._byte(tok[2]))

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        out = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected token {self.peek()[1]!r}")
        return out

    def expr(self):
        acc = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            acc = acc.add(self.term(), 1 if op == "+" else -1)
        return acc

    def term(self):
        acc = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            tok = self.take()
            rhs = self.unary()
            if tok[1] == "*":
                acc = acc.mul(rhs)
            else:
                if not rhs.is_const():
                    raise self.error("division is only allowed by a constant", tok)
                if not rhs.value():
                    raise self.error("division by zero", tok)
                acc = acc.mul(_Poly.const(1 / rhs.value()))
        return acc

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            inner = self.unary()
            return inner if tok[1] == "+" else inner.mul(_Poly.const(-1))
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("^", "**"):
            self.take()
            exp_tok = self.take()
            if exp_tok[0] != "num" or "." in exp_tok[1]:
                raise self.error("exponent must be a non-negative integer", exp_tok)
            out = _Poly.const(1)
            for _ in range(int(exp_tok[1])):
                out = out.mul(base)
            return out
        return base

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return _Poly.const(Fraction(val))
        if kind == "id":
            return _Poly.var(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            close = self.take()
            if close[1] != ")":
                raise self.error("expected ')'", close)
            return inner
        if kind == "end":
            raise self.error("unexpected end of expression", tok)
        raise self.error(f"unexpected token {val!r}", tok)


def _ring_candidates(names, params):
    """Rings to try, in order, for the set of variable names used."""
    names = set(names) - set(params)
    xi = {n for n in names if _XI.match(n)}
    if xi:
        if names - xi - {"z", "w"}:
            return []
        n = max(int(_XI.match(v).group(1)) for v in xi)
        return [Ring.pn_p1(max(n, 1), params)]
    if names <= {"a", "b", "c"} and names:
        return [Ring.ternary(("a", "b", "c"), params)]
    if not names <= {"x", "y", "z", "w"}:
        return []
    if names <= {"x", "y"}:
        return [Ring.binary(("x", "y"), params)]
    if "w" in names:
        return [Ring.p1p1(params)]
    return [Ring.p1p1(params), Ring.ternary(("x", "y", "z"), params)]


RING_NAMES = {
    "p1p1": lambda params: Ring.p1p1(params),
    "ternary": lambda params: Ring.ternary(("x", "y", "z"), params),
    "binary": lambda params: Ring.binary(("x", "y"), params),
}


def resolve_ring(spec, names=(), params=()):
    """Turn a ring name (``p1p1``, ``ternary``, ``binary``, ``pnp1``) into a Ring."""
    if spec is None or isinstance(spec, Ring):
        return spec
    if spec in RING_NAMES:
        return RING_NAMES[spec](tuple(params))
    if spec == "pnp1":
        idx = [int(_XI.match(v).group(1)) for v in names if _XI.match(v)]
        return Ring.pn_p1(max(idx + [1]), tuple(params))
    raise FormSyntaxError(f"unknown ring {spec!r}")


def _to_form(poly, ring):
    unknown = poly.names() - set(ring.names)
    if unknown:
        raise FormSyntaxError(f"variables {sorted(unknown)} are not in ring {ring}")
    terms = {}
    for m, c in poly.items():
        e = [0] * ring.nvars
        for v, k in m:
            e[ring.index(v)] += k
        terms[tuple(e)] = c
    return GradedForm(ring, terms)


def parse_form(text: str, ring=None, params=()) -> GradedForm:
    """Parse text into a :class:`GradedForm`.

    Parameters
    ----------
    text : str
    ring : Ring or str, optional
        Target ring.  By default it is inferred from the variable names:
        ``x0..xn`` with ``z, w`` give P^n x P^1, ``x, y`` alone a binary form,
        any use of ``w`` gives P^1 x P^1, ``a, b, c`` a ternary form, and
        ``x, y, z`` try P^1 x P^1 first and fall back to a ternary form.
    params : sequence of str
        Names treated as ungraded parameters.

    Raises
    ------
    FormSyntaxError
        With the byte offset of the offending token.
    InhomogeneousError
        Naming two monomials of different multidegrees.

    Examples
    --------
    >>> str(parse_form("(x+y)^2*z^2"))
    'x^2*z^2 + 2*x*y*z^2 + y^2*z^2'
    """
    if not isinstance(text, str):
        raise FormSyntaxError("expression must be a string")
    poly = _Parser(text).parse()
    params = tuple(params)
    if ring is not None:
        return _to_form(poly, resolve_ring(ring, poly.names(), params))
    candidates = _ring_candidates(poly.names(), params)
    if not candidates:
        raise FormSyntaxError(f"cannot infer a ring for variables {sorted(poly.names())}; "
                              "pass an explicit ring")
    err = None
    for r in candidates:
        try:
            return _to_form(poly, r)
        except InhomogeneousError as exc:
            err = err or exc
    raise err
