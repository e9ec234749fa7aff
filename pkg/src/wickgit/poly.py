"""Sparse multivariate polynomials with exact rational coefficients."""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from .errors import PolyParseError, UnknownVariableError

ALLOWED_VARS = ("u", "v", "U", "V", "r")


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


class Poly:
    """Polynomial as a map exponent-tuple -> Fraction over an ordered variable list.

    Zero coefficients are never stored. Instances are treated as immutable.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables=(), terms=None):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("repeated variable name")
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(self.variables):
                raise ValueError("exponent vector length does not match variables")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            c = _frac(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean

    # construction helpers
    @classmethod
    def const(cls, c, variables=()):
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name, variables=None):
        variables = tuple(variables) if variables is not None else (name,)
        if name not in variables:
            raise UnknownVariableError(f"variable {name!r} not in {variables}")
        e = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {e: 1})

    @classmethod
    def parse(cls, text: str, variables=None) -> "Poly":
        p = _Parser(text).parse()
        if variables is not None:
            p = p.with_variables(variables)
        return p

    # variable handling
    def with_variables(self, variables) -> "Poly":
        variables = tuple(variables)
        missing = [v for v, e in zip(self.variables, self._max_exps()) if e and v not in variables]
        if missing:
            raise UnknownVariableError(f"variables {missing} used but not in {variables}")
        idx = {v: i for i, v in enumerate(self.variables)}
        out = {}
        for exps, c in self.terms.items():
            new = tuple(exps[idx[v]] if v in idx else 0 for v in variables)
            out[new] = c
        return Poly(variables, out)

    def _max_exps(self):
        m = [0] * len(self.variables)
        for exps in self.terms:
            for i, e in enumerate(exps):
                m[i] = max(m[i], e)
        return m

    def _align(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other, self.variables)
        if other.variables == self.variables:
            return self, other
        union = list(self.variables)
        union += [v for v in other.variables if v not in union]
        return self.with_variables(union), other.with_variables(union)

    # arithmetic
    def __add__(self, other):
        a, b = self._align(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Poly(a.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly) else -_frac(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._align(other)
        out = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Poly(a.variables, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only division by a nonzero rational constant
        c = _frac(other)
        return Poly(self.variables, {e: v / c for e, v in self.terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("power must be a nonnegative integer")
        result = Poly.const(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def diff(self, name: str) -> "Poly":
        if name not in self.variables:
            raise UnknownVariableError(f"cannot differentiate by unknown variable {name!r}")
        i = self.variables.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return Poly(self.variables, out)

    def evaluate(self, point):
        """Evaluate at a point given as a mapping name -> value or a sequence in variable order.

        Rational inputs give an exact Fraction; floats give a float.
        """
        if isinstance(point, dict):
            vals = []
            for i, v in enumerate(self.variables):
                if v in point:
                    vals.append(point[v])
                elif any(e[i] for e in self.terms):
                    raise UnknownVariableError(f"no value supplied for {v!r}")
                else:
                    vals.append(0)
        else:
            vals = list(point)
            if len(vals) != len(self.variables):
                raise ValueError("point length does not match variables")
        exact = all(isinstance(x, (int, Fraction)) for x in vals)
        if exact:
            vals = [Fraction(x) for x in vals]
            total = Fraction(0)
        else:
            vals = [float(x) for x in vals]
            total = 0.0
        for e, c in self.terms.items():
            t = c if exact else float(c)
            for x, k in zip(vals, e):
                if k:
                    t = t * x**k
            total = total + t
        return total

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.const(other, self.variables)
            except TypeError:
                return NotImplemented
        a, b = self._align(other)
        return a.terms == b.terms

    def __hash__(self):
        live = sorted(
            (tuple((v, k) for v, k in zip(self.variables, e) if k), c) for e, c in self.terms.items()
        )
        return hash(tuple(live))

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), [-x for x in e])):
            c = self.terms[e]
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(self.variables, e) if k
            )
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]\w*)|(\S))")


class _Parser:
    """Recursive descent for: expr := term (('+'|'-') term)*, term := unary ('*' unary)*,
    unary := ('+'|'-') unary | power, power := atom ('^' int)?, atom := rational | var | '(' expr ')'.
    A rational literal is written n or n/m."""

    def __init__(self, text: str):
        self.text = text
        self.toks = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                break
            if m.end() == pos:
                break
            num, name, op = m.groups()
            start = m.start(1) if num else m.start(2) if name else m.start(3)
            if num:
                self.toks.append(("num", num, start))
            elif name:
                self.toks.append(("var", name, start))
            elif op:
                self.toks.append(("op", op, start))
            pos = m.end()
        self.i = 0

    def _peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", "", len(self.text))

    def _next(self):
        t = self._peek()
        self.i += 1
        return t

    def _fail(self, msg, tok=None):
        tok = tok or self._peek()
        raise PolyParseError(f"{msg} at column {tok[2] + 1} in {self.text!r}", column=tok[2] + 1)

    def parse(self) -> Poly:
        if not self.toks:
            self._fail("empty polynomial")
        p = self.expr()
        if self._peek()[0] != "end":
            self._fail(f"unexpected token {self._peek()[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while self._peek()[:2] in (("op", "+"), ("op", "-")):
            op = self._next()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self._peek()[:2] == ("op", "*"):
            self._next()
            p = p * self.unary()
        return p

    def unary(self):
        t = self._peek()
        if t[:2] == ("op", "-"):
            self._next()
            return -self.unary()
        if t[:2] == ("op", "+"):
            self._next()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self._peek()[:2] == ("op", "^"):
            self._next()
            t = self._next()
            if t[0] != "num":
                self._fail("exponent must be a nonnegative integer", t)
            base = base ** int(t[1])
        return base

    def atom(self):
        t = self._next()
        if t[0] == "num":
            if self._peek()[:2] == ("op", "/"):
                self._next()
                d = self._next()
                if d[0] != "num" or int(d[1]) == 0:
                    self._fail("bad rational denominator", d)
                return Poly.const(Fraction(int(t[1]), int(d[1])))
            return Poly.const(int(t[1]))
        if t[0] == "var":
            if t[1] not in ALLOWED_VARS:
                self._fail(f"unknown variable {t[1]!r}", t)
            return Poly.var(t[1])
        if t[:2] == ("op", "("):
            p = self.expr()
            if self._next()[:2] != ("op", ")"):
                self._fail("missing ')'")
            return p
        self._fail(f"unexpected token {t[1]!r}", t)
