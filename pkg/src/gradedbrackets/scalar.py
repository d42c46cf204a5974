"""Exact coefficient ring: polynomials over Q, optionally times exp(k*t).

A :class:`Scalar` is a finite sum of terms ``c * exp(w*t) * x^e`` where ``c``
is a :class:`fractions.Fraction`, ``e`` is an exponent vector over the
coordinates of a :class:`Chart` and ``w`` is an integer weight on the chart's
distinguished exponential coordinate ``t`` (``w == 0`` unless the chart
declares one). These stand in for smooth functions: the class is closed under
products and partial derivatives, which is all the bracket calculus needs.

Text syntax (``parse_scalar``)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := NUMBER | NUMBER '/' NUMBER | COORD | 'exp' '(' expr ')' | '(' expr ')'

Division is only by nonzero constants, and the argument of ``exp`` must be
``k*t`` for an integer ``k`` and the chart's exponential coordinate ``t``.
The printer emits the canonical form, e.g. ``3/2*x^2*y - 1`` or
``exp(-2*t)*(x*t - x)``, and ``parse_scalar(str(a), chart) == a``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import ChartMismatch, ParseError, UnknownCoordinate

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Chart:
    """Coordinate chart: base, fiber and auxiliary coordinate names.

    ``coords`` (base + fiber + aux) fixes the order of exponent vectors.
    ``exp_coord``, when set, must be one of ``aux`` and is the only
    coordinate allowed to carry an exponential weight.
    """

    base: tuple[str, ...] = ()
    fiber: tuple[str, ...] = ()
    aux: tuple[str, ...] = ()
    exp_coord: str | None = None

    def __post_init__(self):
        for field in ("base", "fiber", "aux"):
            object.__setattr__(self, field, tuple(getattr(self, field)))
        names = self.coords
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate coordinate names in {names}")
        for n in names:
            if not _NAME_RE.match(n) or n == "exp":
                raise ValueError(f"invalid coordinate name {n!r}")
        if self.exp_coord is not None and self.exp_coord not in self.aux:
            raise ValueError("exp_coord must be an auxiliary coordinate")

    @property
    def coords(self) -> tuple[str, ...]:
        return self.base + self.fiber + self.aux

    @property
    def dim(self) -> int:
        return len(self.base) + len(self.fiber) + len(self.aux)

    def index(self, name: str) -> int:
        try:
            return self.coords.index(name)
        except ValueError:
            raise UnknownCoordinate(f"unknown coordinate {name!r}") from None

    def const(self, c) -> "Scalar":
        return Scalar.const(self, c)

    def var(self, name: str) -> "Scalar":
        return Scalar.var(self, name)

    def vars(self) -> list["Scalar"]:
        return [Scalar.var(self, n) for n in self.coords]

    def exp(self, k: int) -> "Scalar":
        return Scalar.exp(self, k)

    def zero(self) -> "Scalar":
        return Scalar(self)

    def one(self) -> "Scalar":
        return Scalar.const(self, 1)


def _coerce_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


class Scalar:
    """Immutable polynomial-exponential function on a chart."""

    __slots__ = ("chart", "terms", "_hash")

    def __init__(self, chart: Chart, terms: dict | None = None, _trusted=False):
        self.chart = chart
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            n = chart.dim
            for (exps, w), c in (terms or {}).items():
                exps = tuple(exps)
                if len(exps) != n:
                    raise ValueError("exponent vector length does not match chart")
                if w and chart.exp_coord is None:
                    raise ValueError("exponential weight on a chart without exp_coord")
                c = _coerce_fraction(c)
                if c:
                    clean[(exps, int(w))] = c
            self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, chart: Chart, c) -> "Scalar":
        c = _coerce_fraction(c)
        if not c:
            return cls(chart, {}, _trusted=True)
        return cls(chart, {((0,) * chart.dim, 0): c}, _trusted=True)

    @classmethod
    def var(cls, chart: Chart, name: str) -> "Scalar":
        i = chart.index(name)
        e = [0] * chart.dim
        e[i] = 1
        return cls(chart, {(tuple(e), 0): Fraction(1)}, _trusted=True)

    @classmethod
    def exp(cls, chart: Chart, k: int) -> "Scalar":
        if k and chart.exp_coord is None:
            raise UnknownCoordinate("chart declares no exponential coordinate")
        return cls(chart, {((0,) * chart.dim, int(k)): Fraction(1)}, _trusted=True)

    @classmethod
    def monomial(cls, chart: Chart, exps, coeff=1, weight=0) -> "Scalar":
        return cls(chart, {(tuple(exps), weight): coeff})

    # -- helpers ------------------------------------------------------------
    def _lift(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.chart is not self.chart and other.chart != self.chart:
                raise ChartMismatch(f"{self.chart} vs {other.chart}")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.const(self.chart, other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        zero = (0,) * self.chart.dim
        return all(k == (zero, 0) for k in self.terms)

    def constant_value(self) -> Fraction:
        """Value of a constant scalar; raises ValueError otherwise."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get(((0,) * self.chart.dim, 0), Fraction(0))

    # -- ring operations ----------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s = s + c
                if s:
                    out[k] = s
                else:
                    del out[k]
        return Scalar(self.chart, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.chart, {k: -c for k, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Scalar(self.chart, {}, _trusted=True)
            if other == 1:
                return self
            return Scalar(self.chart, {k: c * other for k, c in self.terms.items()}, _trusted=True)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return Scalar(self.chart, {}, _trusted=True)
        out: dict = {}
        for (e1, w1), c1 in self.terms.items():
            for (e2, w2), c2 in other.terms.items():
                key = (tuple([a + b for a, b in zip(e1, e2)]), w1 + w2)
                s = out.get(key)
                out[key] = c1 * c2 if s is None else s + c1 * c2
        return Scalar(self.chart, {k: c for k, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            other = other.constant_value()
        other = _coerce_fraction(other)
        if not other:
            raise ZeroDivisionError("division of a scalar by zero")
        return self * (1 / other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        out = Scalar.const(self.chart, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def partial(self, coord: str) -> "Scalar":
        """Formal partial derivative; on the exp coordinate also differentiates the weight."""
        i = self.chart.index(coord)
        is_exp = coord == self.chart.exp_coord
        out: dict = {}
        for (e, w), c in self.terms.items():
            if e[i]:
                ee = list(e)
                ee[i] -= 1
                key = (tuple(ee), w)
                out[key] = out.get(key, 0) + c * e[i]
            if is_exp and w:
                key = (e, w)
                out[key] = out.get(key, 0) + c * w
        return Scalar(self.chart, {k: c for k, c in out.items() if c}, _trusted=True)

    # -- comparisons ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.const(self.chart, other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.chart == other.chart and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.chart, frozenset(self.terms.items())))
        return self._hash

    # -- chart changes --------------------------------------------------------
    def to_chart(self, chart: Chart) -> "Scalar":
        """Re-express on another chart by coordinate name (pullback/pushforward).

        Every coordinate that actually occurs must exist in the target chart,
        and exponential weights need the same exp coordinate there.
        """
        if chart == self.chart:
            return self
        src = self.chart.coords
        idx = {}
        for (e, w), _ in self.terms.items():
            for name, k in zip(src, e):
                if k and name not in idx:
                    idx[name] = chart.index(name)
            if w and chart.exp_coord != self.chart.exp_coord:
                raise ChartMismatch("exponential coordinate differs between charts")
        out = {}
        n = chart.dim
        for (e, w), c in self.terms.items():
            ee = [0] * n
            for name, k in zip(src, e):
                if k:
                    ee[idx[name]] = k
            out[(tuple(ee), w)] = c
        return Scalar(chart, out, _trusted=True)

    def partial_degrees(self, coords: Iterable[str]) -> set[int]:
        """Set of total degrees in the given coordinates over all terms."""
        ix = [self.chart.index(c) for c in coords]
        return {sum(e[i] for i in ix) for (e, _w) in self.terms}

    def weights(self) -> set[int]:
        return {w for (_e, w) in self.terms}

    def split_by_degree(self, coords: Iterable[str]) -> dict[tuple, "Scalar"]:
        """Group terms by exponent sub-vector in ``coords``; strips those exponents."""
        ix = [self.chart.index(c) for c in coords]
        groups: dict = {}
        for (e, w), c in self.terms.items():
            sub = tuple(e[i] for i in ix)
            ee = list(e)
            for i in ix:
                ee[i] = 0
            groups.setdefault(sub, {})[(tuple(ee), w)] = c
        return {k: Scalar(self.chart, v, _trusted=True) for k, v in groups.items()}

    def degree(self) -> int:
        """Total polynomial degree (−1 for the zero scalar)."""
        return max((sum(e) for (e, _w) in self.terms), default=-1)

    # -- printing -------------------------------------------------------------
    def sorted_terms(self):
        """Terms in canonical order: weight ascending, then exponents descending."""
        return sorted(self.terms.items(), key=lambda kv: (kv[0][1], tuple(-x for x in kv[0][0])))

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"


def _format_monomial(coords, exps) -> str:
    parts = []
    for name, k in zip(coords, exps):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _format_poly(coords, items) -> str:
    out = []
    for i, (exps, c) in enumerate(items):
        mono = _format_monomial(coords, exps)
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def format_scalar(a: Scalar) -> str:
    if not a.terms:
        return "0"
    coords = a.chart.coords
    blocks: dict[int, list] = {}
    for (e, w), c in a.sorted_terms():
        blocks.setdefault(w, []).append((e, c))
    pieces = []
    for w in sorted(blocks):
        poly = _format_poly(coords, blocks[w])
        if w == 0:
            pieces.append(poly)
        else:
            t = a.chart.exp_coord
            arg = t if w == 1 else (f"-{t}" if w == -1 else f"{w}*{t}")
            pieces.append(f"exp({arg})*({poly})")
    return " + ".join(pieces)


# -- parser -------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", column=pos + 1)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start + 1))
        pos = m.end()
    toks.append(("end", "", n + 1))
    return toks


class _ScalarParser:
    def __init__(self, text: str, chart: Chart):
        self.toks = _tokenize(text)
        self.i = 0
        self.chart = chart

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            raise ParseError(f"expected {value!r}, got {tok[1] or 'end of input'!r}", column=tok[2])
        return tok

    def parse(self) -> Scalar:
        if self.peek()[0] == "end":
            raise ParseError("empty scalar expression", column=1)
        out = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {tok[1]!r}", column=tok[2])
        return out

    def expr(self) -> Scalar:
        out = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> Scalar:
        out = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op[1] == "*":
                out = out * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise ParseError("division only by nonzero constants", column=op[2])
                out = out / rhs.constant_value()
        return out

    def unary(self) -> Scalar:
        tok = self.peek()
        if tok[1] == "-":
            self.take()
            return -self.unary()
        if tok[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Scalar:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num":
                raise ParseError("exponent must be a non-negative integer", column=tok[2])
            base = base ** int(tok[1])
        return base

    def atom(self) -> Scalar:
        tok = self.take()
        kind, val, col = tok
        if kind == "num":
            return Scalar.const(self.chart, int(val))
        if kind == "name":
            if val == "exp":
                self.expect("(")
                arg_start = self.peek()[2]
                arg = self.expr()
                self.expect(")")
                return self._exp_of(arg, arg_start)
            if val not in self.chart.coords:
                raise ParseError(f"undeclared coordinate {val!r}", column=col)
            return Scalar.var(self.chart, val)
        if val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {val or 'end of input'!r}", column=col)

    def _exp_of(self, arg: Scalar, col: int) -> Scalar:
        t = self.chart.exp_coord
        if t is None:
            raise ParseError("exp() needs a chart with an exponential coordinate", column=col)
        ti = self.chart.index(t)
        if len(arg.terms) != 1:
            raise ParseError(f"exp() argument must be k*{t}", column=col)
        (e, w), c = next(iter(arg.terms.items()))
        if w or c.denominator != 1 or e[ti] != 1 or sum(e) != 1:
            raise ParseError(f"exp() argument must be k*{t} with integer k", column=col)
        return Scalar.exp(self.chart, int(c))


def parse_scalar(text: str, chart: Chart) -> Scalar:
    return _ScalarParser(text, chart).parse()
