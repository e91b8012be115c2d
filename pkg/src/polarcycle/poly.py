"""Sparse multivariate polynomials over the rationals.

Polynomials live in a :class:`VarContext` (an ordered tuple of variable
names) and store a map from exponent tuples to nonzero ``Fraction``
coefficients.  All values are immutable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Exp = tuple

Number = Union[int, Fraction]


class PolyError(ValueError):
    code = "POLY_ERROR"


class ParseError(PolyError):
    """Syntax error in polynomial text; ``pos`` is the 0-based offset."""

    code = "PARSE_ERROR"

    def __init__(self, message: str, pos: int, src: str = ""):
        self.pos = pos
        self.src = src
        super().__init__(f"{message} at position {pos}")


class UnknownVariable(PolyError):
    code = "UNKNOWN_VARIABLE"


@dataclass(frozen=True)
class VarContext:
    """Ordered variable names.

    ``n_ambient`` is the length of the ambient block; when a cotangent
    block is present it follows the ambient block and has the same length.
    """

    names: tuple
    n_ambient: int = -1

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise PolyError(f"duplicate variable names in {names}")
        for nm in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", nm):
                raise PolyError(f"bad variable name {nm!r}")
        if self.n_ambient < 0:
            object.__setattr__(self, "n_ambient", len(names))
        extra = len(names) - self.n_ambient
        if extra not in (0, self.n_ambient):
            raise PolyError("cotangent block must match the ambient block in length")

    def __len__(self):
        return len(self.names)

    def __contains__(self, name):
        return name in self.names

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    @property
    def ambient(self) -> tuple:
        return self.names[: self.n_ambient]

    @property
    def cotangent(self) -> tuple:
        return self.names[self.n_ambient:]

    @property
    def has_cotangent(self) -> bool:
        return len(self.names) > self.n_ambient

    def with_cotangent(self, prefix: str = "w") -> "VarContext":
        """Ambient names followed by ``prefix0 .. prefixn``."""
        if self.has_cotangent:
            return self
        co = tuple(f"{prefix}{i}" for i in range(self.n_ambient))
        clash = set(co) & set(self.names)
        if clash:
            raise PolyError(f"cotangent names clash with ambient names: {sorted(clash)}")
        return VarContext(self.names + co, self.n_ambient)

    def ambient_context(self) -> "VarContext":
        return VarContext(self.ambient)

    def extend(self, extra: Sequence[str], front: bool = False) -> "VarContext":
        """Plain context with ``extra`` names added (no cotangent marker)."""
        extra = tuple(extra)
        names = extra + self.names if front else self.names + extra
        return VarContext(names)

    def zero_exp(self) -> Exp:
        return (0,) * len(self.names)


def grevlex_key(e: Exp) -> tuple:
    """Sort key; larger key means larger monomial in graded reverse lex."""
    return (sum(e),) + tuple(-x for x in reversed(e))


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: VarContext, terms: Mapping = None):
        self.ctx = ctx
        clean = {}
        if terms:
            n = len(ctx)
            for e, c in terms.items():
                if c:
                    e = tuple(e)
                    if len(e) != n:
                        raise PolyError(f"exponent {e} has wrong arity for {ctx.names}")
                    clean[e] = c if isinstance(c, Fraction) else Fraction(c)
        self.terms = clean
        self._hash = None

    # -- constructors ----------------------------------------------------
    @classmethod
    def _raw(cls, ctx: VarContext, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.ctx = ctx
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, ctx: VarContext, c: Number) -> "Polynomial":
        return cls(ctx, {ctx.zero_exp(): c})

    @classmethod
    def var(cls, ctx: VarContext, name: str) -> "Polynomial":
        i = ctx.index(name)
        e = [0] * len(ctx)
        e[i] = 1
        return cls._raw(ctx, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, ctx: VarContext, exp: Exp, c: Number = 1) -> "Polynomial":
        return cls(ctx, {tuple(exp): c})

    # -- predicates ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        return self.terms.get(self.ctx.zero_exp(), Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.ctx.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def variables(self) -> tuple:
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return tuple(self.ctx.names[i] for i in sorted(used))

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ctx != self.ctx:
                raise PolyError("polynomials live in different variable contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(self.ctx, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.ctx, out)

    __rmul__ = __mul__

    def scale(self, c: Number) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial._raw(self.ctx, {})
        return Polynomial._raw(self.ctx, {e: v * c for e, v in self.terms.items()})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("polynomial division by zero")
            return self.scale(Fraction(1) / Fraction(other))
        other = self._coerce(other)
        if other.is_constant() and other:
            return self.scale(1 / other.constant_value())
        return self.exact_div(other)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise PolyError("exponent must be a nonnegative integer")
        result = Polynomial.const(self.ctx, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div(self, d: "Polynomial") -> "Polynomial":
        """Quotient ``self / d``; raises if the division leaves a remainder."""
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead_e, lead_c = d.lead_term()
        rem = dict(self.terms)
        quo: dict = {}
        while rem:
            e = max(rem, key=grevlex_key)
            if any(a < b for a, b in zip(e, lead_e)):
                raise PolyError("inexact polynomial division")
            q_e = tuple(a - b for a, b in zip(e, lead_e))
            q_c = rem[e] / lead_c
            quo[q_e] = q_c
            for de, dc in d.terms.items():
                t = tuple(a + b for a, b in zip(q_e, de))
                v = rem.get(t, 0) - q_c * dc
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return Polynomial._raw(self.ctx, quo)

    # -- ordering / identity ---------------------------------------------
    def sorted_terms(self) -> list:
        """Terms in descending graded-reverse-lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def lead_term(self):
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        e = max(self.terms, key=grevlex_key)
        return e, self.terms[e]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(1 / self.lead_term()[1])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(self.ctx, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx.names, frozenset(self.terms.items())))
        return self._hash

    # -- calculus / evaluation -------------------------------------------
    def diff(self, name: str) -> "Polynomial":
        return partial_derivative(self, name)

    def evaluate(self, point: Mapping[str, Number] | Sequence[Number]) -> Fraction:
        """Value at a point given as a full coordinate sequence or name map."""
        if isinstance(point, Mapping):
            vals = [Fraction(point[nm]) for nm in self.ctx.names]
        else:
            vals = [Fraction(v) for v in point]
            if len(vals) != len(self.ctx):
                raise PolyError("point arity does not match context")
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def embed(self, ctx: VarContext) -> "Polynomial":
        """Same polynomial in a context containing all used variables."""
        if ctx == self.ctx:
            return self
        idx = [ctx.index(nm) for nm in self.ctx.names]
        n = len(ctx)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, k in zip(idx, e):
                if k:
                    ne[i] = k
            out[tuple(ne)] = c
        return Polynomial._raw(ctx, out)

    def restrict(self, ctx: VarContext) -> "Polynomial":
        """Move into a smaller context; every used variable must be present."""
        for nm in self.variables():
            if nm not in ctx:
                raise UnknownVariable(f"variable {nm!r} is not in the target context")
        src = [self.ctx.index(nm) for nm in ctx.names]
        out = {tuple(e[i] for i in src): c for e, c in self.terms.items()}
        return Polynomial._raw(ctx, out)

    # -- printing ----------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


def _format_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_poly(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    parts = []
    for e, c in p.sorted_terms():
        mono = "*".join(
            nm if k == 1 else f"{nm}^{k}" for nm, k in zip(p.ctx.names, e) if k
        )
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*/^()]))"
)


def _tokenize(src: str):
    pos = 0
    out = []
    n = len(src)
    while pos < n:
        if src[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", pos, src)
        start = m.start(m.lastindex)
        kind = m.lastgroup
        text = m.group(kind)
        if text == "**":
            text = "^"
        out.append((kind, text, start))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, src: str, ctx: VarContext):
        self.src = src
        self.ctx = ctx
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text):
        kind, t, pos = self.take()
        if t != text:
            raise ParseError(f"expected {text!r}", pos, self.src)

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0, self.src)
        p = self.expr()
        kind, t, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {t!r}", pos, self.src)
        return p

    def expr(self):
        p = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[1] in ("*", "/"):
            _, op, pos = self.take()
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise ParseError("division only by a nonzero constant", pos, self.src)
                p = p.scale(1 / q.constant_value())
        return p

    def unary(self):
        if self.peek()[1] in ("-", "+"):
            op = self.take()[1]
            p = self.unary()
            return -p if op == "-" else p
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, t, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer literal", pos, self.src)
            base = base ** int(t)
        return base

    def atom(self):
        kind, t, pos = self.take()
        if kind == "num":
            return Polynomial.const(self.ctx, int(t))
        if kind == "name":
            if t not in self.ctx:
                raise UnknownVariable(f"unknown identifier {t!r} at position {pos}")
            return Polynomial.var(self.ctx, t)
        if t == "(":
            p = self.expr()
            self.expect(")")
            return p
        if kind == "end":
            raise ParseError("unexpected end of input", pos, self.src)
        raise ParseError(f"unexpected token {t!r}", pos, self.src)


def parse_poly(src: str, ctx: VarContext) -> Polynomial:
    """Parse ``+ - * / ^`` expressions over integer literals and ``ctx`` names."""
    if not isinstance(src, str):
        raise ParseError("polynomial text must be a string", 0, str(src))
    return _Parser(src, ctx).parse()


# ---------------------------------------------------------------------------
# operations


def partial_derivative(p: Polynomial, name: str) -> Polynomial:
    i = p.ctx.index(name)
    out = {}
    for e, c in p.terms.items():
        k = e[i]
        if k:
            ne = e[:i] + (k - 1,) + e[i + 1:]
            out[ne] = c * k
    return Polynomial._raw(p.ctx, out)


def gradient(p: Polynomial, names: Iterable[str] = None) -> list:
    names = p.ctx.ambient if names is None else names
    return [partial_derivative(p, nm) for nm in names]


def substitute(
    p: Polynomial,
    bindings: Mapping[str, Polynomial | Number],
    ctx: VarContext = None,
) -> Polynomial:
    """Simultaneous substitution.

    Unbound variables are carried over by name into ``ctx`` (which defaults
    to ``p.ctx``); bound values must already live in ``ctx``.
    """
    ctx = p.ctx if ctx is None else ctx
    for nm in bindings:
        p.ctx.index(nm)
    images = []
    for nm in p.ctx.names:
        if nm in bindings:
            v = bindings[nm]
            if isinstance(v, Polynomial):
                if v.ctx != ctx:
                    v = v.embed(ctx) if set(v.ctx.names) <= set(ctx.names) else v.restrict(ctx)
            else:
                v = Polynomial.const(ctx, v)
            images.append(v)
        elif nm in ctx:
            images.append(Polynomial.var(ctx, nm))
        else:
            images.append(None)
    powers: list = [dict() for _ in images]

    def pw(i, k):
        cache = powers[i]
        if k not in cache:
            cache[k] = images[i] ** k
        return cache[k]

    total = Polynomial._raw(ctx, {})
    for e, c in p.terms.items():
        term = Polynomial.const(ctx, c)
        for i, k in enumerate(e):
            if k:
                if images[i] is None:
                    raise UnknownVariable(
                        f"variable {p.ctx.names[i]!r} is unbound and missing from target context"
                    )
                term = term * pw(i, k)
        total = total + term
    return total


def translate(p: Polynomial, point: Sequence[Number]) -> Polynomial:
    """``p(z + point)``, so that ``point`` moves to the origin."""
    binds = {
        nm: Polynomial.var(p.ctx, nm) + Fraction(v)
        for nm, v in zip(p.ctx.names, point)
        if v
    }
    return substitute(p, binds) if binds else p


def vanishing_order(p: Polynomial, point: Sequence[Number]) -> int:
    """Lowest total degree of ``p`` expanded around ``point``."""
    if p.is_zero():
        raise PolyError("vanishing order of the zero polynomial is undefined")
    if len(point) != len(p.ctx):
        raise PolyError("point arity does not match context")
    q = translate(p, point)
    return min(sum(e) for e in q.terms)


def linear_form(ctx: VarContext, coeffs: Sequence[Number], names: Sequence[str] = None) -> Polynomial:
    names = ctx.ambient if names is None else names
    out = Polynomial._raw(ctx, {})
    for nm, c in zip(names, coeffs):
        if c:
            out = out + Polynomial.var(ctx, nm).scale(c)
    return out


def as_point(ctx: VarContext, coords: Sequence) -> tuple:
    if len(coords) != ctx.n_ambient and len(coords) != len(ctx):
        raise PolyError("point arity does not match context")
    return tuple(Fraction(c) for c in coords)


def parse_rational(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise PolyError(f"bad rational literal {text!r}") from None
