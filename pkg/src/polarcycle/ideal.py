"""Groebner bases and ideal operations over the rationals.

Buchberger's algorithm with the Gebauer-Moeller pair update (which
subsumes the coprime-lead and chain criteria) and the normal selection
strategy (smallest lcm first, sugar degree breaks ties).  Everything
else (quotients, saturation, elimination, dimensions, local
multiplicities) is built on reduced bases.
"""

from __future__ import annotations

import contextlib
import contextvars
import heapq
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import Polynomial, PolyError, VarContext, grevlex_key

EMPTY = float("-inf")
"""Dimension of the empty set."""

INFINITE = math.inf
"""Vector-space dimension of a positive-dimensional quotient."""

DEFAULT_BUDGET = 200_000

_budget = contextvars.ContextVar("polarcycle_budget", default=DEFAULT_BUDGET)


class BudgetExceeded(RuntimeError):
    """The S-pair budget of a single Groebner computation ran out."""

    code = "BUDGET_EXCEEDED"


class NotZeroDimensional(ValueError):
    code = "NOT_ZERO_DIMENSIONAL"


def get_budget() -> int:
    return _budget.get()


def set_budget(n: int) -> None:
    if n <= 0:
        raise ValueError("budget must be positive")
    _budget.set(int(n))


@contextlib.contextmanager
def budget(n: int):
    token = _budget.set(int(n))
    try:
        yield
    finally:
        _budget.reset(token)


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex``, ``lex``, or ``elim`` with the first ``k`` variables eliminated.

    The elimination order compares the first block by grevlex and breaks
    ties by grevlex on the rest.
    """

    kind: str = "grevlex"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.k < 1:
            raise ValueError("elimination block must have at least one variable")

    def check(self, nvars: int):
        if self.kind == "elim" and not 1 <= self.k < nvars:
            raise ValueError(f"elimination block size {self.k} invalid for {nvars} variables")

    def sortkey(self):
        """Key function under which smaller means larger monomial."""
        if self.kind == "grevlex":
            return lambda e: (-sum(e),) + e[::-1]
        if self.kind == "lex":
            return lambda e: tuple(-x for x in e)
        k = self.k

        def key(e):
            a, b = e[:k], e[k:]
            return (-sum(a),) + a[::-1] + (-sum(b),) + b[::-1]

        return key

    def __str__(self):
        return f"elim({self.k})" if self.kind == "elim" else self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elimination(k: int) -> MonomialOrder:
    return MonomialOrder("elim", k)


# ---------------------------------------------------------------------------
# Buchberger core on raw term dicts


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


class _Engine:
    def __init__(self, nvars: int, order: MonomialOrder):
        order.check(nvars)
        self.n = nvars
        raw = order.sortkey()
        cache: dict = {}

        def sk(e):
            v = cache.get(e)
            if v is None:
                v = cache[e] = raw(e)
            return v

        self.sk = sk

    def lead(self, f: dict):
        return min(f, key=self.sk)

    def monic(self, f: dict) -> dict:
        c = f[self.lead(f)]
        if c == 1:
            return f
        inv = 1 / c
        return {e: v * inv for e, v in f.items()}

    def reduce(self, f: dict, basis: list, full: bool = True) -> dict:
        """Remainder of ``f`` modulo monic polynomials ``basis`` of (lead, terms)."""
        sk = self.sk
        work = dict(f)
        heap = [(sk(e), e) for e in work]
        heapq.heapify(heap)
        rem = {}
        while heap:
            _, e = heapq.heappop(heap)
            c = work.pop(e, None)
            if c is None:
                continue
            for le, g in basis:
                if _divides(le, e):
                    q = tuple(x - y for x, y in zip(e, le))
                    for ge, gc in g.items():
                        if ge == le:
                            continue
                        t = tuple(x + y for x, y in zip(q, ge))
                        v = work.get(t)
                        if v is None:
                            work[t] = -c * gc
                            heapq.heappush(heap, (sk(t), t))
                        else:
                            v -= c * gc
                            if v:
                                work[t] = v
                            else:
                                del work[t]
                    break
            else:
                rem[e] = c
                if not full:
                    rem.update(work)
                    return rem
        return rem

    def spoly(self, f, lf, g, lg):
        m = _lcm(lf, lg)
        qf = tuple(x - y for x, y in zip(m, lf))
        qg = tuple(x - y for x, y in zip(m, lg))
        out = {}
        for e, c in f.items():
            out[tuple(x + y for x, y in zip(e, qf))] = c
        for e, c in g.items():
            t = tuple(x + y for x, y in zip(e, qg))
            v = out.get(t, 0) - c
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return out

    def groebner(self, gens: list) -> list:
        limit = get_budget()
        sk = self.sk
        polys: list = []  # (lead, terms, sugar)
        active: list = []
        pairs: dict = {}  # (i, j) -> lcm
        zero = (0,) * self.n

        def basis():
            # smallest leads first: cheaper reducers
            out = [(polys[i][0], polys[i][1]) for i in active]
            out.sort(key=lambda t: sk(t[0]), reverse=True)
            return out

        def add(f: dict, sugar: int):
            if zero in f and len(f) == 1:
                raise _Unit
            f = self.monic(f)
            lf = self.lead(f)
            h = len(polys)
            polys.append((lf, f, sugar))
            # Gebauer-Moeller update
            cand = [(i, _lcm(polys[i][0], lf)) for i in active]
            kept = []
            for idx, (i, m) in enumerate(cand):
                if _coprime(polys[i][0], lf):
                    kept.append((i, m, True))
                    continue
                dominated = False
                for j, m2 in itertools.chain(
                    ((j, m2) for j, m2 in cand[idx + 1:]),
                    ((j, m2) for j, m2, _ in kept),
                ):
                    if _divides(m2, m):
                        dominated = True
                        break
                if not dominated:
                    kept.append((i, m, False))
            for (i, j), m in list(pairs.items()):
                if (
                    _divides(lf, m)
                    and _lcm(polys[i][0], lf) != m
                    and _lcm(polys[j][0], lf) != m
                ):
                    del pairs[(i, j)]
            for i, m, cop in kept:
                if not cop:
                    pairs[(i, h)] = m
            active[:] = [i for i in active if not _divides(lf, polys[i][0])]
            active.append(h)

        try:
            for g in sorted(self.autoreduce(gens), key=lambda g: sk(self.lead(g)), reverse=True):
                add(g, max(sum(e) for e in g))
            steps = 0
            while pairs:
                steps += 1
                if steps > limit:
                    raise BudgetExceeded(f"Groebner basis exceeded the budget of {limit} S-pairs")

                def pkey(item):
                    (i, j), m = item
                    si = polys[i][2] + sum(m) - sum(polys[i][0])
                    sj = polys[j][2] + sum(m) - sum(polys[j][0])
                    # smallest lcm first; sugar breaks ties
                    return (tuple(-v for v in sk(m)), max(si, sj), j, i)

                (i, j), m = min(pairs.items(), key=pkey)
                sugar = pkey(((i, j), m))[1]
                del pairs[(i, j)]
                s = self.spoly(polys[i][1], polys[i][0], polys[j][1], polys[j][0])
                if not s:
                    continue
                r = self.reduce(s, basis())
                if r:
                    add(r, sugar)
        except _Unit:
            return [{zero: Fraction(1)}]
        return self.interreduce([polys[i][1] for i in active])

    def autoreduce(self, fs: list) -> list:
        """Reduce each input by its predecessors until the list is stable."""
        cur = [self.monic(f) for f in fs if f]
        while True:
            nxt = []
            for f in cur:
                r = self.reduce(f, [(self.lead(g), g) for g in nxt]) if nxt else f
                if r:
                    nxt.append(self.monic(r))
            if nxt == cur:
                return cur
            cur = nxt

    def interreduce(self, fs: list) -> list:
        fs = [self.monic(f) for f in fs if f]
        items = sorted(((self.lead(f), f) for f in fs), key=lambda t: self.sk(t[0]))
        minimal = []
        for le, f in reversed(items):
            if not any(_divides(l2, le) for l2, _ in minimal):
                minimal.append((le, f))
        out = []
        for idx, (le, f) in enumerate(minimal):
            others = [t for k, t in enumerate(minimal) if k != idx]
            tail = {e: c for e, c in f.items() if e != le}
            r = self.reduce(tail, others) if tail else {}
            r[le] = Fraction(1)
            out.append(r)
        out.sort(key=lambda f: self.sk(self.lead(f)))
        return out


class _Unit(Exception):
    pass


# ---------------------------------------------------------------------------
# Ideal


class Ideal:
    """Finitely generated ideal with a write-once reduced basis cache per order."""

    __slots__ = ("ctx", "gens", "_gb", "_hash")

    def __init__(self, gens: Iterable[Polynomial], ctx: VarContext = None):
        gens = list(gens)
        if ctx is None:
            if not gens:
                raise PolyError("an ideal with no generators needs an explicit context")
            ctx = gens[0].ctx
        for g in gens:
            if g.ctx != ctx:
                raise PolyError("ideal generators must share one variable context")
        self.ctx = ctx
        self.gens = tuple(g for g in gens if g)
        self._gb: dict = {}
        self._hash = None

    @classmethod
    def unit(cls, ctx: VarContext) -> "Ideal":
        return cls([Polynomial.const(ctx, 1)], ctx)

    @classmethod
    def zero(cls, ctx: VarContext) -> "Ideal":
        return cls([], ctx)

    @classmethod
    def maximal(cls, ctx: VarContext, point: Sequence) -> "Ideal":
        """Ideal of a rational point given in the first ``len(point)`` variables."""
        gens = [
            Polynomial.var(ctx, nm) - Fraction(c) for nm, c in zip(ctx.names, point)
        ]
        return cls(gens, ctx)

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.gens) or '0'})"

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.groebner()) + ")"

    # -- bases -------------------------------------------------------------
    def groebner(self, order: MonomialOrder = GREVLEX) -> tuple:
        gb = self._gb.get(order)
        if gb is None:
            eng = _Engine(len(self.ctx), order)
            raw = eng.groebner([g.terms for g in self.gens])
            gb = tuple(Polynomial._raw(self.ctx, f) for f in raw)
            self._gb[order] = gb
        return gb

    def normal_form(self, p: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
        if p.ctx != self.ctx:
            p = p.embed(self.ctx)
        eng = _Engine(len(self.ctx), order)
        basis = [(eng.lead(g.terms), g.terms) for g in self.groebner(order)]
        return Polynomial._raw(self.ctx, eng.reduce(p.terms, basis))

    def leading_exponents(self, order: MonomialOrder = GREVLEX) -> list:
        eng = _Engine(len(self.ctx), order)
        return [eng.lead(g.terms) for g in self.groebner(order)]

    # -- predicates --------------------------------------------------------
    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self) -> bool:
        return not self.gens

    def __contains__(self, p: Polynomial) -> bool:
        return membership(p, self, "exact")

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(g in self for g in other.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ctx == other.ctx and self.groebner() == other.groebner()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx.names, self.groebner()))
        return self._hash

    def vanishes_at(self, point: Sequence) -> bool:
        pt = [Fraction(c) for c in point]
        if len(pt) < len(self.ctx):
            pt += [Fraction(0)] * (len(self.ctx) - len(pt))
        return all(g.evaluate(pt) == 0 for g in self.gens)

    # -- constructions -----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Polynomial):
            other = Ideal([other], self.ctx)
        if other.ctx != self.ctx:
            raise PolyError("ideals live in different variable contexts")
        return Ideal(self.gens + other.gens, self.ctx)

    def __mul__(self, other: "Ideal") -> "Ideal":
        if other.ctx != self.ctx:
            raise PolyError("ideals live in different variable contexts")
        return Ideal([a * b for a in self.gens for b in other.gens], self.ctx)

    def embed(self, ctx: VarContext) -> "Ideal":
        if ctx == self.ctx:
            return self
        return Ideal([g.embed(ctx) for g in self.gens], ctx)

    def restrict(self, ctx: VarContext) -> "Ideal":
        if ctx == self.ctx:
            return self
        return Ideal([g.restrict(ctx) for g in self.gens], ctx)

    def basis_strings(self, order: MonomialOrder = GREVLEX) -> list:
        return [str(g) for g in self.groebner(order)]


# ---------------------------------------------------------------------------
# spec-level operations


def groebner_basis(I: Ideal, order: MonomialOrder = GREVLEX) -> list:
    return list(I.groebner(order))


def membership(p: Polynomial, I: Ideal, mode: str = "exact") -> bool:
    """Exact ideal membership, or radical membership via the Rabinowitsch trick."""
    if p.ctx != I.ctx:
        p = p.embed(I.ctx)
    if mode == "exact":
        return I.normal_form(p).is_zero()
    if mode != "radical":
        raise ValueError(f"unknown membership mode {mode!r}")
    if p.is_zero() or I.normal_form(p).is_zero():
        return True
    if I.is_unit():
        return True
    aux = _fresh(I.ctx, "_Y")
    ext = I.ctx.extend([aux])
    y = Polynomial.var(ext, aux)
    J = Ideal([g.embed(ext) for g in I.gens] + [1 - y * p.embed(ext)], ext)
    return J.is_unit()


def radical_contains(I: Ideal, J: Ideal) -> bool:
    """``V(I) <= V(J)``, i.e. every generator of ``J`` lies in the radical of ``I``."""
    return all(membership(g, I, "radical") for g in J.gens)


def same_variety(I: Ideal, J: Ideal) -> bool:
    return radical_contains(I, J) and radical_contains(J, I)


def _fresh(ctx: VarContext, base: str) -> str:
    name = base
    k = 0
    while name in ctx:
        k += 1
        name = f"{base}{k}"
    return name


def intersection(I: Ideal, J: Ideal) -> Ideal:
    if I.ctx != J.ctx:
        raise PolyError("ideals live in different variable contexts")
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    if I.is_zero() or J.is_zero():
        return Ideal.zero(I.ctx)
    aux = _fresh(I.ctx, "_T")
    ext = I.ctx.extend([aux], front=True)
    T = Polynomial.var(ext, aux)
    gens = [T * g.embed(ext) for g in I.gens] + [(1 - T) * g.embed(ext) for g in J.gens]
    gb = Ideal(gens, ext).groebner(elimination(1))
    keep = [g.restrict(I.ctx) for g in gb if g.degree_in(aux) <= 0]
    return Ideal(keep, I.ctx)


def _quotient_principal(I: Ideal, h: Polynomial) -> Ideal:
    if h.is_zero():
        return Ideal.unit(I.ctx)
    if h.is_constant() or I.is_zero():
        return I
    if membership(h, I):
        return Ideal.unit(I.ctx)
    meet = intersection(I, Ideal([h], I.ctx))
    return Ideal([g.exact_div(h) for g in meet.groebner()], I.ctx)


# above this many standard monomials the dense kernel is slower than elimination
_FINITE_QUOTIENT_LIMIT = 400


def _quotient_finite(I: Ideal, J: Ideal, basis: list) -> Ideal:
    """``I : J`` for zero-dimensional ``I`` by linear algebra on ``Q[vars]/I``.

    A class ``f`` lies in the quotient iff ``h * f`` reduces to zero for every
    generator ``h`` of ``J``, so the quotient is ``I`` plus the common kernel of
    the multiplication maps written in the standard monomial basis.
    """
    import sympy

    rows = []
    for h in J.groebner():
        images = [I.normal_form(h * Polynomial.monomial(I.ctx, b)).terms for b in basis]
        rows.extend([img.get(e, 0) for img in images] for e in basis)
    extra = []
    for v in sympy.Matrix(rows).nullspace():
        coeffs = {b: Fraction(int(c.p), int(c.q)) for b, c in zip(basis, v) if c}
        extra.append(Polynomial(I.ctx, coeffs))
    return Ideal(list(I.groebner()) + extra, I.ctx)


def ideal_quotient(I: Ideal, J: Ideal) -> Ideal:
    """``I : J`` as the intersection of the principal quotients ``I : h``.

    Zero-dimensional ``I`` of moderate length takes a linear-algebra shortcut.
    """
    if I.ctx != J.ctx:
        raise PolyError("ideals live in different variable contexts")
    if J.is_zero():
        return Ideal.unit(I.ctx)
    if I.is_unit() or J.is_unit():
        return I
    d = vspace_dim(I)
    if d != INFINITE and d <= _FINITE_QUOTIENT_LIMIT:
        return _quotient_finite(I, J, standard_monomials(I))
    result = None
    for h in J.groebner():
        q = _quotient_principal(I, h)
        result = q if result is None else intersection(result, q)
        if result.is_zero():
            break
    return result


def saturate(I: Ideal, J: Ideal) -> tuple:
    """Stable ideal of ``I : J^k`` and the first ``k`` at which the chain stops."""
    k = 0
    cur = I
    while True:
        nxt = ideal_quotient(cur, J)
        if nxt == cur:
            return cur, k
        cur = nxt
        k += 1


def eliminate(I: Ideal, keep: Iterable[str]) -> Ideal:
    """``I`` intersected with the subring of the kept variables.

    The result lives in the context of the kept variables (in their
    original relative order).
    """
    keep = set(keep)
    for nm in keep:
        I.ctx.index(nm)
    kept = tuple(nm for nm in I.ctx.names if nm in keep)
    gone = tuple(nm for nm in I.ctx.names if nm not in keep)
    if not gone:
        return I
    sub = VarContext(kept)
    if not kept:
        raise PolyError("cannot eliminate every variable")
    if I.is_unit():
        return Ideal.unit(sub)
    perm = VarContext(gone + kept)
    gb = Ideal([g.embed(perm) for g in I.gens], perm).groebner(elimination(len(gone)))
    out = [g.restrict(sub) for g in gb if all(g.degree_in(nm) <= 0 for nm in gone)]
    return Ideal(out, sub)


def _independent_dim(leads: list, n: int) -> int:
    supports = [frozenset(i for i, x in enumerate(e) if x) for e in leads]
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            s = set(subset)
            if all(not sup <= s for sup in supports):
                return size
    return 0


def krull_dim(I: Ideal):
    """Krull dimension of ``Q[vars]/I``; ``EMPTY`` for the unit ideal."""
    if I.is_unit():
        return EMPTY
    if I.is_zero():
        return len(I.ctx)
    return _independent_dim(I.leading_exponents(), len(I.ctx))


def vspace_dim(I: Ideal):
    """Number of standard monomials, or ``INFINITE`` when not zero-dimensional."""
    if I.is_unit():
        return 0
    leads = I.leading_exponents()
    n = len(I.ctx)
    bounds = [None] * n
    for e in leads:
        nz = [i for i, x in enumerate(e) if x]
        if len(nz) == 1:
            i = nz[0]
            bounds[i] = e[i] if bounds[i] is None else min(bounds[i], e[i])
    if any(b is None for b in bounds):
        return INFINITE
    count = 0
    for e in itertools.product(*(range(b) for b in bounds)):
        if not any(_divides(le, e) for le in leads):
            count += 1
    return count


def standard_monomials(I: Ideal) -> list:
    if vspace_dim(I) == INFINITE:
        raise NotZeroDimensional("ideal is not zero-dimensional")
    leads = I.leading_exponents()
    bounds = [max((e[i] for e in leads), default=0) + 1 for i in range(len(I.ctx))]
    out = [
        e for e in itertools.product(*(range(b) for b in bounds))
        if not any(_divides(le, e) for le in leads)
    ]
    out.sort(key=grevlex_key)
    return out


def point_ideal(ctx: VarContext, point: Sequence) -> Ideal:
    if len(point) != len(ctx):
        raise PolyError("point arity does not match context")
    return Ideal.maximal(ctx, point)


def away_part(I: Ideal, point: Sequence) -> Ideal:
    """``I : m_p^infinity``; ``p`` lies outside its zero set iff ``p`` is isolated."""
    return saturate(I, point_ideal(I.ctx, point))[0]


def is_isolated(I: Ideal, point: Sequence) -> bool:
    """``p`` is an isolated point of ``V(I)`` or does not lie on it."""
    if not I.vanishes_at(point):
        return True
    return not away_part(I, point).vanishes_at(point)


def local_part(I: Ideal, point: Sequence) -> Ideal:
    """The primary component of ``I`` at an isolated point (double saturation)."""
    if not I.vanishes_at(point):
        return Ideal.unit(I.ctx)
    J = away_part(I, point)
    if J.vanishes_at(point):
        raise NotZeroDimensional(f"point {tuple(str(c) for c in point)} is not isolated in V(I)")
    return saturate(I, J)[0]


def local_multiplicity(I: Ideal, point: Sequence) -> int:
    """Length of the local ring of ``Q[vars]/I`` at a rational point."""
    point = [Fraction(c) for c in point]
    if not I.vanishes_at(point):
        return 0
    Ip = local_part(I, point)
    d = vspace_dim(Ip)
    if d == INFINITE:
        raise NotZeroDimensional("local component is not zero-dimensional")
    return d


def tangent_cone(I: Ideal, point: Sequence) -> Ideal:
    """Ideal of lowest-degree forms of ``I`` translated to the origin.

    Uses the deformation ``f(p + s*z)``: saturate by ``s`` and set ``s = 0``.
    """
    from .poly import substitute

    aux = _fresh(I.ctx, "_S")
    ext = I.ctx.extend([aux])
    s = Polynomial.var(ext, aux)
    binds = {
        nm: Polynomial.var(ext, nm) * s + Fraction(c)
        for nm, c in zip(I.ctx.names, point)
    }
    gens = [substitute(g, binds, ext) for g in I.gens]
    J, _ = saturate(Ideal(gens, ext), Ideal([s], ext))
    at_zero = [substitute(g, {aux: 0}, ext).restrict(I.ctx) for g in J.groebner()]
    return Ideal(at_zero, I.ctx)


def local_dim(I: Ideal, point: Sequence):
    """Dimension of the germ of ``V(I)`` at ``point`` (``EMPTY`` off the set)."""
    if not I.vanishes_at(point):
        return EMPTY
    return krull_dim(tangent_cone(I, point))


def univariate_rational_roots(p: Polynomial) -> list:
    """Distinct rational roots of a polynomial in at most one variable."""
    import sympy

    used = p.variables()
    if len(used) > 1:
        raise PolyError("expected a univariate polynomial")
    if not used:
        return []
    i = p.ctx.index(used[0])
    x = sympy.Symbol("x")
    poly = sympy.Poly.from_dict(
        {(e[i],): sympy.Rational(c.numerator, c.denominator) for e, c in p.terms.items()},
        x,
        domain="QQ",
    )
    roots = poly.ground_roots()
    return sorted(Fraction(int(r.p), int(r.q)) for r in roots)


def rational_points(I: Ideal) -> list:
    """All rational points of a zero-dimensional ideal, sorted."""
    if I.is_unit():
        return []
    if vspace_dim(I) == INFINITE:
        raise NotZeroDimensional("rational_points needs a zero-dimensional ideal")
    names = I.ctx.names
    out = []

    def solve(J: Ideal, fixed: dict):
        if J.is_unit():
            return
        free = [nm for nm in reversed(names) if nm not in fixed]
        if not free:
            out.append(tuple(fixed[nm] for nm in names))
            return
        v = free[0]
        gb = J.groebner(LEX)
        uni = [g for g in gb if set(g.variables()) <= {v}]
        if not uni:
            raise NotZeroDimensional("lex basis lacks an eliminant")
        for r in univariate_rational_roots(uni[0]):
            nxt = dict(fixed)
            nxt[v] = r
            solve(J + (Polynomial.var(J.ctx, v) - r), nxt)

    solve(I, {})
    return sorted(set(out))
