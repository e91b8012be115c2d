"""Ordinary cycles: decomposition of schemes, multiplicities, intersection numbers."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterable, Sequence

from .ideal import (
    EMPTY,
    INFINITE,
    Ideal,
    NotZeroDimensional,
    is_isolated,
    krull_dim,
    local_multiplicity,
    membership,
    rational_points,
    same_variety,
    saturate,
    vspace_dim,
)
from .poly import Polynomial


class CycleError(ValueError):
    code = "CYCLE_ERROR"


class UnresolvedComponent(CycleError):
    code = "UNRESOLVED_COMPONENT"

    def __init__(self, residual: Ideal):
        super().__init__(f"components not covered by candidates remain: {residual}")
        self.residual = residual


class NonProper(CycleError):
    code = "NON_PROPER"


class NeedsTestPoint(CycleError):
    code = "NEEDS_TEST_POINT"


class GenericityFailure(CycleError):
    code = "GENERICITY_FAILURE"


class Cycle:
    """Formal sum of irreducible varieties with positive integer multiplicities.

    Components are stored by ideal; two ideals with the same zero set are
    the same component.
    """

    def __init__(self, components: Iterable = ()):
        self._items: list = []
        for P, m in components:
            self._add(P, m)

    def _add(self, P: Ideal, m: int):
        if m < 0:
            raise CycleError("cycle multiplicities must be nonnegative")
        if m == 0:
            return
        for k, (Q, n) in enumerate(self._items):
            if Q == P or same_variety(Q, P):
                self._items[k] = (Q, n + m)
                return
        self._items.append((P, m))

    def __iter__(self):
        return iter(sorted(self._items, key=lambda c: c[0].basis_strings()))

    def __len__(self):
        return len(self._items)

    def __bool__(self):
        return bool(self._items)

    def __add__(self, other: "Cycle") -> "Cycle":
        return Cycle(list(self._items) + list(other._items))

    def multiplicity(self, P: Ideal) -> int:
        for Q, n in self._items:
            if Q == P or same_variety(Q, P):
                return n
        return 0

    def components(self) -> list:
        return [P for P, _ in self]

    def __eq__(self, other):
        if not isinstance(other, Cycle):
            return NotImplemented
        if len(self) != len(other):
            return False
        return all(other.multiplicity(P) == m for P, m in self._items)

    def __repr__(self):
        if not self._items:
            return "0"
        return " + ".join(f"{m}*V{P}" for P, m in self)


# ---------------------------------------------------------------------------
# candidate harvesting


def _to_sympy(p: Polynomial):
    import sympy

    gens = sympy.symbols(p.ctx.names)
    data = {e: sympy.Rational(c.numerator, c.denominator) for e, c in p.terms.items()}
    return sympy.Poly.from_dict(data, *gens, domain="QQ")


def _from_sympy(q, ctx) -> Polynomial:
    terms = {}
    for e, c in q.as_dict().items():
        terms[tuple(int(x) for x in e)] = Fraction(int(c.p), int(c.q))
    return Polynomial(ctx, terms)


def irreducible_factors(p: Polynomial) -> list:
    """Distinct monic irreducible factors over the rationals, with exponents."""
    if p.is_constant():
        return []
    _, facs = _to_sympy(p).factor_list()
    return [(_from_sympy(q, p.ctx).monic(), k) for q, k in facs]


def split_components(I: Ideal) -> list:
    """Split ``V(I)`` along factorizations of basis elements.

    Returns ideals whose zero sets cover ``V(I)``; none of them has a
    reducible basis element or a basis element that is a proper power.
    """
    out: list = []
    stack = [I]
    while stack:
        J = stack.pop()
        if J.is_unit():
            continue
        for g in J.groebner():
            facs = irreducible_factors(g)
            if len(facs) > 1:
                stack.extend(J + q for q, _ in facs)
                break
            if facs and facs[0][1] > 1:
                stack.append(J + facs[0][0])
                break
        else:
            if not any(same_variety(J, K) for K in out):
                out.append(J)
    return out


# ---------------------------------------------------------------------------
# multiplicities


def gap_sheaf(I: Ideal, W: Ideal) -> Ideal:
    """Remove from ``I`` every component whose zero set lies in ``V(W)``."""
    return saturate(I, W)[0]


def _random_affine(ctx, rng: random.Random) -> Polynomial:
    p = Polynomial.const(ctx, rng.randint(-9, 9))
    for nm in ctx.names:
        p = p + rng.choice([c for c in range(-9, 10) if c]) * Polynomial.var(ctx, nm)
    return p


def _degree_ratio(I: Ideal, P: Ideal, d: int, rng: random.Random) -> int:
    """Multiplicity of ``I`` along ``P`` as ``deg(Q + H) / deg(P + H)``.

    ``Q`` is the part of ``I`` supported on ``V(P)`` and ``H`` consists of
    ``d`` random affine hyperplanes.
    """
    away = saturate(I, P)[0]
    Q = I if away.is_unit() else saturate(I, away)[0]
    H = [_random_affine(I.ctx, rng) for _ in range(d)]
    num = vspace_dim(Q + Ideal(H, I.ctx))
    den = vspace_dim(P + Ideal(H, I.ctx))
    if den == INFINITE or num == INFINITE or den == 0:
        raise GenericityFailure("random hyperplanes did not cut the component properly")
    if num % den:
        raise GenericityFailure(f"slice degrees {num} and {den} are not proportional")
    return num // den


def sample_points(P: Ideal, d: int, rng: random.Random, tries: int = 8) -> list:
    """Rational points of ``V(P)`` found by fixing ``d`` coordinates at small integers."""
    names = P.ctx.names
    found = []
    for _ in range(tries):
        fixed = rng.sample(range(len(names)), d)
        vals = {i: rng.randint(-3, 3) for i in fixed}
        H = [Polynomial.var(P.ctx, names[i]) - v for i, v in vals.items()]
        slice_ = P + Ideal(H, P.ctx)
        if krull_dim(slice_) != 0:
            continue
        found.extend(rational_points(slice_))
        if found:
            break
    return found


def _coordinate_slice(I: Ideal, P: Ideal, d: int, q: Sequence) -> int | None:
    """Multiplicity from a transverse coordinate slice through ``q``, or None."""
    names = I.ctx.names
    away = saturate(I, P)[0]
    if away.vanishes_at(q):
        return None
    for coords in itertools.combinations(range(len(names)), d):
        H = Ideal([Polynomial.var(I.ctx, names[i]) - q[i] for i in coords], I.ctx)
        try:
            if local_multiplicity(P + H, q) != 1:
                continue
            return local_multiplicity(I + H, q)
        except NotZeroDimensional:
            continue
    return None


def component_multiplicity(
    I: Ideal, P: Ideal, test_point: Sequence | None = None, seed: int = 0
) -> int:
    """Length of ``I`` at the generic point of the component ``V(P)``.

    Two certificates are computed and must agree: a coordinate slice
    through a rational point, and a degree ratio over random hyperplanes.
    When no rational point is known or found the degree ratio is checked
    against a second independent draw.
    """
    if not all(membership(g, P, "radical") for g in I.gens):
        return 0
    d = krull_dim(P)
    if d == EMPTY:
        return 0
    rng = random.Random(seed)
    if d == 0:
        away = saturate(I, P)[0]
        Q = I if away.is_unit() else saturate(I, away)[0]
        num, den = vspace_dim(Q), vspace_dim(P)
        if num % den:
            raise GenericityFailure("point multiplicity is not an integer")
        return num // den
    points = [tuple(Fraction(c) for c in test_point)] if test_point else []
    if not points:
        points = sample_points(P, d, rng)
    sliced = None
    for q in points:
        sliced = _coordinate_slice(I, P, d, q)
        if sliced is not None:
            break
    first = _degree_ratio(I, P, d, rng)
    second = sliced if sliced is not None else _degree_ratio(I, P, d, rng)
    if first != second:
        raise GenericityFailure(
            f"multiplicity certificates disagree ({first} vs {second}) along {P}"
        )
    return first


def cycle_of_ideal(
    I: Ideal, cands: Iterable[Ideal] = (), test_points: dict | None = None, seed: int = 0
) -> Cycle:
    """Top-dimensional cycle of ``V(I)``.

    The given candidates are tried first.  Whatever they leave uncovered
    is split by factorization and the pieces are tried as candidates too.
    """
    d = krull_dim(I)
    if d == EMPTY:
        return Cycle()
    test_points = test_points or {}
    accepted: list = []

    def consider(P: Ideal):
        if krull_dim(P) != d:
            return
        if any(same_variety(P, Q) for Q, _ in accepted):
            return
        m = component_multiplicity(I, P, test_points.get(id(P)), seed)
        if m > 0:
            accepted.append((P, m))

    def residual() -> Ideal:
        R = I
        for P, _ in accepted:
            R = saturate(R, P)[0]
        return R

    for P in cands:
        consider(P)
    R = residual()
    if krull_dim(R) != EMPTY and krull_dim(R) >= d:
        for P in split_components(R):
            consider(P)
        R = residual()
        if krull_dim(R) != EMPTY and krull_dim(R) >= d:
            raise UnresolvedComponent(R)
    return Cycle(accepted)


def intersection_number_at(C: Cycle, h: Polynomial, point: Sequence) -> int:
    """``(C . V(h))_p`` for a cycle meeting ``V(h)`` properly at ``p``."""
    total = 0
    for P, m in C:
        J = P + h
        if not J.vanishes_at(point):
            continue
        if not is_isolated(J, point):
            raise NonProper(f"component {P} lies in V({h}) near the point")
        total += m * local_multiplicity(J, point)
    return total
