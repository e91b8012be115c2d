"""Conormal and relative conormal ideals in the cotangent coordinates ``(z, w)``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .ideal import EMPTY, Ideal, eliminate, krull_dim, saturate
from .poly import Polynomial, VarContext, gradient, substitute


class PresentationError(ValueError):
    code = "PRESENTATION_ERROR"


class ConstantOnClosure(ValueError):
    code = "CONSTANT_ON_CLOSURE"


@dataclass
class ConormalIdeal:
    """Ideal of a conormal (or relative conormal) variety, with provenance tag."""

    ideal: Ideal
    stratum: str = ""
    relative_to: Polynomial | None = None
    saturation_indices: list = field(default_factory=list)

    @property
    def ctx(self) -> VarContext:
        return self.ideal.ctx


def determinant(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        sub = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * determinant(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return rows[0][0] * 0
    return total


def minors(rows: Sequence[Sequence[Polynomial]], k: int) -> list:
    """Nonzero ``k x k`` minors of a polynomial matrix."""
    nrows, ncols = len(rows), len(rows[0]) if rows else 0
    if k > min(nrows, ncols) or k <= 0:
        return []
    out = []
    for ri in itertools.combinations(range(nrows), k):
        for ci in itertools.combinations(range(ncols), k):
            d = determinant([[rows[r][c] for c in ci] for r in ri])
            if not d.is_zero():
                out.append(d)
    return out


def cotangent_context(ctx: VarContext) -> VarContext:
    return ctx if ctx.has_cotangent else ctx.with_cotangent()


def _covector_row(zw: VarContext) -> list:
    return [Polynomial.var(zw, nm) for nm in zw.cotangent]


def _gradient_row(p: Polynomial, zw: VarContext) -> list:
    amb = zw.ambient
    return [q.embed(zw) for q in gradient(p, amb)]


def _embed_all(polys: Iterable[Polynomial], zw: VarContext) -> list:
    return [p.embed(zw) for p in polys]


def _gap(I: Ideal, walls: Iterable[Ideal], indices: list) -> Ideal:
    for W in walls:
        I, k = saturate(I, W.embed(I.ctx))
        indices.append(k)
    return I


def presentation_singular_ideal(closure_gens: Sequence[Polynomial], ctx: VarContext) -> Ideal:
    """Points where the Jacobian of the presentation drops rank."""
    c = len(closure_gens)
    if c == 0:
        return Ideal.unit(ctx)
    jac = [gradient(h, ctx.ambient) for h in closure_gens]
    return Ideal(list(closure_gens) + minors(jac, c), ctx)


def conormal_ideal(
    closure_gens: Sequence[Polynomial],
    sing_ideals: Iterable[Ideal] = (),
    ctx: VarContext | None = None,
    stratum: str = "",
) -> ConormalIdeal:
    """Closure of the conormal space of the smooth part of ``V(closure_gens)``.

    ``closure_gens`` must present the closure as a set-theoretic complete
    intersection.  ``sing_ideals`` are removed by gap sheaves, after the
    locus where the presentation is singular.
    """
    if ctx is None:
        if not closure_gens:
            raise PresentationError("an ambient stratum needs an explicit context")
        ctx = closure_gens[0].ctx
    amb = ctx.ambient_context() if ctx.has_cotangent else ctx
    zw = cotangent_context(amb)
    gens = [h.restrict(amb) if h.ctx != amb else h for h in closure_gens]
    c = len(gens)
    rows = [_covector_row(zw)] + [_gradient_row(h, zw) for h in gens]
    I = Ideal(_embed_all(gens, zw) + minors(rows, c + 1), zw)
    indices: list = []
    walls = [presentation_singular_ideal(gens, amb)] + list(sing_ideals)
    I = _gap(I, walls, indices)
    if I.is_unit() or krull_dim(I) != len(amb):
        raise PresentationError(
            f"closure presentation of stratum {stratum or '?'} does not give a conormal variety"
        )
    return ConormalIdeal(I, stratum, None, indices)


def constant_on(closure_gens: Sequence[Polynomial], f: Polynomial) -> bool:
    """``f`` takes finitely many values on ``V(closure_gens)``."""
    ctx = f.ctx
    aux = "_U"
    while aux in ctx:
        aux += "_"
    ext = ctx.extend([aux])
    u = Polynomial.var(ext, aux)
    J = Ideal([h.embed(ext) for h in closure_gens] + [u - f.embed(ext)], ext)
    if J.is_unit():
        return True
    return not eliminate(J, [aux]).is_zero()


def relative_critical_ideal(closure_gens: Sequence[Polynomial], f: Polynomial) -> Ideal:
    """Critical locus of ``f`` restricted to the smooth part of the closure."""
    ctx = f.ctx
    c = len(closure_gens)
    jac = [gradient(h, ctx.ambient) for h in closure_gens] + [gradient(f, ctx.ambient)]
    return Ideal(list(closure_gens) + minors(jac, c + 1), ctx)


def relative_conormal_ideal(
    closure_gens: Sequence[Polynomial],
    sing_ideals: Iterable[Ideal],
    f: Polynomial,
    stratum: str = "",
) -> ConormalIdeal:
    """Closure of the conormal space of ``f`` restricted to the stratum."""
    amb = f.ctx
    gens = list(closure_gens)
    if constant_on(gens, f):
        raise ConstantOnClosure(f"{f} is constant on the closure of stratum {stratum or '?'}")
    zw = cotangent_context(amb)
    c = len(gens)
    rows = [_covector_row(zw)] + [_gradient_row(h, zw) for h in gens] + [_gradient_row(f, zw)]
    I = Ideal(_embed_all(gens, zw) + minors(rows, c + 2), zw)
    indices: list = []
    walls = [presentation_singular_ideal(gens, amb)] + list(sing_ideals)
    walls.append(relative_critical_ideal(gens, f))
    I = _gap(I, walls, indices)
    return ConormalIdeal(I, stratum, f, indices)


def im_d(g: Polynomial, zw: VarContext | None = None) -> Ideal:
    """Graph of the differential of ``g``: ``(w_i - dg/dz_i)``."""
    zw = zw or cotangent_context(g.ctx)
    amb = zw.ambient_context()
    g = g if g.ctx == amb else g.restrict(amb)
    gens = [
        Polynomial.var(zw, w) - dg.embed(zw)
        for w, dg in zip(zw.cotangent, gradient(g, amb.names))
    ]
    return Ideal(gens, zw)


def intersect_im_d(C: ConormalIdeal | Ideal, g: Polynomial) -> Ideal:
    """Ambient ideal of ``C`` meeting the graph of ``dg``, by substituting ``w = grad g``."""
    I = C.ideal if isinstance(C, ConormalIdeal) else C
    zw = I.ctx
    amb = zw.ambient_context()
    grad = gradient(g.restrict(amb) if g.ctx != amb else g, amb.names)
    binds = {w: dg for w, dg in zip(zw.cotangent, grad)}
    gens = [substitute(p, binds, zw).restrict(amb) for p in I.groebner()]
    return Ideal(gens, amb)


def critical_locus(conormals: Iterable, f: Polynomial) -> list:
    """Non-unit ambient ideals whose union is the closed critical locus of ``f``.

    ``conormals`` holds ``(ConormalIdeal, visible)`` pairs; invisible
    strata are skipped.
    """
    out = []
    for C, visible in conormals:
        if not visible:
            continue
        J = intersect_im_d(C, f)
        if not J.is_unit():
            out.append(J)
    return out


def pair_critical_locus(conormals: Iterable, f: Polynomial, g: Polynomial) -> list:
    """Points where some nonzero ``a df + b dg`` lies in a visible conormal.

    Computed on the two charts ``(1, b)`` and ``(0, 1)`` of the projective
    line of coefficients.
    """
    out = []
    amb = f.ctx
    for C, visible in conormals:
        if not visible:
            continue
        I = C.ideal if isinstance(C, ConormalIdeal) else C
        zw = I.ctx
        aux = "_B"
        ext = zw.extend([aux])
        b = Polynomial.var(ext, aux)
        gf = [p.embed(ext) for p in gradient(f, amb.names)]
        gg = [p.embed(ext) for p in gradient(g, amb.names)]
        binds = {w: x + b * y for w, x, y in zip(zw.cotangent, gf, gg)}
        chart = Ideal([substitute(p.embed(ext), binds, ext) for p in I.groebner()], ext)
        if not chart.is_unit():
            out.append(eliminate(chart, amb.names))
        J = intersect_im_d(I, g)
        if not J.is_unit():
            out.append(J)
    return [J for J in out if krull_dim(J) != EMPTY]
