"""Graded enriched characteristic cycle of a shifted constant sheaf."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .conormal import ConormalIdeal, conormal_ideal, minors
from .cycles import GenericityFailure, cycle_of_ideal, gap_sheaf, intersection_number_at
from .enriched import EnrichedCycle, FGAbelianGroup, GradedEnrichedCycle
from .ideal import Ideal, rational_points
from .poly import Polynomial, VarContext, gradient, substitute, vanishing_order
from .problem import ProblemSpec, StratumSpec


class UnautomatedStratum(ValueError):
    code = "UNAUTOMATED_STRATUM"


class MissingTestPoint(ValueError):
    code = "NEEDS_TEST_POINT"


def random_linear_form(ctx: VarContext, rng: random.Random, names=None) -> Polynomial:
    """Linear form with small nonzero integer coefficients."""
    names = names or ctx.ambient
    out = Polynomial.const(ctx, 0)
    for nm in names:
        out = out + rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5]) * Polynomial.var(ctx, nm)
    return out


def _tangent_direction(st: StratumSpec, ctx: VarContext, q) -> list:
    rows = [[p.evaluate(q) for p in gradient(h, ctx.names)] for h in st.closure]
    null = sympy.Matrix(rows).nullspace() if rows else []
    if len(null) != 1:
        raise GenericityFailure(
            f"closure presentation of {st.name!r} is not smooth of dimension 1 at the test point"
        )
    v = null[0]
    return [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in v]


def transverse_multiplicity(st: StratumSpec, spec: ProblemSpec, seed: int = 0) -> int:
    """Multiplicity of a plane section of ``X`` through the test point, transverse to ``st``."""
    F = spec.hypersurface()
    if F is None or len(spec.ctx) != 3:
        raise UnautomatedStratum("transverse slices are automated for surfaces in 3-space only")
    if st.test_point is None:
        raise MissingTestPoint(f"stratum {st.name!r} needs a test point")
    q = st.test_point
    tangent = _tangent_direction(st, spec.ctx, q)
    rng = random.Random(seed)
    plane_ctx = VarContext(("_s", "_r"))
    s, r = Polynomial.var(plane_ctx, "_s"), Polynomial.var(plane_ctx, "_r")
    values = []
    while len(values) < 2:
        u = [rng.randint(-4, 4) for _ in range(3)]
        v = [rng.randint(-4, 4) for _ in range(3)]
        if sympy.Matrix([u, v, tangent]).det() == 0:
            continue
        binds = {
            nm: q[i] + u[i] * s + v[i] * r for i, nm in enumerate(spec.ctx.names)
        }
        values.append(vanishing_order(substitute(F, binds, plane_ctx), (0, 0)))
    if values[0] != values[1]:
        raise GenericityFailure(f"transverse multiplicities disagree along {st.name!r}: {values}")
    return values[0]


def polar_curve_of_pair(F: Polynomial, L: Polynomial, cands=(), seed: int = 0):
    """Classical relative polar curve of ``F`` with respect to ``L``, as a cycle."""
    ctx = F.ctx
    rows = [gradient(L, ctx.names), gradient(F, ctx.names)]
    crit = Ideal(gradient(F, ctx.names), ctx)
    I = gap_sheaf(Ideal(minors(rows, 2), ctx), crit)
    return cycle_of_ideal(I, cands, seed=seed)


def point_morse_rank(st: StratumSpec, spec: ProblemSpec, seed: int = 0) -> int:
    """Number of spheres in the complex link at a point stratum of a hypersurface."""
    F = spec.hypersurface()
    if F is None:
        raise UnautomatedStratum("point strata are automated for hypersurfaces only")
    pts = rational_points(spec.closure_ideal(st))
    if len(pts) != 1:
        raise UnautomatedStratum(f"stratum {st.name!r} is not a single rational point")
    p = pts[0]
    rng = random.Random(seed)
    values = []
    for _ in range(2):
        L = random_linear_form(spec.ctx, rng)
        L = L - L.evaluate(p)
        gamma = polar_curve_of_pair(F, L, spec.candidate_ideals(), seed)
        values.append(intersection_number_at(gamma, L, p))
    if values[0] != values[1]:
        raise GenericityFailure(f"complex link counts disagree at {st.name!r}: {values}")
    return values[0]


def morse_module(st: StratumSpec, spec: ProblemSpec, seed: int = 0) -> list:
    """Nonzero Morse modules of ``st`` as ``(degree, group)`` pairs."""
    if st.morse is not None:
        return [(k, G) for k, G in st.morse if not G.is_zero()]
    if spec.is_maximal(st):
        return [(st.dim - spec.shift, FGAbelianGroup.free(1))]
    if spec.hypersurface() is None:
        raise UnautomatedStratum(f"no rule computes the Morse module of {st.name!r}; add an override")
    degree = spec.space_dim() - spec.shift
    if st.dim == 1 and len(spec.ctx) == 3:
        rank = transverse_multiplicity(st, spec, seed) - 1
    elif st.dim == 0:
        rank = point_morse_rank(st, spec, seed)
    else:
        raise UnautomatedStratum(f"no rule computes the Morse module of {st.name!r}; add an override")
    return [(degree, FGAbelianGroup.free(rank))] if rank else []


@dataclass
class GeccEntry:
    stratum: StratumSpec
    conormal: ConormalIdeal
    morse: list


@dataclass
class GeccResult:
    cycle: GradedEnrichedCycle
    entries: list = field(default_factory=list)

    def entry(self, name: str) -> GeccEntry:
        for e in self.entries:
            if e.stratum.name == name:
                return e
        raise KeyError(name)

    def visible(self) -> list:
        return [e for e in self.entries if e.morse]


def build_gecc(spec: ProblemSpec, seed: int = 0) -> GeccResult:
    key = ("gecc", seed)
    if key in spec._cache:
        return spec._cache[key]
    entries = []
    by_degree: dict = {}
    for st in spec.strata:
        morse = morse_module(st, spec, seed)
        C = conormal_ideal(st.closure, spec.boundary(st), spec.ctx, st.name)
        entries.append(GeccEntry(st, C, morse))
        for k, G in morse:
            by_degree.setdefault(k, []).append((C.ideal, G))
    result = GeccResult(
        GradedEnrichedCycle({k: EnrichedCycle(v) for k, v in by_degree.items()}), entries
    )
    spec._cache[key] = result
    return result
