"""Relative conormal cycles, enriched polar curves and the numbers computed from them."""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .conormal import (
    ConormalIdeal,
    constant_on,
    critical_locus,
    im_d,
    intersect_im_d,
    pair_critical_locus,
    relative_conormal_ideal,
)
from .cycles import (
    Cycle,
    CycleError,
    GenericityFailure,
    NonProper,
    cycle_of_ideal,
    intersection_number_at,
    split_components,
)
from .enriched import ZERO, EnrichedCycle, FGAbelianGroup, GradedEnrichedCycle
from .gecc import build_gecc, polar_curve_of_pair, random_linear_form
from .ideal import (
    EMPTY,
    INFINITE,
    Ideal,
    NotZeroDimensional,
    intersection,
    is_isolated,
    krull_dim,
    local_multiplicity,
    membership,
    rational_points,
    same_variety,
    vspace_dim,
)
from .poly import Polynomial, VarContext, gradient, substitute
from .problem import ProblemSpec


class PolarNotCurve(CycleError):
    code = "POLAR_NOT_CURVE"


class VerdictFailure(ValueError):
    code = "VERDICT_FAILURE"


class NotIsolated(ValueError):
    code = "NOT_ISOLATED"


# ---------------------------------------------------------------------------
# relative conormal cycle and polar curve


@dataclass
class RelativeEntry:
    stratum: str
    conormal: ConormalIdeal
    morse: list


def relative_conormal_entries(spec: ProblemSpec, f: Polynomial | None = None, seed: int = 0) -> list:
    """Visible strata on which ``f`` is not constant, with relative conormal ideals."""
    f = spec.f if f is None else f
    key = ("relative", str(f), seed)
    if key in spec._cache:
        return spec._cache[key]
    out = []
    for e in build_gecc(spec, seed).visible():
        st = e.stratum
        if constant_on(st.closure, f):
            continue
        C = relative_conormal_ideal(st.closure, spec.boundary(st), f, st.name)
        out.append(RelativeEntry(st.name, C, e.morse))
    spec._cache[key] = out
    return out


def relative_conormal_cycle(spec: ProblemSpec, f: Polynomial | None = None, seed: int = 0) -> GradedEnrichedCycle:
    by_degree: dict = {}
    for e in relative_conormal_entries(spec, f, seed):
        for k, G in e.morse:
            by_degree.setdefault(k, []).append((e.conormal.ideal, G))
    return GradedEnrichedCycle({k: EnrichedCycle(v) for k, v in by_degree.items()})


@dataclass
class PolarPiece:
    stratum: str
    ideal: Ideal
    dim: float
    morse: list
    cycle: Cycle | None = None


@dataclass
class PolarCurve:
    f: Polynomial
    g: Polynomial
    pieces: list
    offending: list = field(default_factory=list)
    cycle: GradedEnrichedCycle | None = None

    @property
    def is_curve(self) -> bool:
        return not self.offending

    def set_ideals(self) -> list:
        return [p.ideal for p in self.pieces if p.dim != EMPTY]

    def contains_point(self, point) -> bool:
        return any(I.vanishes_at(point) for I in self.set_ideals())

    def components(self) -> list:
        """``(stratum, prime, degree, group)`` for every polar component."""
        out = []
        for p in self.pieces:
            if p.cycle is None:
                continue
            for P, m in p.cycle:
                for k, G in p.morse:
                    out.append((p.stratum, P, k, G.power(m)))
        return out


def polar_curve(
    spec: ProblemSpec, f: Polynomial | None = None, g: Polynomial | None = None, seed: int = 0
) -> PolarCurve:
    """Graded enriched relative polar curve of ``f`` with respect to ``g``.

    The polar set is always returned; the cycle is set only when every
    piece is purely one-dimensional.
    """
    f = spec.f if f is None else f
    g = spec.g if g is None else g
    key = ("polar", str(f), str(g), seed)
    if key in spec._cache:
        return spec._cache[key]
    pieces = []
    offending = []
    cands = spec.candidate_ideals()
    for e in relative_conormal_entries(spec, f, seed):
        I = intersect_im_d(e.conormal, g)
        d = krull_dim(I)
        piece = PolarPiece(e.stratum, I, d, e.morse)
        if d == 1:
            piece.cycle = cycle_of_ideal(I, cands, seed=seed)
        elif d != EMPTY:
            offending.append(e.stratum)
        pieces.append(piece)
    curve = PolarCurve(f, g, pieces, offending)
    if not offending:
        by_degree: dict = {}
        for _, P, k, G in curve.components():
            by_degree.setdefault(k, []).append((P, G))
        curve.cycle = GradedEnrichedCycle({k: EnrichedCycle(v) for k, v in by_degree.items()})
    spec._cache[key] = curve
    return curve


# ---------------------------------------------------------------------------
# main1


def _nonzero(table: dict) -> dict:
    return {k: G for k, G in table.items() if not G.is_zero()}


@dataclass
class Contribution:
    stratum: str
    component: Ideal
    degree: int
    coefficient: FGAbelianGroup
    number: int

    @property
    def group(self) -> FGAbelianGroup:
        return self.coefficient.power(self.number)


@dataclass
class Main1Report:
    verdicts: dict
    phipsi: bool
    polar: PolarCurve
    table: dict | None = None
    contributions: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(self.verdicts.values())


def _cotangent_verdict(spec, entries, f, g, origin) -> bool:
    """Isolation at ``(0, dg(0))`` of each relative conormal cut by ``V(f)`` and the graph of ``dg``."""
    for e in entries:
        zw = e.conormal.ctx
        graph = im_d(g, zw)
        J = e.conormal.ideal + graph + f.embed(zw)
        point = list(origin) + [p.evaluate(origin) for p in gradient(g, spec.ctx.names)]
        if not is_isolated(J, point):
            return False
    return True


def _phipsi(curve: PolarCurve, f: Polynomial, g: Polynomial, origin) -> bool:
    """Every branch of ``V(f)`` meet the polar set through the origin lies in ``V(g)``."""
    for I in curve.set_ideals():
        for piece in split_components(I + f):
            if piece.vanishes_at(origin) and not membership(g, piece, "radical"):
                return False
    return True


def dimension_verdicts(spec: ProblemSpec, f: Polynomial, g: Polynomial, seed: int = 0) -> dict:
    """The three equivalent conditions that the polar set meets ``V(f)`` in isolated points at the origin.

    (1) relative conormals meet ``V(f)`` and the graph of ``dg`` in an
    isolated point over the origin; (2) ``V(f)`` meets the polar set in an
    isolated point; (3) so does ``V(f, g)``.
    """
    origin = spec.origin()
    entries = relative_conormal_entries(spec, f, seed)
    ideals = [I for I in (intersect_im_d(e.conormal, g) for e in entries) if not I.is_unit()]
    return {
        "1": _cotangent_verdict(spec, entries, f, g, origin),
        "2": all(is_isolated(I + f, origin) for I in ideals),
        "3": all(is_isolated(I + f + g, origin) for I in ideals),
    }


def main1_table(spec: ProblemSpec, f: Polynomial | None = None, g: Polynomial | None = None, seed: int = 0) -> Main1Report:
    f = spec.f if f is None else f
    g = spec.g if g is None else g
    origin = spec.origin()
    verdicts = dimension_verdicts(spec, f, g, seed)
    if len(set(verdicts.values())) != 1:
        raise RuntimeError(f"dimension verdicts disagree: {verdicts}")
    curve = polar_curve(spec, f, g, seed)
    report = Main1Report(verdicts, _phipsi(curve, f, g, origin), curve)
    if not report.holds:
        return report
    if curve.cycle is None:
        raise PolarNotCurve(f"polar set is not a curve along {', '.join(curve.offending)}")
    table: dict = {}
    for stratum, P, k, G in curve.components():
        n = intersection_number_at(Cycle([(P, 1)]), f, origin)
        report.contributions.append(Contribution(stratum, P, k, G, n))
        table[k] = table.get(k, ZERO) + G.power(n)
    report.table = _nonzero(table)
    return report


# ---------------------------------------------------------------------------
# main2


@dataclass
class Main2Report:
    """Pair tables; ``kept`` rows are ``(P, degree, G, (P.V(f))_0, (P.V(g))_0)``."""

    pair_f: dict
    pair_g: dict
    kept: list
    excluded: list


def main2_pairs(spec: ProblemSpec, seed: int = 0) -> Main2Report:
    f, g = spec.f, spec.g
    origin = spec.origin()
    curve = polar_curve(spec, f, g, seed)
    if not all(is_isolated(I + f, origin) for I in curve.set_ideals()):
        raise VerdictFailure("the polar set meets V(f) in a positive-dimensional set at the origin")
    if curve.cycle is None:
        raise PolarNotCurve(f"polar set is not a curve along {', '.join(curve.offending)}")
    pair_f: dict = {}
    pair_g: dict = {}
    kept, excluded = [], []
    for k in curve.cycle.degrees():
        for P, G in curve.cycle[k]:
            if membership(g, P, "radical"):
                excluded.append((P, k, G))
                continue
            nf = intersection_number_at(Cycle([(P, 1)]), f, origin)
            ng = intersection_number_at(Cycle([(P, 1)]), g, origin)
            kept.append((P, k, G, nf, ng))
            pair_f[k] = pair_f.get(k, ZERO) + G.power(nf)
            pair_g[k] = pair_g.get(k, ZERO) + G.power(ng)
    return Main2Report(_nonzero(pair_f), _nonzero(pair_g), kept, excluded)


# ---------------------------------------------------------------------------
# generic linear forms


@dataclass
class Trial:
    form: Polynomial
    origin_in_polar: bool
    dim_f: bool
    dim_l: bool
    table_zero: bool | None


@dataclass
class EmptinessReport:
    trials: list
    items: dict
    genericity_failure: bool

    @property
    def equivalent(self) -> bool:
        return len(set(self.items.values())) == 1


def emptiness_report(spec: ProblemSpec, trials: int = 3, seed: int = 0) -> EmptinessReport:
    """Polar-emptiness conditions for seeded random linear forms."""
    rng = random.Random(seed)
    origin = spec.origin()
    out = []
    for _ in range(trials):
        L = random_linear_form(spec.ctx, rng)
        curve = polar_curve(spec, spec.f, L, seed)
        ideals = curve.set_ideals()
        dim_f = all(is_isolated(I + spec.f, origin) for I in ideals)
        dim_l = all(is_isolated(I + L, origin) for I in ideals)
        table_zero = None
        if dim_f:
            table_zero = not main1_table(spec, spec.f, L, seed).table
        out.append(Trial(L, curve.contains_point(origin), dim_f, dim_l, table_zero))
    items = {
        "1": any(not t.origin_in_polar for t in out),
        "2": all(not t.origin_in_polar for t in out),
        "3": all(t.table_zero for t in out),
    }
    failure = (
        len({t.origin_in_polar for t in out}) > 1
        or len({t.table_zero for t in out}) > 1
        or not all(t.dim_f and t.dim_l for t in out)
    )
    return EmptinessReport(out, items, failure)


# ---------------------------------------------------------------------------
# classical invariants


def milnor_number(f: Polynomial, point=None) -> int:
    point = point or (Fraction(0),) * len(f.ctx)
    J = Ideal(gradient(f, f.ctx.names), f.ctx)
    if not J.vanishes_at(point):
        return 0
    if not is_isolated(J, point):
        raise NotIsolated("critical point is not isolated")
    return local_multiplicity(J, point)


def restrict_to_hyperplane(f: Polynomial, L: Polynomial) -> Polynomial:
    """``f`` on ``V(L)`` for a linear form ``L``, solving ``L`` for its last variable."""
    ctx = f.ctx
    solve = [nm for nm in ctx.names if L.degree_in(nm) > 0][-1]
    a = L.diff(solve).constant_value()
    rest = VarContext(tuple(nm for nm in ctx.names if nm != solve))
    image = (Polynomial.var(ctx, solve) * a - L) / a
    return substitute(f, {solve: image.restrict(rest)}, rest)


@dataclass
class LeAttaching:
    tau: int
    form: Polynomial
    gamma: Cycle
    mu: int
    mu_slice: int

    @property
    def oracle_holds(self) -> bool:
        return self.tau == self.mu + self.mu_slice


def _le_attaching(f: Polynomial, z0: Polynomial, seed: int) -> LeAttaching:
    origin = (Fraction(0),) * len(f.ctx)
    gamma = polar_curve_of_pair(f, z0, seed=seed)
    if any(krull_dim(P) != 1 for P, _ in gamma):
        raise PolarNotCurve("polar curve is not purely one-dimensional")
    tau = intersection_number_at(gamma, f, origin)
    mu = milnor_number(f, origin)
    mu_slice = milnor_number(restrict_to_hyperplane(f, z0))
    return LeAttaching(tau, z0, gamma, mu, mu_slice)


def le_attaching(f: Polynomial, z0: Polynomial | None = None, seed: int = 0, tries: int = 8) -> LeAttaching:
    """Number of cells attached to the hyperplane-slice Milnor fibre.

    Without ``z0``, seeded random linear forms are drawn until one meets
    the polar curve properly.
    """
    if z0 is not None:
        return _le_attaching(f, z0, seed)
    rng = random.Random(seed)
    last: Exception | None = None
    for _ in range(tries):
        try:
            return _le_attaching(f, random_linear_form(f.ctx, rng), seed)
        except (NonProper, NotIsolated, PolarNotCurve) as exc:
            last = exc
    raise GenericityFailure(f"no generic linear form found in {tries} draws: {last}")


# ---------------------------------------------------------------------------
# family additivity


@dataclass
class SampleSplit:
    """One fibre ``V(g - a)``; ``points`` holds ``(point, multiplicity, degree, coefficient)``."""

    value: Fraction
    points: list
    table: dict
    residual: int
    status: str


@dataclass
class FamilyReport:
    holds: bool
    table: dict
    samples: list


def _rank(table: dict, k: int) -> int:
    return table.get(k, ZERO).rank


def family_additivity(
    spec: ProblemSpec, samples=None, radius: Fraction | None = None, seed: int = 0
) -> FamilyReport:
    """Compare the polar count at the origin with the sum over nearby points of ``V(g - a)``.

    Roles are swapped: the polar curve is that of ``g`` with respect to ``f``.
    Points count as nearby when every coordinate is smaller than ``radius``
    in absolute value.  A sample whose slice has irrational points is
    ``UNSPLIT``: only a rank bracket is checked there.
    """
    f, g = spec.f, spec.g
    samples = list(samples if samples is not None else spec.samples)
    radius = spec.radius if radius is None else Fraction(radius)
    origin = spec.origin()
    curve = polar_curve(spec, g, f, seed)
    holds = all(is_isolated(I + g, origin) for I in curve.set_ideals())
    if not holds:
        return FamilyReport(False, {}, [])
    if curve.cycle is None:
        raise PolarNotCurve(f"polar set is not a curve along {', '.join(curve.offending)}")
    comps = [
        (P, k, G)
        for k in curve.cycle.degrees()
        for P, G in curve.cycle[k]
        if P.vanishes_at(origin)
    ]
    table: dict = {}
    for P, k, G in comps:
        n = intersection_number_at(Cycle([(P, 1)]), g, origin)
        table[k] = table.get(k, ZERO) + G.power(n)
    table = _nonzero(table)
    out = []
    for a in samples:
        a = Fraction(a)
        rhs: dict = {}
        points = []
        residual = 0
        slack: dict = {}
        for P, k, G in comps:
            J = P + (g - a)
            if J.is_unit():
                continue
            if vspace_dim(J) == INFINITE:
                raise NotZeroDimensional(f"V(g - {a}) contains a polar component")
            pts = rational_points(J)
            mults = [local_multiplicity(J, p) for p in pts]
            rest = vspace_dim(J) - sum(mults)
            residual += rest
            slack[k] = slack.get(k, 0) + G.rank * rest
            near = [(p, m) for p, m in zip(pts, mults) if all(abs(c) < radius for c in p)]
            points.extend((p, m, k, G) for p, m in near)
            rhs[k] = rhs.get(k, ZERO) + G.power(sum(m for _, m in near))
        rhs = _nonzero(rhs)
        if residual:
            # irrational points may or may not be near; the ranks can only be bracketed
            inside = all(
                _rank(rhs, k) <= _rank(table, k) <= _rank(rhs, k) + slack.get(k, 0)
                for k in set(table) | set(rhs)
            )
            status = "UNSPLIT" if inside else "MISMATCH"
        else:
            status = "OK" if rhs == table else "MISMATCH"
        out.append(SampleSplit(a, points, rhs, residual, status))
    return FamilyReport(True, table, out)


# ---------------------------------------------------------------------------
# set-level identities


def _union(ideals: list, ctx: VarContext) -> Ideal:
    ideals = [I for I in ideals if not I.is_unit()]
    if not ideals:
        return Ideal.unit(ctx)
    return functools.reduce(intersection, ideals)


def closed_critical_locus(spec: ProblemSpec, f: Polynomial, seed: int = 0) -> list:
    conormals = [(e.conormal, bool(e.morse)) for e in build_gecc(spec, seed).entries]
    return critical_locus(conormals, f)


@dataclass
class SigmaReport:
    forward: bool
    backward: bool
    symmetric: bool


def sigma_check(spec: ProblemSpec, seed: int = 0) -> SigmaReport:
    """Set identities relating critical loci of ``f``, ``g``, the pair, and polar sets."""
    f, g, ctx = spec.f, spec.g, spec.ctx
    conormals = [(e.conormal, bool(e.morse)) for e in build_gecc(spec, seed).entries]
    pair = _union(pair_critical_locus(conormals, f, g), ctx)
    fwd = _union(closed_critical_locus(spec, f, seed) + polar_curve(spec, f, g, seed).set_ideals(), ctx)
    bwd = _union(closed_critical_locus(spec, g, seed) + polar_curve(spec, g, f, seed).set_ideals(), ctx)

    def movable(curve: PolarCurve) -> list:
        out = []
        for _, P, _, _ in curve.components():
            if not (constant_on(P.gens, f) or constant_on(P.gens, g)):
                if not any(same_variety(P, Q) for Q in out):
                    out.append(P)
        return out

    a = movable(polar_curve(spec, f, g, seed))
    b = movable(polar_curve(spec, g, f, seed))
    symmetric = len(a) == len(b) and all(any(same_variety(P, Q) for Q in b) for P in a)
    return SigmaReport(same_variety(pair, fwd), same_variety(pair, bwd), symmetric)
