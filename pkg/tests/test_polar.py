from fractions import Fraction

import pytest

from conftest import BUNDLED, problem
from polarcycle.cycles import Cycle
from polarcycle.enriched import FGAbelianGroup
from polarcycle.ideal import Ideal
from polarcycle.polar import (
    NotIsolated,
    VerdictFailure,
    dimension_verdicts,
    emptiness_report,
    family_additivity,
    le_attaching,
    main1_table,
    main2_pairs,
    milnor_number,
    polar_curve,
    relative_conormal_cycle,
    restrict_to_hyperplane,
    sigma_check,
)
from polarcycle.poly import VarContext, parse_poly
from polarcycle.problem import parse_problem

XYT = VarContext(("x", "y", "t"))
XY = VarContext(("x", "y"))


def Zr(r):
    return FGAbelianGroup.free(r)


def I(*gens, ctx=XYT):
    return Ideal([parse_poly(g, ctx) for g in gens], ctx)


def smooth_plane(f: str, g: str, samples=()) -> object:
    return parse_problem(
        {
            "variables": ["x", "y"],
            "space": {"components": ["0"]},
            "shift": 2,
            "strata": [{"name": "U", "closure": [], "dim": 2}],
            "f": f,
            "g": g,
            "samples": list(samples),
        }
    )


def test_relative_conormal_cycle_example():
    spec = problem("example3_5")
    R = relative_conormal_cycle(spec)
    zw = XYT.with_cotangent()
    assert R.degrees() == [0]
    assert len(R[0]) == 3
    assert R[0].coefficient(I("y", "w2", ctx=zw)) == Zr(1)
    assert R[0].coefficient(I("x + t^2", "y", ctx=zw)) == Zr(1)
    E = I("y^2 - x^3 - t^2*x^2", "y*w2 + t*x^2*w1", "(x + t^2)*w2 + y*t*w1", ctx=zw)
    assert R[0].coefficient(E) == Zr(1)


def test_relative_conormal_smooth_ambient():
    spec = smooth_plane("x", "y")
    R = relative_conormal_cycle(spec)
    zw = XY.with_cotangent()
    assert R[0].coefficient(I("w1", ctx=zw)) == Zr(1)


def test_polar_curve_example():
    curve = polar_curve(problem("example3_5"))
    assert curve.is_curve
    assert curve.cycle.degrees() == [0]
    assert curve.cycle[0].coefficient(I("x + t^2", "y")) == Zr(2)
    assert len(curve.cycle[0]) == 1


def test_polar_set_of_rem_main2():
    curve = polar_curve(problem("rem_main2"))
    (ideal,) = curve.set_ideals()
    assert ideal == I("x", "y")
    assert curve.contains_point((0, 0, 0))


def test_empty_polar_curve():
    curve = polar_curve(problem("two_planes"))
    assert curve.set_ideals() == []
    assert not curve.cycle


def test_main1_example():
    r = main1_table(problem("example3_5"))
    assert r.verdicts == {"1": True, "2": True, "3": True}
    assert r.phipsi
    assert r.table == {0: Zr(4)}


def test_main1_fails_on_rem_main2():
    r = main1_table(problem("rem_main2"))
    assert r.verdicts == {"1": False, "2": False, "3": False}
    assert r.table is None


def test_main1_empty_polar_gives_zero_table():
    r = main1_table(problem("two_planes"))
    assert r.holds and r.table == {}


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_verdicts_agree(name):
    spec = problem(name)
    v = dimension_verdicts(spec, spec.f, spec.g)
    assert len(set(v.values())) == 1


def test_main2_example():
    r = main2_pairs(problem("example3_5"))
    assert r.pair_f == {0: Zr(4)}
    assert r.pair_g == {0: Zr(2)}
    assert not r.excluded


def test_main2_excludes_components_inside_g():
    # f = t, g = x: the polar component V(x, y) lies in V(g)
    r = main2_pairs(problem("example2_6"))
    assert [P for P, _, _ in r.excluded] == [I("x", "y")]
    assert [P for P, *_ in r.kept] == [I("x + t^2", "y")]


def test_main2_verdict_failure():
    with pytest.raises(VerdictFailure):
        main2_pairs(problem("rem_main2"))


def test_main2_empty():
    r = main2_pairs(problem("two_planes"))
    assert r.pair_f == {} and r.pair_g == {}


def test_emptiness_reports():
    r = emptiness_report(problem("example3_5"), trials=3, seed=0)
    assert not r.genericity_failure and r.equivalent
    assert all(t.origin_in_polar for t in r.trials)
    r = emptiness_report(problem("two_planes"), trials=3, seed=0)
    assert r.items == {"1": True, "2": True, "3": True}
    r = emptiness_report(problem("rem_main2"), trials=3, seed=0)
    assert all(t.origin_in_polar for t in r.trials)


def test_emptiness_for_regular_function():
    r = emptiness_report(smooth_plane("x + y^2", "y"), trials=3, seed=1)
    assert r.items == {"1": True, "2": True, "3": True}


@pytest.mark.parametrize(
    "f, tau, mu, mu_slice",
    [("y^2 - x^3", 3, 2, 1), ("x^2 + y^2", 2, 1, 1), ("x^3 + y^3", 6, 4, 2), ("x^3 + y^4", 9, 6, 3)],
)
def test_le_attaching_with_z0_x(f, tau, mu, mu_slice):
    r = le_attaching(parse_poly(f, XY), parse_poly("x", XY))
    assert (r.tau, r.mu, r.mu_slice) == (tau, mu, mu_slice)
    assert r.oracle_holds


def test_le_attaching_polar_curve_of_cusp():
    r = le_attaching(parse_poly("y^2 - x^3", XY), parse_poly("x", XY))
    assert r.gamma == Cycle([(I("y", ctx=XY), 1)])


def test_le_attaching_smooth():
    r = le_attaching(parse_poly("y + x^2", XY), parse_poly("x", XY))
    assert r.tau == 0 and r.mu == 0


@pytest.mark.parametrize("f, mu", [("x^2 + y^2", 1), ("y^2 - x^3", 2), ("x^3 + y^3", 4), ("x + y", 0)])
def test_milnor_numbers(f, mu):
    assert milnor_number(parse_poly(f, XY)) == mu


def test_milnor_non_isolated():
    with pytest.raises(NotIsolated):
        milnor_number(parse_poly("x^2", XY))


def test_restrict_to_hyperplane():
    h = restrict_to_hyperplane(parse_poly("x^3 + y^4", XY), parse_poly("2*x - y", XY))
    assert h.ctx.names == ("x",)
    assert str(h) == "16*x^4 + x^3"


def test_family_example():
    r = family_additivity(problem("example3_5"))
    assert r.holds and r.table == {0: Zr(4)}
    assert [s.status for s in r.samples] == ["OK", "OK", "OK"]
    first = r.samples[0]
    assert first.value == Fraction(1, 10)
    # the swapped polar curve is Z^2[V(x + t^2, y)] + Z^2[V(x, y)]
    tenth = Fraction(1, 10)
    assert sorted(first.points) == [
        ((Fraction(-1, 100), 0, tenth), 1, 0, Zr(2)),
        ((0, 0, tenth), 1, 0, Zr(2)),
    ]
    assert first.table == {0: Zr(4)}


def test_family_far_points_are_dropped():
    r = family_additivity(problem("example3_5"), samples=["1"], radius="1/2")
    assert r.samples[0].status == "MISMATCH"
    assert r.samples[0].points == []


def test_family_empty_polar():
    r = family_additivity(problem("two_planes"))
    assert r.holds and r.table == {}


def test_family_irrational_slice_is_unsplit():
    spec = smooth_plane("y", "x^3/3 - 2*x*y", samples=["1/10"])
    r = family_additivity(spec)
    assert r.table == {0: Zr(3)}
    (s,) = r.samples
    assert s.status == "UNSPLIT" and s.residual == 3


def test_family_with_reducible_g():
    r = family_additivity(smooth_plane("y^2 - x^3", "x*y"))
    # the swapped polar curve is V(3x^3 + 2y^2), meeting V(xy) with multiplicity 2 + 3
    assert r.holds and r.table == {0: Zr(5)}


def test_family_fails_when_g_contains_polar_branch():
    assert not family_additivity(problem("rem_main2")).holds


@pytest.mark.parametrize("name", ["example3_5", "example2_6", "cusp", "two_planes"])
def test_sigma_identities(name):
    r = sigma_check(problem(name))
    assert r.forward and r.backward and r.symmetric


def test_phipsi_holds_on_bundled():
    for name in ["example3_5", "example2_6", "cusp", "rem_main2"]:
        assert main1_table(problem(name)).phipsi
