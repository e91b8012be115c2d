import pytest

from conftest import problem
from polarcycle.enriched import FGAbelianGroup
from polarcycle.gecc import (
    UnautomatedStratum,
    build_gecc,
    morse_module,
    point_morse_rank,
    transverse_multiplicity,
)
from polarcycle.ideal import Ideal
from polarcycle.poly import parse_poly
from polarcycle.problem import parse_problem


def Zr(r):
    return FGAbelianGroup.free(r)


def test_example_gecc_coefficients():
    spec = problem("example2_6")
    res = build_gecc(spec)
    assert res.cycle.degrees() == [0]
    expected = {"S1": 1, "S2": 1, "S3": 2, "S4": 1, "O": 2}
    for name, rank in expected.items():
        e = res.entry(name)
        assert e.morse == [(0, Zr(rank))]
        assert res.cycle[0].coefficient(e.conormal.ideal) == Zr(rank)
    assert len(res.cycle[0]) == 5


def test_transverse_and_point_ranks():
    spec = problem("example2_6")
    assert transverse_multiplicity(spec.stratum("S3"), spec) == 3
    assert transverse_multiplicity(spec.stratum("S4"), spec) == 2
    assert point_morse_rank(spec.stratum("O"), spec, seed=5) == 2


def test_two_planes_with_override():
    spec = problem("two_planes")
    res = build_gecc(spec)
    assert res.cycle.degrees() == [-1, 0]
    zw = spec.ctx.with_cotangent()

    def I(*g):
        return Ideal([parse_poly(s, zw) for s in g], zw)

    assert res.cycle[0].coefficient(I("z2", "z3", "w0", "w1")) == Zr(1)
    assert res.cycle[0].coefficient(I("z0", "z1", "w2", "w3")) == Zr(1)
    assert len(res.cycle[0]) == 2
    assert res.cycle[-1].coefficient(I("z0", "z1", "z2", "z3")) == Zr(1)
    assert len(res.cycle[-1]) == 1


def test_smooth_ambient():
    spec = problem("rem_main2")
    res = build_gecc(spec)
    (e,) = res.entries
    assert e.morse == [(0, Zr(1))]
    assert e.conormal.ideal.basis_strings() == ["w0", "w1", "w2"]


def _two_planes_doc(with_override: bool) -> dict:
    origin = {"name": "O", "closure": ["z0", "z1", "z2", "z3"], "dim": 0}
    if with_override:
        origin["morse"] = [{"degree": -1, "rank": 1}]
    return {
        "variables": ["z0", "z1", "z2", "z3"],
        "space": {"components": [["z2", "z3"], ["z0", "z1"]]},
        "shift": 2,
        "strata": [
            {"name": "P1", "closure": ["z2", "z3"], "minus": ["O"], "dim": 2},
            {"name": "P2", "closure": ["z0", "z1"], "minus": ["O"], "dim": 2},
            origin,
        ],
        "f": "z0 + z2",
        "g": "z1 + z3",
    }


def test_non_hypersurface_point_needs_override():
    spec = parse_problem(_two_planes_doc(False))
    with pytest.raises(UnautomatedStratum):
        morse_module(spec.stratum("O"), spec)


def test_override_with_torsion():
    doc = _two_planes_doc(True)
    doc["strata"][2]["morse"] = [{"degree": -1, "rank": 0, "torsion": [2]}]
    spec = parse_problem(doc)
    assert morse_module(spec.stratum("O"), spec) == [(-1, FGAbelianGroup(0, (2,)))]
