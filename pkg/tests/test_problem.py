import copy
import json

import pytest

from conftest import BUNDLED
from polarcycle.problem import ProblemError, bundled, load_problem, parse_problem


@pytest.fixture
def doc():
    return json.loads(bundled("example2_6").read_text())


def test_bundled_example_loads():
    spec = load_problem(bundled("example2_6"))
    assert [st.name for st in spec.strata] == ["S1", "S2", "S3", "S4", "O"]
    assert spec.shift == 2 and spec.space_dim() == 2
    assert str(spec.hypersurface()) == "-x^2*y*t^2 - x^3*y + y^3"
    assert spec.is_maximal(spec.stratum("S1"))
    assert not spec.is_maximal(spec.stratum("O"))


@pytest.mark.parametrize("name", BUNDLED)
def test_all_bundled_problems_validate(name):
    assert load_problem(bundled(name)).name == name


def test_missing_f(doc):
    del doc["f"]
    with pytest.raises(ProblemError) as exc:
        parse_problem(doc)
    assert exc.value.pointer == "/"
    assert "'f' is a required property" in str(exc.value)


def test_schema_pointer(doc):
    doc["strata"][2]["dim"] = "one"
    with pytest.raises(ProblemError) as exc:
        parse_problem(doc)
    assert exc.value.pointer == "/strata/2/dim"


def test_unknown_key(doc):
    doc["colour"] = "blue"
    with pytest.raises(ProblemError):
        parse_problem(doc)


def test_inconsistent_dimension(doc):
    doc["strata"][2]["dim"] = 2
    with pytest.raises(ProblemError) as exc:
        parse_problem(doc)
    assert exc.value.pointer == "/strata/2/dim"


def test_parse_error_location(doc):
    doc["strata"][3]["closure"][0] = "x + * t"
    with pytest.raises(ProblemError) as exc:
        parse_problem(doc)
    assert exc.value.pointer == "/strata/3/closure/0"
    assert "position" in str(exc.value)


def test_unknown_variable(doc):
    doc["g"] = "q"
    with pytest.raises(ProblemError) as exc:
        parse_problem(doc)
    assert exc.value.pointer == "/g"


def test_test_point_checks(doc):
    bad = copy.deepcopy(doc)
    bad["strata"][2]["test_point"] = [1, 0, 1]
    with pytest.raises(ProblemError, match="not on the closure"):
        parse_problem(bad)
    bad = copy.deepcopy(doc)
    bad["strata"][2]["test_point"] = [0, 0, 0]
    with pytest.raises(ProblemError, match="removed stratum"):
        parse_problem(bad)
    bad = copy.deepcopy(doc)
    bad["strata"][2]["test_point"] = [0, 0]
    with pytest.raises(ProblemError, match="arity"):
        parse_problem(bad)


def test_closure_outside_space(doc):
    doc["strata"][2]["closure"] = ["x", "y - 1"]
    with pytest.raises(ProblemError, match="not contained"):
        parse_problem(doc)


def test_strata_must_cover(doc):
    doc["strata"] = [s for s in doc["strata"] if s["name"] != "S2"]
    for s in doc["strata"]:
        s["minus"] = [m for m in s.get("minus", []) if m != "S2"]
    with pytest.raises(ProblemError, match="cover"):
        parse_problem(doc)


def test_unknown_minus(doc):
    doc["strata"][0]["minus"] = ["S9"]
    with pytest.raises(ProblemError) as exc:
        parse_problem(doc)
    assert exc.value.pointer == "/strata/0/minus/0"


def test_morse_override_parsed():
    spec = load_problem(bundled("two_planes"))
    ((deg, group),) = spec.stratum("O").morse
    assert deg == -1 and str(group) == "Z"


def test_invalid_json(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{")
    with pytest.raises(ProblemError, match="invalid JSON"):
        load_problem(p)
