"""Problem files: a stratified space, a sheaf shift, and the pair of functions."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema

from .enriched import FGAbelianGroup
from .ideal import EMPTY, Ideal, krull_dim, membership, radical_contains
from .poly import Polynomial, PolyError, VarContext, parse_poly, parse_rational


class ProblemError(ValueError):
    """Invalid problem file; ``pointer`` locates the offending JSON value."""

    code = "INVALID_PROBLEM"

    def __init__(self, message: str, pointer: str = ""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer or "/"


@dataclass(frozen=True)
class StratumSpec:
    name: str
    closure: tuple
    dim: int
    minus: tuple = ()
    test_point: tuple | None = None
    morse: tuple | None = None

    def closure_ideal(self, ctx: VarContext) -> Ideal:
        return Ideal(self.closure, ctx)


@dataclass
class ProblemSpec:
    ctx: VarContext
    components: tuple
    shift: int
    strata: tuple
    f: Polynomial
    g: Polynomial
    candidates: tuple = ()
    samples: tuple = ()
    radius: Fraction = Fraction(1, 2)
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def stratum(self, name: str) -> StratumSpec:
        for st in self.strata:
            if st.name == name:
                return st
        raise KeyError(name)

    def closure_ideal(self, st: StratumSpec) -> Ideal:
        return st.closure_ideal(self.ctx)

    def boundary(self, st: StratumSpec) -> list:
        """Closure ideals of the strata removed from ``st``."""
        return [self.closure_ideal(self.stratum(nm)) for nm in st.minus]

    def is_maximal(self, st: StratumSpec) -> bool:
        return not any(st.name in other.minus for other in self.strata)

    def space_ideal(self) -> Ideal:
        gens = [Polynomial.const(self.ctx, 1)]
        for comp in self.components:
            gens = [a * b for a in gens for b in comp.gens]
        return Ideal(gens, self.ctx)

    def space_dim(self) -> int:
        return max(krull_dim(c) for c in self.components)

    def hypersurface(self) -> Polynomial | None:
        """Defining polynomial when every component is a hypersurface."""
        if any(len(c.gens) != 1 for c in self.components):
            return None
        out = Polynomial.const(self.ctx, 1)
        for c in self.components:
            out = out * c.gens[0]
        return out

    def candidate_ideals(self) -> list:
        return [self.closure_ideal(st) for st in self.strata] + list(self.candidates)

    def origin(self) -> tuple:
        return (Fraction(0),) * len(self.ctx)


def _schema() -> dict:
    text = resources.files("polarcycle").joinpath("schemas/problem.schema.json").read_text()
    return json.loads(text)


def _pointer(path) -> str:
    return "/" + "/".join(str(p) for p in path) if path else "/"


def _poly(src: str, ctx: VarContext, ptr: str) -> Polynomial:
    try:
        return parse_poly(src, ctx)
    except PolyError as exc:
        raise ProblemError(str(exc), ptr) from exc


def _rational(v, ptr: str) -> Fraction:
    try:
        return parse_rational(v)
    except (ValueError, ZeroDivisionError, PolyError) as exc:
        raise ProblemError(f"not a rational number: {v!r}", ptr) from exc


def parse_problem(doc: dict, name: str = "") -> ProblemSpec:
    validator = jsonschema.Draft202012Validator(_schema())
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise ProblemError(err.message, _pointer(err.absolute_path))
    try:
        ctx = VarContext(tuple(doc["variables"]))
    except PolyError as exc:
        raise ProblemError(str(exc), "/variables") from exc

    components = []
    for i, comp in enumerate(doc["space"]["components"]):
        srcs = [comp] if isinstance(comp, str) else comp
        gens = [_poly(s, ctx, f"/space/components/{i}") for s in srcs]
        components.append(Ideal(gens, ctx))

    strata = []
    names = [s["name"] for s in doc["strata"]]
    if len(set(names)) != len(names):
        raise ProblemError("stratum names must be distinct", "/strata")
    for i, s in enumerate(doc["strata"]):
        ptr = f"/strata/{i}"
        closure = tuple(_poly(c, ctx, f"{ptr}/closure/{j}") for j, c in enumerate(s["closure"]))
        for j, nm in enumerate(s.get("minus", [])):
            if nm not in names or nm == s["name"]:
                raise ProblemError(f"unknown stratum {nm!r}", f"{ptr}/minus/{j}")
        tp = None
        if "test_point" in s:
            if len(s["test_point"]) != len(ctx):
                raise ProblemError("test point arity does not match the variables", f"{ptr}/test_point")
            tp = tuple(_rational(v, f"{ptr}/test_point/{j}") for j, v in enumerate(s["test_point"]))
        morse = None
        if "morse" in s:
            morse = tuple(
                (int(m["degree"]), FGAbelianGroup.from_orders(int(m["rank"]), m.get("torsion", [])))
                for m in s["morse"]
            )
        strata.append(
            StratumSpec(s["name"], closure, int(s["dim"]), tuple(s.get("minus", [])), tp, morse)
        )

    cands = []
    for i, c in enumerate(doc.get("candidates", [])):
        cands.append(Ideal([_poly(s, ctx, f"/candidates/{i}/{j}") for j, s in enumerate(c)], ctx))

    spec = ProblemSpec(
        ctx=ctx,
        components=tuple(components),
        shift=int(doc["shift"]),
        strata=tuple(strata),
        f=_poly(doc["f"], ctx, "/f"),
        g=_poly(doc["g"], ctx, "/g"),
        candidates=tuple(cands),
        samples=tuple(_rational(v, f"/samples/{i}") for i, v in enumerate(doc.get("samples", []))),
        radius=_rational(doc.get("radius", "1/2"), "/radius"),
        name=doc.get("name", name),
    )
    _cross_check(spec)
    return spec


def _cross_check(spec: ProblemSpec) -> None:
    ctx = spec.ctx
    for i, st in enumerate(spec.strata):
        ptr = f"/strata/{i}"
        I = spec.closure_ideal(st)
        d = krull_dim(I)
        if d == EMPTY or d != st.dim:
            raise ProblemError(
                f"stratum {st.name!r} declares dim {st.dim} but its closure has dimension "
                f"{'empty' if d == EMPTY else d}",
                f"{ptr}/dim",
            )
        if not radical_contains(I, spec.space_ideal()):
            raise ProblemError(f"closure of stratum {st.name!r} is not contained in the space", f"{ptr}/closure")
        if st.test_point is not None:
            if not I.vanishes_at(st.test_point):
                raise ProblemError("test point is not on the closure", f"{ptr}/test_point")
            for nm in st.minus:
                if spec.closure_ideal(spec.stratum(nm)).vanishes_at(st.test_point):
                    raise ProblemError(f"test point lies on removed stratum {nm!r}", f"{ptr}/test_point")
    union = [Polynomial.const(ctx, 1)]
    for st in spec.strata:
        union = [a * b for a in union for b in st.closure]
    X = spec.space_ideal()
    if not all(membership(p, X, "radical") for p in union):
        raise ProblemError("strata closures do not cover the space", "/strata")


def load_problem(path) -> ProblemSpec:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ProblemError(f"invalid JSON: {exc.msg} at line {exc.lineno}", "/") from exc
    return parse_problem(doc, path.stem)


def bundled(name: str) -> Path:
    """Path of a problem file shipped with the package."""
    if not name.endswith(".json"):
        name += ".json"
    return Path(str(resources.files("polarcycle").joinpath("data", name)))
