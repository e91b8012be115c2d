"""JSON result documents for each subcommand, plus their text rendering."""

from __future__ import annotations

from fractions import Fraction

from . import __version__
from .cycles import Cycle
from .enriched import EnrichedCycle, FGAbelianGroup, GradedEnrichedCycle
from .gecc import build_gecc
from .ideal import EMPTY, GREVLEX, Ideal, MonomialOrder
from .polar import (
    PolarNotCurve,
    VerdictFailure,
    emptiness_report,
    family_additivity,
    le_attaching,
    main1_table,
    main2_pairs,
    milnor_number,
    polar_curve,
    relative_conormal_entries,
)
from .problem import ProblemError, ProblemSpec

OK, NEGATIVE = 0, 2


def _gens(I: Ideal, order: MonomialOrder) -> list:
    return I.basis_strings(order)


def _rational(c: Fraction) -> str:
    return str(Fraction(c))


def _dim(d) -> int | None:
    return None if d == EMPTY else int(d)


def group_table(table: dict | None) -> dict | None:
    if table is None:
        return None
    return {str(k): G.to_json() for k, G in sorted(table.items()) if not G.is_zero()}


def graded_cycle(E: GradedEnrichedCycle | None, order: MonomialOrder) -> list | None:
    if E is None:
        return None
    out = []
    for V in E.support():
        coeffs = {}
        for k in E.degrees():
            G = E[k].coefficient(V)
            if not G.is_zero():
                coeffs[str(k)] = G.to_json()
        out.append({"generators": _gens(V, order), "coeff_by_degree": coeffs})
    return sorted(out, key=lambda c: c["generators"])


def plain_cycle(C: Cycle, order: MonomialOrder) -> list:
    out = [{"generators": _gens(P, order), "multiplicity": m} for P, m in C]
    return sorted(out, key=lambda c: c["generators"])


def _morse(morse: list) -> dict:
    return {str(k): G.to_json() for k, G in sorted(morse, key=lambda kg: kg[0])}


# ---------------------------------------------------------------------------
# builders: each returns (result dict, exit status)


def gecc_result(spec: ProblemSpec, seed: int, order: MonomialOrder, **_) -> tuple:
    res = build_gecc(spec, seed)
    strata = [
        {
            "name": e.stratum.name,
            "conormal": _gens(e.conormal.ideal, order),
            "morse": _morse(e.morse),
            "saturation_indices": e.conormal.saturation_indices,
        }
        for e in res.entries
    ]
    return {"cycle": graded_cycle(res.cycle, order), "strata": strata}, OK


def conormal_result(spec: ProblemSpec, seed: int, order: MonomialOrder, **_) -> tuple:
    entries = relative_conormal_entries(spec, spec.f, seed)
    by_degree: dict = {}
    for e in entries:
        for k, G in e.morse:
            by_degree.setdefault(k, []).append((e.conormal.ideal, G))
    cycle = GradedEnrichedCycle({k: EnrichedCycle(v) for k, v in by_degree.items()})
    used = {e.stratum for e in entries}
    strata = [
        {
            "name": e.stratum,
            "conormal": _gens(e.conormal.ideal, order),
            "morse": _morse(e.morse),
            "saturation_indices": e.conormal.saturation_indices,
        }
        for e in entries
    ]
    skipped = sorted(st.name for st in spec.strata if st.name not in used)
    return {"f": str(spec.f), "cycle": graded_cycle(cycle, order), "strata": strata, "unused_strata": skipped}, OK


def _polar_doc(curve, order: MonomialOrder) -> dict:
    return {
        "f": str(curve.f),
        "g": str(curve.g),
        "polar_set": [
            {"stratum": p.stratum, "generators": _gens(p.ideal, order), "dim": _dim(p.dim)}
            for p in curve.pieces
        ],
        "is_curve": curve.is_curve,
        "offending": curve.offending,
        "cycle": graded_cycle(curve.cycle, order),
    }


def polar_result(spec: ProblemSpec, seed: int, order: MonomialOrder, **_) -> tuple:
    curve = polar_curve(spec, seed=seed)
    doc = _polar_doc(curve, order)
    doc["origin_in_polar_set"] = curve.contains_point(spec.origin())
    if not curve.is_curve:
        doc["diagnostics"] = {"code": PolarNotCurve.code}
    return doc, OK if curve.is_curve else NEGATIVE


def main1_result(spec: ProblemSpec, seed: int, order: MonomialOrder, **_) -> tuple:
    r = main1_table(spec, seed=seed)
    doc = {
        "verdicts": r.verdicts,
        "holds": r.holds,
        "phipsi": r.phipsi,
        "polar": _polar_doc(r.polar, order),
        "table": group_table(r.table),
        "contributions": [
            {
                "stratum": c.stratum,
                "component": _gens(c.component, order),
                "degree": c.degree,
                "coefficient": c.coefficient.to_json(),
                "intersection_number": c.number,
            }
            for c in sorted(r.contributions, key=lambda c: (c.degree, c.stratum))
        ],
    }
    return doc, OK if r.holds and r.phipsi else NEGATIVE


def main2_result(spec: ProblemSpec, seed: int, order: MonomialOrder, **_) -> tuple:
    try:
        r = main2_pairs(spec, seed)
    except VerdictFailure as exc:
        return {"holds": False, "reason": str(exc)}, NEGATIVE

    def row(item):
        P, k, G = item[:3]
        out = {"component": _gens(P, order), "degree": k, "coefficient": G.to_json()}
        if len(item) > 3:
            out["number_f"], out["number_g"] = item[3], item[4]
        return out

    doc = {
        "holds": True,
        "pair_f": group_table(r.pair_f),
        "pair_g": group_table(r.pair_g),
        "kept": sorted((row(i) for i in r.kept), key=lambda d: (d["degree"], d["component"])),
        "excluded": sorted((row(i) for i in r.excluded), key=lambda d: (d["degree"], d["component"])),
    }
    return doc, OK


def empty_result(spec: ProblemSpec, seed: int, order: MonomialOrder, trials: int = 3, **_) -> tuple:
    r = emptiness_report(spec, trials, seed)
    doc = {
        "items": r.items,
        "equivalent": r.equivalent,
        "genericity_failure": r.genericity_failure,
        "trials": [
            {
                "form": str(t.form),
                "origin_in_polar_set": t.origin_in_polar,
                "dim_f": t.dim_f,
                "dim_l": t.dim_l,
                "table_zero": t.table_zero,
            }
            for t in r.trials
        ],
    }
    return doc, OK


def _smooth_ambient(spec: ProblemSpec) -> bool:
    return all(c.is_zero() for c in spec.components)


def leattach_result(spec: ProblemSpec, seed: int, order: MonomialOrder, **_) -> tuple:
    if not _smooth_ambient(spec):
        raise ProblemError("the attaching number needs a smooth ambient space", "/space")
    g = spec.g
    z0 = g if g.total_degree() == 1 and g.constant_value() == 0 else None
    r = le_attaching(spec.f, z0, seed)
    doc = {
        "f": str(spec.f),
        "z0": str(r.form),
        "z0_sampled": z0 is None,
        "tau": r.tau,
        "polar_curve": plain_cycle(r.gamma, order),
        "mu": r.mu,
        "mu_slice": r.mu_slice,
        "oracle_holds": r.oracle_holds,
    }
    return doc, OK


def milnor_result(spec: ProblemSpec, seed: int, order: MonomialOrder, **_) -> tuple:
    if not _smooth_ambient(spec):
        raise ProblemError("the Milnor number needs a smooth ambient space", "/space")
    return {"f": str(spec.f), "point": [_rational(c) for c in spec.origin()], "mu": milnor_number(spec.f)}, OK


def family_result(spec: ProblemSpec, seed: int, order: MonomialOrder, **_) -> tuple:
    r = family_additivity(spec, seed=seed)
    samples = [
        {
            "value": _rational(s.value),
            "status": s.status,
            "residual": s.residual,
            "table": group_table(s.table),
            "points": [
                {"point": [_rational(c) for c in p], "multiplicity": m, "degree": k, "coefficient": G.to_json()}
                for p, m, k, G in sorted(s.points, key=lambda t: (t[2], t[0]))
            ],
        }
        for s in r.samples
    ]
    doc = {
        "holds": r.holds,
        "radius": _rational(spec.radius),
        "table": group_table(r.table),
        "samples": samples,
    }
    ok = r.holds and all(s.status != "MISMATCH" for s in r.samples)
    return doc, OK if ok else NEGATIVE


BUILDERS = {
    "gecc": gecc_result,
    "conormal": conormal_result,
    "polar": polar_result,
    "main1": main1_result,
    "main2": main2_result,
    "empty": empty_result,
    "leattach": leattach_result,
    "milnor": milnor_result,
    "family": family_result,
}


def build(command: str, spec: ProblemSpec, seed: int = 0, order: MonomialOrder = GREVLEX, trials: int = 3) -> tuple:
    """Result document and exit status for ``command`` on ``spec``."""
    result, status = BUILDERS[command](spec, seed=seed, order=order, trials=trials)
    doc = {
        "tool": "polarcycle",
        "version": __version__,
        "command": command,
        "input": spec.name,
        "seed": seed,
        "order": str(order),
        "status": status,
        "result": result,
    }
    return doc, status


def error_document(command: str, seed: int, code: str, message: str) -> dict:
    return {
        "tool": "polarcycle",
        "version": __version__,
        "command": command,
        "seed": seed,
        "status": 1,
        "error": {"code": code, "message": message},
    }


# ---------------------------------------------------------------------------
# text


def _group(doc: dict) -> str:
    return str(FGAbelianGroup.from_json(doc))


def _cycle_lines(cycle: list | None) -> list:
    if cycle is None:
        return ["  (not a curve)"]
    if not cycle:
        return ["  0"]
    lines = []
    for c in cycle:
        coeffs = ", ".join(f"deg {k}: {_group(g)}" for k, g in c["coeff_by_degree"].items())
        lines.append(f"  V({', '.join(c['generators'])})  [{coeffs}]")
    return lines


def _table_lines(table: dict | None) -> list:
    if table is None:
        return ["  (not computed)"]
    if not table:
        return ["  all degrees: 0"]
    return [f"  H^{k} = {_group(g)}" for k, g in table.items()]


def _yes(b) -> str:
    return "TRUE" if b else "FALSE"


def render_text(doc: dict) -> str:
    if "error" in doc:
        return f"error: {doc['error']['code']}: {doc['error']['message']}"
    cmd, r = doc["command"], doc["result"]
    lines = [f"{cmd} on {doc['input'] or '<input>'} (seed {doc['seed']})"]
    if cmd in ("gecc", "conormal"):
        if cmd == "conormal":
            lines.append(f"relative to f = {r['f']}")
        lines.append("cycle:")
        lines += _cycle_lines(r["cycle"])
        for s in r["strata"]:
            morse = ", ".join(f"deg {k}: {_group(g)}" for k, g in s["morse"].items()) or "0"
            lines.append(f"stratum {s['name']}: morse {morse}; conormal ({', '.join(s['conormal'])})")
    elif cmd == "polar":
        lines.append(f"f = {r['f']}, g = {r['g']}")
        for p in r["polar_set"]:
            dim = "empty" if p["dim"] is None else p["dim"]
            lines.append(f"polar set on {p['stratum']}: ({', '.join(p['generators'])}), dim {dim}")
        lines.append("polar curve:")
        lines += _cycle_lines(r["cycle"])
        if not r["is_curve"]:
            lines.append(f"POLAR_NOT_CURVE along {', '.join(r['offending'])}")
    elif cmd == "main1":
        v = r["verdicts"]
        lines.append("dimension verdicts: " + ", ".join(f"({k}) {_yes(v[k])}" for k in sorted(v)))
        lines.append(f"V(f) meet polar set lies in V(g): {_yes(r['phipsi'])}")
        lines.append("stalk cohomology of phi_g psi_f at the origin, as intersection numbers:")
        lines += _table_lines(r["table"])
    elif cmd == "main2":
        if not r["holds"]:
            lines.append(f"verdict FALSE: {r['reason']}")
        else:
            lines.append("pair (f, f on V(g)):")
            lines += _table_lines(r["pair_f"])
            lines.append("pair (g, g on V(f)):")
            lines += _table_lines(r["pair_g"])
            lines.append(f"components inside V(g): {len(r['excluded'])}")
    elif cmd == "empty":
        for k in sorted(r["items"]):
            lines.append(f"item {k}: {_yes(r['items'][k])}")
        for t in r["trials"]:
            lines.append(f"  l = {t['form']}: origin in polar set {_yes(t['origin_in_polar_set'])}")
        if r["genericity_failure"]:
            lines.append("GENERICITY_FAILURE: trials disagree")
    elif cmd == "leattach":
        lines.append(f"f = {r['f']}, z0 = {r['z0']}")
        lines.append(f"tau = {r['tau']}")
        lines.append(f"mu(f) + mu(f on V(z0)) = {r['mu']} + {r['mu_slice']}: {'agrees' if r['oracle_holds'] else 'DISAGREES'}")
    elif cmd == "milnor":
        return str(r["mu"])
    elif cmd == "family":
        if not r["holds"]:
            lines.append("verdict FALSE: V(g) meets the polar set in a curve at the origin")
        else:
            lines.append("at the origin:")
            lines += _table_lines(r["table"])
            for s in r["samples"]:
                lines.append(f"a = {s['value']}: {s['status']}")
                lines += _table_lines(s["table"])
                if s["residual"]:
                    lines.append(f"  irrational points, residual length {s['residual']}")
    lines.append("(cycles, not schemes)")
    return "\n".join(lines)
