"""JSON encoding and decoding for every public value, schema quiver-moduli/1.

Rationals serialize as "num/den" strings, projective points as two-element
arrays of such strings, zero sections as the string "zero".  Emission is
deterministic: dict keys are sorted and all collections are in canonical
order, so identical inputs give byte-identical output.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from . import chambers, configs, curves
from .projline import Moebius, ProjPoint, Section

SCHEMA = "quiver-moduli/1"


class ParseError(ValueError):
    pass


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {s!r}: {exc}")


def point_json(p: ProjPoint) -> list[str]:
    return [frac_str(p.c0), frac_str(p.c1)]


def parse_point(v) -> ProjPoint:
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise ParseError(f"bad point {v!r}")
    return ProjPoint(parse_frac(v[0]), parse_frac(v[1]))


def section_json(s: Section):
    return "zero" if s is None else point_json(s)


def parse_section(v) -> Section:
    if v == "zero":
        return None
    return parse_point(v)


def moebius_json(m: Moebius) -> list[list[str]]:
    return [[frac_str(m.m00), frac_str(m.m01)], [frac_str(m.m10), frac_str(m.m11)]]


def quiver_json(q, d=None, theta=None) -> dict:
    out = {
        "schema": SCHEMA,
        "type": "quiver",
        "vertices": list(q.vertices),
        "arrows": [[s, t] for s, t in q.arrows],
    }
    if d is not None:
        out["dimensions"] = {v: int(d[v]) for v in q.vertices}
    if theta is not None:
        out["weight"] = {v: frac_str(Fraction(theta[v])) for v in q.vertices}
    return out


def parse_quiver(doc):
    from .quiverwt import Quiver

    try:
        q = Quiver(tuple(doc["vertices"]), tuple((s, t) for s, t in doc["arrows"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad quiver: {exc}")
    d = {v: int(x) for v, x in doc["dimensions"].items()} if "dimensions" in doc else None
    theta = (
        {v: parse_frac(x) for v, x in doc["weight"].items()} if "weight" in doc else None
    )
    return q, d, theta


def config_json(c: configs.Config) -> dict:
    mode = "qn" if isinstance(c, configs.QnConfig) else "pn"
    return {
        "schema": SCHEMA,
        "type": "config",
        "mode": mode,
        "sections": [section_json(s) for s in c.sections],
    }


def parse_config(d) -> configs.Config:
    try:
        mode = d["mode"]
        secs = tuple(parse_section(v) for v in d["sections"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad configuration: {exc}")
    if mode == "qn":
        return configs.QnConfig(secs)
    if mode == "pn":
        return configs.PnConfig(secs)
    raise ParseError(f"unknown mode {mode!r}")


def weight_json(w) -> dict:
    if isinstance(w, chambers.QnWeight):
        return {
            "schema": SCHEMA,
            "type": "weight",
            "mode": "qn",
            "theta": [frac_str(v) for v in w.theta],
        }
    return {
        "schema": SCHEMA,
        "type": "weight",
        "mode": "pn",
        "eta": [frac_str(w.eta1), frac_str(w.eta2)],
        "theta": [frac_str(v) for v in w.theta],
    }


def parse_weight(d):
    try:
        mode = d["mode"]
        theta = tuple(parse_frac(v) for v in d["theta"])
        if mode == "qn":
            return chambers.QnWeight(theta)
        if mode == "pn":
            e1, e2 = (parse_frac(v) for v in d["eta"])
            return chambers.PnWeight(e1, e2, theta)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad weight: {exc}")
    raise ParseError(f"unknown mode {mode!r}")


def wall_json(w) -> list[int]:
    return list(w.j)


def verdict_json(v: configs.Verdict) -> dict:
    witness: Any = None
    if isinstance(v.witness, frozenset):
        witness = sorted(v.witness)
    elif isinstance(v.witness, tuple):
        witness = [
            sorted(x) if isinstance(x, frozenset) else x for x in v.witness
        ]
    return {"verdict": v.kind, "witness": witness}


def chamber_complex_json(mode: str, n: int, with_adjacency: bool = True) -> dict:
    walls = chambers.enumerate_walls(mode, n)
    chs = chambers.enumerate_chambers(mode, n)
    out = {
        "schema": SCHEMA,
        "type": "chamber-complex",
        "mode": mode,
        "n": n,
        "walls": [wall_json(w) for w in walls],
        "chambers": [
            {
                "signs": "".join("+" if s > 0 else "-" for s in c.signs),
                "witness": weight_json(c.witness),
            }
            for c in chs
        ],
    }
    if with_adjacency:
        out["adjacency"] = [list(e) for e in chambers.chamber_adjacency(mode, n, chs)]
    return out


def tree_json(t: curves.PointedTree) -> dict:
    return {
        "schema": SCHEMA,
        "type": "tree",
        "components": list(t.components),
        "edges": [
            {"ends": list(e.ends), "nodes": [point_json(e.nodes[0]), point_json(e.nodes[1])]}
            for e in t.edges
        ],
        "marks": [[lb, comp, point_json(p)] for lb, comp, p in t.marks],
    }


def parse_tree(d) -> curves.PointedTree:
    try:
        comps = tuple(d["components"])
        edges = tuple(
            curves.TreeEdge(
                (e["ends"][0], e["ends"][1]),
                (parse_point(e["nodes"][0]), parse_point(e["nodes"][1])),
            )
            for e in d["edges"]
        )
        marks = tuple((int(lb), comp, parse_point(p)) for lb, comp, p in d["marks"])
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"bad tree: {exc}")
    return curves.PointedTree(comps, edges, marks)


def chain_json(c: curves.Chain) -> dict:
    return {
        "schema": SCHEMA,
        "type": "chain",
        "components": [
            [[lb, point_json(p)] for lb, p in comp] for comp in c.components
        ],
    }


def parse_chain(d) -> curves.Chain:
    try:
        comps = tuple(
            tuple((int(lb), parse_point(p)) for lb, p in comp)
            for comp in d["components"]
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"bad chain: {exc}")
    return curves.Chain(comps)


def family_json(f: curves.LimitFamily) -> dict:
    charts = {}
    for label, row in f.charts.items():
        key = str(label) if isinstance(label, int) else ",".join(str(i) for i in label)
        charts[key] = [point_json(p) for p in row]
    return {
        "schema": SCHEMA,
        "type": "family",
        "mode": f.mode,
        "n": f.n,
        "a": None if f.a is None else [frac_str(v) for v in f.a],
        "charts": charts,
    }


def parse_family(d) -> curves.LimitFamily:
    try:
        mode = d["mode"]
        n = int(d["n"])
        a = None if d.get("a") is None else tuple(parse_frac(v) for v in d["a"])
        charts = {}
        for key, row in d["charts"].items():
            pts = tuple(parse_point(p) for p in row)
            if mode == "lm":
                charts[int(key)] = pts
            else:
                charts[tuple(int(x) for x in key.split(","))] = pts
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad family: {exc}")
    return curves.LimitFamily(mode, n, charts, a)


def parse_any(d):
    if not isinstance(d, dict) or "type" not in d:
        raise ParseError("expected an object with a 'type' field")
    t = d["type"]
    if t == "config":
        return parse_config(d)
    if t == "weight":
        return parse_weight(d)
    if t == "tree":
        return parse_tree(d)
    if t == "chain":
        return parse_chain(d)
    if t == "family":
        return parse_family(d)
    raise ParseError(f"unknown type {t!r}")


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc))
