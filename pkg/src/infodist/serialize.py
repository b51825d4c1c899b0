"""JSON document formats for every exchangeable object.

All numbers are exact rational strings ("1/2", "0", "3"); floats never
appear.  Emission is deterministic: fixed key order, entries sorted by their
index tuples, two-space indentation.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .beliefs import HierarchyDistribution
from .chains import ChainSpec, UiReport
from .errors import StructureError
from .structures import Garbling, InfoStructure, PayoffStructure


def frac_str(x: Fraction) -> str:
    return str(x)


def parse_frac(s) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise StructureError(f"not a rational: {s!r}") from exc


def info_to_dict(u: InfoStructure) -> dict:
    return {
        "states": list(u.states),
        "entries": [{"k": k, "c": c, "d": d, "p": frac_str(p)}
                    for (k, c, d), p in sorted(u.entries.items())],
    }


def info_from_dict(doc: dict) -> InfoStructure:
    try:
        states = tuple(doc["states"])
        entries = {(e["k"], e["c"], e["d"]): parse_frac(e["p"])
                   for e in doc["entries"]}
    except (KeyError, TypeError) as exc:
        raise StructureError(f"malformed information structure: {exc}") from exc
    return InfoStructure(states, entries)


def payoff_to_dict(g: PayoffStructure) -> dict:
    return {
        "states": list(g.states),
        "L": g.size,
        "payoffs": [{"k": k, "i": i, "j": j, "g": frac_str(v)}
                    for (k, i, j), v in sorted(g.block.items())],
    }


def payoff_from_dict(doc: dict) -> PayoffStructure:
    try:
        states = tuple(doc["states"])
        size = int(doc["L"])
        block = {(e["k"], e["i"], e["j"]): parse_frac(e["g"])
                 for e in doc["payoffs"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise StructureError(f"malformed payoff structure: {exc}") from exc
    return PayoffStructure(states, size, block)


def garbling_to_dict(q: Garbling) -> dict:
    return {
        "rows": [{"from": s,
                  "to": [{"signal": t, "p": frac_str(p)}
                         for t, p in sorted(row.items())]}
                 for s, row in sorted(q.rows.items())],
    }


def garbling_from_dict(doc: dict) -> Garbling:
    try:
        rows = {r["from"]: {e["signal"]: parse_frac(e["p"]) for e in r["to"]}
                for r in doc["rows"]}
    except (KeyError, TypeError) as exc:
        raise StructureError(f"malformed garbling: {exc}") from exc
    return Garbling(rows)


def chain_to_dict(chain: ChainSpec) -> dict:
    return {
        "N": chain.size,
        "seed": chain.seed,
        "successors": [list(s) for s in chain.successors],
    }


def chain_from_dict(doc: dict) -> ChainSpec:
    try:
        return ChainSpec(int(doc["N"]),
                         tuple(tuple(s) for s in doc["successors"]),
                         doc.get("seed"))
    except (KeyError, TypeError, ValueError) as exc:
        raise StructureError(f"malformed chain: {exc}") from exc


def _fingerprint_json(fp):
    if isinstance(fp, Fraction):
        return frac_str(fp)
    if isinstance(fp, tuple):
        return [_fingerprint_json(x) for x in fp]
    return fp


def hierarchy_to_dict(h: HierarchyDistribution) -> dict:
    return {
        "order": h.order,
        "atoms": [{"state": s,
                   "type1": _fingerprint_json(f1),
                   "type2": _fingerprint_json(f2),
                   "p": frac_str(p)}
                  for (s, f1, f2, p) in h.atoms],
    }


def ui_report_to_dict(report: UiReport) -> dict:
    return {
        "N": report.size,
        "l_max": report.l_max,
        "alpha": frac_str(report.alpha),
        "tested": report.tested,
        "vacuous": report.vacuous,
        "passed": report.passed,
        "violation_counts": report.violation_counts(),
        "violations": [{"condition": rec.condition, "l": rec.l, "r": rec.r,
                        "signals": list(rec.fixed), "report": list(rec.report),
                        "value": frac_str(rec.value)}
                       for rec in report.violations],
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def load_path(path: str) -> dict:
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise StructureError(f"{path}: invalid JSON at line {exc.lineno}, "
                                 f"column {exc.colno}") from exc
