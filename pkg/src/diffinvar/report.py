"""Plain-data views of results, rendered as stable JSON or readable text."""
from __future__ import annotations

import json
from fractions import Fraction

from .bounds import Magnitude


def _poly(p, names):
    return p.format(names)


def system_dict(sys, names) -> dict:
    return {
        "equations": [_poly(p, names) for p in sys.equations],
        "inequations": [_poly(p, names) for p in sys.inequations],
    }


def triangulate_report(results, names) -> dict:
    return {"branches": [dict(system_dict(sys, names), events=[_event(e, names) for e in trace])
                         for sys, trace in results]}


def _event(e, names) -> dict:
    d = {"kind": e.kind, "polys": [_poly(p, names) for p in e.polys]}
    if e.kind in ("SplitInitial", "SplitSeparant"):
        d["zero"] = e.zero
    return d


def _assumption(status, names):
    if status is None:
        return None
    out = []
    for e in status.entries:
        kind = type(e).__name__
        d = {"var": names[e.var], "kind": kind}
        if kind == "Witnessed":
            d["multiplier"] = _poly(e.s, names)
        if kind == "Unknown":
            d["reason"] = e.reason
        out.append(d)
    return out


def rga_report(dec, names, invariants=None) -> dict:
    branches = []
    for i, b in enumerate(dec.branches):
        d = system_dict(b.system, names)
        d["status"] = {
            "regular_algebraic": b.regularity.regular_algebraic,
            "regular_differential": b.regularity.regular_differential,
            "explicit_nondifferential_inequations": b.regularity.explicit_nondiff_ineqs,
            "regular_set": b.regularity.regular_set_verified,
        }
        d["assumption"] = _assumption(b.assumption, names)
        d["triangulate_calls"] = b.triangulate_calls
        if invariants is not None:
            d["invariant"] = branch_report_dict(invariants.branches[i], names)
        branches.append(d)
    return {"branches": branches}


def branch_report_dict(r, names) -> dict:
    return {
        "theorem": r.theorem,
        "checks": dict(r.checks),
        "generators": [_poly(p, names) for p in r.generators],
        "inequations": [_poly(p, names) for p in r.inequations],
    }


def verdict_dict(v, names) -> dict:
    return {
        "verdict": v.value,
        "assumptions": list(v.assumptions),
        "witness": [{"index": i, "lie_derivative": _poly(lp, names), "evidence": ev} for i, lp, ev in v.witness],
    }


def _int_field(v: int) -> str:
    if v.bit_length() <= 10_000:
        return str(v)
    return f"<integer with {v.bit_length()} bits>"


def magnitude_dict(m: Magnitude) -> dict:
    d = {"height": m.height, "upper_bound": m.upper}
    if m.height == 0:
        d["exact"] = _int_field(m.top)
        d["text"] = ("<= " if m.upper else "") + d["exact"]
    else:
        d["top"] = _int_field(m.top)
        d["text"] = ("<= " if m.upper else "") + "2^" * m.height + f"({d['top']})"
    return d


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):
        return x.item()
    return x


def to_json(report: dict) -> str:
    return json.dumps(_jsonable(report), sort_keys=True, indent=2)


def to_text(report: dict, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for k in sorted(report):
        v = report[k]
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(to_text(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for i, item in enumerate(v):
                lines.append(f"{pad}  [{i}]")
                lines.append(to_text(item, indent + 2))
        elif isinstance(v, list):
            lines.append(f"{pad}{k}: " + ", ".join(str(_jsonable(x)) for x in v))
        else:
            lines.append(f"{pad}{k}: {_jsonable(v)}")
    return "\n".join(l for l in lines if l)


def serialize(report: dict, fmt: str = "json") -> bytes:
    text = to_json(report) if fmt == "json" else to_text(report)
    return (text + "\n").encode()
