"""Module descriptors and weight-table dumps.

Descriptors name a module by its parameters:

    {"schema_version": 1, "kind": "jet", "n", "lambda", "c", "alpha", "e"}
    {"schema_version": 1, "kind": "verma", "triangular": {...}, "inducing": {...},
     "depth": D, "window": W}

Dumps add the computed window data so that a rerun can be compared:

    {"schema_version": 1, "kind": "jet-dump", "module": <jet descriptor>,
     "radius", "gen_radius", "weight_table": [{"label", "multiplicity"}]}
    {"schema_version": 1, "kind": "verma-dump", "module": <verma descriptor>,
     "quotient": bool, "weight_table": [...], "singular": [...],
     "leakage": [...], "flags": {...}}
"""

from __future__ import annotations

from .io import DescriptorError, check_fields, check_version, expect_int
from .jet import JetParams, JetWindow, jet_params_from_json, jet_params_to_json
from .verma import (
    TriangularData,
    build_verma,
    find_singular_vectors,
    inducing_from_json,
    irreducible_quotient,
)

SCHEMA_VERSION = 1


def table_to_json(table: dict) -> list:
    return [{"label": list(lab), "multiplicity": k} for lab, k in sorted(table.items())]


def table_from_json(rows, field: str = "weight_table") -> dict:
    if not isinstance(rows, list):
        raise DescriptorError(f"field '{field}': expected a list")
    out = {}
    for i, row in enumerate(rows):
        check_fields(row, {"label", "multiplicity"}, f"{field}[{i}]")
        lab = row["label"]
        if not isinstance(lab, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in lab):
            raise DescriptorError(f"field '{field}[{i}].label': expected a list of integers")
        out[tuple(lab)] = expect_int(row["multiplicity"], f"{field}[{i}].multiplicity", 0)
    return out


def verma_descriptor(X, tri: TriangularData, depth: int, window: int) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "verma",
        "triangular": tri.to_json(),
        "inducing": X.to_json(),
        "depth": depth,
        "window": window,
    }


def verma_from_descriptor(data: dict):
    check_version(data, SCHEMA_VERSION, "verma module")
    check_fields(data, {"schema_version", "kind", "triangular", "inducing", "depth", "window"}, "verma module")
    if data["kind"] != "verma":
        raise DescriptorError(f"field 'kind': expected 'verma', got {data['kind']!r}")
    tri = TriangularData.from_json(data["triangular"])
    X = inducing_from_json(data["inducing"], tri)
    depth = expect_int(data["depth"], "depth", 0)
    window = expect_int(data["window"], "window", 0)
    return build_verma(X, tri, depth, window)


def load_module(data: dict):
    """A jet descriptor, verma descriptor or dump -> (kind, object, extra info)."""
    if not isinstance(data, dict):
        raise DescriptorError("expected a JSON object")
    kind = data.get("kind")
    if kind == "jet":
        return "jet", jet_params_from_json(data)
    if kind == "verma":
        return "verma", verma_from_descriptor(data)
    if kind in ("jet-dump", "verma-dump"):
        return kind, data
    raise DescriptorError(f"field 'kind': unknown module kind {kind!r}")


def jet_dump(params: JetParams, radius: int = 1, gen_radius: int | None = None) -> dict:
    view = JetWindow(params, radius, gen_radius)
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "jet-dump",
        "module": jet_params_to_json(params),
        "radius": radius,
        "gen_radius": view.gen_radius,
        "weight_table": table_to_json(view.multiplicities()),
    }


def verma_dump(mod, quotient: bool = True) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "kind": "verma-dump",
        "module": verma_descriptor(mod.X, mod.tri, mod.depth, mod.window),
        "quotient": quotient,
    }
    if quotient:
        q = irreducible_quotient(mod)
        out["weight_table"] = table_to_json(q.weight_table())
        reports = q.singular
        unreliable = q.window_unreliable
    else:
        out["weight_table"] = table_to_json(mod.weight_table())
        reports = [find_singular_vectors(mod, lv) for lv in range(1, mod.depth + 1)]
        unreliable = any(r.window_unreliable for r in reports)
    out["singular"] = [
        {"level": r.level, "label": list(lab), "dim": len(v)} for r in reports for lab, v in sorted(r.spaces.items())
    ]
    out["leakage"] = [rec.to_json() for rec in mod.leakage[:50]]
    out["flags"] = {
        "window_limited": True,
        "window_unreliable": unreliable,
        "leakage_terms": mod.leak_count,
    }
    return out


def view_from_dump(data: dict):
    """Rebuild the module window a dump was made from: (view, stored table)."""
    check_version(data, SCHEMA_VERSION, "dump")
    kind = data.get("kind")
    if kind == "jet-dump":
        check_fields(data, {"schema_version", "kind", "module", "radius", "gen_radius", "weight_table"}, "jet dump")
        params = jet_params_from_json(data["module"])
        radius = expect_int(data["radius"], "radius", 0)
        gen = expect_int(data["gen_radius"], "gen_radius", 0)
        return JetWindow(params, radius, gen), table_from_json(data["weight_table"])
    if kind == "verma-dump":
        check_fields(
            data,
            {"schema_version", "kind", "module", "quotient", "weight_table", "singular", "leakage", "flags"},
            "verma dump",
        )
        mod = verma_from_descriptor(data["module"])
        if not isinstance(data["quotient"], bool):
            raise DescriptorError("field 'quotient': expected a boolean")
        view = irreducible_quotient(mod) if data["quotient"] else mod
        return view, table_from_json(data["weight_table"])
    raise DescriptorError(f"field 'kind': expected a dump, got {kind!r}")
