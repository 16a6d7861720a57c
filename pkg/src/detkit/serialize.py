"""JSON artifacts: schema validation, parsing and canonical printing."""

from __future__ import annotations

import json
import os
from functools import lru_cache
from pathlib import Path

import jsonschema
from referencing import Registry, Resource

from .homology import FreeComplex, GradedFreeModule
from .matrix import matrix_from_json, matrix_to_json
from .poly import Polynomial, Ring, parse_poly, poly_from_json, poly_to_json
from .rees import BigradedForm

KINDS = ("polynomial", "matrix", "complex", "ideal", "form", "report")


class SchemaViolation(ValueError):
    """A JSON artifact failed validation; ``path`` locates the offending node."""

    def __init__(self, kind: str, path: str, message: str):
        super().__init__(f"{kind} schema violation at {path}: {message}")
        self.kind = kind
        self.path = path


def schema_dir() -> Path:
    env = os.environ.get("DETKIT_SCHEMAS")
    if env:
        return Path(env)
    return Path(__file__).resolve().parents[2] / "schemas"


@lru_cache(maxsize=1)
def _registry() -> tuple[Registry, dict]:
    schemas = {}
    for kind in KINDS:
        with open(schema_dir() / f"{kind}.schema.json") as fh:
            schemas[kind] = json.load(fh)
    reg = Registry().with_resources(
        (s["$id"], Resource.from_contents(s)) for s in schemas.values())
    return reg, schemas


def _path(err) -> str:
    parts = "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in err.absolute_path)
    return "$" + parts


def validate(obj, kind: str) -> None:
    if kind not in KINDS:
        raise ValueError(f"unknown artifact kind {kind!r}")
    reg, schemas = _registry()
    v = jsonschema.Draft202012Validator(schemas[kind], registry=reg)
    errs = sorted(v.iter_errors(obj), key=lambda e: list(map(str, e.absolute_path)))
    if errs:
        best = jsonschema.exceptions.best_match(errs)
        raise SchemaViolation(kind, _path(best), best.message)


def detect_kind(obj) -> str:
    if not isinstance(obj, dict):
        raise SchemaViolation("artifact", "$", "top level must be an object")
    if "modules" in obj:
        return "complex"
    if "entries" in obj:
        return "matrix"
    if "terms" in obj:
        return "polynomial"
    if "gens" in obj:
        return "ideal"
    if "xdeg" in obj:
        return "form"
    if "claims" in obj:
        return "report"
    raise SchemaViolation("artifact", "$", "cannot tell which artifact this is")


# -- complexes and ideals -------------------------------------------------------------

def complex_to_json(C: FreeComplex) -> dict:
    return {"modules": [{"twists": list(F.twists)} for F in C.modules],
            "maps": [matrix_to_json(M) for M in C.maps],
            "labels": list(C.labels)}


def complex_from_json(obj: dict, p: int | None = None) -> FreeComplex:
    maps = [matrix_from_json(m, p=p) for m in obj["maps"]]
    if maps:
        ring = maps[0].ring
        maps = [matrix_from_json(m, ring=ring) for m in obj["maps"]]
    mods = [GradedFreeModule(tuple(m["twists"])) for m in obj["modules"]]
    return FreeComplex(mods, maps, list(obj.get("labels", [])))


def ideal_from_json(obj: dict, p: int | None = None) -> list[Polynomial]:
    R = Ring(obj["vars"], p)
    out = []
    for k, g in enumerate(obj["gens"]):
        try:
            out.append(parse_poly(R, g) if isinstance(g, str) else poly_from_json(g, R))
        except ValueError as exc:
            raise SchemaViolation("ideal", f"$.gens[{k}]", str(exc)) from None
    return out


def ideal_to_json(gens, ring: Ring | None = None) -> dict:
    gens = list(gens)
    ring = ring or gens[0].ring
    return {"vars": list(ring.names), "gens": [poly_to_json(g) for g in gens]}


# -- dispatch ------------------------------------------------------------------------------

def load(obj, kind: str | None = None, p: int | None = None):
    """Validate and parse an artifact; returns (kind, value)."""
    kind = kind or detect_kind(obj)
    validate(obj, kind)
    try:
        if kind == "polynomial":
            return kind, poly_from_json(obj, p=p)
        if kind == "matrix":
            return kind, matrix_from_json(obj, p=p)
        if kind == "complex":
            return kind, complex_from_json(obj, p)
        if kind == "ideal":
            return kind, ideal_from_json(obj, p)
        if kind == "form":
            return kind, BigradedForm.from_json(obj, p)
    except SchemaViolation:
        raise
    except (ValueError, KeyError) as exc:
        raise SchemaViolation(kind, "$", str(exc)) from None
    return kind, obj


def dump(kind: str, value) -> dict:
    if kind == "polynomial":
        return poly_to_json(value)
    if kind == "matrix":
        return matrix_to_json(value)
    if kind == "complex":
        return complex_to_json(value)
    if kind == "ideal":
        return ideal_to_json(value)
    if kind == "form":
        return value.to_json()
    return value


def io_roundtrip(obj, kind: str | None = None, p: int | None = None):
    """print(parse(obj)); the identity on canonical artifacts."""
    kind, value = load(obj, kind, p)
    return dump(kind, value)


def read_json(path: str):
    if path == "-":
        import sys
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def dumps(obj, pretty: bool = True) -> str:
    return json.dumps(obj, indent=2 if pretty else None, sort_keys=False)


__all__ = ["SchemaViolation", "validate", "detect_kind", "load", "dump", "io_roundtrip",
           "complex_to_json", "complex_from_json", "ideal_from_json", "ideal_to_json",
           "read_json", "dumps"]
