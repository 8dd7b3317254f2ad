"""JSON formats for algebras, morphisms, posets, complexes and reports."""

from __future__ import annotations

import json
from typing import Any

from .alg import AlgebraMorphism, FiniteAlgebra
from .errors import InvalidStructure
from .exactla import Field

SCHEMA = "gs-cohomlab/1"


def load_json(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def dumps(obj) -> str:
    """Deterministic JSON (sorted keys, fixed separators)."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False, default=_default)


def _default(x):
    if isinstance(x, (set, frozenset)):
        return sorted(x, key=str)
    if isinstance(x, tuple):
        return list(x)
    return str(x)


def label(x) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(label(y) for y in x) + ")"
    return str(x)


def algebra_from_json(obj, field: Field | None = None) -> FiniteAlgebra:
    """``{"dim": n, "field": p, "unit": [...], "mult": [[i, j, k, c], ...]}``."""
    if not isinstance(obj, dict):
        raise InvalidStructure("algebra JSON must be an object")
    for key in ("dim", "unit", "mult"):
        if key not in obj:
            raise InvalidStructure(f"algebra JSON is missing field '{key}'")
    if field is None:
        if "field" not in obj:
            raise InvalidStructure("no field given for the algebra")
        field = Field.parse(obj["field"])
    n = obj["dim"]
    if not isinstance(n, int) or n < 1:
        raise InvalidStructure("field 'dim' must be a positive integer")
    unit = obj["unit"]
    if not isinstance(unit, list) or len(unit) != n:
        raise InvalidStructure(f"field 'unit' must be a list of length {n}")
    triples = []
    for t, entry in enumerate(obj["mult"]):
        if not isinstance(entry, list) or len(entry) != 4:
            raise InvalidStructure(f"mult[{t}] must be [i, j, k, c]")
        i, j, k, c = entry
        triples.append((i, j, k, field.decode(c)))
    return FiniteAlgebra.from_triples(field, n, triples, [field.decode(u) for u in unit], obj.get("labels"))


def algebra_to_json(a: FiniteAlgebra) -> dict:
    F = a.field
    mult = [[i, j, k, F.encode(c)] for i in range(a.dim) for j in range(a.dim) for k, c in sorted(a.prod[i][j].items())]
    return {"dim": a.dim, "field": F.to_json(), "unit": [F.encode(a.unit.get(i, 0)) for i in range(a.dim)],
            "mult": mult, "labels": [label(x) for x in a.labels]}


def morphism_from_json(obj, field: Field | None = None) -> AlgebraMorphism:
    """``{"source": algebra, "target": algebra, "matrix": target.dim x source.dim}``."""
    if not isinstance(obj, dict) or not {"source", "target", "matrix"} <= set(obj):
        raise InvalidStructure("morphism JSON needs 'source', 'target' and 'matrix'")
    if field is None and "field" in obj:
        field = Field.parse(obj["field"])
    A = algebra_from_json(obj["source"], field)
    B = algebra_from_json(obj["target"], field if field is not None else A.field)
    mat = obj["matrix"]
    if not isinstance(mat, list) or len(mat) != B.dim or any(not isinstance(r, list) or len(r) != A.dim for r in mat):
        raise InvalidStructure(f"'matrix' must be {B.dim} x {A.dim}")
    return AlgebraMorphism.from_matrix(A, B, [[A.field.decode(x) for x in r] for r in mat])


def matrix_to_json(m, field: Field) -> list:
    return [[field.encode(x) for x in row] for row in m.to_dense()]
