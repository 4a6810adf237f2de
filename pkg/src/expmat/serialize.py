"""JSON reading and writing for matrices, nilpotent matrices and witness chains."""

from __future__ import annotations

import json
from typing import Any, Optional

from .birat import ProjMap, Witness, WitnessStep
from .errors import InputError
from .field import FieldCtx, field_from_json, field_from_string
from .matrix import NilMatrix, PolyMatrix
from .poly import Poly

SCHEMA = "expmat-report/1"


def dumps(doc: Any, compact: bool = False) -> str:
    """Canonical text: sorted keys, fixed separators."""
    if compact:
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return json.dumps(doc, sort_keys=True, indent=2)


def load_file(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg} at line {exc.lineno}") from exc


def resolve_field(doc: dict, override: Optional[FieldCtx]) -> FieldCtx:
    spec = doc.get("field")
    if spec is None:
        if override is None:
            raise InputError("no field given: add a 'field' entry or pass --field")
        return override
    ctx = field_from_string(str(spec)) if isinstance(spec, (str, int)) else field_from_json(spec)
    if override is not None and override != ctx:
        raise InputError(f"--field {override!r} contradicts the file's field {ctx!r}")
    return ctx


def _square(doc: dict) -> list:
    if not isinstance(doc, dict) or not isinstance(doc.get("entries"), list):
        raise InputError("matrix must be an object with an 'entries' array")
    rows = doc["entries"]
    n = len(rows)
    if n == 0 or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise InputError("'entries' must be a nonempty square array")
    if "n" in doc and doc["n"] != n:
        raise InputError(f"declared n = {doc['n']} but entries are {n}x{n}")
    return rows


def matrix_from_json(doc: dict, override: Optional[FieldCtx] = None) -> PolyMatrix:
    """Entries are coefficient arrays in T (low to high); a bare scalar is a constant.

    Over GF(p^m), m > 1, each coefficient is itself a digit list, so an
    entry is a list of lists.
    """
    ctx = resolve_field(doc, override)
    rows = _square(doc)
    ents = []
    for r in rows:
        ents.append([Poly.from_json(ctx, e) if isinstance(e, list)
                     else Poly._make(ctx, [ctx.from_json(e)]) for e in r])
    return PolyMatrix(ctx, ents)


def nil_from_json(doc: dict, override: Optional[FieldCtx] = None) -> NilMatrix:
    ctx = resolve_field(doc, override)
    rows = _square(doc)
    return NilMatrix(ctx, [[ctx.from_json(x) for x in r] for r in rows])


def nil_to_json(m: NilMatrix) -> dict:
    return m.to_json()


def step_from_json(doc: dict) -> WitnessStep:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise InputError("witness step needs a 'kind'")
    src = matrix_from_json(doc["from"])
    dst = matrix_from_json(doc["to"])
    ctx = src.ctx
    kind = doc["kind"]
    if kind == "conjugation":
        p = doc.get("P")
        if not isinstance(p, list):
            raise InputError("conjugation step needs 'P'")
        return WitnessStep(kind, src, dst, p=[[ctx.from_json(x) for x in r] for r in p],
                           note=doc.get("note"))
    if kind == "birational":
        return WitnessStep(kind, src, dst, sigma=ProjMap.from_json(ctx, doc["sigma"]),
                           sigma_inv=ProjMap.from_json(ctx, doc["sigma_inverse"]),
                           note=doc.get("note"))
    raise InputError(f"unknown step kind {kind!r}")


def witness_from_json(doc: dict) -> Witness:
    if not isinstance(doc, dict) or "steps" not in doc:
        raise InputError("witness must be an object with 'start', 'end' and 'steps'")
    return Witness(matrix_from_json(doc["start"]), matrix_from_json(doc["end"]),
                   [step_from_json(s) for s in doc["steps"]])


def witnesses_in(doc: Any) -> list[dict]:
    """Collect chains from a bare chain, a report holding 'witness', or a list/'chains' of them."""
    if isinstance(doc, list):
        return [w for d in doc for w in witnesses_in(d)]
    if not isinstance(doc, dict):
        raise InputError("witness file must hold a JSON object or array")
    if "chains" in doc:
        return witnesses_in(doc["chains"])
    if "steps" in doc:
        return [doc]
    if "witness" in doc:
        return [doc["witness"]]
    raise InputError("no witness chain found in file")
