"""Problem files: JSON schemas, loading, and canonical serialization.

A problem file carries a schema version plus one of: a module (with an
optional descent variable), or a tower.  Polynomials are text in the
input grammar; unknown fields are rejected.
"""

from __future__ import annotations

import json

import jsonschema

from .errors import BadVariable, SchemaError
from .presentations import PresentedModule
from .series import RingDescriptor, parse_int_poly, render_poly
from .towers import Tower

RING_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["p", "N", "vars", "D"],
    "properties": {
        "p": {"type": "integer", "minimum": 2},
        "N": {"type": "integer", "minimum": 1},
        "vars": {"type": "array", "items": {"type": "string"}},
        "D": {"type": "integer", "minimum": 1},
    },
}

MODULE_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["ring", "generators", "relations"],
    "properties": {
        "ring": RING_SCHEMA,
        "generators": {"type": "integer", "minimum": 0},
        "relations": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "string"}},
        },
    },
}

TOWER_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["p", "N", "D", "d0", "levels"],
    "properties": {
        "p": {"type": "integer", "minimum": 2},
        "N": {"type": "integer", "minimum": 1},
        "D": {"type": "integer", "minimum": 1},
        "d0": {"type": "integer", "minimum": 1},
        "levels": {"type": "array", "items": MODULE_SCHEMA, "minItems": 1},
    },
}

PROBLEM_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["schema"],
    "properties": {
        "schema": {"type": "integer", "enum": [1]},
        "module": MODULE_SCHEMA,
        "variable": {"type": "string"},
        "tower": TOWER_SCHEMA,
        "options": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "m_grid": {"type": "array", "items": {"type": "integer"}},
                "offsets": {"type": "array", "items": {"type": "integer"}},
            },
        },
    },
}


def _validate(doc, schema):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"invalid problem file: {exc.message}") from exc


def module_from_json(doc, N=None, D=None) -> PresentedModule:
    """Instantiate a module document, optionally overriding N or D."""
    _validate(doc, MODULE_SCHEMA)
    r = doc["ring"]
    ring = RingDescriptor(r["p"], N or r["N"], D or r["D"], tuple(r["vars"]))
    k = doc["generators"]
    cols = []
    for col in doc["relations"]:
        if len(col) != k:
            raise SchemaError(
                f"relation column {col} has {len(col)} entries, need {k}")
        cols.append(tuple(parse_int_poly(text, ring.names) for text in col))
    return PresentedModule(ring, k, tuple(cols))


def module_to_json(M: PresentedModule) -> dict:
    ring = M.ring
    return {
        "ring": {"p": ring.p, "N": ring.N, "vars": list(ring.names), "D": ring.D},
        "generators": M.gens,
        "relations": [[render_poly(dict(e), ring.names) for e in col]
                      for col in M.columns],
    }


def tower_from_json(doc, N=None, D=None) -> Tower:
    _validate(doc, TOWER_SCHEMA)
    levels = []
    for level_doc in doc["levels"]:
        r = level_doc["ring"]
        if (r["p"], r["N"], r["D"]) != (doc["p"], doc["N"], doc["D"]):
            raise SchemaError("tower levels must share p, N, D")
        levels.append(module_from_json(level_doc, N=N, D=D))
    try:
        return Tower(doc["d0"], tuple(levels))
    except Exception as exc:
        raise SchemaError(f"bad tower: {exc}") from exc


def load_problem(path: str, N=None, D=None) -> dict:
    """Parse and validate a problem file; returns instantiated objects.

    The result maps "module" to a PresentedModule, "variable" to the
    resolved 1-based index, "tower" to a Tower, "options" to a dict; only
    the keys present in the file appear.
    """
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from exc
    _validate(doc, PROBLEM_SCHEMA)
    out = {}
    if "module" in doc:
        M = module_from_json(doc["module"], N=N, D=D)
        out["module"] = M
        ring = M.ring
        if "variable" in doc:
            name = doc["variable"]
            if name not in ring.names:
                raise SchemaError(f"variable {name!r} not among {ring.names}")
            idx = ring.names.index(name) + 1
            if idx != ring.d:
                raise BadVariable(
                    f"descent variable must be the last one ({ring.names[-1]!r})")
            out["variable"] = idx
        else:
            out["variable"] = ring.d
    if "tower" in doc:
        out["tower"] = tower_from_json(doc["tower"], N=N, D=D)
    out["options"] = doc.get("options", {})
    return out


# machine-readable command results, one schema per subcommand

RESULT_SCHEMAS = {
    "charideal": {
        "type": "object",
        "additionalProperties": False,
        "required": ["command", "charideal", "is_zero", "mu", "poly"],
        "properties": {
            "command": {"const": "charideal"},
            "charideal": {"type": "string"},
            "is_zero": {"type": "boolean"},
            "mu": {"type": "integer"},
            "poly": {"type": "string"},
            "factors": {"type": "array",
                        "items": {"type": "array",
                                  "prefixItems": [{"type": "string"},
                                                  {"type": "integer"}]}},
        },
    },
    "pseudonull": {
        "type": "object",
        "additionalProperties": False,
        "required": ["command", "pseudo_null"],
        "properties": {
            "command": {"const": "pseudonull"},
            "pseudo_null": {"type": "boolean"},
        },
    },
    "descent-check": {
        "type": "object",
        "additionalProperties": False,
        "required": ["command", "ch_torsion", "ch_projected", "ch_quotient",
                     "identity_holds", "zero_case"],
        "properties": {
            "command": {"const": "descent-check"},
            "ch_torsion": {"type": "string"},
            "ch_projected": {"type": "string"},
            "ch_quotient": {"type": "string"},
            "identity_holds": {"type": "boolean"},
            "zero_case": {"type": "boolean"},
            "rank_info": {"type": ["array", "null"],
                          "items": {"type": "integer"}},
        },
    },
    "tower-limit": {
        "type": "object",
        "additionalProperties": False,
        "required": ["command", "verdict", "levels"],
        "properties": {
            "command": {"const": "tower-limit"},
            "verdict": {"enum": ["Defined", "HypothesisFailed"]},
            "failed_level": {"type": ["integer", "null"]},
            "failed_hypothesis": {"type": ["string", "null"]},
            "levels": {"type": "array"},
            "limit": {"type": ["string", "null"]},
        },
    },
    "oracle-growth": {
        "type": "object",
        "additionalProperties": False,
        "required": ["command", "mu", "lambda", "stable"],
        "properties": {
            "command": {"const": "oracle-growth"},
            "mu": {"type": "integer"},
            "lambda": {"type": "integer"},
            "stable": {"type": "boolean"},
        },
    },
    "selftest": {
        "type": "object",
        "additionalProperties": False,
        "required": ["command", "seed", "passed", "failed", "checks"],
        "properties": {
            "command": {"const": "selftest"},
            "seed": {"type": "integer"},
            "passed": {"type": "integer"},
            "failed": {"type": "integer"},
            "checks": {"type": "array",
                       "items": {"type": "array",
                                 "prefixItems": [{"type": "string"},
                                                 {"type": "string"}]}},
        },
    },
}


def validate_result(doc: dict):
    command = doc.get("command")
    if command not in RESULT_SCHEMAS:
        raise SchemaError(f"unknown result command {command!r}")
    _validate(doc, RESULT_SCHEMAS[command])
    return doc
