"""JSON Schemas (draft 2020-12) for ``provlab <command> --json`` output.

Every document is an envelope ``{command, params, result, exit_code}``;
``SCHEMAS[command]`` describes the whole envelope for that command.
Big integers (Gödel numbers) travel as decimal strings.
"""

from __future__ import annotations

_DEC = {"type": "string", "pattern": "^[0-9]+$"}
_HEX = {"type": "string", "pattern": "^0x[0-9a-f]+$"}
_ERROR = {"type": "object", "required": ["error"], "properties": {"error": {"type": "string"}}}

_MODEL = {
    "type": "object",
    "required": ["worlds", "edges", "valuation", "root"],
    "properties": {
        "worlds": {"type": "integer", "minimum": 1},
        "edges": {"type": "array", "items": {"type": "array", "items": {"type": "integer"},
                                             "minItems": 2, "maxItems": 2}},
        "valuation": {"type": "object", "additionalProperties": {"type": "array", "items": {"type": "integer"}}},
        "root": {"type": "integer"},
    },
}

_TRACE = {
    "type": "object",
    "required": ["root", "nodes"],
    "properties": {
        "nodes": {"type": "array", "items": {
            "type": "object",
            "required": ["id", "sequent", "rule", "premises"],
            "properties": {
                "id": {"type": "integer"},
                "rule": {"enum": ["axiom", "bottom", "imp_right", "imp_left", "weaken", "gl_box", "k4_box"]},
                "principal": {"type": ["string", "null"]},
                "sequent": {"type": "string"},
                "premises": {"type": "array", "items": {"type": "integer"}},
            },
        }},
    },
}

VERDICT = {
    "type": "object",
    "required": ["verdict", "mode", "formula", "search_nodes"],
    "properties": {
        "verdict": {"enum": ["theorem", "non-theorem"]},
        "mode": {"enum": ["gl", "k4"]},
        "formula": {"type": "string"},
        "search_nodes": {"type": "integer"},
        "trace_size": {"type": "integer"},
        "trace": _TRACE,
        "countermodel": _MODEL,
        "instance": {"type": "object"},
    },
    "oneOf": [
        {"properties": {"verdict": {"const": "theorem"}}, "required": ["trace_size"]},
        {"properties": {"verdict": {"const": "non-theorem"}}, "required": ["countermodel"]},
    ],
}

_PROOF = {"type": "array", "items": {
    "type": "object", "required": ["formula", "just"],
    "properties": {"formula": {"type": "string"},
                   "just": {"type": "object", "required": ["rule"],
                            "properties": {"rule": {"enum": ["axiom", "given", "sigma1", "mp"]}}}},
}}

_CENSUS = {
    "type": "object",
    "required": ["L", "range_max", "m", "program_count", "k_values"],
    "properties": {
        "L": {"type": "integer", "minimum": 0},
        "range_max": {"type": "integer"},
        "m": {"type": "integer", "minimum": 1},
        "program_count": {"type": "integer"},
        "k_values": {"type": "array", "items": {
            "type": "array", "minItems": 2, "maxItems": 2,
            "prefixItems": [{"type": "integer"}, {"type": ["integer", "null"]}]}},
        "figure": {"type": "string"},
    },
}

RESULTS = {
    "parse": {"type": "object", "required": ["canonical", "free_vars"],
              "properties": {"canonical": {"type": "string"},
                             "free_vars": {"type": "array", "items": {"type": "integer"}}}},
    "encode": {"type": "object", "required": ["formula", "decimal", "hex", "bytes"],
               "properties": {"formula": {"type": "string"}, "decimal": _DEC, "hex": _HEX,
                              "bytes": {"type": "integer"}}},
    "decode": {"type": "object", "required": ["formula"], "properties": {"formula": {"type": "string"}}},
    "diagonalize": {
        "type": "object",
        "required": ["q", "q_hex", "s", "s_hex", "fixed_point", "decode_roundtrip", "template", "sentence"],
        "properties": {"q": _DEC, "s": _DEC, "q_hex": _HEX, "s_hex": _HEX,
                       "fixed_point": {"type": "boolean"}, "decode_roundtrip": {"type": "boolean"},
                       "template": {"type": "string"}, "sentence": {"type": "string"}},
    },
    "prove-gl": VERDICT,
    "paradox": VERDICT,
    "incompleteness": VERDICT,
    "census": _CENSUS,
    "ktable": {"type": "object", "required": ["rows"], "properties": {
        "rows": {"type": "array", "items": {
            "type": "object", "required": ["L", "m", "upper", "program_count", "range_max"],
            "properties": {k: {"type": "integer"} for k in ["L", "m", "upper", "program_count", "range_max"]}}},
        "figure": {"type": "string"}}},
    "chaitin-extract": {"type": "object", "required": ["found"], "properties": {
        "found": {"type": "boolean"}, "x": {"type": "integer"}, "proof": _PROOF,
        "proof_bytes": {"type": "integer"}, "k_of_x": {"type": "integer"},
        "contradiction": {"oneOf": [{"type": "null"}, {"type": "array", "items": _PROOF,
                                                        "minItems": 2, "maxItems": 2}]}}},
    "enumerate-proofs": {"type": "object", "required": ["count", "proofs"], "properties": {
        "count": {"type": "integer"},
        "proofs": {"type": "array", "items": {"type": "object", "required": ["bytes", "lines"],
                                              "properties": {"bytes": {"type": "integer"}, "lines": _PROOF}}}}},
}


def envelope(result_schema: dict) -> dict:
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "type": "object",
        "required": ["command", "params", "result", "exit_code"],
        "properties": {
            "command": {"type": "string"},
            "params": {"type": "object"},
            "result": {"anyOf": [result_schema, _ERROR]},
            "exit_code": {"enum": [0, 1, 2, 3]},
        },
    }


SCHEMAS = {name: envelope(s) for name, s in RESULTS.items()}
SCHEMAS["usage"] = envelope(_ERROR)
