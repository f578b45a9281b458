"""JSON schemas for the documents emitted by the command line."""

_NUMBER = {"type": "number"}
_INT = {"type": "integer"}
_NUMBERS = {"type": "array", "items": _NUMBER}

PARAMS = {
    "type": "object",
    "properties": {"p": _NUMBER, "q": _NUMBER, "r": _NUMBER, "s": _NUMBER},
    "required": ["p", "q", "r", "s"],
    "additionalProperties": False,
}

_VALUE_PAIR = {
    "type": "object",
    "properties": {"v0": _NUMBER, "v1": _NUMBER},
    "required": ["v0", "v1"],
    "additionalProperties": False,
}


def _document(summary: dict, extra: dict) -> dict:
    props = {"params": PARAMS, "summary": summary, **extra}
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "type": "object",
        "properties": props,
        "required": list(props),
        "additionalProperties": False,
    }


def _rows(fields: dict) -> dict:
    return {
        "type": "array",
        "items": {
            "type": "object",
            "properties": fields,
            "required": list(fields),
            "additionalProperties": False,
        },
    }


def _object(fields: dict) -> dict:
    return {"type": "object", "properties": fields, "required": list(fields), "additionalProperties": False}


TWO_LEVEL = _document(
    _object({
        "pi0": _NUMBER,
        "pi1": _NUMBER,
        "F1": _NUMBER,
        "G1": _NUMBER,
        "v_paper": _VALUE_PAIR,
        "v_gf": _VALUE_PAIR,
        "payoff_paper": _NUMBER,
        "payoff_printed": _NUMBER,
    }),
    {"rows": _rows({"n": _INT, "f": _NUMBER, "g": _NUMBER, "sf": _NUMBER, "sg": _NUMBER})},
)

MULTI_LEVEL = _document(
    _object({
        "pi_m": _NUMBERS,
        "alpha_m": _NUMBERS,
        "v_paper": _NUMBERS,
        "v_gf": _NUMBERS,
        "payoff_paper": _NUMBER,
    }),
    {"rows": _rows({"n": _INT, "m": _INT, "f": _NUMBER, "sf": _NUMBER})},
)

SIMULATE = _document(
    _object({
        "model": {"enum": ["two-level", "multi-level"]},
        "trials": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer", "minimum": 0, "maximum": 2**64 - 1},
        "mean_position": _NUMBER,
        "mean_layer": _NUMBER,
    }),
    {"rows": _rows({"n": _INT, "m": _INT, "count": {"type": "integer", "minimum": 1}})},
)

_CHECK = _object({
    "name": {"type": "string"},
    "analytic_value": _NUMBER,
    "oracle_value": _NUMBER,
    "abs_err": _NUMBER,
    "rel_err": _NUMBER,
    "tol_abs": _NUMBER,
    "tol_rel": _NUMBER,
    "status": {"enum": ["match", "mismatch", "informational"]},
    "note": {"type": "string"},
})

VERIFY = _document(
    _object({
        "overall_pass": {"type": "boolean"},
        "n_checks": _INT,
        "n_match": _INT,
        "n_mismatch": _INT,
        "n_informational": _INT,
        "dp_steps": _INT,
        "residual_bound": _NUMBER,
        "moment_bound": _NUMBER,
        "trials": _INT,
        "seed": _INT,
    }),
    {
        "checks": {"type": "array", "items": _CHECK},
        "informational": {"type": "array", "items": _CHECK},
    },
)

SCHEMAS = {"two-level": TWO_LEVEL, "multi": MULTI_LEVEL, "simulate": SIMULATE, "verify": VERIFY}
