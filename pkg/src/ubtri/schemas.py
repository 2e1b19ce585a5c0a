"""JSON Schemas for the CLI's machine-readable outputs."""

from .bench import CSV_FIELDS

_COUNT = {"type": "integer", "minimum": 0}
_NUM = {"type": "number"}

COUNT_SCHEMA = {
    "type": "object",
    "required": ["t", "balanced", "unbalanced", "algorithm"],
    "properties": {
        "t": {"type": "number", "minimum": 0.5, "maximum": 1.0},
        "balanced": _COUNT,
        "unbalanced": _COUNT,
        "unclassified": _COUNT,
        "total": _COUNT,
        "elapsed_ms": {"type": "number", "minimum": 0},
        "algorithm": {"enum": ["baseline", "improved"]},
    },
    "additionalProperties": False,
}

SAMPLE_SCHEMA = {
    "type": "object",
    "required": ["mode", "variant", "k", "seed", "t", "est_balanced", "est_unbalanced"],
    "properties": {
        "mode": {"enum": ["vertex", "edge"]},
        "variant": {"enum": ["baseline", "improved"]},
        "k": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer"},
        "t": {"type": "number", "minimum": 0.5, "maximum": 1.0},
        "est_balanced": {"type": "number", "minimum": 0},
        "est_unbalanced": {"type": "number", "minimum": 0},
        "elapsed_ms": {"type": "number", "minimum": 0},
        "qps": _NUM,
        "truth": {
            "type": "object",
            "required": ["balanced", "unbalanced"],
            "properties": {"balanced": _COUNT, "unbalanced": _COUNT},
        },
        "mape_balanced": {"type": "number", "minimum": 0},
        "mape_unbalanced": {"type": "number", "minimum": 0},
        "history": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["samples", "est_balanced", "est_unbalanced"],
                "properties": {"samples": {"type": "integer", "minimum": 1}, "est_balanced": _NUM, "est_unbalanced": _NUM},
            },
        },
    },
    "additionalProperties": False,
}

BENCH_CSV_HEADER = ",".join(CSV_FIELDS)
