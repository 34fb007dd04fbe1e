"""JSON Schemas (draft 2020-12) for every machine-readable CLI output.

``SCHEMAS`` maps a subcommand name (plus ``"error"``) to its schema.
The package does not validate at run time; the test suite does.
"""

DRAFT = "https://json-schema.org/draft/2020-12/schema"

_int = {"type": "integer"}
_nonneg = {"type": "integer", "minimum": 0}
_bool = {"type": "boolean"}
_rational = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}


def _obj(props, required=None, extra=False):
    return {
        "type": "object",
        "properties": props,
        "required": list(props) if required is None else required,
        "additionalProperties": extra,
    }


def _nullable(schema):
    return {"anyOf": [schema, {"type": "null"}]}


MANIFEST = _obj({
    "subcommand": {"type": "string"},
    "args": {"type": "object"},
    "inputs": {"type": "object", "additionalProperties": {"type": "string", "pattern": "^[0-9a-f]{64}$"}},
    "version": {"type": "string"},
    "seed": _nullable(_int),
    "elapsed_s": {"type": "number", "minimum": 0},
})

TERM = _obj({
    "support": {"type": "array", "items": {"type": "integer", "minimum": 1}},
    "signs": {"type": "array", "items": {"enum": [0, 1]}},
})

DNF = _obj({"n": _nonneg, "terms": {"type": "array", "items": TERM}})

COVER_REPORT = _obj({
    "is_cover": _bool,
    "lcm": {"type": "integer", "minimum": 1},
    "uncovered": {"type": "array", "items": _nonneg},
    "uncovered_total": _nonneg,
    "multiplicity_histogram": {"type": "object", "additionalProperties": _nonneg},
    "duplicate_classes": {"type": "array", "items": {"type": "array", "items": _nonneg}},
})

BOX_REPORT = _obj({
    "is_cover": _bool,
    "uncovered_count": _nonneg,
    "parallel_violations": {"type": "array", "items": {"type": "array", "items": _nonneg}},
    "min_fixed": _nullable(_nonneg),
    "non_parallel": _bool,
})

FIXED = {"type": "object", "patternProperties": {"^[0-9]+$": _nonneg}, "additionalProperties": False}

OUTCOME = _obj({
    "status": {"enum": ["Tautology", "BestEffort", "ProvedImpossible"]},
    "n": _nonneg,
    "k_or_m": _nonneg,
    "problem": {"enum": ["distinct", "uniform"]},
    "uncovered_count": _nonneg,
    "terms": {"type": "array", "items": TERM},
    "nodes_explored": _nonneg,
    "elapsed_s": {"type": "number", "minimum": 0},
    "seed": _int,
    "strategy": {"enum": ["greedy", "backtracking", "exhaustive"]},
    "proof": _nullable({"enum": ["density", "exhaustive"]}),
    "source": {"enum": ["search", "pigeonhole"]},
})

SCHEMAS = {
    "verify-covsys": _obj({
        "manifest": MANIFEST,
        "classes": _nonneg,
        "report": COVER_REPORT,
        "is_exact": _bool,
        "is_distinct": _bool,
        "density": _nonneg,
        "top_moduli": _nullable(_obj({
            "holds": _bool, "largest": _int,
            "second_largest": _nullable(_int), "degenerate": _nullable({"type": "string"}),
        })),
        "znam": _nullable(_obj({"p": _int, "multiplicity": _int, "holds": _bool})),
    }),
    "crt-map": _obj({
        "manifest": MANIFEST,
        "M": {"type": "integer", "minimum": 1},
        "radices": {"type": "array", "items": {"type": "integer", "minimum": 2}},
        "subboxes": {"type": "array", "items": _obj({
            "residue": _nonneg,
            "modulus": {"type": "integer", "minimum": 1},
            "fixed": FIXED,
            "fixed_by_prime": FIXED,
            "points": {"type": "integer", "minimum": 1},
        })},
        "equivalent": _nullable(_bool),
    }),
    "dnf-check": _obj({
        "manifest": MANIFEST,
        "n": _nonneg,
        "terms": _nonneg,
        "is_tautology": _bool,
        "is_exact": _bool,
        "is_distinct": _bool,
        "min_size": _nullable(_nonneg),
        "uncovered_count": _nonneg,
        "mndr": _nullable(_obj({
            "max_size": _nonneg, "multiplicity": _nonneg, "holds": _bool,
            "degenerate": _nullable({"type": "string"}),
        })),
    }),
    "dnf-construct": _obj({
        "manifest": MANIFEST,
        "n": _nonneg,
        "t": _nonneg,
        "terms": _nonneg,
        "min_size": _nonneg,
        "output": _nullable({"type": "string"}),
        "dnf": DNF,
    }),
    "bounds": _obj({
        "manifest": MANIFEST,
        "table": {"enum": ["A", "B"]},
        "mode": {"enum": ["weak", "strict"]},
        "rows": {"type": "array", "items": _obj({
            "n": {"type": "integer", "minimum": 1},
            "value": _nonneg,
            "tail": _rational,
            "tail_float": {"type": "number"},
        })},
        "notes": {"type": "array", "items": {"type": "string"}},
    }),
    "search": _obj({
        "manifest": MANIFEST,
        "outcome": OUTCOME,
        "certified": _nullable(_bool),
        "witness_path": _nullable({"type": "string"}),
        "outcome_path": _nullable({"type": "string"}),
    }),
    "box-check": _obj({
        "manifest": MANIFEST,
        "radices": {"type": "array", "items": {"type": "integer", "minimum": 2}},
        "subboxes": _nonneg,
        "report": BOX_REPORT,
        "mode": {"enum": ["weak", "strict"]},
        "density_tail": _nullable(_rational),
        "density_clears": _nullable(_bool),
        "max_feasible_codimension": _nonneg,
    }),
    "error": _obj({
        "manifest": MANIFEST,
        "error": _obj({
            "type": {"type": "string"},
            "message": {"type": "string"},
            "exit_code": {"enum": [1, 2, 3, 4]},
            "line": _nullable({"type": "integer", "minimum": 1}),
        }),
    }),
}

for _schema in SCHEMAS.values():
    _schema["$schema"] = DRAFT
