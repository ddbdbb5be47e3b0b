"""Experiment configuration: a single JSON document validated against a schema.

Schema checks cover shape and ranges; semantic checks (prime characteristic,
polynomials parsing over the declared variables, homogeneity, task-specific
required parameters) run afterwards and report a location and, when the
document came from text, the line it sits on.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema

from ..ring import GF, QQ, HomogeneityError, ParseError, PolyRing, QuotientRing, _is_prime

TASKS = (
    "ar-number", "syzygetic-sweep", "kas-find", "kas-verify", "special-reduction", "resolve",
    "koszul", "exactness", "power-complex", "fromagt", "perturb-test", "bounds-table",
)

DEFAULT_CHARACTERISTIC = 32003

_POLY = {"type": ["string", "integer"]}
_POLYLIST = {"type": "array", "items": _POLY, "maxItems": 24}
_MATRIX = {"type": "array", "items": {"type": "array", "items": _POLY, "maxItems": 24}, "maxItems": 24}
_FAMILY = {
    "type": "object",
    "additionalProperties": False,
    "required": ["count"],
    "properties": {
        "kind": {"enum": ["monomial", "homogeneous"]},
        "count": {"type": "integer", "minimum": 1, "maximum": 64},
        "max_degree": {"type": "integer", "minimum": 1, "maximum": 6},
        "max_gens": {"type": "integer", "minimum": 1, "maximum": 6},
    },
}
_MODSPEC = {
    "type": "object",
    "additionalProperties": False,
    "required": ["ideal"],
    "properties": {
        "ideal": _POLYLIST,
        "syzygy": {"type": "integer", "minimum": 0, "maximum": 6},
    },
}


def _int(lo: int, hi: int) -> dict:
    return {"type": "integer", "minimum": lo, "maximum": hi}


PARAMS_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "n_max": _int(1, 30),
        "i_min": _int(0, 8),
        "i_max": _int(0, 8),
        "i_values": {"type": "array", "items": _int(0, 8), "maxItems": 9},
        "strong": {"type": "boolean"},
        "mode": {"enum": ["all-ideals", "special-reductions"]},
        "ideal": _POLYLIST,
        "ideals": {"type": "array", "items": _POLYLIST, "maxItems": 64},
        "ideal_family": _FAMILY,
        "module": _MODSPEC,
        "modules": {"type": "array", "items": _MODSPEC, "maxItems": 32},
        "module_family": {
            "type": "object",
            "additionalProperties": False,
            "required": ["ideals"],
            "properties": {"ideals": _FAMILY, "syzygy": _int(0, 6)},
        },
        "submodule": {"type": "array", "items": _POLYLIST, "maxItems": 24},
        "ambient": {"type": "array", "items": _POLYLIST, "maxItems": 24},
        "sequence": _POLYLIST,
        "x_seq": _POLYLIST,
        "n": _int(1, 10),
        "length": _int(1, 10),
        "matrix": _MATRIX,
        "matrices": {"type": "array", "items": _MATRIX, "maxItems": 10},
        "q": _int(0, 10),
        "trials": _int(0, 100),
        "perturbations": {"type": "array", "items": _MATRIX, "maxItems": 100},
        "degree_bound": _int(1, 10),
        "retries": _int(1, 200),
        "t_list": {"type": "array", "items": _int(1, 16), "minItems": 1, "maxItems": 8},
        "t_cap": _int(1, 64),
        "k_max": _int(0, 20),
        "max_delta": _int(1, 12),
        "exponent_policy": {"enum": ["empirical", "prescribed"]},
        "exponent_search": {"type": "boolean"},
        "sop_per_k": _int(1, 5),
    },
}

CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["ring", "task"],
    "properties": {
        "schema_version": {"type": "string"},
        "ring": {
            "type": "object",
            "additionalProperties": False,
            "required": ["variables"],
            "properties": {
                "field": {"type": "integer", "minimum": 0},
                "variables": {
                    "type": "array", "minItems": 1, "maxItems": 8,
                    "items": {"type": "string", "pattern": "^[A-Za-z_][A-Za-z0-9_]*$"},
                },
                "weights": {"type": "array", "items": _int(1, 8)},
                "order": {"enum": ["grevlex", "lex"]},
                "defining": _POLYLIST,
            },
        },
        "task": {"enum": list(TASKS)},
        "params": PARAMS_SCHEMA,
        "seed": {"type": "integer", "minimum": 0, "maximum": 2**63 - 1},
        "output": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"json": {"type": "string"}, "csv": {"type": "string"}},
        },
    },
}

# parameters each task cannot run without
REQUIRED_PARAMS = {
    "ar-number": (("submodule", "module"),),
    "syzygetic-sweep": (("modules", "module_family"), ("ideals", "ideal_family")),
    "kas-find": (),
    "kas-verify": (),
    "special-reduction": (("ideal",),),
    "resolve": (("module",),),
    "koszul": (("sequence",),),
    "exactness": (("sequence", "matrices"),),
    "power-complex": (("sequence",),),
    "fromagt": (),
    "perturb-test": (("matrix",),),
    "bounds-table": (),
}

_VALIDATOR = jsonschema.Draft202012Validator(CONFIG_SCHEMA)


class ConfigError(ValueError):
    """Invalid configuration, with a JSON-path style location and an optional line."""

    def __init__(self, message: str, location: str = "", line: int | None = None):
        self.message = message
        self.location = location
        self.line = line
        where = location or "config"
        if line is not None:
            where += f" (line {line})"
        super().__init__(f"{where}: {message}")

    def to_json(self) -> dict:
        return {"error": "config", "message": self.message, "location": self.location, "line": self.line}


@dataclass
class ExperimentConfig:
    ring: dict
    task: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    output: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "ring": copy.deepcopy(self.ring),
            "task": self.task,
            "params": copy.deepcopy(self.params),
            "seed": self.seed,
            "output": copy.deepcopy(self.output),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def with_seed(self, seed: int) -> ExperimentConfig:
        data = self.to_dict()
        data["seed"] = seed
        return parse_config(data)

    def build_ring(self) -> QuotientRing:
        return build_ring(self.ring)


def _path(parts) -> str:
    out = ""
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out


def _line_of(text: str | None, value, key: bool = False) -> int | None:
    """First line of ``text`` containing the JSON rendering of ``value`` (or the key ``value``)."""
    if text is None or isinstance(value, (dict, list)) or value is None:
        return None
    needle = json.dumps(value) + (":" if key else "")
    for k, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return k
    return None


def build_ring(block: dict) -> QuotientRing:
    p = block.get("field", DEFAULT_CHARACTERISTIC)
    if p != 0 and not _is_prime(p):
        raise ConfigError(f"field characteristic {p} is neither 0 nor a prime", "ring.field")
    if len(set(block["variables"])) != len(block["variables"]):
        raise ConfigError("variables are not distinct", "ring.variables")
    weights = block.get("weights")
    if weights is not None and len(weights) != len(block["variables"]):
        raise ConfigError("one weight per variable is required", "ring.weights")
    S = PolyRing(block["variables"], QQ if p == 0 else GF(p), block.get("order", "grevlex"), weights)
    defining = []
    for k, g in enumerate(block.get("defining", [])):
        defining.append(_parse_poly(S, g, f"ring.defining[{k}]"))
    try:
        return QuotientRing(S, defining)
    except HomogeneityError as exc:
        raise ConfigError(str(exc), "ring.defining") from None


def _parse_poly(S: PolyRing, g, location: str):
    try:
        return S(g) if isinstance(g, str) else S.const(g)
    except ParseError as exc:
        raise ConfigError(str(exc), location) from None


def _check_polys(S: PolyRing, node, location: str):
    """Parse every polynomial leaf under a parameter."""
    if isinstance(node, (str, int)) and not isinstance(node, bool):
        _parse_poly(S, node, location)
    elif isinstance(node, list):
        for k, item in enumerate(node):
            _check_polys(S, item, f"{location}[{k}]")
    elif isinstance(node, dict):
        for key in ("ideal",):
            if key in node:
                _check_polys(S, node[key], f"{location}.{key}")


_POLY_PARAMS = ("ideal", "ideals", "module", "modules", "submodule", "ambient", "sequence", "x_seq",
                "matrix", "matrices", "perturbations")


def parse_config(data, text: str | None = None) -> ExperimentConfig:
    """Validate a decoded config and return it; raises ConfigError."""
    errors = sorted(_VALIDATOR.iter_errors(data), key=lambda e: (list(e.absolute_path), e.message))
    if errors:
        err = errors[0]
        parts = list(err.absolute_path)
        loc = _path(parts)
        line = _line_of(text, err.instance)
        if err.validator == "additionalProperties":
            allowed = set(err.schema.get("properties", {}))
            extra = sorted(k for k in err.instance if k not in allowed)
            msg = f"unknown key(s): {', '.join(extra)}"
            line = _line_of(text, extra[0], key=True) if extra else None
        else:
            msg = err.message
        raise ConfigError(msg, loc, line)
    cfg = ExperimentConfig(
        ring=copy.deepcopy(data["ring"]),
        task=data["task"],
        params=copy.deepcopy(data.get("params", {})),
        seed=data.get("seed", 0),
        output=copy.deepcopy(data.get("output", {})),
    )
    try:
        R = build_ring(cfg.ring)
        for key in _POLY_PARAMS:
            if key in cfg.params:
                _check_polys(R.ambient, cfg.params[key], f"params.{key}")
    except ConfigError as exc:
        if exc.line is None and text is not None:
            exc = ConfigError(exc.message, exc.location, _locate(text, data, exc.location))
        raise exc
    for group in REQUIRED_PARAMS[cfg.task]:
        if not any(k in cfg.params for k in group):
            raise ConfigError(f"task {cfg.task!r} needs one of {list(group)}", "params")
    p = cfg.params
    if "i_min" in p and "i_max" in p and p["i_max"] < p["i_min"]:
        raise ConfigError("i_max is below i_min", "params.i_max", _line_of(text, p["i_max"]))
    return cfg


def _locate(text: str, data, location: str) -> int | None:
    node = data
    for tok in location.replace("[", ".").replace("]", "").split("."):
        if not tok:
            continue
        try:
            node = node[int(tok)] if isinstance(node, list) else node[tok]
        except (KeyError, IndexError, ValueError, TypeError):
            return None
    return _line_of(text, node)


def load_config(path) -> ExperimentConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", str(path)) from None
    return loads_config(text)


def loads_config(text: str) -> ExperimentConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg}", "", exc.lineno) from None
    return parse_config(data, text)
