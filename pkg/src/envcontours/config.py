"""YAML model and response configuration, validated against a JSON schema."""

import hashlib
import json
from pathlib import Path

import jsonschema
import yaml

from .catalog import build_paper_model
from .distributions import FAMILY_PARAMETERS, Mixture, make_distribution
from .joint import (
    AxisScaledModel,
    CartesianDirectionalModel,
    DependenceFunction,
    HierarchicalModel,
    NormalMixturePair,
)
from .response import RESPONSE_FAMILIES, make_response

__all__ = ["ConfigError", "load_document", "build_model", "build_response", "config_hash", "MODEL_SCHEMA"]


class ConfigError(ValueError):
    """Configuration document failed validation."""


_NUMBER = {"type": "number"}
_PAIR = {"type": "array", "items": _NUMBER, "minItems": 2, "maxItems": 2}
_LABELS = {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2}

_DISTRIBUTION = {
    "type": "object",
    "required": ["family"],
    "properties": {
        "family": {"enum": sorted(FAMILY_PARAMETERS) + ["mixture"]},
        "weights": {"type": "array", "items": _NUMBER},
        "components": {"type": "array", "items": {"$ref": "#/$defs/distribution"}},
        "cut": _NUMBER,
        **{p: _NUMBER for names in FAMILY_PARAMETERS.values() for p in names},
    },
    "additionalProperties": False,
}

_DEPENDENCE = {
    "oneOf": [
        _NUMBER,
        {
            "type": "object",
            "required": ["form", "coefficients"],
            "properties": {
                "form": {"enum": ["constant", "affine", "power", "exp-decay", "exp-affine", "fourier"]},
                "coefficients": {"type": "array", "items": _NUMBER, "minItems": 1},
            },
            "additionalProperties": False,
        },
    ]
}

_COMMON = {
    "name": {"type": "string"},
    "labels": _LABELS,
    "units": _LABELS,
    "period_factor": {"type": "number", "exclusiveMinimum": 0},
}

MODEL_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$defs": {
        "distribution": _DISTRIBUTION,
        "hierarchical": {
            "type": "object",
            "required": ["kind", "first", "conditional", "support"],
            "properties": {
                "kind": {"enum": ["hierarchical", "directional"]},
                "first": {"$ref": "#/$defs/distribution"},
                "conditional": {
                    "type": "object",
                    "required": ["family", "parameters"],
                    "properties": {
                        "family": {"enum": sorted(FAMILY_PARAMETERS)},
                        "parameters": {"type": "object", "additionalProperties": _DEPENDENCE},
                    },
                    "additionalProperties": False,
                },
                "support": {"type": "array", "items": _PAIR, "minItems": 2, "maxItems": 2},
                **_COMMON,
            },
            "additionalProperties": False,
        },
        "registered": {
            "type": "object",
            "required": ["kind", "model"],
            "properties": {
                "kind": {"const": "registered"},
                "model": {"enum": ["normal-mixture", "weibull-normal", "sea-state", "directional"]},
                **_COMMON,
            },
            "additionalProperties": False,
        },
        "normal-mixture": {
            "type": "object",
            "required": ["kind"],
            "properties": {"kind": {"const": "normal-mixture"}, "offset": _NUMBER, **_COMMON},
            "additionalProperties": False,
        },
        "cartesian-wrap": {
            "type": "object",
            "required": ["kind", "base"],
            "properties": {
                "kind": {"const": "cartesian-wrap"},
                "base": {"oneOf": [{"$ref": "#/$defs/hierarchical"}, {"$ref": "#/$defs/registered"}]},
                "tab_points": {"type": "integer", "minimum": 101},
                **_COMMON,
            },
            "additionalProperties": False,
        },
    },
    "oneOf": [
        {"$ref": "#/$defs/hierarchical"},
        {"$ref": "#/$defs/registered"},
        {"$ref": "#/$defs/normal-mixture"},
        {"$ref": "#/$defs/cartesian-wrap"},
    ],
}

RESPONSE_SCHEMA = {
    "type": "object",
    "required": ["family"],
    "properties": {
        "family": {"enum": sorted(RESPONSE_FAMILIES)},
        **{p: _NUMBER for p in ("a", "b", "tp0", "a1", "a2", "b1", "b2", "te1", "te2", "phi_deg")},
    },
    "additionalProperties": False,
}


def load_document(path):
    """Read a YAML document; returns ``(data, sha256 of the raw bytes)``."""
    raw = Path(path).read_bytes()
    try:
        data = yaml.safe_load(raw)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: invalid YAML: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a mapping at top level")
    return data, hashlib.sha256(raw).hexdigest()


def config_hash(data):
    return hashlib.sha256(json.dumps(data, sort_keys=True).encode()).hexdigest()


def _validate(data, schema, what):
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"{what} config invalid at {where}: {exc.message}") from None


def _distribution(d):
    d = dict(d)
    family = d.pop("family")
    if family == "mixture":
        comps = tuple(_distribution(c) for c in d.pop("components", []))
        weights = d.pop("weights", None)
        if not comps or weights is None or len(weights) != len(comps) or d:
            raise ConfigError("mixture needs matching 'weights' and 'components' and nothing else")
        return Mixture(tuple(weights), comps)
    if family == "vonmises" and "cut" in d:
        return make_distribution(family, **d)
    if set(d) - set(FAMILY_PARAMETERS[family]):
        raise ConfigError(f"{family} takes {FAMILY_PARAMETERS[family]}, got {sorted(d)}")
    return make_distribution(family, **d)


def _dependence(v):
    if isinstance(v, (int, float)):
        return float(v)
    return DependenceFunction(v["form"], tuple(v["coefficients"]))


def _finish(model, data):
    factor = data.get("period_factor")
    if factor is not None:
        labels = tuple(data.get("labels", (model.labels[0], "tp")))
        return AxisScaledModel(model, (1.0, factor), labels=labels, name=data.get("name", model.name))
    return model


def _build(data):
    kind = data["kind"]
    if kind == "registered":
        model = build_paper_model(data["model"])
        return _finish(model, data)
    if kind == "normal-mixture":
        return NormalMixturePair(data.get("offset", 3.0), name=data.get("name", "normal-mixture"))
    if kind == "cartesian-wrap":
        base = _build(data["base"])
        return CartesianDirectionalModel(
            base,
            labels=tuple(data.get("labels", ("hx", "hy"))),
            name=data.get("name"),
            tab_points=data.get("tab_points", 2001),
        )
    first = _distribution(data["first"])
    labels = tuple(data.get("labels", ("x1", "x2")))
    cond = data["conditional"]
    try:
        model = HierarchicalModel(
            first=first,
            conditional_family=cond["family"],
            parameter_maps={k: _dependence(v) for k, v in cond["parameters"].items()},
            support=tuple(tuple(s) for s in data["support"]),
            labels=labels if "period_factor" not in data else (labels[0], "x2"),
            units=tuple(data.get("units", ("", ""))),
            name=data.get("name", kind),
            circular_first=kind == "directional",
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return _finish(model, data)


def build_model(data):
    """Validate a model document and construct the model."""
    _validate(data, MODEL_SCHEMA, "model")
    return _build(data)


def build_response(data):
    _validate(data, RESPONSE_SCHEMA, "response")
    data = dict(data)
    return make_response(data.pop("family"), **data)

