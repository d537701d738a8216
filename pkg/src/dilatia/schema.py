"""JSON Schema helpers for configuration and channel files."""

from __future__ import annotations

from typing import Any

import param

from .errors import ConfigError

_COMPLEX_ENTRY = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 2,
    "maxItems": 2,
}

#: Schema of a channel specification file. Custom Kraus matrices are nested
#: lists of ``[re, im]`` pairs.
CHANNEL_SCHEMA: dict[str, Any] = {
    "type": "object",
    "properties": {
        "type": {"enum": ["dephasing", "damping", "custom"]},
        "label": {"type": "string"},
        "params": {"type": "object", "additionalProperties": {"type": "number"}},
        "kraus": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "array", "minItems": 1, "items": {"type": "array", "minItems": 1, "items": _COMPLEX_ENTRY}},
        },
    },
    "required": ["type"],
    "additionalProperties": False,
}


def param_to_jsonschema(parameterized_cls: type[param.Parameterized]) -> dict[str, Any]:
    """Convert a ``param.Parameterized`` class to a JSON Schema dict.

    Uses ``parameterized_cls.param.schema()`` for the per-property schemas,
    then wraps them in an object envelope that rejects unknown keys while
    filtering out base ``Parameterized`` params and private (``_``-prefixed)
    params.
    """
    base_params = set(param.Parameterized.param)
    raw = parameterized_cls.param.schema()
    properties = {name: prop for name, prop in raw.items() if name not in base_params and not name.startswith("_")}
    return {"type": "object", "properties": properties, "additionalProperties": False}


def validate_data(data: Any, schema: dict[str, Any] | None, *, source: str = "input") -> None:
    """Validate *data* against a JSON Schema if ``jsonschema`` is available."""
    if schema is None:
        return
    try:
        import jsonschema as _js
    except ImportError:
        return
    try:
        _js.validate(data, schema)
    except _js.ValidationError as exc:
        path = ".".join(str(p) for p in exc.absolute_path) or "(root)"
        raise ConfigError(f"{source}: validation failed at {path}: {exc.message}") from exc


__all__ = ["CHANNEL_SCHEMA", "param_to_jsonschema", "validate_data"]
