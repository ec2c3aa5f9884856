"""Minimal JSON-Schema-style validation for shipped artifact schemas.

Supports the subset used by the schemas in ``qcplan/schemas``: type,
properties, required, items, enum, additionalProperties, and nullable
type lists.  Validation failures raise SchemaValidationError with a
JSON-path message.
"""

from __future__ import annotations

import json
import importlib.resources

from .errors import ConfigError


class SchemaValidationError(ConfigError):
    pass


_TYPES = {
    "object": dict,
    "array": list,
    "string": str,
    "integer": int,
    "number": (int, float),
    "boolean": bool,
    "null": type(None),
}


def load_schema(name: str) -> dict:
    ref = importlib.resources.files("qcplan") / "schemas" / f"{name}.schema.json"
    return json.loads(ref.read_text())


def validate(instance, schema: dict, path: str = "$") -> None:
    typ = schema.get("type")
    if typ is not None:
        allowed = typ if isinstance(typ, list) else [typ]
        ok = False
        for t in allowed:
            pytype = _TYPES[t]
            if isinstance(instance, pytype):
                # bool is an int subclass; keep integer/number strict
                if t in ("integer", "number") and isinstance(instance, bool):
                    continue
                ok = True
                break
        if not ok:
            raise SchemaValidationError(
                f"{path}: expected {typ}, got {type(instance).__name__}"
            )
    if "enum" in schema and instance not in schema["enum"]:
        raise SchemaValidationError(f"{path}: {instance!r} not one of {schema['enum']}")
    if isinstance(instance, dict):
        props = schema.get("properties", {})
        for key in schema.get("required", []):
            if key not in instance:
                raise SchemaValidationError(f"{path}: missing required key {key!r}")
        if schema.get("additionalProperties") is False:
            extra = set(instance) - set(props)
            if extra:
                raise SchemaValidationError(
                    f"{path}: unexpected key(s) {sorted(extra)}"
                )
        for key, sub in props.items():
            if key in instance:
                validate(instance[key], sub, f"{path}.{key}")
    if isinstance(instance, list) and "items" in schema:
        for i, item in enumerate(instance):
            validate(item, schema["items"], f"{path}[{i}]")
