"""Load the shipped JSON schemas and validate command payloads against them."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from typing import Any

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

SCHEMA_NAMES = (
    "lamplus",
    "abacus",
    "residues",
    "strips",
    "idem",
    "subdivide",
    "tableaux",
    "transport",
    "verify",
)


def load_schema(name: str) -> dict[str, Any]:
    text = resources.files(__package__).joinpath("schemas", f"{name}.json").read_text(encoding="utf-8")
    return json.loads(text)


@lru_cache(maxsize=None)
def _registry() -> Registry:
    common = load_schema("common")
    return Registry().with_resource(common["$id"], Resource.from_contents(common))


@lru_cache(maxsize=None)
def validator(name: str) -> Draft202012Validator:
    if name not in SCHEMA_NAMES:
        raise KeyError(f"no schema named {name!r}")
    schema = load_schema(name)
    Draft202012Validator.check_schema(schema)
    return Draft202012Validator(schema, registry=_registry())


def validate(payload: Any, name: str) -> None:
    """Raise jsonschema.ValidationError if the payload does not fit the schema."""
    validator(name).validate(payload)


def errors(payload: Any, name: str) -> list[str]:
    return [f"{'/'.join(map(str, e.absolute_path)) or '<root>'}: {e.message}" for e in validator(name).iter_errors(payload)]
