"""Bundled input corpus: small algebras, racks, and groups as JSON documents.

Every fixture is a JSON file next to this module; ``load`` parses it into the
corresponding live object, ``load_raw`` returns the document unchanged.  The
``neg_`` and ``corrupt_`` fixtures intentionally violate an axiom and exist
for negative tests and CLI demonstrations.
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Any

from rackalg import jsonio
from rackalg.errors import SchemaError


def fixture_names() -> list[str]:
    names = [entry.name[:-5] for entry in resources.files(__package__).iterdir()
             if entry.name.endswith(".json")]
    return sorted(names)


def load_raw(name: str) -> dict[str, Any]:
    ref = resources.files(__package__) / f"{name}.json"
    if not ref.is_file():
        raise KeyError(f"no fixture named {name!r}; available: {', '.join(fixture_names())}")
    return json.loads(ref.read_text())


def load(name: str) -> Any:
    doc = load_raw(name)
    kind = jsonio.document_kind(doc)
    parser = _PARSERS.get(kind)
    if parser is None:
        raise SchemaError(f"fixture {name!r} has unsupported kind {kind!r}")
    return parser(doc)


_PARSERS = {
    jsonio.KIND_LEIBNIZ: jsonio.leibniz_from_json,
    jsonio.KIND_RACK: jsonio.rack_from_json,
    jsonio.KIND_GROUP: jsonio.group_from_json,
    jsonio.KIND_RIGHT_GROUP: jsonio.right_group_from_json,
}


__all__ = ["fixture_names", "load", "load_raw"]
