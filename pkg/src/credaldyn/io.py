"""JSON system documents and exact report serialization.

Rationals are serialized as strings ("3/4", "1"), never floats, so that a
round trip through JSON is lossless and reports are byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import fields, is_dataclass
from fractions import Fraction
from typing import Any, Optional

from .credal import CredalSet, ProbVec
from .errors import BadMap, MalformedJson, NotAProbability
from .systems import Observable, SystemMap


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedJson(f"bad rational literal {text!r}") from exc


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def parse_system(document: bytes | str) -> tuple[SystemMap, CredalSet, Optional[str]]:
    """Parse a system document into a map and a credal set.

    Document schema: {"n": int, "map": [int], "generators": [[rational
    strings]], "label": optional str}.
    """
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise MalformedJson(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise MalformedJson("document must be a JSON object")
    for key in ("n", "map", "generators"):
        if key not in data:
            raise MalformedJson(f"missing field {key!r}")
    n = data["n"]
    if not isinstance(n, int) or n < 1:
        raise MalformedJson("field 'n' must be a positive integer")
    raw_map = data["map"]
    if not isinstance(raw_map, list) or len(raw_map) != n:
        raise MalformedJson("field 'map' must be a list of length n")
    for i, y in enumerate(raw_map):
        if not isinstance(y, int) or not 0 <= y < n:
            raise BadMap(i, y)
    T = SystemMap(tuple(raw_map))
    rows = data["generators"]
    if not isinstance(rows, list) or not rows:
        raise MalformedJson("field 'generators' must be a nonempty list")
    gens = []
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise NotAProbability(r, f"expected {n} entries")
        weights = tuple(parse_rational(v) for v in row)
        if any(w < 0 for w in weights):
            raise NotAProbability(r, "negative weight")
        total = sum(weights)
        if total != 1:
            raise NotAProbability(r, f"weights sum to {format_rational(total)}")
        gens.append(ProbVec(weights))
    label = data.get("label")
    if label is not None and not isinstance(label, str):
        raise MalformedJson("field 'label' must be a string")
    return T, CredalSet(tuple(gens)), label


def serialize_system(T: SystemMap, C: CredalSet, label: Optional[str] = None) -> dict:
    doc: dict[str, Any] = {
        "n": T.n,
        "map": list(T.mapping),
        "generators": [[format_rational(w) for w in g.weights] for g in C.generators],
    }
    if label is not None:
        doc["label"] = label
    return doc


def to_jsonable(value: Any) -> Any:
    """Recursively convert report values to JSON-friendly structures."""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (ProbVec, Observable)):
        inner = value.weights if isinstance(value, ProbVec) else value.values
        return [format_rational(v) for v in inner]
    if isinstance(value, SystemMap):
        return list(value.mapping)
    if isinstance(value, CredalSet):
        return [to_jsonable(g) for g in value.generators]
    if is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in fields(value)}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value, key=repr) if isinstance(value, (set, frozenset)) else value
        return [to_jsonable(v) for v in items]
    return value


def dumps(report: Any) -> str:
    return json.dumps(to_jsonable(report), indent=2, sort_keys=True)
