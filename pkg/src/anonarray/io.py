"""File formats: schema and constraint JSON documents, CSV array documents.

Labels live in files; indices live in memory.  Unknown labels are errors,
never silent extensions, because growing a domain invalidates any
previously computed guarantee.
"""

from __future__ import annotations

import csv
import io as _io
import json
from typing import List, Optional, Tuple

from .constraints import ConstraintSet
from .errors import ParseError
from .model import (
    AccessProfileArray,
    AttributeDef,
    AttributeSchema,
    ColumnSet,
    Credential,
)


def _load_json(text: str, filename=None) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, filename=filename, line=exc.lineno, column=exc.colno)
    if not isinstance(doc, dict):
        raise ParseError("top-level value must be an object", filename=filename)
    return doc


def parse_schema(text: str, filename=None) -> AttributeSchema:
    doc = _load_json(text, filename)
    attrs = doc.get("attributes")
    if not isinstance(attrs, list) or not attrs:
        raise ParseError('"attributes" must be a non-empty list', filename=filename)
    defs = []
    for i, entry in enumerate(attrs):
        if (
            not isinstance(entry, dict)
            or not isinstance(entry.get("name"), str)
            or not isinstance(entry.get("values"), list)
            or not all(isinstance(v, str) for v in entry["values"])
        ):
            raise ParseError(
                f'attribute {i}: expected {{"name": str, "values": [str, ...]}}',
                filename=filename,
            )
        defs.append(AttributeDef(name=entry["name"], values=tuple(entry["values"])))
    try:
        return AttributeSchema(attributes=tuple(defs))
    except Exception as exc:
        raise ParseError(str(exc), filename=filename)


def serialize_schema(schema: AttributeSchema) -> str:
    return json.dumps(
        {
            "attributes": [
                {"name": a.name, "values": list(a.values)} for a in schema.attributes
            ]
        },
        indent=2,
    )


def parse_array(text: str, schema: AttributeSchema, filename=None) -> AccessProfileArray:
    reader = csv.reader(_io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty array document", filename=filename, line=1)
    header = [h.strip() for h in header]
    expected = [a.name for a in schema.attributes]
    has_id = bool(header) and header[0] == "id"
    names = header[1:] if has_id else header
    if names != expected:
        raise ParseError(
            f"header columns {names} do not match schema order {expected}",
            filename=filename,
            line=1,
        )
    rows = []
    labels: List[str] = []
    for lineno, record in enumerate(reader, start=2):
        if not record or all(not cell.strip() for cell in record):
            continue
        cells = [c.strip() for c in record]
        if has_id:
            labels.append(cells[0])
            cells = cells[1:]
        if len(cells) != schema.k:
            raise ParseError(
                f"expected {schema.k} value cells, found {len(cells)}",
                filename=filename,
                line=lineno,
            )
        row = []
        for j, label in enumerate(cells):
            try:
                row.append(schema.value_index(j, label))
            except Exception:
                raise ParseError(
                    f"unknown value {label!r} for attribute "
                    f"{schema.attributes[j].name!r}",
                    filename=filename,
                    line=lineno,
                    column=j + (2 if has_id else 1),
                )
        rows.append(tuple(row))
    if not rows:
        raise ParseError("array document has no data rows", filename=filename)
    return AccessProfileArray(
        schema=schema,
        rows=tuple(rows),
        row_labels=tuple(labels) if has_id else None,
    )


def serialize_array(array: AccessProfileArray) -> str:
    out = _io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    names = [a.name for a in array.schema.attributes]
    has_id = array.row_labels is not None
    writer.writerow((["id"] if has_id else []) + names)
    for i, row in enumerate(array.rows):
        labels = [
            array.schema.attributes[j].values[v] for j, v in enumerate(row)
        ]
        writer.writerow(([array.row_labels[i]] if has_id else []) + labels)
    return out.getvalue()


def _parse_credential(entry, schema: AttributeSchema, kind: str, filename) -> Credential:
    if not isinstance(entry, list) or not entry:
        raise ParseError(
            f'{kind} constraint must be a non-empty list of [attribute, value] pairs',
            filename=filename,
        )
    pairs = []
    for pair in entry:
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ParseError(
                f"{kind} constraint pair must be [attribute, value]", filename=filename
            )
        name, label = pair
        try:
            a = schema.attribute_index(name)
            v = schema.value_index(a, label)
        except Exception as exc:
            raise ParseError(f"{kind} constraint: {exc}", filename=filename)
        pairs.append((a, v))
    try:
        return Credential(tuple(pairs))
    except Exception as exc:
        raise ParseError(f"{kind} constraint: {exc}", filename=filename)


def parse_constraints(
    text: str, schema: AttributeSchema, filename=None
) -> Tuple[ConstraintSet, Optional[List[ColumnSet]]]:
    """Constraint document -> (ConstraintSet, allowed column sets or None)."""
    doc = _load_json(text, filename)
    kinds = {}
    for kind in ("hard", "soft", "dont_care"):
        entries = doc.get(kind, [])
        if not isinstance(entries, list):
            raise ParseError(f'"{kind}" must be a list', filename=filename)
        kinds[kind] = frozenset(
            _parse_credential(e, schema, kind, filename) for e in entries
        )
    allowed = None
    if "allowed_column_sets" in doc:
        raw = doc["allowed_column_sets"]
        if not isinstance(raw, list):
            raise ParseError('"allowed_column_sets" must be a list', filename=filename)
        allowed = []
        for names in raw:
            if not isinstance(names, list):
                raise ParseError(
                    "allowed column set must be a list of attribute names",
                    filename=filename,
                )
            try:
                allowed.append(tuple(sorted(schema.attribute_index(n) for n in names)))
            except Exception as exc:
                raise ParseError(f"allowed_column_sets: {exc}", filename=filename)
    try:
        constraints = ConstraintSet(
            hard=kinds["hard"], soft=kinds["soft"], dont_care=kinds["dont_care"]
        )
    except Exception as exc:
        raise ParseError(str(exc), filename=filename)
    return constraints, allowed


def serialize_constraints(constraints: ConstraintSet, schema: AttributeSchema) -> str:
    def encode(creds):
        return [
            [
                [schema.attributes[a].name, schema.attributes[a].values[v]]
                for a, v in c.pairs
            ]
            for c in sorted(creds)
        ]

    return json.dumps(
        {
            "hard": encode(constraints.hard),
            "soft": encode(constraints.soft),
            "dont_care": encode(constraints.dont_care),
        },
        indent=2,
    )


def load_schema(path) -> AttributeSchema:
    with open(path, encoding="utf-8") as fh:
        return parse_schema(fh.read(), filename=str(path))


def load_array(path, schema: AttributeSchema) -> AccessProfileArray:
    with open(path, encoding="utf-8") as fh:
        return parse_array(fh.read(), schema, filename=str(path))


def load_constraints(path, schema: AttributeSchema):
    with open(path, encoding="utf-8") as fh:
        return parse_constraints(fh.read(), schema, filename=str(path))
