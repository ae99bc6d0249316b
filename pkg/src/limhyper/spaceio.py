"""Stable file formats: space documents in, verification reports out.

A space document is JSON with distinct string point labels and exactly
one of ``opens`` (lists of labels) or ``preorder`` (pairs [a, b] meaning
a <= b). Point labels appear in all user-facing output; indices stay
internal. Report JSON is versioned with a ``schema`` field and round
trips through :func:`parse_report`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import DuplicateLabel, ParseError
from .finspace import FinTopSpace, bits, from_preorder, validate_topology
from .theorems import CheckResult, VerificationReport

REPORT_SCHEMA = 1


@dataclass(frozen=True)
class LabeledSpace:
    space: FinTopSpace
    labels: tuple[str, ...]


def format_point_set(mask: int, labels: tuple[str, ...]) -> str:
    return "{" + ",".join(labels[p] for p in bits(mask)) + "}"


def parse_point_set(text: str, labels: tuple[str, ...]) -> int:
    """Parse ``{a,b}`` back into a bitmask using the space's labels."""
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ParseError(f"point set must be written as {{label,...}}, got {text!r}")
    body = text[1:-1].strip()
    mask = 0
    if body:
        for name in body.split(","):
            name = name.strip()
            try:
                mask |= 1 << labels.index(name)
            except ValueError:
                raise ParseError(f"unknown point label {name!r}") from None
    return mask


def parse_space(text: str) -> LabeledSpace:
    """Parse and validate a space document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("space document must be a JSON object")
    points = doc.get("points")
    if not isinstance(points, list) or not all(isinstance(p, str) for p in points):
        raise ParseError("'points' must be a list of string labels")
    for p in points:
        if not p or any(ch in "{}," or ch.isspace() for ch in p):
            raise ParseError(f"point label {p!r} must be nonempty without braces, commas or spaces")
    if len(set(points)) != len(points):
        dup = next(p for i, p in enumerate(points) if p in points[:i])
        raise DuplicateLabel(f"point label {dup!r} declared twice")
    labels = tuple(points)

    has_opens = "opens" in doc
    has_preorder = "preorder" in doc
    if has_opens == has_preorder:
        raise ParseError("document must carry exactly one of 'opens' or 'preorder'")

    def label_index(name) -> int:
        if not isinstance(name, str):
            raise ParseError(f"expected a point label, got {name!r}")
        try:
            return labels.index(name)
        except ValueError:
            raise ParseError(f"unknown point label {name!r}") from None

    if has_opens:
        opens = doc["opens"]
        if not isinstance(opens, list) or not all(isinstance(u, list) for u in opens):
            raise ParseError("'opens' must be a list of lists of labels")
        masks = []
        for u in opens:
            m = 0
            for name in u:
                m |= 1 << label_index(name)
            masks.append(m)
        space = validate_topology(len(labels), masks)
    else:
        preorder = doc["preorder"]
        if not isinstance(preorder, list):
            raise ParseError("'preorder' must be a list of [label, label] pairs")
        pairs = []
        for entry in preorder:
            if not isinstance(entry, list) or len(entry) != 2:
                raise ParseError(f"preorder entry {entry!r} is not a [label, label] pair")
            pairs.append((label_index(entry[0]), label_index(entry[1])))
        space = from_preorder(len(labels), pairs)
    return LabeledSpace(space, labels)


def emit_report(report: VerificationReport, fmt: str = "text") -> str:
    """Serialize a verification report deterministically.

    Timing is deliberately left out of both formats so that identical
    inputs give identical bytes.
    """
    if fmt == "text":
        lines = [f"space: n={report.n} digest={report.space_digest}"]
        for r in report.results:
            lines.append(f"{r.check_id}: {r.status}")
            for key, value in r.witness:
                lines.append(f"  witness {key}: {value}")
            if r.notes:
                lines.append(f"  note: {r.notes}")
        return "\n".join(lines) + "\n"
    if fmt == "json":
        checks = []
        for r in report.results:
            entry: dict = {"check_id": r.check_id, "status": r.status}
            if r.witness:
                entry["witness"] = {k: v for k, v in r.witness}
            if r.notes:
                entry["notes"] = r.notes
            checks.append(entry)
        doc = {
            "schema": REPORT_SCHEMA,
            "space": {"digest": report.space_digest, "points": list(report.labels)},
            "checks": checks,
        }
        return json.dumps(doc, indent=2) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def parse_report(text: str) -> VerificationReport:
    """Rebuild a report from its JSON form; inverse of json emission up to
    the unserialized timing field."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if doc.get("schema") != REPORT_SCHEMA:
        raise ParseError(f"unsupported report schema {doc.get('schema')!r}")
    labels = tuple(doc["space"]["points"])
    results = tuple(
        CheckResult(
            entry["check_id"],
            entry["status"],
            tuple((k, v) for k, v in entry.get("witness", {}).items()),
            entry.get("notes", ""),
        )
        for entry in doc["checks"]
    )
    return VerificationReport(doc["space"]["digest"], len(labels), labels, results)
