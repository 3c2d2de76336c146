"""Instance, basis, and report documents on disk.

Documents are JSON with an explicit ``schema_version``.  Complex numbers
are written as two-element ``[re, im]`` arrays.  The order of the
``alphabet`` and ``edges`` lists in a file IS the canonical order: every
table is laid out lexicographically with its scope's first edge most
significant and symbol indices ascending, and scope lists must follow the
instance's edge order so a table's layout is never ambiguous.

Digests are SHA-256 over the canonical (sorted-key, compact) JSON encoding
of a document, so they are stable across save/load round trips.
"""

from __future__ import annotations

import hashlib
import json
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .assignments import Alphabet, EdgeSet, Scope
from .basis import Basis
from .engine import HolantInstance, VerificationReport
from .errors import ParseError, ValidationError
from .functions import FnTable

SCHEMA_VERSION = "1"


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _table_pairs(values: np.ndarray) -> list[list[float]]:
    return [_pair(z) for z in values.tolist()]


def instance_document(inst: HolantInstance) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "alphabet": list(inst.alphabet.symbols),
        "edges": list(inst.edges.edges),
        "generators": [
            {"scope": list(t.scope.members), "table": _table_pairs(t.values)}
            for t in inst.generators
        ],
        "recognizers": [
            {"scope": list(t.scope.members), "table": _table_pairs(t.values)}
            for t in inst.recognizers
        ],
    }
    if inst.basis_ref is not None:
        doc["basis"] = inst.basis_ref
    return doc


def basis_document(basis: Basis) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "alphabet": list(basis.alphabet.symbols),
        "matrix": [[_pair(z) for z in row] for row in basis.matrix.tolist()],
    }


def _canonical_bytes(doc: dict) -> bytes:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")


def instance_digest(inst: HolantInstance) -> str:
    return hashlib.sha256(_canonical_bytes(instance_document(inst))).hexdigest()


def basis_digest(basis: Basis) -> str:
    return hashlib.sha256(_canonical_bytes(basis_document(basis))).hexdigest()


def _dump(doc: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def save_instance(inst: HolantInstance, path: str | Path) -> None:
    _dump(instance_document(inst), path)


def save_basis(basis: Basis, path: str | Path) -> None:
    _dump(basis_document(basis), path)


def _load_json(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: cannot read file: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be an object")
    return doc


def _get(doc: dict, key: str, kind: type, where: str):
    if key not in doc:
        raise ParseError(f"{where}: missing field {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        raise ParseError(f"{where}: field {key!r} must be a {kind.__name__}")
    return value


def _check_schema(doc: dict, where: str) -> None:
    version = _get(doc, "schema_version", str, where)
    if version != SCHEMA_VERSION:
        raise ParseError(f"{where}: unsupported schema_version {version!r}")


def _string_list(doc: dict, key: str, where: str) -> list[str]:
    raw = _get(doc, key, list, where)
    for item in raw:
        if not isinstance(item, str):
            raise ParseError(f"{where}: {key!r} entries must be strings, got {item!r}")
    return raw


def _parse_complex(raw, where: str) -> complex:
    if (
        not isinstance(raw, list)
        or len(raw) != 2
        or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in raw)
    ):
        raise ParseError(f"{where}: complex entries must be [re, im] number pairs, got {raw!r}")
    return complex(raw[0], raw[1])


def _parse_local_table(
    raw, alphabet: Alphabet, edges: EdgeSet, where: str
) -> FnTable:
    if not isinstance(raw, dict):
        raise ParseError(f"{where}: must be an object with 'scope' and 'table'")
    scope_labels = _string_list(raw, "scope", where)
    try:
        scope = Scope(edges, tuple(scope_labels))
    except ValidationError as exc:
        raise ParseError(f"{where}: {exc}") from exc
    if tuple(scope_labels) != scope.members:
        raise ParseError(
            f"{where}: scope labels must follow the instance edge order "
            f"{list(scope.members)}, got {scope_labels}"
        )
    table = _get(raw, "table", list, where)
    expected = alphabet.size**scope.size
    if len(table) != expected:
        raise ParseError(
            f"{where}: table has {len(table)} entries, expected {expected} "
            f"(= {alphabet.size}^{scope.size} for this scope)"
        )
    values = [_parse_complex(entry, f"{where}.table[{i}]") for i, entry in enumerate(table)]
    return FnTable(alphabet, scope, values)


def load_instance(path: str | Path) -> HolantInstance:
    """Load and fully re-validate an instance document."""
    where = str(path)
    doc = _load_json(path)
    _check_schema(doc, where)
    try:
        alphabet = Alphabet(tuple(_string_list(doc, "alphabet", where)))
        edges = EdgeSet(tuple(_string_list(doc, "edges", where)))
    except ValidationError as exc:
        raise ParseError(f"{where}: {exc}") from exc

    sides = {}
    for side in ("generators", "recognizers"):
        raw_side = _get(doc, side, list, where)
        sides[side] = tuple(
            _parse_local_table(raw, alphabet, edges, f"{where}: {side}[{i}]")
            for i, raw in enumerate(raw_side)
        )

    basis_ref = doc.get("basis")
    if basis_ref is not None and not isinstance(basis_ref, str):
        raise ParseError(f"{where}: field 'basis' must be a string path")

    return HolantInstance(alphabet, edges, sides["generators"], sides["recognizers"], basis_ref)


def load_basis(path: str | Path) -> Basis:
    """Load a basis document; invertibility is re-validated on construction."""
    where = str(path)
    doc = _load_json(path)
    _check_schema(doc, where)
    try:
        alphabet = Alphabet(tuple(_string_list(doc, "alphabet", where)))
    except ValidationError as exc:
        raise ParseError(f"{where}: {exc}") from exc
    raw_matrix = _get(doc, "matrix", list, where)
    k = alphabet.size
    if len(raw_matrix) != k or any(not isinstance(row, list) or len(row) != k for row in raw_matrix):
        raise ParseError(f"{where}: matrix must be {k} rows of {k} [re, im] pairs")
    matrix = [
        [_parse_complex(entry, f"{where}: matrix[{i}][{j}]") for j, entry in enumerate(row)]
        for i, row in enumerate(raw_matrix)
    ]
    return Basis(alphabet, matrix)


def report_document(report: VerificationReport, seeds: dict | None = None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "lhs": _pair(report.lhs),
        "rhs": _pair(report.rhs),
        "abs_error": report.abs_error,
        "rel_error": report.rel_error,
        "tolerance": report.tolerance,
        "passed": report.passed,
        "instance_digest": report.instance_digest,
        "basis_digest": report.basis_digest,
        "elapsed_seconds": report.elapsed_seconds,
        "lhs_pairing_rel": report.lhs_pairing_rel,
        "rhs_pairing_rel": report.rhs_pairing_rel,
        "fault": report.fault,
        "seeds": seeds or {},
    }


def save_report(report: VerificationReport, path: str | Path, seeds: dict | None = None) -> None:
    _dump(report_document(report, seeds), path)
