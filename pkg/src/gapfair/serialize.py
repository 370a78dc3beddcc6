"""Instance / allocation / knapsack file formats (JSON).

Instances hold only integers; rationals in allocation files are "p/q"
strings so round-trips are bit-exact.  Good indices in files are 1-based.
Allocation files reference the instance file they were solved from, plus
a content hash, so verification cannot silently run against the wrong
instance.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .instance import FractionalAllocation, Instance, IntegralAllocation
from .reductions import KnapsackProblem


class InstanceFormatError(ValueError):
    """Malformed input file; the message names the offending field."""


def frac_to_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def frac_from_str(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InstanceFormatError(f"bad rational {s!r}") from exc


def _load_json(path: Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"{path}: invalid JSON at line {exc.lineno}") from exc


def _int_list(doc: Any, field: str, length: int) -> list[int]:
    raw = doc.get(field)
    if not isinstance(raw, list) or len(raw) != length:
        raise InstanceFormatError(f"field {field!r}: expected {length} integers")
    for v in raw:
        if not isinstance(v, int):
            raise InstanceFormatError(f"field {field!r}: non-integer entry {v!r}")
    return raw


def _int_matrix(doc: Any, field: str, rows: int, cols: int) -> list[list[int]]:
    raw = doc.get(field)
    if not isinstance(raw, list) or len(raw) != rows:
        raise InstanceFormatError(f"field {field!r}: expected {rows} rows")
    out = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != cols:
            raise InstanceFormatError(
                f"field {field!r} row {i + 1}: expected {cols} integers"
            )
        for v in row:
            if not isinstance(v, int):
                raise InstanceFormatError(
                    f"field {field!r} row {i + 1}: non-integer entry {v!r}"
                )
        out.append(row)
    return out


def load_instance(path: str | Path) -> Instance:
    path = Path(path)
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise InstanceFormatError(f"{path}: expected a JSON object")
    for field in ("n", "m"):
        if not isinstance(doc.get(field), int) or doc[field] < 1:
            raise InstanceFormatError(f"field {field!r}: expected a positive integer")
    n, m = doc["n"], doc["m"]
    try:
        return Instance(
            n=n,
            m=m,
            values=tuple(map(tuple, _int_matrix(doc, "values", n, m))),
            sizes=tuple(map(tuple, _int_matrix(doc, "sizes", n, m))),
            budgets=tuple(_int_list(doc, "budgets", n)),
        )
    except ValueError as exc:
        raise InstanceFormatError(str(exc)) from exc


def dump_instance(instance: Instance, path: str | Path) -> None:
    doc = {
        "n": instance.n,
        "m": instance.m,
        "budgets": list(instance.budgets),
        "values": [list(row) for row in instance.values],
        "sizes": [list(row) for row in instance.sizes],
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def instance_hash(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _allocation_header(instance_path: Path) -> dict[str, str]:
    return {
        "instance": str(instance_path),
        "instance_sha256": instance_hash(instance_path),
    }


def dump_fractional(
    allocation: FractionalAllocation, instance_path: str | Path, path: str | Path
) -> None:
    doc = _allocation_header(Path(instance_path))
    doc["type"] = "fractional"
    doc["x"] = [[frac_to_str(v) for v in row] for row in allocation.x]
    doc["charity"] = [frac_to_str(v) for v in allocation.charity]
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def dump_integral(
    allocation: IntegralAllocation, instance_path: str | Path, path: str | Path
) -> None:
    doc = _allocation_header(Path(instance_path))
    doc["type"] = "integral"
    doc["bundles"] = [sorted(g + 1 for g in bundle) for bundle in allocation.bundles]
    doc["charity"] = sorted(g + 1 for g in allocation.charity)
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def load_allocation(
    path: str | Path,
) -> tuple[FractionalAllocation | IntegralAllocation, Instance, Path]:
    """Load an allocation plus the instance it references (hash-checked)."""
    path = Path(path)
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise InstanceFormatError(f"{path}: expected a JSON object")
    instance_path = Path(doc.get("instance", ""))
    if not instance_path.is_absolute():
        instance_path = path.parent / instance_path
    if not instance_path.is_file():
        raise InstanceFormatError(f"referenced instance {instance_path} not found")
    if instance_hash(instance_path) != doc.get("instance_sha256"):
        raise InstanceFormatError(
            f"instance {instance_path} does not match the recorded hash"
        )
    instance = load_instance(instance_path)
    kind = doc.get("type")
    if kind == "fractional":
        raw = doc.get("x")
        if not isinstance(raw, list) or len(raw) != instance.n:
            raise InstanceFormatError("field 'x': expected one row per agent")
        rows = []
        for row in raw:
            if not isinstance(row, list) or len(row) != instance.m:
                raise InstanceFormatError("field 'x': ragged row")
            rows.append(tuple(frac_from_str(v) for v in row))
        try:
            allocation: FractionalAllocation | IntegralAllocation = (
                FractionalAllocation(tuple(rows))
            )
        except ValueError as exc:
            raise InstanceFormatError(str(exc)) from exc
    elif kind == "integral":
        raw = doc.get("bundles")
        if not isinstance(raw, list) or len(raw) != instance.n:
            raise InstanceFormatError("field 'bundles': expected one per agent")
        try:
            allocation = IntegralAllocation(
                instance.m,
                tuple(frozenset(g - 1 for g in bundle) for bundle in raw),
            )
        except (TypeError, ValueError) as exc:
            raise InstanceFormatError(str(exc)) from exc
    else:
        raise InstanceFormatError(f"field 'type': expected fractional/integral, got {kind!r}")
    return allocation, instance, instance_path


def load_knapsack(path: str | Path) -> KnapsackProblem:
    path = Path(path)
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise InstanceFormatError(f"{path}: expected a JSON object")
    if not isinstance(doc.get("m"), int) or doc["m"] < 1:
        raise InstanceFormatError("field 'm': expected a positive integer")
    if not isinstance(doc.get("capacity"), int):
        raise InstanceFormatError("field 'capacity': expected an integer")
    m = doc["m"]
    try:
        return KnapsackProblem(
            weights=tuple(_int_list(doc, "weights", m)),
            values=tuple(_int_list(doc, "values", m)),
            capacity=doc["capacity"],
        )
    except ValueError as exc:
        raise InstanceFormatError(str(exc)) from exc
