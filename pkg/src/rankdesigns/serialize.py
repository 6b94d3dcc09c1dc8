"""JSON formats for fields, codes, designs and weight distributions.

Code descriptor::

    {"field": {"p": 2, "e": 1, "modulus": [1, 1], "m": 4, "ext_modulus": [1, 1, 0, 0, 1]},
     "kind": "matrix" | "vector", "n": 4, "m": 4,
     "basis": [[row-major entries], ...],         # matrix codes
     "generator": [[F_{q^m} encodings], ...],     # vector codes
     "gamma": [F_{q^m} encodings]}                # optional, vector codes

Moduli list coefficients from the constant term upward.  Counts are decimal
strings so that arbitrary precision survives any JSON parser.
"""

from __future__ import annotations

import json
from collections.abc import Mapping
from pathlib import Path
from typing import Any

from .codes import MatrixCode, VectorCode, expand
from .gf import AnyField, ExtField, Field, FieldError
from .linalg import FqMatrix

__all__ = ["FormatError", "field_from_spec", "code_from_json", "code_to_json", "load_code", "load_json", "dump_json", "as_matrix_code"]


class FormatError(ValueError):
    """A file does not match its schema; the message names the file and field."""


def _get(data: Mapping, key: str, where: str, kind: type | tuple = int):
    if key not in data:
        raise FormatError(f"{where}: missing field '{key}'")
    value = data[key]
    if kind is int and not isinstance(value, int):
        raise FormatError(f"{where}: field '{key}' must be an integer, got {value!r}")
    if kind is list and not isinstance(value, list):
        raise FormatError(f"{where}: field '{key}' must be a list")
    return value


def field_from_spec(spec: Mapping, where: str = "field") -> tuple[Field, ExtField | None]:
    if not isinstance(spec, Mapping):
        raise FormatError(f"{where}: must be an object")
    try:
        base = Field(_get(spec, "p", where), spec.get("e", 1), spec.get("modulus"))
        ext = None
        if spec.get("m") is not None:
            ext = ExtField(base, spec["m"], spec.get("ext_modulus"))
    except FieldError as exc:
        raise FormatError(f"{where}: {exc}") from None
    return base, ext


def field_spec(field: AnyField) -> dict:
    return field.spec()


def code_from_json(data: Mapping, where: str = "code") -> MatrixCode | tuple[VectorCode, list[int] | None]:
    """A MatrixCode, or (VectorCode, gamma) for vector descriptors."""
    base, ext = field_from_spec(_get(data, "field", where, dict), f"{where}.field")
    kind = data.get("kind", "matrix")
    n = _get(data, "n", where)
    try:
        if kind == "matrix":
            m = _get(data, "m", where)
            basis = _get(data, "basis", where, list)
            for i, b in enumerate(basis):
                if not isinstance(b, list) or len(b) != n * m:
                    raise FormatError(f"{where}.basis[{i}]: expected {n * m} row-major entries")
            return MatrixCode(base, n, m, [FqMatrix(base, n, m, b) for b in basis])
        if kind == "vector":
            if ext is None:
                raise FormatError(f"{where}.field: vector codes need an extension degree 'm'")
            gen = _get(data, "generator", where, list)
            for i, row in enumerate(gen):
                if not isinstance(row, list) or len(row) != n:
                    raise FormatError(f"{where}.generator[{i}]: expected {n} entries")
            gamma = data.get("gamma")
            return VectorCode(ext, gen), gamma
    except (ValueError, ArithmeticError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"{where}: {exc}") from None
    raise FormatError(f"{where}: field 'kind' must be 'matrix' or 'vector', got {kind!r}")


def as_matrix_code(obj: MatrixCode | tuple[VectorCode, list[int] | None]) -> MatrixCode:
    if isinstance(obj, MatrixCode):
        return obj
    code, gamma = obj
    return expand(code, gamma)


def code_to_json(code: MatrixCode | VectorCode, gamma: list[int] | None = None) -> dict:
    if isinstance(code, MatrixCode):
        return {
            "field": code.field.spec(),
            "kind": "matrix",
            "n": code.n,
            "m": code.m,
            "basis": [list(b.entries) for b in code.basis],
        }
    out = {
        "field": code.ext.spec(),
        "kind": "vector",
        "n": code.n,
        "m": code.m,
        "generator": code.generator.to_list(),
    }
    if gamma is not None:
        out["gamma"] = list(gamma)
    return out


def load_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None


def load_code(path: str | Path) -> MatrixCode | tuple[VectorCode, list[int] | None]:
    return code_from_json(load_json(path), str(path))


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
