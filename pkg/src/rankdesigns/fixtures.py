"""Canonical example codes shipped as JSON fixtures."""

from __future__ import annotations

from pathlib import Path

from .codes import MatrixCode, VectorCode, append_zero_column_code, dual_vector, expand, gabidulin
from .gf import ExtField, Field
from .linalg import FqMatrix, rank
from .serialize import code_to_json, dump_json

__all__ = ["spread_parity_check", "spread_code", "zero_column_counterexample", "GABIDULIN_PARAMS", "generate_examples"]

GABIDULIN_PARAMS = [(2, 4, 4, 2), (2, 4, 4, 1), (3, 3, 3, 1)]


def spread_parity_check(q: int, s: int) -> VectorCode | FqMatrix:
    """The 2 x 2s matrix with rows (a_j) and (a_j^(q^s)) over F_{q^(2s)}, a = polynomial basis."""
    ext = ExtField(Field.from_order(q), 2 * s)
    alpha = ext.polynomial_basis()
    return FqMatrix.from_rows(ext, [alpha, [ext.frobenius(a, s) for a in alpha]])


def spread_code(q: int = 2, s: int = 2) -> MatrixCode:
    """Gamma(C) for the [2s, 2s-2, 2] code C with the parity check above.

    For s = 1 the parity check is invertible, C = {0}, and the result is the
    zero code in F_q^{2x2}; its dual (the whole space) still carries the
    spread of F_q^2 by lines.
    """
    h = spread_parity_check(q, s)
    ext = h.field
    if rank(h) == h.ncols:
        return MatrixCode(ext.base, 2 * s, 2 * s)
    return expand(dual_vector(VectorCode(ext, h)))


def zero_column_counterexample(q: int = 2, n: int = 3, d: int = 2) -> MatrixCode:
    """Append a zero column to an MRD F_q-[n x n, n(n-d+1), d] Gabidulin code."""
    ext = ExtField(Field.from_order(q), n)
    return append_zero_column_code(expand(gabidulin(ext, n, n - d + 1)))


def generate_examples(outdir: str | Path) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []

    def write(name: str, payload: dict) -> None:
        path = outdir / name
        path.write_text(dump_json(payload))
        written.append(path)

    for s in (1, 2):
        write(f"spread_s{s}.json", code_to_json(spread_code(2, s)))
    for q, m, n, k in GABIDULIN_PARAMS:
        ext = ExtField(Field.from_order(q), m)
        write(f"gabidulin_{q}_{m}_{n}_{k}.json", code_to_json(gabidulin(ext, n, k)))
    write("counterexample.json", code_to_json(zero_column_counterexample()))
    return written
