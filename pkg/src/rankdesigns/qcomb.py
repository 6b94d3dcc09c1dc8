"""Gaussian binomial coefficients and exact q-Pascal linear systems."""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from functools import lru_cache
from math import comb

__all__ = ["InconsistentSystemError", "q_binomial", "q_pascal_matrix", "q_pascal_system", "minor_determinant", "minor_product"]


class InconsistentSystemError(ArithmeticError):
    """A weight system has no non-negative integer solution."""


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or n < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q**n - q**i
        den *= q**k - q**i
    return num // den


def q_pascal_matrix(weights: Sequence[int], n: int, q: int, rows: int | None = None) -> list[list[int]]:
    """Rows l = 0..rows-1, columns j: [n - weights[j] choose l]_q."""
    rows = len(weights) if rows is None else rows
    return [[q_binomial(n - i, ell, q) for i in weights] for ell in range(rows)]


def _solve(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    n = len(a)
    aug = [row[:] + [rhs] for row, rhs in zip(a, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            raise InconsistentSystemError("singular weight system")
        aug[c], aug[piv] = aug[piv], aug[c]
        lead = aug[c][c]
        aug[c] = [x / lead for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n] for row in aug]


def q_pascal_system(weights: Sequence[int], n: int, q: int, rhs: Sequence[int | Fraction]) -> list[int]:
    """Solve sum_j x_j [n - weights[j] choose l]_q = rhs[l] for l < len(weights).

    Solved over the rationals; a non-integral or negative solution raises
    :class:`InconsistentSystemError`.
    """
    weights = list(weights)
    if len(set(weights)) != len(weights):
        raise ValueError("weights must be distinct")
    if len(rhs) != len(weights):
        raise ValueError(f"need {len(weights)} right-hand sides, got {len(rhs)}")
    if not weights:
        return []
    a = [[Fraction(x) for x in row] for row in q_pascal_matrix(weights, n, q)]
    sol = _solve(a, [Fraction(x) for x in rhs])
    out = []
    for w, x in zip(weights, sol):
        if x.denominator != 1 or x < 0:
            raise InconsistentSystemError(f"inconsistent weight system: weight {w} gets {x}")
        out.append(int(x))
    return out


def minor_determinant(r: Sequence[int], q: int) -> Fraction:
    """det([r_i choose j]_q) for i, j < len(r), by exact elimination."""
    ell = len(r)
    a = [[Fraction(q_binomial(ri, j, q)) for j in range(ell)] for ri in r]
    det = Fraction(1)
    for c in range(ell):
        piv = next((i for i in range(c, ell) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, ell):
            f = a[i][c] / a[c][c]
            a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def minor_product(r: Sequence[int], q: int) -> Fraction:
    """Closed form q^C(l,2) * prod_{i<j} (q^r_j - q^r_i) / (q^j - q^i), indices 1-based."""
    ell = len(r)
    out = Fraction(q ** comb(ell, 2))
    for i in range(ell):
        for j in range(i + 1, ell):
            out *= Fraction(q ** r[j] - q ** r[i], q ** (j + 1) - q ** (i + 1))
    return out
