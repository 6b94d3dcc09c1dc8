"""Independent brute-force oracles over prime fields.

Nothing here imports the package under test: matrices are flat tuples of
ints mod p, subspaces are frozensets of vectors.  The tests compare library
results against these on small instances.
"""

from __future__ import annotations

from itertools import product


def poly_mulmod(a: int, b: int, modulus: list[int], p: int) -> int:
    """Multiply two base-p digit encodings modulo a monic polynomial (coefficients low to high)."""
    deg = len(modulus) - 1

    def digits(x):
        return [(x // p**i) % p for i in range(deg)]

    da, db = digits(a), digits(b)
    prod = [0] * (2 * deg)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    for top in range(2 * deg - 1, deg - 1, -1):
        c = prod[top]
        if c:
            for i, mc in enumerate(modulus):
                prod[top - deg + i] = (prod[top - deg + i] - c * mc) % p
    return sum(c * p**i for i, c in enumerate(prod[:deg]))


def rank_mod_p(rows, p: int) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                c = rows[i][col]
                rows[i] = [(x - c * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def span(vectors, p: int, length: int) -> frozenset:
    vectors = [tuple(v) for v in vectors]
    out = set()
    for coeffs in product(range(p), repeat=len(vectors)):
        out.add(tuple(sum(c * v[i] for c, v in zip(coeffs, vectors)) % p for i in range(length)))
    if not vectors:
        out.add((0,) * length)
    return frozenset(out)


def matrix_rows(x, n: int, m: int):
    return [x[i * m:(i + 1) * m] for i in range(n)]


def matrix_rank(x, n: int, m: int, p: int) -> int:
    return rank_mod_p(matrix_rows(x, n, m), p)


def column_space(x, n: int, m: int, p: int) -> frozenset:
    cols = [tuple(x[i * m + j] for i in range(n)) for j in range(m)]
    return span(cols, p, n)


def weight_distribution(basis, n: int, m: int, p: int) -> list[int]:
    w = [0] * (min(n, m) + 1)
    for x in span(basis, p, n * m):
        w[matrix_rank(x, n, m, p)] += 1
    return w + [0] * (n + 1 - len(w))


def dual_space(basis, n: int, m: int, p: int) -> frozenset:
    return frozenset(
        y for y in product(range(p), repeat=n * m)
        if all(sum(a * b for a, b in zip(y, x)) % p == 0 for x in basis)
    )


def all_subspaces(n: int, t: int, p: int) -> set[frozenset]:
    out = set()
    for vecs in product(product(range(p), repeat=n), repeat=t):
        if rank_mod_p(vecs, p) == t:
            out.add(span(vecs, p, n))
    return out


def supports_at_rank(basis, n: int, m: int, p: int, u: int) -> dict[frozenset, int]:
    out: dict[frozenset, int] = {}
    for x in span(basis, p, n * m):
        if matrix_rank(x, n, m, p) == u:
            s = column_space(x, n, m, p)
            out[s] = out.get(s, 0) + 1
    return out


def design_lambda(blocks, t: int, n: int, p: int) -> int | None:
    """Common number of blocks (vector sets) containing each t-subspace, or None."""
    counts = {sum(1 for b in blocks if tsub <= b) for tsub in all_subspaces(n, t, p)}
    return counts.pop() if len(counts) == 1 else None


def vector_set(subspace) -> frozenset:
    """All vectors of a library subspace, as plain tuples."""
    return frozenset(tuple(v) for v in subspace.vectors())
