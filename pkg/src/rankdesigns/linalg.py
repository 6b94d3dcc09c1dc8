"""Dense exact linear algebra over finite fields.

Vectors and matrix rows are sequences of integer field encodings.  Over F_2
the elimination routines pack each row into a Python int and eliminate with
XOR; every other field goes through the field's table arithmetic.

Subspaces are stored canonically by the reduced row echelon form of a basis,
so two bases of the same space give equal (and equally hashed) objects.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field as dc_field
from itertools import product

from .gf import AnyField, Field

__all__ = [
    "LinalgError",
    "SingularMatrixError",
    "DimensionError",
    "FqMatrix",
    "Subspace",
    "rank",
    "rref",
    "kernel",
    "support",
    "contains",
    "orthogonal_complement",
    "basis_change_matrix",
    "inverse",
    "row_space",
    "is_gf2",
]


class LinalgError(ValueError):
    pass


class SingularMatrixError(LinalgError):
    pass


class DimensionError(LinalgError):
    pass


def is_gf2(field: AnyField) -> bool:
    return isinstance(field, Field) and field.p == 2 and field.e == 1


# ----------------------------------------------------------------------
# elimination kernels
# ----------------------------------------------------------------------


def _pack(row: Sequence[int], width: int) -> int:
    v = 0
    for x in row:
        v = (v << 1) | x
    return v << (width - len(row))


def _unpack(v: int, width: int) -> list[int]:
    return [(v >> (width - 1 - j)) & 1 for j in range(width)]


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank of F_2 row vectors given as int bitmasks."""
    basis: list[int] = []
    for v in rows:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


def gf2_rref(rows: Iterable[int]) -> list[int]:
    """Reduced echelon basis of F_2 bitmask rows, leading (highest) bit first."""
    basis: list[int] = []
    for v in rows:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            hb = v.bit_length() - 1
            basis = [b ^ v if (b >> hb) & 1 else b for b in basis]
            basis.append(v)
            basis.sort(reverse=True)
    return basis


def _eliminate(field: AnyField, rows: list[list[int]], ncols: int) -> list[int]:
    """In-place RREF pivoting only on the first ``ncols`` columns.

    Row operations act on whole rows, so augmented columns are carried
    along.  Returns the pivot columns; pivot rows come first.
    """
    nrows = len(rows)
    pivots: list[int] = []
    if nrows == 0:
        return pivots
    width = len(rows[0])
    if is_gf2(field):
        packed = [_pack(r, width) for r in rows]
        r = 0
        for c in range(ncols):
            bit = 1 << (width - 1 - c)
            piv = next((i for i in range(r, nrows) if packed[i] & bit), None)
            if piv is None:
                continue
            packed[r], packed[piv] = packed[piv], packed[r]
            pr = packed[r]
            for i in range(nrows):
                if i != r and packed[i] & bit:
                    packed[i] ^= pr
            pivots.append(c)
            r += 1
            if r == nrows:
                break
        rows[:] = [_unpack(v, width) for v in packed]
        return pivots

    prime = isinstance(field, Field) and field.e == 1
    p = field.p
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        if lead != 1:
            inv = field.inv(lead)
            rows[r] = [(inv * x) % p for x in rows[r]] if prime else [field.mul(inv, x) for x in rows[r]]
        pr = rows[r]
        for i in range(nrows):
            f = rows[i][c]
            if i != r and f:
                if prime:
                    rows[i] = [(a - f * b) % p for a, b in zip(rows[i], pr)]
                else:
                    mul, sub = field.mul, field.sub
                    rows[i] = [sub(a, mul(f, b)) if b else a for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def _rank_rows(field: AnyField, rows: Sequence[Sequence[int]], ncols: int) -> int:
    if is_gf2(field):
        return gf2_rank(_pack(r, ncols) for r in rows)
    work = [list(r) for r in rows]
    return len(_eliminate(field, work, ncols))


def _rref_basis(field: AnyField, vectors: Iterable[Sequence[int]], n: int) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    if is_gf2(field):
        basis = gf2_rref(_pack(v, n) for v in vectors)
        rows = tuple(tuple(_unpack(b, n)) for b in basis)
        pivots = tuple(n - b.bit_length() for b in basis)
        return rows, pivots
    work = [list(v) for v in vectors]
    if len(work) == 0:
        return (), ()
    pivots = _eliminate(field, work, n)
    return tuple(tuple(work[i]) for i in range(len(pivots))), tuple(pivots)


# ----------------------------------------------------------------------
# matrices
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class FqMatrix:
    """Dense matrix over a finite field, entries stored row-major."""

    field: AnyField
    nrows: int
    ncols: int
    entries: tuple[int, ...] = dc_field(repr=False)

    def __init__(self, field: AnyField, nrows: int, ncols: int, entries: Iterable[int]) -> None:
        entries = tuple(int(x) for x in entries)
        if len(entries) != nrows * ncols:
            raise DimensionError(f"expected {nrows * ncols} entries, got {len(entries)}")
        q = field.order
        for x in entries:
            if not 0 <= x < q:
                raise LinalgError(f"entry {x} is not an element of {field}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "nrows", nrows)
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "entries", entries)

    # -- constructors -------------------------------------------------
    @classmethod
    def from_rows(cls, field: AnyField, rows: Sequence[Sequence[int]], ncols: int | None = None) -> FqMatrix:
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise DimensionError("cannot infer column count of an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        return cls(field, len(rows), ncols, (x for r in rows for x in r))

    @classmethod
    def zeros(cls, field: AnyField, nrows: int, ncols: int) -> FqMatrix:
        return cls(field, nrows, ncols, [0] * (nrows * ncols))

    @classmethod
    def identity(cls, field: AnyField, n: int) -> FqMatrix:
        return cls(field, n, n, (int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def random(cls, field: AnyField, nrows: int, ncols: int, rng: random.Random) -> FqMatrix:
        return cls(field, nrows, ncols, (rng.randrange(field.order) for _ in range(nrows * ncols)))

    @classmethod
    def random_invertible(cls, field: AnyField, n: int, rng: random.Random) -> FqMatrix:
        while True:
            a = cls.random(field, n, n, rng)
            if rank(a) == n:
                return a

    # -- access -------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.ncols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.ncols:(i + 1) * self.ncols]

    def rows(self) -> list[tuple[int, ...]]:
        return [self.row(i) for i in range(self.nrows)]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.ncols]

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def to_list(self) -> list[list[int]]:
        return [list(r) for r in self.rows()]

    def is_zero(self) -> bool:
        return not any(self.entries)

    # -- algebra ------------------------------------------------------
    @property
    def T(self) -> FqMatrix:
        return FqMatrix(self.field, self.ncols, self.nrows, (x for c in self.columns() for x in c))

    def _check_same(self, other: FqMatrix) -> None:
        if other.field != self.field:
            raise LinalgError("matrices over different fields")

    def __add__(self, other: FqMatrix) -> FqMatrix:
        self._check_same(other)
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        add = self.field.add
        return FqMatrix(self.field, self.nrows, self.ncols, (add(a, b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> FqMatrix:
        return FqMatrix(self.field, self.nrows, self.ncols, map(self.field.neg, self.entries))

    def __sub__(self, other: FqMatrix) -> FqMatrix:
        return self + (-other)

    def scale(self, c: int) -> FqMatrix:
        mul = self.field.mul
        return FqMatrix(self.field, self.nrows, self.ncols, (mul(c, x) for x in self.entries))

    def __matmul__(self, other: FqMatrix) -> FqMatrix:
        self._check_same(other)
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        f = self.field
        cols = other.columns()
        out = []
        for r in self.rows():
            for c in cols:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc = f.add(acc, f.mul(a, b))
                out.append(acc)
        return FqMatrix(f, self.nrows, other.ncols, out)

    def delete_rows(self, s: int) -> FqMatrix:
        """Drop the first s rows."""
        return FqMatrix(self.field, self.nrows - s, self.ncols, self.entries[s * self.ncols:])

    def __repr__(self) -> str:
        return f"FqMatrix({self.field!r}, {self.to_list()})"


def rank(x: FqMatrix) -> int:
    return _rank_rows(x.field, x.rows(), x.ncols)


def rref(x: FqMatrix) -> tuple[FqMatrix, tuple[int, ...], FqMatrix]:
    """Return (R, pivots, T) with R = T @ x in reduced row echelon form."""
    n = x.nrows
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(x.rows())]
    pivots = _eliminate(x.field, aug, x.ncols)
    r = FqMatrix.from_rows(x.field, [row[:x.ncols] for row in aug], x.ncols)
    t = FqMatrix.from_rows(x.field, [row[x.ncols:] for row in aug], n) if n else FqMatrix.zeros(x.field, 0, 0)
    return r, tuple(pivots), t


def inverse(a: FqMatrix) -> FqMatrix:
    if a.nrows != a.ncols:
        raise DimensionError("only square matrices are invertible")
    r, pivots, t = rref(a)
    if len(pivots) != a.nrows:
        raise SingularMatrixError("matrix is singular")
    return t


# ----------------------------------------------------------------------
# subspaces
# ----------------------------------------------------------------------


@dataclass(frozen=True, order=False)
class Subspace:
    """Subspace of F^n stored by its RREF basis."""

    field: AnyField
    n: int
    basis: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, field: AnyField, n: int, vectors: Iterable[Sequence[int]]) -> Subspace:
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != n:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {n}")
        basis, pivots = _rref_basis(field, vectors, n)
        return cls(field, n, basis, pivots)

    @classmethod
    def zero(cls, field: AnyField, n: int) -> Subspace:
        return cls(field, n, (), ())

    @classmethod
    def full(cls, field: AnyField, n: int) -> Subspace:
        return cls(field, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), tuple(range(n)))

    @classmethod
    def standard(cls, field: AnyField, n: int, indices: Iterable[int]) -> Subspace:
        """Span of the standard basis vectors e_i (0-based indices)."""
        return cls.span(field, n, [tuple(int(j == i) for j in range(n)) for i in indices])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> FqMatrix:
        return FqMatrix(self.field, self.dim, self.n, (x for r in self.basis for x in r))

    def vectors(self) -> Iterator[tuple[int, ...]]:
        """Every vector of the subspace (q**dim of them)."""
        f = self.field
        for coeffs in product(range(f.order), repeat=self.dim):
            v = [0] * self.n
            for c, row in zip(coeffs, self.basis):
                if c:
                    v = [f.add(a, f.mul(c, b)) for a, b in zip(v, row)]
            yield tuple(v)

    def __contains__(self, v: Sequence[int]) -> bool:
        return _reduces_to_zero(self, v)

    def sort_key(self) -> tuple:
        return (self.dim, self.pivots, self.basis)

    def __lt__(self, other: Subspace) -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"Subspace(n={self.n}, {[list(r) for r in self.basis]})"


def _reduces_to_zero(u: Subspace, v: Sequence[int]) -> bool:
    f = u.field
    v = list(v)
    for row, c in zip(u.basis, u.pivots):
        a = v[c]
        if a:
            v = [f.sub(x, f.mul(a, y)) for x, y in zip(v, row)]
    return not any(v)


def row_space(x: FqMatrix) -> Subspace:
    return Subspace.span(x.field, x.ncols, x.rows())


def support(x: FqMatrix) -> Subspace:
    """Column space of x as a subspace of F^nrows."""
    return Subspace.span(x.field, x.nrows, x.columns())


def kernel(x: FqMatrix) -> Subspace:
    """{v : x @ v^T = 0}, a subspace of F^ncols."""
    f = x.field
    work = [list(r) for r in x.rows()]
    pivots = _eliminate(f, work, x.ncols)
    pivset = set(pivots)
    vecs = []
    for free in range(x.ncols):
        if free in pivset:
            continue
        v = [0] * x.ncols
        v[free] = 1
        for r, c in enumerate(pivots):
            v[c] = f.neg(work[r][free])
        vecs.append(v)
    return Subspace.span(f, x.ncols, vecs)


def contains(u: Subspace, t: Subspace) -> bool:
    """True iff t is a subspace of u."""
    if u.n != t.n:
        raise DimensionError(f"ambient dimensions differ: {u.n} vs {t.n}")
    if t.dim > u.dim:
        return False
    return all(_reduces_to_zero(u, row) for row in t.basis)


def orthogonal_complement(u: Subspace) -> Subspace:
    if u.dim == 0:
        return Subspace.full(u.field, u.n)
    return kernel(u.basis_matrix())


def _completion(u: Subspace) -> list[tuple[int, ...]]:
    """u's basis followed by standard vectors e_0, e_1, ... that extend it."""
    vecs = list(u.basis)
    span = u
    for i in range(u.n):
        if len(vecs) == u.n:
            break
        e = tuple(int(j == i) for j in range(u.n))
        if e not in span:
            vecs.append(e)
            span = Subspace.span(u.field, u.n, vecs)
    return vecs


def basis_change_matrix(t: Subspace, target: Subspace) -> FqMatrix:
    """Invertible A with {A v^T : v in t} = target.

    Both bases are completed greedily with standard vectors in index order,
    and A sends the i-th completed vector of t to that of target.
    """
    if t.n != target.n:
        raise DimensionError(f"ambient dimensions differ: {t.n} vs {target.n}")
    if t.dim != target.dim:
        raise DimensionError(f"dimension mismatch: {t.dim} vs {target.dim}")
    f = t.field
    if t == target:
        return FqMatrix.identity(f, t.n)
    p = FqMatrix.from_rows(f, _completion(t), t.n).T
    q = FqMatrix.from_rows(f, _completion(target), t.n).T
    return q @ inverse(p)
