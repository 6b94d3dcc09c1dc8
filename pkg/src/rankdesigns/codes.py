"""Rank-metric codes: matrix codes over F_q and F_{q^m}-linear vector codes.

Every quantity here is exact.  Weight distributions, supports and distances
come from full enumeration of the code, guarded by explicit budgets that
raise :class:`BudgetExceeded` instead of sampling.

Enumeration order is lexicographic in the coefficient vector of F_q^k (taking
coefficients by their integer encoding).  Internally the code is walked as an
F_p-space, each step adding one precomputed suffix sum of generators, so the
index range splits into contiguous chunks for worker processes and the
merged result equals a sequential run.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .gf import AnyField, ExtField, Field, FieldError
from .linalg import (
    DimensionError,
    FqMatrix,
    Subspace,
    SingularMatrixError,
    gf2_rank,
    gf2_rref,
    inverse,
    is_gf2,
    kernel,
    rank,
    _rank_rows,
    _unpack,
)
from .qcomb import InconsistentSystemError, q_binomial, q_pascal_system

__all__ = [
    "Budget",
    "DEFAULT_BUDGET",
    "BudgetExceeded",
    "CodeError",
    "HypothesisError",
    "InconsistencyError",
    "WeightDistribution",
    "MatrixCode",
    "VectorCode",
    "expand",
    "dual",
    "dual_vector",
    "weight_distribution",
    "dual_weight_distribution",
    "macwilliams",
    "puncture",
    "shorten",
    "punctured_wd_from_dual_weights",
    "gabidulin",
    "is_mrd",
    "is_dually_qmrd",
    "append_zero_column_code",
    "codewords_with_support_in",
    "external_distance",
    "covering_radius",
    "singleton_bound",
]


class CodeError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration would exceed its configured budget."""


class HypothesisError(CodeError):
    """A theorem hypothesis required by the operation does not hold."""


class InconsistencyError(AssertionError):
    """Two independent computations of the same quantity disagree."""


@dataclass(frozen=True)
class Budget:
    max_codewords: int = 1 << 24
    max_ambient: int = 1 << 20
    max_subspaces: int = 1 << 20
    workers: int = 1


DEFAULT_BUDGET = Budget()


def _check_budget(needed: int, limit: int, what: str) -> None:
    if needed > limit:
        raise BudgetExceeded(f"{what} needs {needed} elements but the budget is {limit}")


# ----------------------------------------------------------------------
# weight distributions
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class WeightDistribution:
    """Exact counts (W_0, ..., W_n) of codewords by rank."""

    counts: tuple[int, ...]

    def __init__(self, counts: Iterable[int]) -> None:
        object.__setattr__(self, "counts", tuple(int(c) for c in counts))

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    def __getitem__(self, i: int) -> int:
        return self.counts[i] if 0 <= i < len(self.counts) else 0

    def __iter__(self) -> Iterator[int]:
        return iter(self.counts)

    def __len__(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def nonzero_weights(self) -> list[int]:
        return [i for i, c in enumerate(self.counts) if i > 0 and c]

    @property
    def min_distance(self) -> int | None:
        w = self.nonzero_weights()
        return w[0] if w else None

    def to_json(self) -> dict:
        return {"counts": [str(c) for c in self.counts]}

    def __repr__(self) -> str:
        return f"WeightDistribution{self.counts}"


# ----------------------------------------------------------------------
# flat codeword representations and the enumeration walk
# ----------------------------------------------------------------------


class _Flat:
    """Arithmetic on flattened n x m matrices.

    Over F_2 a matrix is one int of n*m bits (entry (0, 0) most significant);
    otherwise a tuple of field encodings in row-major order.
    """

    def __init__(self, field: AnyField, n: int, m: int) -> None:
        self.field = field
        self.n = n
        self.m = m
        self.gf2 = is_gf2(field)
        self.prime = isinstance(field, Field) and field.e == 1
        self.p = field.p
        self._mask = (1 << m) - 1
        self._shifts = [(n - 1 - i) * m for i in range(n)]
        self._support_cache: dict[tuple[int, ...], Subspace] = {}

    @property
    def zero(self):
        return 0 if self.gf2 else (0,) * (self.n * self.m)

    def encode(self, x: FqMatrix):
        if self.gf2:
            v = 0
            for e in x.entries:
                v = (v << 1) | e
            return v
        return x.entries

    def decode(self, v) -> FqMatrix:
        if self.gf2:
            return FqMatrix(self.field, self.n, self.m, _unpack(v, self.n * self.m))
        return FqMatrix(self.field, self.n, self.m, v)

    def add(self, a, b):
        if self.gf2:
            return a ^ b
        if self.prime:
            p = self.p
            return tuple((x + y) % p for x, y in zip(a, b))
        add = self.field.add
        return tuple(add(x, y) for x, y in zip(a, b))

    def scale(self, c: int, a):
        if self.gf2:
            return a if c else 0
        mul = self.field.mul
        return tuple(mul(c, x) for x in a)

    def rows(self, v):
        if self.gf2:
            mask = self._mask
            return [(v >> s) & mask for s in self._shifts]
        m = self.m
        return [v[i * m:(i + 1) * m] for i in range(self.n)]

    def rank(self, v) -> int:
        if self.gf2:
            mask = self._mask
            return gf2_rank((v >> s) & mask for s in self._shifts)
        return _rank_rows(self.field, self.rows(v), self.m)

    def support(self, v) -> Subspace:
        if self.gf2:
            rows = self.rows(v)
            cols = []
            for j in range(self.m - 1, -1, -1):
                c = 0
                for r in rows:
                    c = (c << 1) | ((r >> j) & 1)
                cols.append(c)
            key = tuple(gf2_rref(cols))
            sub = self._support_cache.get(key)
            if sub is None:
                n = self.n
                sub = Subspace(self.field, n, tuple(tuple(_unpack(b, n)) for b in key), tuple(n - b.bit_length() for b in key))
                self._support_cache[key] = sub
            return sub
        m = self.m
        cols = [v[j::m] for j in range(m)]
        return Subspace.span(self.field, self.n, cols)

    def fp_generators(self, basis: Sequence) -> list:
        """F_p-spanning list: for each basis element b, x^(e-1) b, ..., x b, b."""
        if self.prime:
            return list(basis)
        powers = []
        x = 1
        while x < self.field.order:
            powers.append(x)
            x *= self.p
        return [self.scale(c, b) for b in basis for c in reversed(powers)]


def _suffix_sums(flat: _Flat, gens: list) -> list:
    out = [flat.zero] * len(gens)
    acc = flat.zero
    for i in range(len(gens) - 1, -1, -1):
        acc = flat.add(acc, gens[i])
        out[i] = acc
    return out


def _walk(flat: _Flat, gens: list, start: int = 0, stop: int | None = None) -> Iterator:
    """Yield sum_i d_i g_i for indices start..stop-1, d = base-p digits (g_0 most significant)."""
    p = flat.p
    ngens = len(gens)
    total = p**ngens
    stop = total if stop is None else stop
    if start >= stop:
        return
    sums = _suffix_sums(flat, gens)
    # state at index `start`
    x = flat.zero
    s = start
    for i in range(ngens - 1, -1, -1):
        s, d = divmod(s, p)
        for _ in range(d):
            x = flat.add(x, gens[i])
    yield x
    add = flat.add
    last = ngens - 1
    if p == 2:
        for s in range(start + 1, stop):
            x = add(x, sums[last - ((s & -s).bit_length() - 1)])
            yield x
    else:
        for s in range(start + 1, stop):
            v = 0
            while s % p == 0:
                s //= p
                v += 1
            x = add(x, sums[last - v])
            yield x


# ----------------------------------------------------------------------
# matrix codes
# ----------------------------------------------------------------------


class MatrixCode:
    """An F_q-linear subspace of F_q^{n x m}, given by a basis of k matrices."""

    def __init__(self, field: AnyField, n: int, m: int, basis: Iterable[FqMatrix | Sequence[int]] = ()) -> None:
        if n < 1 or m < 1:
            raise CodeError(f"matrix shape must be positive, got {n}x{m}")
        mats = []
        for b in basis:
            if not isinstance(b, FqMatrix):
                b = FqMatrix(field, n, m, b)
            if b.field != field or b.shape != (n, m):
                raise CodeError(f"basis element of shape {b.shape} over {b.field} in a {n}x{m} code over {field}")
            mats.append(b)
        self.field = field
        self.n = n
        self.m = m
        self.basis: tuple[FqMatrix, ...] = tuple(mats)
        if mats and _rank_rows(field, [b.entries for b in mats], n * m) != len(mats):
            raise CodeError("basis matrices are linearly dependent")

    @classmethod
    def from_spanning(cls, field: AnyField, n: int, m: int, mats: Iterable[FqMatrix]) -> MatrixCode:
        """Code spanned by possibly dependent matrices (canonical basis)."""
        sub = Subspace.span(field, n * m, [x.entries for x in mats])
        return cls(field, n, m, sub.basis)

    @classmethod
    def full_space(cls, field: AnyField, n: int, m: int) -> MatrixCode:
        return cls(field, n, m, Subspace.full(field, n * m).basis)

    @property
    def k(self) -> int:
        return len(self.basis)

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def size(self) -> int:
        return self.field.order**self.k

    def __len__(self) -> int:
        return self.size

    @cached_property
    def _flat(self) -> _Flat:
        return _Flat(self.field, self.n, self.m)

    def as_subspace(self) -> Subspace:
        """The code as a subspace of F_q^{nm} (row-major flattening)."""
        return Subspace.span(self.field, self.n * self.m, [b.entries for b in self.basis])

    def canonical(self) -> MatrixCode:
        return MatrixCode(self.field, self.n, self.m, self.as_subspace().basis)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixCode):
            return NotImplemented
        return (self.field, self.n, self.m) == (other.field, other.n, other.m) and self.as_subspace() == other.as_subspace()

    def __hash__(self) -> int:
        return hash((self.field, self.n, self.m, self.as_subspace()))

    def __contains__(self, x: FqMatrix) -> bool:
        return x.entries in self.as_subspace()

    def __repr__(self) -> str:
        return f"MatrixCode({self.field!r}, [{self.n}x{self.m}, k={self.k}])"

    def codewords(self, budget: Budget = DEFAULT_BUDGET) -> Iterator[FqMatrix]:
        _check_budget(self.size, budget.max_codewords, "codeword enumeration")
        flat = self._flat
        for v in _walk(flat, flat.fp_generators([flat.encode(b) for b in self.basis])):
            yield flat.decode(v)

    def left_multiply(self, a: FqMatrix) -> MatrixCode:
        """A C = {A X : X in C} for invertible A."""
        _require_invertible(a, self.n)
        return MatrixCode(self.field, self.n, self.m, [a @ b for b in self.basis])

    def weight_distribution(self, budget: Budget = DEFAULT_BUDGET) -> WeightDistribution:
        return weight_distribution(self, budget)

    @cached_property
    def _wd(self) -> WeightDistribution:
        return weight_distribution(self)

    @property
    def min_distance(self) -> int:
        """Minimum rank of a nonzero codeword; min(n, m) + 1 for the zero code."""
        d = self._wd.min_distance
        return min(self.n, self.m) + 1 if d is None else d

    def dual(self) -> MatrixCode:
        return dual(self)


def _require_invertible(a: FqMatrix, n: int) -> None:
    if a.shape != (n, n):
        raise DimensionError(f"expected an invertible {n}x{n} matrix, got {a.shape}")
    if rank(a) != n:
        raise SingularMatrixError("transform matrix is singular")


# -- enumeration census ------------------------------------------------


def _census_range(code: MatrixCode, support_ranks: frozenset[int], start: int, stop: int) -> tuple[list[int], dict[int, Counter]]:
    flat = code._flat
    gens = flat.fp_generators([flat.encode(b) for b in code.basis])
    counts = [0] * (code.n + 1)
    supports: dict[int, Counter] = {u: Counter() for u in support_ranks}
    rk = flat.rank
    for v in _walk(flat, gens, start, stop):
        r = rk(v)
        counts[r] += 1
        if r in support_ranks:
            supports[r][flat.support(v)] += 1
    return counts, supports


def _census(code: MatrixCode, support_ranks: Iterable[int] = (), budget: Budget = DEFAULT_BUDGET) -> tuple[list[int], dict[int, Counter]]:
    _check_budget(code.size, budget.max_codewords, f"enumeration of a {code.q}-ary code of dimension {code.k}")
    support_ranks = frozenset(support_ranks)
    total = code.size
    workers = max(1, budget.workers)
    if workers == 1 or total < (1 << 14):
        return _census_range(code, support_ranks, 0, total)
    nchunks = workers * 4
    bounds = [total * i // nchunks for i in range(nchunks + 1)]
    counts = [0] * (code.n + 1)
    supports: dict[int, Counter] = {u: Counter() for u in support_ranks}
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_census_range, code, support_ranks, lo, hi) for lo, hi in zip(bounds, bounds[1:]) if lo < hi]
        for fut in futures:
            c, s = fut.result()
            counts = [a + b for a, b in zip(counts, c)]
            for u, ctr in s.items():
                supports[u].update(ctr)
    return counts, supports


def weight_distribution(code: MatrixCode, budget: Budget = DEFAULT_BUDGET) -> WeightDistribution:
    """(W_0, ..., W_n) by enumerating all q^k codewords."""
    counts, _ = _census(code, (), budget)
    return WeightDistribution(counts)


def dual(code: MatrixCode) -> MatrixCode:
    """C* = {Y : Tr(X Y^T) = 0 for all X in C}; the pairing is sum_ij X_ij Y_ij."""
    nm = code.n * code.m
    if code.k == 0:
        return MatrixCode.full_space(code.field, code.n, code.m)
    flat_basis = FqMatrix(code.field, code.k, nm, (x for b in code.basis for x in b.entries))
    return MatrixCode(code.field, code.n, code.m, kernel(flat_basis).basis)


def trace_product(x: FqMatrix, y: FqMatrix) -> int:
    """<X, Y> = Tr(X Y^T)."""
    f = x.field
    acc = 0
    for a, b in zip(x.entries, y.entries):
        if a and b:
            acc = f.add(acc, f.mul(a, b))
    return acc


# ----------------------------------------------------------------------
# MacWilliams identities
# ----------------------------------------------------------------------


def _macwilliams_rhs(w: Sequence[int], n: int, m: int, k: int, q: int, ell: int) -> Fraction:
    s = sum(w[i] * q_binomial(n - i, ell - i, q) for i in range(min(ell, len(w) - 1) + 1))
    return Fraction(q ** (m * (n - ell))) / Fraction(q**k) * s


def macwilliams(w: WeightDistribution | Sequence[int], n: int, m: int, k: int, q: int) -> WeightDistribution:
    """Weight distribution of C* from that of an F_q-[n x m, k] code C.

    Solves, for l = 0..n,
        sum_i W_i(C*) [n-i choose l]_q = q^(m(n-l)-k) sum_{i<=l} W_i(C) [n-i choose l-i]_q.
    """
    w = list(w)
    if len(w) > n + 1:
        if any(w[n + 1:]):
            raise CodeError(f"weights beyond rank {n} in a distribution of {n}-row matrices")
        w = w[: n + 1]
    w += [0] * (n + 1 - len(w))
    if sum(w) != q**k:
        raise CodeError(f"distribution counts {sum(w)} codewords, a dimension-{k} code has {q**k}")
    rhs = [_macwilliams_rhs(w, n, m, k, q, ell) for ell in range(n + 1)]
    try:
        sol = q_pascal_system(list(range(n + 1)), n, q, rhs)
    except InconsistentSystemError as exc:
        raise CodeError(f"not a valid code distribution: {exc}") from None
    return WeightDistribution(sol)


def dual_weight_distribution(code: MatrixCode, budget: Budget = DEFAULT_BUDGET, cross_check: bool = False) -> WeightDistribution:
    """W(C*), enumerating whichever of C, C* is smaller.

    With ``cross_check`` both the MacWilliams transform and the enumeration
    of C* are computed (where budgets allow) and must agree.
    """
    nm = code.n * code.m
    q = code.q
    via_mw = None
    if code.k <= nm - code.k or cross_check:
        if q**code.k <= budget.max_codewords:
            via_mw = macwilliams(weight_distribution(code, budget), code.n, code.m, code.k, q)
    brute = None
    if via_mw is None or cross_check:
        if q ** (nm - code.k) <= budget.max_codewords or via_mw is None:
            brute = weight_distribution(dual(code), budget)
    if via_mw is not None and brute is not None and via_mw != brute:
        raise InconsistencyError(f"MacWilliams transform {via_mw} disagrees with enumerated dual {brute}")
    return brute if brute is not None else via_mw


# ----------------------------------------------------------------------
# puncturing and shortening
# ----------------------------------------------------------------------


def _check_s(code: MatrixCode, s: int) -> None:
    if not 1 <= s <= code.n - 1:
        raise CodeError(f"need 1 <= s <= n-1 = {code.n - 1}, got s={s}")


def puncture(code: MatrixCode, a: FqMatrix, s: int) -> MatrixCode:
    """Pi(C, A, s): rows s+1..n of A X for X in C."""
    _check_s(code, s)
    _require_invertible(a, code.n)
    return MatrixCode.from_spanning(code.field, code.n - s, code.m, [(a @ b).delete_rows(s) for b in code.basis])


def shorten(code: MatrixCode, a: FqMatrix, s: int) -> MatrixCode:
    """Sigma(C, A, s): rows s+1..n of A X over the X in C whose A X starts with s zero rows."""
    _check_s(code, s)
    _require_invertible(a, code.n)
    f = code.field
    ax = [a @ b for b in code.basis]
    if not ax:
        return MatrixCode(f, code.n - s, code.m)
    head = s * code.m
    # coefficient vectors c with sum_i c_i (A B_i)[:s] = 0
    top = FqMatrix(f, len(ax), head, (x for y in ax for x in y.entries[:head]))
    coeffs = kernel(top.T)
    mats = []
    for c in coeffs.basis:
        acc = [0] * ((code.n - s) * code.m)
        for ci, y in zip(c, ax):
            if ci:
                acc = [f.add(u, f.mul(ci, v)) for u, v in zip(acc, y.entries[head:])]
        mats.append(FqMatrix(f, code.n - s, code.m, acc))
    return MatrixCode.from_spanning(f, code.n - s, code.m, mats)


def punctured_wd_from_dual_weights(
    n: int, m: int, k: int, q: int, t: int, dual_weights: Iterable[int], d: int | None = None
) -> WeightDistribution:
    """Weight distribution of any Pi(C, A, t), from the nonzero weights of C*.

    The r dual weights i_j in [1, n-t] give the unknowns W_{i_j}(Pi*), fixed by
        sum_j W_{i_j} [n'-i_j choose l]_q = (q^(m(n'-l)-k) - 1) [n' choose l]_q,  l < r,
    with n' = n - t; one MacWilliams transform then returns W(Pi).
    """
    nprime = n - t
    window = sorted({w for w in dual_weights if 1 <= w <= nprime})
    r = len(window)
    if d is not None:
        if not 1 <= t < d:
            raise HypothesisError(f"strength must satisfy t < d, got t={t}, d={d}")
        if r > d - t:
            raise HypothesisError(f"{r} dual weights {window} in [1, {nprime}] exceed d - t = {d - t}")
    rhs = [
        (Fraction(q ** (m * (nprime - ell))) / q**k - 1) * q_binomial(nprime, ell, q)
        for ell in range(r)
    ]
    try:
        sol = q_pascal_system(window, nprime, q, rhs)
    except InconsistentSystemError as exc:
        raise CodeError(f"inconsistent punctured weight system: {exc}") from None
    wstar = [0] * (nprime + 1)
    wstar[0] = 1
    for i, x in zip(window, sol):
        wstar[i] = x
    return macwilliams(wstar, nprime, m, nprime * m - k, q)


# ----------------------------------------------------------------------
# vector codes
# ----------------------------------------------------------------------


class VectorCode:
    """An F_{q^m}-linear code of length n, given by a k x n generator matrix."""

    def __init__(self, ext: ExtField, generator: Sequence[Sequence[int]] | FqMatrix) -> None:
        if not isinstance(generator, FqMatrix):
            rows = [list(r) for r in generator]
            if not rows:
                raise CodeError("a vector code needs at least one generator row")
            generator = FqMatrix.from_rows(ext, rows)
        if generator.field != ext:
            raise CodeError("generator is not over the extension field")
        self.ext = ext
        self.generator = generator
        self.n = generator.ncols
        self.k = generator.nrows
        if rank(generator) != self.k:
            raise CodeError("generator rows are dependent")
        if not 1 <= self.k < self.n:
            raise CodeError(f"need 1 <= k < n for a vector code, got k={self.k}, n={self.n}")

    @property
    def m(self) -> int:
        return self.ext.m

    @property
    def q(self) -> int:
        return self.ext.base.order

    def __repr__(self) -> str:
        return f"VectorCode({self.ext!r}, [{self.n}, {self.k}])"


def _coordinate_map(ext: ExtField, gamma: Sequence[int]) -> FqMatrix:
    """Matrix P with coords_gamma(y) = coeffs(y) @ P."""
    if len(gamma) != ext.m:
        raise FieldError(f"a basis of {ext} over {ext.base} has {ext.m} elements, got {len(gamma)}")
    b = FqMatrix.from_rows(ext.base, [ext.coefficients(g) for g in gamma], ext.m)
    try:
        return inverse(b)
    except SingularMatrixError:
        raise FieldError("gamma is not a basis of the extension over the base field") from None


def coordinates(ext: ExtField, y: int, gamma: Sequence[int], pmat: FqMatrix | None = None) -> list[int]:
    pmat = _coordinate_map(ext, gamma) if pmat is None else pmat
    row = FqMatrix(ext.base, 1, ext.m, ext.coefficients(y))
    return list((row @ pmat).entries)


def expand_vector(ext: ExtField, x: Sequence[int], gamma: Sequence[int] | None = None, pmat: FqMatrix | None = None) -> FqMatrix:
    """Gamma(x): the n x m matrix whose i-th row holds the coordinates of x_i."""
    gamma = ext.polynomial_basis() if gamma is None else list(gamma)
    pmat = _coordinate_map(ext, gamma) if pmat is None else pmat
    return FqMatrix(ext.base, len(x), ext.m, (c for xi in x for c in coordinates(ext, xi, gamma, pmat)))


def expand(code: VectorCode, gamma: Sequence[int] | None = None) -> MatrixCode:
    """Gamma(C) as an F_q-[n x m, m k] matrix code."""
    ext = code.ext
    gamma = ext.polynomial_basis() if gamma is None else list(gamma)
    pmat = _coordinate_map(ext, gamma)
    mats = []
    for g in code.generator.rows():
        for y in gamma:
            mats.append(expand_vector(ext, [ext.mul(y, gi) for gi in g], gamma, pmat))
    return MatrixCode(ext.base, code.n, ext.m, mats)


def dual_vector(code: VectorCode) -> VectorCode:
    """Dual under the standard inner product of F_{q^m}^n."""
    return VectorCode(code.ext, kernel(code.generator).basis)


def gabidulin(ext: ExtField, n: int, k: int, points: Sequence[int] | None = None) -> VectorCode:
    """Gabidulin code with generator rows (g_j^(q^i))_j, i = 0..k-1: an MRD [n, k, n-k+1] code."""
    if not n <= ext.m:
        raise CodeError(f"Gabidulin codes need n <= m, got n={n}, m={ext.m}")
    if not 1 <= k < n:
        raise CodeError(f"need 1 <= k < n, got k={k}, n={n}")
    points = ext.polynomial_basis()[:n] if points is None else list(points)
    if len(points) != n:
        raise CodeError(f"need {n} evaluation points, got {len(points)}")
    coeffs = FqMatrix.from_rows(ext.base, [ext.coefficients(g) for g in points], ext.m)
    if rank(coeffs) != n:
        raise CodeError("evaluation points are linearly dependent over the base field")
    gen = [[ext.frobenius(g, i) for g in points] for i in range(k)]
    return VectorCode(ext, gen)


# ----------------------------------------------------------------------
# MRD and related properties
# ----------------------------------------------------------------------


def singleton_bound(n: int, m: int, d: int) -> int:
    return max(n, m) * (min(n, m) - d + 1)


def _projection_rank(code: MatrixCode, nrows: int) -> int:
    """Rank of the projection of C onto its last ``nrows`` rows."""
    if code.k == 0:
        return 0
    drop = (code.n - nrows) * code.m
    return _rank_rows(code.field, [b.entries[drop:] for b in code.basis], nrows * code.m)


def is_mrd(code: MatrixCode, budget: Budget = DEFAULT_BUDGET) -> bool:
    """Singleton equality k = max(n,m)(min(n,m) - d + 1).

    For m >= n, d + d* = n + 2 and surjectivity of the projection onto the
    last n - d + 1 rows are also evaluated; any disagreement among the three
    raises :class:`InconsistencyError`.
    """
    if code.k == 0:
        raise CodeError("the zero code has no minimum distance")
    d = min_distance(code, budget)
    mrd = code.k == singleton_bound(code.n, code.m, d)
    if code.m >= code.n:
        dstar = min_distance(dual(code), budget)
        by_dual = d + dstar == code.n + 2
        rows = code.n - d + 1
        by_projection = _projection_rank(code, rows) == rows * code.m
        if not mrd == by_dual == by_projection:
            raise InconsistencyError(
                f"MRD criteria disagree: singleton={mrd}, d+d*={d + dstar}, projection surjective={by_projection}"
            )
    return mrd


def min_distance(code: MatrixCode, budget: Budget = DEFAULT_BUDGET) -> int:
    """Minimum nonzero rank; min(n, m) + 1 for the zero code."""
    if code.k == 0:
        return min(code.n, code.m) + 1
    return weight_distribution(code, budget).min_distance


def is_dually_qmrd(code: MatrixCode, budget: Budget = DEFAULT_BUDGET) -> bool:
    """d(C) + d(C*) = min(n, m) + 1."""
    return min_distance(code, budget) + min_distance(dual(code), budget) == min(code.n, code.m) + 1


def append_zero_column_code(code: MatrixCode) -> MatrixCode:
    """{[M | 0] : M in C} inside F_q^{n x (m+1)}."""
    f, n, m = code.field, code.n, code.m
    mats = [FqMatrix(f, n, m + 1, (x for r in b.rows() for x in (*r, 0))) for b in code.basis]
    return MatrixCode(f, n, m + 1, mats)


def codewords_with_support_in(code: MatrixCode, u: Subspace, budget: Budget = DEFAULT_BUDGET) -> tuple[MatrixCode, list[FqMatrix]]:
    """(C(U), C_=(U)): the subcode with supports inside U and the words with support exactly U."""
    if u.n != code.n:
        raise DimensionError(f"support space lives in F^{u.n}, code has {code.n} rows")
    _check_budget(code.size, budget.max_codewords, "support scan")
    from .linalg import contains

    flat = code._flat
    inside = []
    exact = []
    for v in _walk(flat, flat.fp_generators([flat.encode(b) for b in code.basis])):
        s = flat.support(v)
        if contains(u, s):
            x = flat.decode(v)
            inside.append(x)
            if s == u:
                exact.append(x)
    return MatrixCode.from_spanning(code.field, code.n, code.m, inside), exact


# ----------------------------------------------------------------------
# external distance and covering radius
# ----------------------------------------------------------------------


def external_distance(code: MatrixCode, budget: Budget = DEFAULT_BUDGET) -> int:
    """tau(C): the number of i in [1, n] with W_i(C*) != 0."""
    wd = dual_weight_distribution(code, budget)
    return sum(1 for i in range(1, code.n + 1) if wd[i])


def covering_radius(code: MatrixCode, budget: Budget = DEFAULT_BUDGET) -> int:
    """max over all ambient X of min_{c in C} rk(X - c), via one pass over the ambient space.

    Each ambient matrix is binned by its syndrome against a basis of C*;
    the covering radius is the largest minimum rank over the bins.
    """
    f, n, m = code.field, code.n, code.m
    nm = n * m
    _check_budget(f.order**nm, budget.max_ambient, "covering radius ambient enumeration")
    dual_basis = dual(code).basis
    if not dual_basis:
        return 0
    flat = _Flat(f, n, m)
    units = [FqMatrix(f, n, m, (int(i == j) for j in range(nm))) for i in range(nm)]
    gens = flat.fp_generators([flat.encode(x) for x in units])
    syn_flat = _Flat(f, 1, len(dual_basis))

    def syndrome(v):
        x = flat.decode(v)
        return syn_flat.encode(FqMatrix(f, 1, len(dual_basis), [trace_product(x, y) for y in dual_basis]))

    syn_gens = [syndrome(g) for g in gens]
    best: dict = {}
    for v, s in zip(_walk(flat, gens), _walk(syn_flat, syn_gens)):
        r = flat.rank(v)
        if r < best.get(s, nm + 1):
            best[s] = r
    return max(best.values())
