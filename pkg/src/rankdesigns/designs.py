"""Subspace designs over F_q and the support families of rank-metric codes.

A t-(n, r, lambda) design over F_q is a set of r-dimensional subspaces
(blocks) of F_q^n such that every t-dimensional subspace lies in exactly
lambda blocks.  Blocks are canonical :class:`~rankdesigns.linalg.Subspace`
objects, so sets of blocks deduplicate and compare exactly.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations, islice, product

from .codes import DEFAULT_BUDGET, Budget, BudgetExceeded, MatrixCode, _census
from .gf import AnyField, Field
from .linalg import Subspace, contains, orthogonal_complement
from .qcomb import q_binomial

__all__ = [
    "DesignError",
    "DesignInstance",
    "DesignCheck",
    "Invariance",
    "enumerate_subspaces",
    "verify_design",
    "dual_design",
    "intersection_number",
    "supports_of_rank",
    "supports_by_rank",
    "is_u_invariant",
]


class DesignError(ValueError):
    pass


def _as_field(q: int | AnyField) -> AnyField:
    return Field.from_order(q) if isinstance(q, int) else q


def enumerate_subspaces(n: int, t: int, q: int | AnyField, budget: Budget = DEFAULT_BUDGET) -> Iterator[Subspace]:
    """Every t-dimensional subspace of F_q^n once, in canonical RREF order.

    Pivot patterns run lexicographically; for each, the free entries run
    lexicographically over their integer encodings.
    """
    f = _as_field(q)
    if not 0 <= t <= n:
        raise DesignError(f"need 0 <= t <= n, got t={t}, n={n}")
    count = q_binomial(n, t, f.order)
    if count > budget.max_subspaces:
        raise BudgetExceeded(f"{count} subspaces of dimension {t} in F_{f.order}^{n} exceed the budget {budget.max_subspaces}")
    for pivots in combinations(range(n), t):
        pivset = set(pivots)
        free = [(r, j) for r, c in enumerate(pivots) for j in range(c + 1, n) if j not in pivset]
        for vals in product(range(f.order), repeat=len(free)):
            rows = [[0] * n for _ in range(t)]
            for r, c in enumerate(pivots):
                rows[r][c] = 1
            for (r, j), v in zip(free, vals):
                rows[r][j] = v
            yield Subspace(f, n, tuple(tuple(r) for r in rows), pivots)


@dataclass(frozen=True)
class DesignCheck:
    """Result of :func:`verify_design`.

    ``lam`` is set when the blocks form a design; otherwise ``witness``
    holds two t-subspaces with their differing block counts.
    """

    lam: int | None
    witness: tuple[Subspace, int, Subspace, int] | None = None

    def __bool__(self) -> bool:
        return self.lam is not None


@dataclass(frozen=True)
class DesignInstance:
    field: AnyField
    n: int
    r: int
    blocks: frozenset[Subspace] = dc_field(repr=False)
    t: int | None = None
    lam: int | None = None

    @classmethod
    def from_blocks(cls, blocks: Iterable[Subspace], field: AnyField | None = None, n: int | None = None, r: int | None = None) -> DesignInstance:
        blocks = frozenset(blocks)
        if blocks:
            first = next(iter(blocks))
            field = first.field if field is None else field
            n = first.n if n is None else n
            r = first.dim if r is None else r
        if field is None or n is None or r is None:
            raise DesignError("an empty design needs explicit field, n and r")
        for b in blocks:
            if b.n != n or b.dim != r or b.field != field:
                raise DesignError(f"block {b} does not match ambient {n}, dimension {r}")
        return cls(field, n, r, blocks)

    @property
    def q(self) -> int:
        return self.field.order

    def __len__(self) -> int:
        return len(self.blocks)

    def sorted_blocks(self) -> list[Subspace]:
        return sorted(self.blocks, key=Subspace.sort_key)

    def with_strength(self, t: int, lam: int) -> DesignInstance:
        return DesignInstance(self.field, self.n, self.r, self.blocks, t, lam)

    def verify(self, t: int, budget: Budget = DEFAULT_BUDGET) -> DesignCheck:
        return verify_design(self.blocks, t, field=self.field, n=self.n, budget=budget)

    def to_json(self) -> dict:
        out = {
            "q": self.q,
            "n": self.n,
            "r": self.r,
            "blocks": [[list(row) for row in b.basis] for b in self.sorted_blocks()],
        }
        if isinstance(self.field, Field) and self.field.e > 1:
            out["field"] = self.field.spec()
        if self.t is not None:
            out["t"] = self.t
        if self.lam is not None:
            out["lambda"] = str(self.lam)
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> DesignInstance:
        if "field" in data:
            spec = data["field"]
            f = Field(spec["p"], spec.get("e", 1), spec.get("modulus"))
        else:
            f = Field.from_order(int(data["q"]))
        n, r = int(data["n"]), int(data["r"])
        blocks = []
        for rows in data["blocks"]:
            b = Subspace.span(f, n, rows)
            if b.dim != r:
                raise DesignError(f"block {rows} has dimension {b.dim}, expected {r}")
            blocks.append(b)
        if len(set(blocks)) != len(blocks):
            raise DesignError("repeated block: only simple designs are supported")
        d = cls.from_blocks(blocks, f, n, r)
        if "t" in data and "lambda" in data:
            d = d.with_strength(int(data["t"]), int(data["lambda"]))
        return d


def _membership(block: Subspace, limit: int = 1 << 12):
    """Fast test for 'vector in block': a set of all its vectors when small."""
    if block.field.order**block.dim <= limit:
        vecs = frozenset(block.vectors())
        return vecs.__contains__
    return block.__contains__


def verify_design(
    blocks: Iterable[Subspace],
    t: int,
    *,
    field: AnyField | None = None,
    n: int | None = None,
    budget: Budget = DEFAULT_BUDGET,
) -> DesignCheck:
    """Check that every t-subspace lies in the same number of blocks.

    t-subspaces form the outer loop and the scan stops at the first
    t-subspace whose count differs from the first one in enumeration order.
    With several workers the enumeration is cut into contiguous chunks and
    the earliest mismatching chunk wins, so the witness is the sequential one.
    """
    blocks = list(blocks)
    if blocks:
        field = blocks[0].field if field is None else field
        n = blocks[0].n if n is None else n
        r = blocks[0].dim
        for b in blocks:
            if b.n != n or b.dim != r:
                raise DesignError("blocks must share ambient space and dimension")
        if t > r:
            # no block contains a t-subspace: the family is vacuously a design with lambda 0
            return DesignCheck(0)
    elif field is None or n is None:
        raise DesignError("an empty block set needs explicit field and n")
    if t < 0:
        raise DesignError("strength must be non-negative")
    total = q_binomial(n, t, field.order)
    if total > budget.max_subspaces:
        raise BudgetExceeded(f"{total} subspaces of dimension {t} exceed the budget {budget.max_subspaces}")
    if total == 0:
        return DesignCheck(0)
    first = next(enumerate_subspaces(n, t, field, budget))
    tests = [_membership(b) for b in blocks]
    reference = _count_containing(tests, first)
    workers = max(1, budget.workers)
    if workers == 1 or total < _PARALLEL_MIN_SUBSPACES:
        hit = _first_mismatch(blocks, n, t, field, 1, total, reference, tests)
    else:
        bounds = [1 + (total - 1) * i // (workers * 4) for i in range(workers * 4 + 1)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_first_mismatch, blocks, n, t, field, lo, hi, reference)
                for lo, hi in zip(bounds, bounds[1:])
                if lo < hi
            ]
            # chunks are in enumeration order, so the first hit is the sequential one
            hit = next((h for h in (f.result() for f in futures) if h is not None), None)
    if hit is None:
        return DesignCheck(reference)
    return DesignCheck(None, (first, reference, hit[0], hit[1]))


# below this many t-subspaces a process pool costs more than it saves
_PARALLEL_MIN_SUBSPACES = 1 << 12


def _count_containing(tests, tsub: Subspace) -> int:
    return sum(1 for member in tests if all(member(v) for v in tsub.basis))


def _first_mismatch(blocks, n, t, field, start, stop, reference, tests=None):
    """First t-subspace with index in [start, stop) whose block count differs from ``reference``."""
    tests = [_membership(b) for b in blocks] if tests is None else tests
    unlimited = Budget(max_subspaces=1 << 62)
    for tsub in islice(enumerate_subspaces(n, t, field, unlimited), start, stop):
        count = _count_containing(tests, tsub)
        if count != reference:
            return tsub, count
    return None


def dual_design(design: DesignInstance, budget: Budget = DEFAULT_BUDGET) -> DesignInstance:
    """Orthogonal complements of the blocks, with lambda predicted and then re-verified.

    The prediction is lambda [n-t choose r]_q / [n-t choose r-t]_q.
    """
    if design.t is None or design.lam is None:
        raise DesignError("dual_design needs a verified design (t and lambda set)")
    n, r, t, q = design.n, design.r, design.t, design.q
    if t > n - r:
        raise DesignError(f"complements have dimension {n - r} < t={t}; no dual design of strength {t}")
    predicted = Fraction(design.lam * q_binomial(n - t, r, q), q_binomial(n - t, r - t, q))
    if predicted.denominator != 1:
        raise DesignError(f"predicted dual lambda {predicted} is not an integer")
    comp = DesignInstance.from_blocks(
        (orthogonal_complement(b) for b in design.blocks), design.field, n, n - r
    )
    check = verify_design(comp.blocks, t, field=design.field, n=n, budget=budget)
    if check.lam != predicted:
        raise DesignError(f"dual design verification gave {check.lam}, formula predicts {predicted}")
    return comp.with_strength(t, int(predicted))


def intersection_number(t: int, n: int, r: int, lam: int, i: int, j: int, q: int) -> int:
    """lambda_{i,j} = q^(j(r-i)) lambda [n-i-j choose r-i]_q / [n-t choose r-t]_q."""
    if i < 0 or j < 0 or i + j > t:
        raise DesignError(f"need i, j >= 0 and i + j <= t, got i={i}, j={j}, t={t}")
    value = Fraction(q ** (j * (r - i)) * lam * q_binomial(n - i - j, r - i, q), q_binomial(n - t, r - t, q))
    if value.denominator != 1:
        raise DesignError(f"intersection number {value} is not an integer: invalid design parameters")
    return int(value)


def count_intersecting_blocks(blocks: Iterable[Subspace], inner: Subspace, avoid: Subspace) -> int:
    """Blocks B with inner <= B and B meeting avoid only in 0."""
    out = 0
    for b in blocks:
        if not contains(b, inner):
            continue
        # B cap J = 0  iff  dim(B + J) = dim B + dim J
        joined = Subspace.span(b.field, b.n, b.basis + avoid.basis)
        if joined.dim == b.dim + avoid.dim:
            out += 1
    return out


# ----------------------------------------------------------------------
# support families of codes
# ----------------------------------------------------------------------


def supports_by_rank(code: MatrixCode, ranks: Iterable[int], budget: Budget = DEFAULT_BUDGET) -> dict[int, dict[Subspace, int]]:
    """For each requested u, map every u-support U to |C_=(U)|, in one pass."""
    ranks = [u for u in ranks]
    _, sup = _census(code, ranks, budget)
    return {u: dict(sorted(sup[u].items(), key=lambda kv: kv[0].sort_key())) for u in ranks}


def supports_of_rank(code: MatrixCode, u: int, budget: Budget = DEFAULT_BUDGET) -> dict[Subspace, int]:
    return supports_by_rank(code, [u], budget)[u]


@dataclass(frozen=True)
class Invariance:
    """Outcome of a u-invariance check.

    ``mu`` is the common value of |C_=(U)| (None when C has no u-supports);
    a failed check carries two supports with different counts.
    """

    invariant: bool
    mu: int | None
    witness: tuple[Subspace, int, Subspace, int] | None = None

    def __bool__(self) -> bool:
        return self.invariant


def invariance_of(counts: Mapping[Subspace, int]) -> Invariance:
    items = list(counts.items())
    if not items:
        return Invariance(True, None)
    u0, c0 = items[0]
    for u1, c1 in items[1:]:
        if c1 != c0:
            return Invariance(False, None, (u0, c0, u1, c1))
    return Invariance(True, c0)


def is_u_invariant(code: MatrixCode, u: int, budget: Budget = DEFAULT_BUDGET) -> Invariance:
    return invariance_of(supports_of_rank(code, u, budget))
