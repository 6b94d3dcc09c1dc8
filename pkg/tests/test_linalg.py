import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rankdesigns.designs import enumerate_subspaces
from rankdesigns.gf import Field
from rankdesigns.linalg import (
    DimensionError,
    FqMatrix,
    SingularMatrixError,
    Subspace,
    basis_change_matrix,
    contains,
    gf2_rank,
    inverse,
    kernel,
    orthogonal_complement,
    rank,
    row_space,
    rref,
    support,
)

from oracles import column_space, rank_mod_p, span, vector_set

F2 = Field(2)
F3 = Field(3)
F4 = Field(2, 2)


def matrices(fields=(F2, F3, F4, Field(5)), max_dim=5):
    @st.composite
    def build(draw):
        f = draw(st.sampled_from(fields))
        n = draw(st.integers(1, max_dim))
        m = draw(st.integers(1, max_dim))
        entries = draw(st.lists(st.integers(0, f.order - 1), min_size=n * m, max_size=n * m))
        return FqMatrix(f, n, m, entries)

    return build()


def test_rank_examples():
    assert rank(FqMatrix.zeros(F3, 3, 4)) == 0
    assert rank(FqMatrix.identity(F3, 4)) == 4
    assert rank(FqMatrix.from_rows(F2, [[1, 1, 0], [0, 1, 1], [1, 0, 1]])) == 2


@given(matrices(fields=(F2, F3, Field(5), Field(7))))
def test_rank_matches_oracle_over_prime_fields(x):
    assert rank(x) == rank_mod_p(x.rows(), x.field.p)


@given(matrices())
def test_rank_of_transpose(x):
    assert rank(x) == rank(x.T)


def test_gf2_bit_packed_rank_agrees():
    rng = random.Random(1)
    for _ in range(200):
        x = FqMatrix.random(F2, rng.randint(1, 6), rng.randint(1, 6), rng)
        packed = [int("".join(map(str, r)), 2) for r in x.rows()]
        assert gf2_rank(packed) == rank_mod_p(x.rows(), 2)


def test_rref_small_example():
    r, pivots, _ = rref(FqMatrix.from_rows(F2, [[0, 1], [1, 1]]))
    assert r == FqMatrix.identity(F2, 2)
    assert pivots == (0, 1)


@given(matrices())
def test_rref_is_idempotent_and_recomposes(x):
    r, pivots, t = rref(x)
    assert t @ x == r
    assert rank(t) == x.nrows
    r2, pivots2, _ = rref(r)
    assert r2 == r and pivots2 == pivots
    for i, c in enumerate(pivots):
        assert r[i, c] == 1
        assert all(r[j, c] == 0 for j in range(r.nrows) if j != i)
    assert all(r.row(i) == (0,) * r.ncols for i in range(len(pivots), r.nrows))


def test_rref_recomposes_on_random_f3_square_matrices():
    rng = random.Random(7)
    for _ in range(50):
        x = FqMatrix.random(F3, 4, 4, rng)
        r, _, t = rref(x)
        assert t @ x == r


def test_inverse_roundtrip_and_singular_error():
    rng = random.Random(2)
    for f in (F2, F3, F4):
        a = FqMatrix.random_invertible(f, 4, rng)
        assert a @ inverse(a) == FqMatrix.identity(f, 4)
        assert inverse(a) @ a == FqMatrix.identity(f, 4)
    with pytest.raises(SingularMatrixError):
        inverse(FqMatrix.from_rows(F2, [[1, 1], [1, 1]]))


def test_matrix_product_dimension_check():
    with pytest.raises(DimensionError):
        FqMatrix.zeros(F2, 2, 3) @ FqMatrix.zeros(F2, 2, 3)


# ---- kernel and supports --------------------------------------------


def test_kernel_examples():
    assert kernel(FqMatrix.zeros(F3, 2, 3)) == Subspace.full(F3, 3)
    assert kernel(FqMatrix.identity(F3, 3)) == Subspace.zero(F3, 3)
    x = FqMatrix.from_rows(F2, [[1, 1, 1]])
    k = kernel(x)
    assert k.dim == 2
    for v in k.basis:
        assert sum(v) % 2 == 0


@given(matrices())
def test_kernel_rank_nullity(x):
    k = kernel(x)
    assert k.dim + rank(x) == x.ncols
    for v in k.basis:
        assert x @ FqMatrix(x.field, x.ncols, 1, v) == FqMatrix.zeros(x.field, x.nrows, 1)


def test_support_examples():
    assert support(FqMatrix.zeros(F2, 3, 4)) == Subspace.zero(F2, 3)
    padded = FqMatrix.from_rows(F2, [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0]])
    assert support(padded) == Subspace.full(F2, 3)


def test_support_is_invariant_under_column_operations():
    rng = random.Random(11)
    for _ in range(20):
        x = FqMatrix.random(F2, 3, 4, rng)
        g = FqMatrix.random_invertible(F2, 4, rng)
        assert support(x) == support(x @ g)


@given(matrices(fields=(F2, F3)))
def test_support_matches_column_space_oracle(x):
    assert vector_set(support(x)) == column_space(x.entries, x.nrows, x.ncols, x.field.p)
    assert support(x).dim == rank(x)


# ---- subspaces -------------------------------------------------------


def test_subspaces_are_canonical():
    a = Subspace.span(F2, 3, [[1, 1, 0], [0, 1, 1]])
    b = Subspace.span(F2, 3, [[1, 0, 1], [1, 1, 0], [0, 0, 0]])
    assert a == b and hash(a) == hash(b)
    assert a.basis == ((1, 0, 1), (0, 1, 1))
    assert vector_set(a) == span(a.basis, 2, 3)


def test_contains_examples():
    u = Subspace.standard(F2, 4, [0, 1])
    assert contains(u, Subspace.zero(F2, 4))
    assert contains(u, u)
    assert contains(u, Subspace.span(F2, 4, [[1, 1, 0, 0]]))
    assert not contains(u, Subspace.standard(F2, 4, [2]))
    with pytest.raises(DimensionError):
        contains(u, Subspace.zero(F2, 3))


def test_orthogonal_complement_examples():
    assert orthogonal_complement(Subspace.full(F3, 3)) == Subspace.zero(F3, 3)
    assert orthogonal_complement(Subspace.standard(F2, 4, [0, 1])) == Subspace.standard(F2, 4, [2, 3])


def test_double_complement_on_all_planes_of_f2_4():
    planes = list(enumerate_subspaces(4, 2, 2))
    assert len(planes) == 35
    for u in planes:
        assert orthogonal_complement(orthogonal_complement(u)) == u


@given(matrices(fields=(F2, F3, F4)))
def test_complement_dimension_and_orthogonality(x):
    u = row_space(x)
    c = orthogonal_complement(u)
    assert u.dim + c.dim == u.n
    f = x.field
    for a in u.basis:
        for b in c.basis:
            acc = 0
            for s, t in zip(a, b):
                acc = f.add(acc, f.mul(s, t))
            assert acc == 0


def _image(a: FqMatrix, t: Subspace) -> Subspace:
    """{A v^T : v in t}."""
    return Subspace.span(a.field, a.nrows, [(a @ FqMatrix(a.field, t.n, 1, v)).entries for v in t.basis])


def test_basis_change_identity_short_circuit():
    e = Subspace.standard(F2, 3, [0])
    assert basis_change_matrix(e, e) == FqMatrix.identity(F2, 3)


def test_basis_change_onto_first_axis_for_every_line_of_f2_3():
    target = Subspace.standard(F2, 3, [0])
    lines = list(enumerate_subspaces(3, 1, 2))
    assert len(lines) == 7
    for t in lines:
        a = basis_change_matrix(t, target)
        assert rank(a) == 3
        assert _image(a, t) == target


def test_basis_change_on_random_f3_subspaces():
    rng = random.Random(5)
    for _ in range(50):
        dim = rng.randint(0, 4)
        t = Subspace.span(F3, 4, [[rng.randrange(3) for _ in range(4)] for _ in range(dim)])
        target = Subspace.standard(F3, 4, range(t.dim))
        a = basis_change_matrix(t, target)
        assert rank(a) == 4
        assert _image(a, t) == target


def test_basis_change_requires_equal_dimensions():
    with pytest.raises(DimensionError):
        basis_change_matrix(Subspace.standard(F2, 3, [0]), Subspace.standard(F2, 3, [0, 1]))
