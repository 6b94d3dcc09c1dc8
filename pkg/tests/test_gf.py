import pickle

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rankdesigns.gf import (
    GF,
    ExtField,
    Field,
    FieldError,
    FieldMismatchError,
    is_prime,
    trace,
    trace_dual_basis,
)

from oracles import poly_mulmod

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]


def field_and_elements(orders=ORDERS, count=3):
    return st.sampled_from(orders).flatmap(
        lambda q: st.tuples(st.just(Field.from_order(q)), *[st.integers(0, q - 1)] * count)
    )


@given(field_and_elements())
def test_field_axioms(data):
    f, a, b, c = data
    assert f.add(a, b) == f.add(b, a)
    assert f.mul(a, b) == f.mul(b, a)
    assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.add(a, 0) == a
    assert f.mul(a, 1) == a
    assert f.add(a, f.neg(a)) == 0
    assert f.sub(a, b) == f.add(a, f.neg(b))


@given(field_and_elements(count=1))
def test_inverse_and_division(data):
    f, a = data
    if a == 0:
        with pytest.raises(ZeroDivisionError):
            f.inv(0)
    else:
        assert f.mul(a, f.inv(a)) == 1
        assert f.div(1, a) == f.inv(a)


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25])
def test_multiplication_matches_polynomial_oracle(q):
    f = Field.from_order(q)
    modulus = list(f.modulus)
    for a in range(q):
        for b in range(q):
            assert f.mul(a, b) == poly_mulmod(a, b, modulus, f.p)


def test_f4_omega_squared_is_omega_plus_one():
    f = Field(2, 2, [1, 1, 1])
    omega = 2  # class of t
    assert f.mul(omega, omega) == 3  # omega + 1


def test_f8_every_nonzero_element_inverts():
    f = Field.from_order(8)
    for a in range(1, 8):
        assert f.mul(a, f.inv(a)) == 1


def test_additive_identity():
    f = Field.from_order(9)
    assert all(f.add(x, 0) == x for x in range(9))


@given(st.sampled_from(ORDERS).flatmap(lambda q: st.tuples(st.just(q), st.integers(1, q - 1), st.integers(0, 40))))
def test_pow_matches_repeated_multiplication(data):
    q, a, k = data
    f = Field.from_order(q)
    acc = 1
    for _ in range(k):
        acc = f.mul(acc, a)
    assert f.pow(a, k) == acc
    assert f.pow(a, q - 1) == 1


def test_primitive_element_generates_group():
    for q in (4, 8, 9, 16, 27):
        f = Field.from_order(q)
        g = f.primitive_element
        assert len({f.pow(g, i) for i in range(q - 1)}) == q - 1


def test_invalid_fields_are_rejected():
    with pytest.raises(FieldError):
        Field(6)
    with pytest.raises(FieldError):
        Field(2, 2, [1, 0, 1])  # t^2 + 1 = (t + 1)^2
    with pytest.raises(FieldError):
        Field(2, 2, [1, 1, 0])  # not monic of degree 2
    with pytest.raises(FieldError):
        Field.from_order(12)


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_field_elements_reject_mixed_fields():
    a = GF(4)(2)
    b = GF(8)(2)
    with pytest.raises(FieldMismatchError):
        a + b
    assert (a * a).value == 3
    assert (a + a).value == 0
    assert (a / a).value == 1
    assert (-a).value == 2


def test_fields_compare_by_parameters_and_pickle():
    assert Field(2, 2) == Field.from_order(4)
    assert hash(Field(3, 2)) == hash(Field.from_order(9))
    assert Field(2, 2) != Field(2, 3)
    e = ExtField(Field(2), 4)
    assert pickle.loads(pickle.dumps(e)) == e
    assert repr(e) == "GF(2^4)"
    assert repr(Field(3, 2)) == "GF(9)"


# ---- extension fields and trace ------------------------------------


@pytest.fixture(scope="module")
def f4_over_f2():
    return ExtField(Field(2), 2, [1, 1, 1])


def test_trace_examples_in_f4(f4_over_f2):
    omega = 2
    assert trace(f4_over_f2, 0) == 0
    assert trace(f4_over_f2, omega) == 1
    assert trace(f4_over_f2, 1) == 0


@pytest.mark.parametrize("q,m", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)])
def test_trace_is_linear_and_lands_in_base(q, m):
    e = ExtField(Field.from_order(q), m)
    base = set(e.embed(c) for c in range(q))
    for x in range(e.order):
        assert e.embed(e.trace(x)) in base
        assert e.trace(e.frobenius(x)) == e.trace(x)
    for x in range(0, e.order, max(1, e.order // 8)):
        for y in range(e.order):
            assert e.trace(e.add(x, y)) == e.base.add(e.trace(x), e.trace(y))


@pytest.mark.parametrize("q,m", [(2, 3), (3, 2), (4, 2)])
def test_frobenius_is_field_automorphism(q, m):
    e = ExtField(Field.from_order(q), m)
    images = [e.frobenius(x) for x in range(e.order)]
    assert sorted(images) == list(range(e.order))
    for x in range(e.order):
        assert e.frobenius(x, m) == x
        for y in range(e.order):
            assert e.frobenius(e.mul(x, y)) == e.mul(images[x], images[y])


def test_embedding_fixes_base_field():
    e = ExtField(Field.from_order(4), 2)
    for c in range(4):
        assert e.frobenius(e.embed(c)) == e.embed(c)
        assert e.coefficients(e.embed(c)) == [c, 0]
    for x in range(e.order):
        assert e.from_coefficients(e.coefficients(x)) == x


def test_dual_basis_of_f4_polynomial_basis(f4_over_f2):
    gamma = [1, 2]
    dual = trace_dual_basis(f4_over_f2, gamma)
    for i, g in enumerate(gamma):
        for j, h in enumerate(dual):
            assert trace(f4_over_f2, f4_over_f2.mul(g, h)) == int(i == j)


@pytest.mark.parametrize("q,m", [(2, 3), (2, 4), (3, 2), (3, 3), (4, 2)])
def test_dual_basis_is_involutive(q, m):
    e = ExtField(Field.from_order(q), m)
    gamma = e.polynomial_basis()
    dual = trace_dual_basis(e, gamma)
    for i, g in enumerate(gamma):
        for j, h in enumerate(dual):
            assert e.trace(e.mul(g, h)) == int(i == j)
    assert trace_dual_basis(e, dual) == gamma


def test_self_dual_basis_is_fixed():
    # the normal basis (a, a^2, a^4) of F_8 over F_2 with a^3 = a^2 + 1 is self-dual
    e = ExtField(Field(2), 3, [1, 0, 1, 1])
    a = 2
    basis = [a, e.pow(a, 2), e.pow(a, 4)]
    gram = [[e.trace(e.mul(x, y)) for y in basis] for x in basis]
    assert gram == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert trace_dual_basis(e, basis) == basis


def test_dual_basis_rejects_dependent_input():
    e = ExtField(Field(2), 3)
    with pytest.raises(FieldError):
        trace_dual_basis(e, [1, 1, 2])


@settings(max_examples=30)
@given(st.integers(0, 255), st.integers(0, 255))
def test_large_table_field_matches_oracle(a, b):
    f = Field.from_order(256)
    assert f.mul(a, b) == poly_mulmod(a, b, list(f.modulus), 2)


def test_log_table_field_beyond_full_tables():
    f = Field.from_order(1024)
    for a in (1, 2, 3, 517, 1023):
        for b in (1, 5, 999, 1023):
            assert f.mul(a, b) == poly_mulmod(a, b, list(f.modulus), 2)
        assert f.mul(a, f.inv(a)) == 1
