import json
import random

import pytest

from rankdesigns.codes import Budget, BudgetExceeded, MatrixCode, dual, weight_distribution
import rankdesigns.designs as designs_module
from rankdesigns.designs import (
    DesignError,
    DesignInstance,
    count_intersecting_blocks,
    dual_design,
    enumerate_subspaces,
    intersection_number,
    invariance_of,
    is_u_invariant,
    supports_by_rank,
    supports_of_rank,
    verify_design,
)
from rankdesigns.gf import Field
from rankdesigns.linalg import FqMatrix, Subspace, contains
from rankdesigns.qcomb import q_binomial

import oracles
from codegen import random_code

F2 = Field(2)
F3 = Field(3)


def trivial_design(n, r, q):
    f = Field.from_order(q)
    return DesignInstance.from_blocks(enumerate_subspaces(n, r, f), f, n, r)


@pytest.fixture(scope="module")
def spread_design():
    from rankdesigns.fixtures import spread_code

    blocks = supports_of_rank(dual(spread_code(2, 2)), 2)
    design = DesignInstance.from_blocks(blocks, F2, 4, 2)
    return design.with_strength(1, verify_design(design.blocks, 1).lam)


# ---- enumeration ---------------------------------------------------------


def test_enumerate_subspace_examples():
    assert list(enumerate_subspaces(3, 0, 2)) == [Subspace.zero(F2, 3)]
    assert len(list(enumerate_subspaces(4, 2, 2))) == 35
    assert len(list(enumerate_subspaces(3, 1, 3))) == 13


@pytest.mark.parametrize("q", [2, 3])
def test_enumeration_is_canonical_complete_and_distinct(q):
    for n in range(1, 5):
        for t in range(n + 1):
            subs = list(enumerate_subspaces(n, t, q))
            assert len(subs) == len(set(subs)) == q_binomial(n, t, q)
            assert all(s.dim == t and Subspace.span(s.field, n, s.basis) == s for s in subs)
            if n <= 3:
                assert {oracles.vector_set(s) for s in subs} == oracles.all_subspaces(n, t, q)


def test_enumeration_respects_budget():
    with pytest.raises(BudgetExceeded):
        list(enumerate_subspaces(6, 3, 2, Budget(max_subspaces=100)))
    with pytest.raises(DesignError):
        list(enumerate_subspaces(3, 4, 2))


# ---- verification ----------------------------------------------------------


@pytest.mark.parametrize("q", [2, 3])
def test_trivial_designs_have_gaussian_lambda(q):
    for n in range(1, 6 if q == 2 else 5):
        for r in range(n + 1):
            design = trivial_design(n, r, q)
            for t in range(r + 1):
                assert verify_design(design.blocks, t, field=design.field, n=n).lam == q_binomial(n - t, r - t, q)


def test_trivial_design_example_lambda_seven():
    assert verify_design(trivial_design(4, 3, 2).blocks, 1).lam == 7


def test_spread_is_a_1_design(spread_design):
    assert len(spread_design) == 5
    assert spread_design.lam == 1
    vec_blocks = [oracles.vector_set(b) for b in spread_design.blocks]
    assert oracles.design_lambda(vec_blocks, 1, 4, 2) == 1


def test_missing_block_breaks_the_design():
    blocks = trivial_design(3, 2, 2).sorted_blocks()
    check = verify_design(blocks[1:], 1)
    assert not check and check.lam is None
    ref, ref_count, witness, count = check.witness
    assert ref_count != count
    assert {count, ref_count} == {2, 3}
    assert sum(1 for b in blocks[1:] if contains(b, witness)) == count


def test_verification_agrees_with_oracle_on_random_block_sets():
    rng = random.Random(4)
    planes = list(enumerate_subspaces(4, 2, 2))
    for _ in range(25):
        chosen = rng.sample(planes, rng.randint(1, 12))
        lam = verify_design(chosen, 1).lam
        assert lam == oracles.design_lambda([oracles.vector_set(b) for b in chosen], 1, 4, 2)


def test_parallel_verification_matches_sequential(monkeypatch):
    monkeypatch.setattr(designs_module, "_PARALLEL_MIN_SUBSPACES", 1)
    f = F2
    blocks = list(enumerate_subspaces(7, 5, f))[::3]
    seq = verify_design(blocks, 2, budget=Budget(workers=1))
    par = verify_design(blocks, 2, budget=Budget(workers=3))
    assert seq == par
    whole = list(enumerate_subspaces(6, 4, f))
    assert verify_design(whole, 1, budget=Budget(workers=3)).lam == q_binomial(5, 3, 2)


def test_design_argument_validation():
    blocks = list(enumerate_subspaces(3, 1, 2))
    assert verify_design(blocks, 2).lam == 0  # lines contain no plane
    with pytest.raises(DesignError):
        verify_design(blocks + [Subspace.full(F2, 3)], 1)
    with pytest.raises(DesignError):
        verify_design([], 1)


# ---- dual designs and intersection numbers ----------------------------------


def test_dual_of_spread_is_a_spread(spread_design):
    d = dual_design(spread_design)
    assert (d.n, d.r, d.t, d.lam) == (4, 2, 1, 1)
    assert len(d) == 5
    assert dual_design(d).blocks == spread_design.blocks


def test_dual_of_trivial_design():
    design = trivial_design(4, 3, 2).with_strength(1, 7)
    d = dual_design(design)
    assert (d.r, d.lam) == (1, 1)
    assert dual_design(d).blocks == design.blocks


def test_dual_design_prediction_on_trivial_designs():
    for q in (2, 3):
        for n in range(2, 5 if q == 2 else 4):
            for r in range(1, n):
                for t in range(1, min(r, n - r) + 1):
                    lam = q_binomial(n - t, r - t, q)
                    d = dual_design(trivial_design(n, r, q).with_strength(t, lam))
                    assert d.lam == verify_design(d.blocks, t).lam


def test_dual_design_requires_verified_input_and_room_for_strength():
    with pytest.raises(DesignError):
        dual_design(trivial_design(3, 2, 2))
    with pytest.raises(DesignError):
        dual_design(trivial_design(3, 2, 2).with_strength(2, 1))


def test_intersection_numbers_of_the_spread(spread_design):
    assert intersection_number(1, 4, 2, 1, 1, 0, 2) == 1
    assert intersection_number(1, 4, 2, 1, 0, 0, 2) == 5
    lines = list(enumerate_subspaces(4, 1, F2))
    zero = Subspace.zero(F2, 4)
    for i, j in ((0, 0), (1, 0), (0, 1)):
        expected = intersection_number(1, 4, 2, 1, i, j, 2)
        for line in lines:
            inner, avoid = (line, zero) if i else (zero, line if j else zero)
            assert count_intersecting_blocks(spread_design.blocks, inner, avoid) == expected


def test_intersection_numbers_of_trivial_designs():
    n, r, t, q = 4, 2, 2, 2
    design = trivial_design(n, r, q)
    lam = q_binomial(n - t, r - t, q)
    subs = {d: list(enumerate_subspaces(n, d, q)) for d in range(3)}
    for i in range(t + 1):
        for j in range(t + 1 - i):
            expected = intersection_number(t, n, r, lam, i, j, q)
            for inner in subs[i][:4]:
                for avoid in subs[j][:4]:
                    if Subspace.span(F2, n, inner.basis + avoid.basis).dim != i + j:
                        continue
                    assert count_intersecting_blocks(design.blocks, inner, avoid) == expected


def test_intersection_number_rejects_bad_indices():
    with pytest.raises(DesignError):
        intersection_number(1, 4, 2, 1, 1, 1, 2)


# ---- file format -------------------------------------------------------------


def test_design_json_round_trip(spread_design):
    data = json.loads(json.dumps(spread_design.to_json()))
    assert data["lambda"] == "1" and data["q"] == 2
    again = DesignInstance.from_json(data)
    assert again == spread_design


def test_design_json_rejects_repeated_and_wrong_dimension_blocks():
    good = trivial_design(3, 1, 2).to_json()
    repeated = dict(good, blocks=good["blocks"] + good["blocks"][:1])
    with pytest.raises(DesignError):
        DesignInstance.from_json(repeated)
    wrong = dict(good, r=2)
    with pytest.raises(DesignError):
        DesignInstance.from_json(wrong)


# ---- supports of codewords -------------------------------------------------------


def test_supports_below_minimum_distance_are_empty(gab423):
    assert supports_of_rank(gab423, 1) == {}
    assert supports_of_rank(gab423, 2) == {}


def test_expanded_code_has_constant_mu_at_minimum_rank(gab423):
    sup = supports_of_rank(gab423, 3)
    assert len(sup) == 15
    assert set(sup.values()) == {2**4 - 1}


def test_support_counts_partition_weight_distribution(spread, gab423):
    for code in (spread, gab423, dual(spread)):
        w = weight_distribution(code)
        by_rank = supports_by_rank(code, range(1, code.n + 1))
        for u, counts in by_rank.items():
            assert sum(counts.values()) == w[u]


def test_supports_match_oracle(rng):
    for _ in range(8):
        code = random_code(F3, 2, 3, rng.randint(1, 4), rng)
        basis = [b.entries for b in code.basis]
        for u in (1, 2):
            got = {oracles.vector_set(U): c for U, c in supports_of_rank(code, u).items()}
            assert got == oracles.supports_at_rank(basis, 2, 3, 3, u)


def test_left_multiplication_preserves_mu(gab423, rng):
    base = is_u_invariant(gab423, 3)
    for _ in range(5):
        a = FqMatrix.random_invertible(F2, 4, rng)
        moved = is_u_invariant(gab423.left_multiply(a), 3)
        assert moved.invariant and moved.mu == base.mu == 15


def test_direct_sum_with_different_multiplicities_is_not_invariant():
    # [[a, 0], [b, c]]: <e1> carries one rank-1 word, <e2> carries three
    code = MatrixCode(F2, 2, 2, [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    inv = is_u_invariant(code, 1)
    assert not inv
    assert inv.mu is None
    _, c1, _, c2 = inv.witness
    assert c1 != c2
    counts = supports_of_rank(code, 1)
    assert counts[Subspace.standard(F2, 2, [0])] == 1
    assert counts[Subspace.standard(F2, 2, [1])] == 3


def test_invariance_of_empty_mapping():
    inv = invariance_of({})
    assert inv.invariant and inv.mu is None
