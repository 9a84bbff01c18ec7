import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pgt.algebra import (
    ExtField,
    Semifield,
    Subspace,
    all_vectors,
    batch_rank,
    rank,
    rank_and_kernel,
    semifield_from_field,
    semifield_validate,
    subspace_ops,
)
from pgt.errors import DimensionMismatch, NotIrreducible, NotPrime, SizeCapExceeded


def test_rank_kernel_zero_matrix():
    r, K = rank_and_kernel(np.zeros((2, 2), int), 3)
    assert r == 0 and K.dim == 2


def test_rank_kernel_identity():
    r, K = rank_and_kernel(np.eye(3, dtype=int), 5)
    assert r == 3 and K.dim == 0


def test_rank_kernel_by_hand():
    r, K = rank_and_kernel([[1, 2], [2, 4]], 5)
    assert r == 1
    assert K == Subspace.span([[3, 1]], 5, 2)
    # exhaustive over the 25 vectors
    kernel = [tuple(v) for v in all_vectors(5, 2) if not (np.array([[1, 2], [2, 4]]) @ v % 5).any()]
    assert sorted(kernel) == sorted(tuple(v) for v in K.enumerate_vectors())


def test_empty_matrix_kernel_is_ambient():
    r, K = rank_and_kernel(np.zeros((0, 4), int), 3)
    assert r == 0 and K.dim == 4


@settings(max_examples=60, deadline=None)
@given(
    p=st.sampled_from([3, 5, 7]),
    rows=st.integers(1, 5),
    cols=st.integers(1, 5),
    data=st.data(),
)
def test_rank_nullity(p, rows, cols, data):
    M = np.array(data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=cols, max_size=cols),
                                    min_size=rows, max_size=rows)))
    r, K = rank_and_kernel(M, p)
    assert r + K.dim == cols
    for k in K.basis:
        assert not (M @ k % p).any()


def test_batch_rank_matches_rank():
    rng = np.random.default_rng(7)
    M = rng.integers(0, 3, size=(200, 4, 5))
    M[::7, 2] = M[::7, 0] + M[::7, 1]
    got = batch_rank(M, 3)
    assert got.tolist() == [rank(m, 3) for m in M]


def test_subspace_idempotent():
    U = Subspace.span([[1, 2, 0], [0, 1, 1]], 3, 3)
    ops = subspace_ops(U, U)
    assert ops.sum == U and ops.intersection == U and ops.contains


def test_complementary_lines():
    U = Subspace.span([[1, 0]], 3, 2)
    W = Subspace.span([[1, 1]], 3, 2)
    ops = subspace_ops(U, W)
    assert ops.sum.dim == 2 and ops.intersection.dim == 0 and not ops.contains


def test_intersection_of_coordinate_planes():
    e = np.eye(4, dtype=int)
    U = Subspace.span([e[1], e[2]], 3, 4)
    W = Subspace.span([e[2], e[3]], 3, 4)
    assert subspace_ops(U, W).intersection == Subspace.span([e[2]], 3, 4)
    brute = {tuple(u) for u in U.enumerate_vectors()} & {tuple(w) for w in W.enumerate_vectors()}
    assert brute == {tuple(v) for v in Subspace.span([e[2]], 3, 4).enumerate_vectors()}


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        subspace_ops(Subspace.zero(3, 2), Subspace.zero(3, 3))


def test_canonical_form_unique():
    a = Subspace.span([[1, 1, 0], [0, 1, 2]], 3, 3)
    b = Subspace.span([[1, 2, 2], [2, 2, 0], [1, 1, 0]], 3, 3)
    assert np.array_equal(a.basis, b.basis)


def test_enumerate_vectors_lex_order():
    U = Subspace.span([[1, 0, 2], [0, 1, 1]], 3, 3)
    vs = [tuple(v) for v in U.enumerate_vectors()]
    assert len(vs) == 9 and vs == sorted(vs)


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_dimension_formula(data):
    p, n = 3, 4
    vec = st.lists(st.integers(0, 2), min_size=n, max_size=n)
    U = Subspace.span(data.draw(st.lists(vec, max_size=3)) or np.zeros((0, n), int), p, n)
    W = Subspace.span(data.draw(st.lists(vec, max_size=3)) or np.zeros((0, n), int), p, n)
    ops = subspace_ops(U, W)
    assert ops.sum.dim + ops.intersection.dim == U.dim + W.dim


def test_prime_field_semifield():
    S = semifield_from_field(ExtField(3, 1))
    assert S.mul_constants.tolist() == [[[1]]]


def test_gf9_constants():
    S = semifield_from_field(ExtField(3, 2, [1, 0, 1]))
    assert S.mul_constants[1, 1].tolist() == [2, 0]


def test_gf27_semifield_passes():
    S = semifield_from_field(ExtField(3, 3, [2, 2, 0, 1]))
    rep = semifield_validate(S)
    assert rep.passed and rep.zero_divisor_count == 0
    assert rep.identity.tolist() == [1, 0, 0]


def test_zero_map_fails():
    rep = semifield_validate(Semifield(3, 2, np.zeros((2, 2, 2), int)))
    assert not rep.passed
    x, y = rep.zero_divisors[0]
    assert x.tolist() == [1, 0] and y.tolist() == [1, 0]


def test_broken_identity():
    mc = np.array(ExtField(3, 2, [1, 0, 1]).mul_constants)
    mc[0, 1] = [0, 2]  # e0 * e1 = -e1
    rep = semifield_validate(Semifield(3, 2, mc))
    assert not rep.passed and rep.identity is None


@pytest.mark.parametrize("p,a", [(3, 2), (3, 3), (5, 2), (3, 4)])
def test_field_associative(p, a):
    S = semifield_from_field(ExtField(p, a))
    X = all_vectors(p, a)
    for x, y in itertools.product(X, repeat=2):
        left = S.mul(S.mul(x, y), X)
        right = S.mul(x, S.mul(y, X))
        assert np.array_equal(left, right)


def test_reducible_polynomial_rejected():
    with pytest.raises(NotIrreducible):
        ExtField(3, 2, [2, 0, 1])  # x^2 - 1


def test_non_prime_rejected():
    with pytest.raises(NotPrime):
        ExtField(4, 2)


def test_semifield_check_cap():
    with pytest.raises(SizeCapExceeded):
        semifield_validate(Semifield(3, 8, np.zeros((8, 8, 8), int)))


def test_semifield_json_round_trip():
    S = semifield_from_field(ExtField(5, 2))
    assert Semifield.from_json(S.to_json()) == S
