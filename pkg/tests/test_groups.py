import numpy as np
import pytest

from oracle import Oracle
from pgt.centralizers import center, centralizer, class_size_multiset
from pgt.constructions import D4, Q8, S3, heisenberg
from pgt.errors import CapExceeded, EvenPrime, NotAlternating, NotAssociative, NotLatinSquare
from pgt.groups import (
    expand_bilinear_to_table,
    group_from_bilinear,
    group_from_permutations,
    group_from_table,
    subgroup_from_generators,
)

KLEIN = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]


def ex27():
    return group_from_bilinear(3, 2, 1, [[[0], [1]], [[2], [0]]])


def test_trivial_table():
    G = group_from_table([[0]])
    assert G.order == 1 and G.identity == 0


def test_klein_four():
    G = group_from_table(KLEIN)
    assert G.order == 4
    assert G.commuting.all()
    assert all(G.element_order(x) <= 2 for x in range(4))


def test_transposed_entry_not_latin():
    bad = [row[:] for row in KLEIN]
    bad[2][0], bad[2][1] = bad[2][1], bad[2][0]
    with pytest.raises(NotLatinSquare, match="rows .*2"):
        group_from_table(bad)


def test_non_associative_table():
    # a Latin square with identity 0 that is not a group (order-5 loop)
    loop = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NotAssociative):
        group_from_table(loop)


def test_s3_from_permutations():
    G = group_from_permutations(3, [[1, 0, 2], [1, 2, 0]])
    assert G.order == 6 and not G.commuting.all()


def test_d4_from_permutations():
    G = group_from_permutations(4, [[1, 2, 3, 0], [0, 3, 2, 1]])
    assert G.order == 8
    assert class_size_multiset(G) == {1: 2, 2: 3}


def test_q8_one_involution():
    G = Q8()
    assert G.order == 8
    assert sum(G.element_order(x) == 2 for x in range(8)) == 1


def test_generator_order_irrelevant():
    a = group_from_permutations(4, [[1, 2, 3, 0], [0, 3, 2, 1]])
    b = group_from_permutations(4, [[0, 3, 2, 1], [1, 2, 3, 0]])
    assert a.order == b.order and class_size_multiset(a) == class_size_multiset(b)


def test_permutation_cap():
    with pytest.raises(CapExceeded):
        group_from_permutations(8, [[1, 2, 3, 4, 5, 6, 7, 0], [1, 0, 2, 3, 4, 5, 6, 7]], cap=1000)


def test_extraspecial_27_bilinear():
    G = ex27()
    assert G.order == 27
    assert all(G.element_order(x) in (1, 3) for x in range(27))
    assert center(G).order == 3
    assert {G.commutator(x, y) for x in range(27) for y in range(27)} == set(int(z) for z in center(G).elements())


def test_zero_form_is_abelian():
    G = group_from_bilinear(3, 2, 0, np.zeros((2, 2, 0), int))
    assert G.order == 9 and center(G).order == 9


def test_even_prime_rejected():
    with pytest.raises(EvenPrime):
        group_from_bilinear(2, 2, 1, [[[0], [1]], [[1], [0]]])


def test_non_alternating_rejected():
    with pytest.raises(NotAlternating):
        group_from_bilinear(3, 2, 1, [[[1], [1]], [[2], [0]]])


def test_commutator_identity():
    G = heisenberg(3, 1)
    for x in range(0, G.order, 5):
        for y in range(0, G.order, 7):
            vx, vy = G.split(x)[0], G.split(y)[0]
            assert G.commutator(x, y) == G.index(np.zeros(G.d, int), G.form(vx, vy))


def test_expand_extraspecial_27():
    T = expand_bilinear_to_table(ex27())
    assert T.order == 27
    assert class_size_multiset(T) == {1: 3, 3: 8}


def test_expand_abelian():
    T = expand_bilinear_to_table(group_from_bilinear(5, 2, 0, np.zeros((2, 2, 0), int)))
    assert T.commuting.all()


def test_expand_heisenberg_32():
    G = heisenberg(3, 2)
    T = expand_bilinear_to_table(G)
    assert center(G).order == center(T).order == 9


def test_expand_cap():
    with pytest.raises(CapExceeded):
        expand_bilinear_to_table(heisenberg(3, 2), cap=100)


def test_bilinear_matches_table():
    G = heisenberg(3, 2)
    T = expand_bilinear_to_table(G)
    for g in range(0, G.order, 17):
        assert np.array_equal(centralizer(G, g).element_mask(), T.commuting[g])
    assert class_size_multiset(G) == Oracle(T).class_sizes()


def test_empty_generators():
    assert subgroup_from_generators(D4(), []).order == 1


def test_cyclic_closure_d4():
    G = D4()
    r = 1  # first generator in BFS order
    assert subgroup_from_generators(G, [r]).order == 4


def test_heisenberg_x_with_center():
    G = heisenberg(3, 1)
    x = G.index([1, 0], [0])
    zg = [int(z) for z in center(G).elements()]
    H = subgroup_from_generators(G, [x] + zg)
    assert H.order == 9
    T = expand_bilinear_to_table(G)
    assert subgroup_from_generators(T, [x] + zg).order == 9


def test_s3_is_not_abelian():
    G = S3()
    assert center(G).order == 1
