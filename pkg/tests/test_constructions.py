from collections import Counter

import numpy as np
import pytest

from pgt.algebra import ExtField, Semifield, semifield_from_field
from pgt.centralizers import center, centralizer, class_size_multiset
from pgt.constructions import (
    D4,
    CommutatorPresentation,
    example_n5,
    extraspecial,
    from_commutator_relations,
    generalized_semifield_group,
    heisenberg,
    paper_H,
    semifield_heisenberg,
)
from pgt.errors import EvenPrime, InconsistentRelations, InvalidN, VerificationFailed
from pgt.groups import expand_bilinear_to_table
from pgt.maxabelian import enumerate_maximal_abelian, is_maximal_abelian
from pgt.ses import derived_subgroup, is_ultraspecial


def orders(G):
    return dict(Counter(A.order for A in enumerate_maximal_abelian(G)))


def test_single_relation_gives_extraspecial():
    G = from_commutator_relations(CommutatorPresentation(3, ["x", "y"], ["z"], [("x", "y", "z")]))
    assert G.order == 27
    T = expand_bilinear_to_table(G)
    assert center(T).order == 3 and derived_subgroup(T) == center(T)


def test_no_relations_is_abelian():
    G = from_commutator_relations(CommutatorPresentation(5, ["x", "y"], ["z"]))
    assert center(G).order == G.order == 125


def test_conflicting_relations():
    P = CommutatorPresentation(3, ["x", "y"], ["z", "w"], [("x", "y", "z"), ("y", "x", "z")])
    with pytest.raises(InconsistentRelations):
        from_commutator_relations(P)


def test_antisymmetric_restatement_is_consistent():
    P = CommutatorPresentation(3, ["x", "y"], ["z"], [("x", "y", "z"), ("y", "x", {"z": 2})])
    assert from_commutator_relations(P).order == 27


def test_presentation_even_prime():
    with pytest.raises(EvenPrime):
        from_commutator_relations(CommutatorPresentation(2, ["x", "y"], ["z"], [("x", "y", "z")]))


def test_n5_example():
    G = example_n5(3)
    assert (G.d, G.m) == (4, 6)
    assert G.order == 3**10 and center(G).order == 3**6
    # every nonzero v has B(v, .) of rank 3, so C(h) = <h, Z>
    for code in range(1, 3**4):
        g = code * 3**6
        assert centralizer(G, g).order == 3 * center(G).order


def test_group_h_33():
    H = paper_H(3, 3)
    b = H.index([1, 0], np.zeros(H.m, int))
    C = centralizer(H, b)
    assert (H.order, center(H).order, C.order) == (3**6, 3**4, 3**5)
    assert is_maximal_abelian(H, C)


def test_group_h_34():
    H = paper_H(3, 4)
    b = H.index([1, 0, 0], np.zeros(H.m, int))
    assert H.order == 3**8 and centralizer(H, b).order == 3**6


def test_group_h_53():
    H = paper_H(5, 3)
    assert H.order == 5**6 and center(H).order == 5**4


def test_group_h_small_n():
    with pytest.raises(InvalidN):
        paper_H(3, 2)


def test_extraspecial_27():
    G = extraspecial(3, 1)
    assert G.order == 27 and orders(G) == {9: 4}


def test_extraspecial_243_uniform():
    assert set(orders(extraspecial(3, 2))) == {27}


def test_extraspecial_two_is_d4():
    G = extraspecial(2, 1)
    assert G.model == "table" and G.order == 8
    assert class_size_multiset(G) == class_size_multiset(D4())


def test_heisenberg_31_is_extraspecial():
    G = heisenberg(3, 1)
    assert G.order == 27 and orders(G) == orders(extraspecial(3, 1))


def test_heisenberg_32():
    G = heisenberg(3, 2)
    assert G.order == 729 and is_ultraspecial(G)
    assert orders(G) == {81: 10}


def test_heisenberg_51_classes():
    G = heisenberg(5, 1)
    cs = class_size_multiset(G)
    assert G.order == 125 and cs[1] == 5 and cs[5] * 5 == 120


def test_semifield_heisenberg_prime_field():
    G = semifield_heisenberg(semifield_from_field(ExtField(3, 1)))
    assert G.order == 27 and orders(G) == orders(heisenberg(3, 1))


def test_semifield_heisenberg_gf9():
    G = semifield_heisenberg(semifield_from_field(ExtField(3, 2)))
    assert G.order == 3**6 and is_ultraspecial(G)


def test_semifield_heisenberg_gf27():
    G = semifield_heisenberg(semifield_from_field(ExtField(3, 3)))
    assert G.order == 3**9 and is_ultraspecial(G)
    assert 3**6 in orders(G)


def test_semifield_heisenberg_rejects_zero_divisors():
    with pytest.raises(VerificationFailed):
        semifield_heisenberg(Semifield(3, 2, np.zeros((2, 2, 2), int)))


def test_generalized_semifield_group():
    S = semifield_from_field(ExtField(3, 3))
    G, ver = generalized_semifield_group(S)
    assert G.order == 3**9 and ver.ultraspecial and ver.centralizer_matches_H
    assert ver.witness_p_n_plus_2 and ver.witness_p_2n
    assert orders(G) == {3**5: 351, 3**6: 1}


def test_generalized_semifield_small_n():
    with pytest.raises(InvalidN):
        generalized_semifield_group(semifield_from_field(ExtField(3, 2)))
