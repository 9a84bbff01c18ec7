import numpy as np
import pytest

from oracle import Oracle
from pgt.centralizers import (
    center,
    center_family,
    centralizer,
    class_size,
    class_size_multiset,
    ElementView,
    conjugacy_classes,
    element_center,
    is_abelian,
    lemma_check_s2,
    parameters,
)
from pgt.constructions import D4, Q8, S3, S4, extraspecial, heisenberg
from pgt.errors import AbelianGroup, AllCentral, CentralElement, NotPrimePower
from pgt.groups import expand_bilinear_to_table, group_from_bilinear, group_from_table
from pgt.maxabelian import enumerate_maximal_abelian

KLEIN = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
R, S = 1, 2  # D4 generators in BFS order


def test_center_of_abelian_is_everything():
    G = group_from_table(KLEIN)
    assert center(G).order == 4


def test_s3_centerless():
    assert center(S3()).order == 1


def test_heisenberg_center():
    G = heisenberg(3, 2)
    assert center(G).order == 9
    assert center(expand_bilinear_to_table(G)).order == 9


def test_centralizer_of_identity():
    G = D4()
    assert centralizer(G, G.identity).order == 8


def test_d4_centralizer_of_reflection():
    G = D4()
    r2 = G.mul(R, R)
    C = centralizer(G, S)
    assert sorted(int(x) for x in C.elements()) == sorted({G.identity, r2, S, G.mul(r2, S)})


def test_bilinear_centralizer_order_formula():
    G = heisenberg(3, 2)
    O = Oracle(G)
    for g in range(1, G.order, 11):
        C = centralizer(G, g)
        assert C.order * class_size(G, g) == G.order
        assert C.order == len(O.cent[g // O.mult]) * O.mult


def test_d4_element_center_of_rotation():
    G = D4()
    Zr = element_center(G, R)
    assert Zr.order == 4 and Zr.contains(R)


def test_heisenberg_31_element_center():
    G = heisenberg(3, 1)
    g = G.index([1, 0], [0])
    Zg = element_center(G, g)
    assert Zg.order == 9
    T = expand_bilinear_to_table(G)
    assert np.array_equal(Zg.element_mask(), element_center(T, g).mask)


def test_central_element_rejected():
    G = D4()
    with pytest.raises(CentralElement):
        element_center(G, G.identity)


def test_abelian_classes_singletons():
    assert all(c.size == 1 for c in conjugacy_classes(group_from_table(KLEIN)))


def test_d4_classes():
    assert sorted(c.size for c in conjugacy_classes(D4())) == [1, 1, 2, 2, 2]


def test_extraspecial_classes():
    G = extraspecial(3, 1)
    assert sorted(c.size for c in conjugacy_classes(G)) == [1, 1, 1] + [3] * 8


@pytest.mark.parametrize(
    "G,expected",
    [
        (extraspecial(3, 1), (2, 1, 1, 1)),
        (heisenberg(3, 2), (4, 2, 2, 2)),
        (D4(), (2, 1, 1, 1)),
    ],
)
def test_parameters(G, expected):
    P = parameters(G)
    assert (P.n_total, P.m, P.b, P.l) == expected
    assert (P.n_total, P.m, P.b, P.l) == Oracle(G).parameters()


def test_parameters_errors():
    with pytest.raises(NotPrimePower):
        parameters(S3())
    with pytest.raises(AbelianGroup):
        parameters(group_from_table(KLEIN))


def test_center_family_extraspecial():
    F = center_family(extraspecial(3, 1))
    assert len(F) == 4
    assert all(S.order == 9 for S in F.subgroups)


def test_center_family_restricted():
    G = heisenberg(3, 2)
    A = enumerate_maximal_abelian(G)[0]
    F = center_family(G, A)
    assert all(S <= A for S in F.subgroups)


def test_center_family_all_central():
    G = group_from_table(KLEIN)
    with pytest.raises(AllCentral):
        center_family(G, center(G))


def test_s3_well():
    assert lemma_check_s2(S3(), "well").passed


def test_q8_threee_six_elements():
    G = Q8()
    view = ElementView(G)
    assert len(view) == 6
    assert lemma_check_s2(G, "threee", view=view).passed


def test_heisenberg_three1():
    assert lemma_check_s2(heisenberg(3, 2), "three1").passed


@pytest.mark.parametrize("make", [S3, S4, D4, Q8, lambda: extraspecial(3, 1)])
def test_element_center_properties(make):
    G = make()
    Z = center(G)
    for g in range(G.order):
        if Z.contains(g):
            continue
        Zg = element_center(G, g)
        assert Z <= Zg <= centralizer(G, g)
        assert Zg.contains(g) and is_abelian(Zg)


@pytest.mark.parametrize("make", [S4, D4, Q8, lambda: heisenberg(3, 2), lambda: extraspecial(3, 2)])
def test_class_sizes_match_oracle(make):
    G = make()
    assert class_size_multiset(G) == Oracle(G).class_sizes()


def test_bilinear_oracle_agreement():
    G = group_from_bilinear(3, 3, 2, _random_alternating(3, 3, 2, seed=5))
    T = expand_bilinear_to_table(G)
    assert np.array_equal(center(G).element_mask(), center(T).mask)
    for g in range(G.order):
        if not center(T).mask[g]:
            assert np.array_equal(element_center(G, g).element_mask(), element_center(T, g).mask)


def _random_alternating(p, d, m, seed):
    rng = np.random.default_rng(seed)
    B = np.zeros((d, d, m), dtype=int)
    for i in range(d):
        for j in range(i + 1, d):
            B[i, j] = rng.integers(0, p, m)
            B[j, i] = (-B[i, j]) % p
    return B
