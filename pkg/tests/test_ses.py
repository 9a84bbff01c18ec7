import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pgt.algebra import rank
from pgt.catalog import catalog_group
from pgt.constructions import D4, Q8, S3, example_n4, example_n5, extraspecial, heisenberg, paper_H
from pgt.errors import NotPGroup, NotSes
from pgt.groups import expand_bilinear_to_table, group_from_bilinear, group_from_table
from pgt.ses import (
    fingerprint,
    fingerprint_compare,
    h_candidate_check,
    is_semi_extraspecial,
    is_special,
    is_ultraspecial,
    open_question_check,
    ses_certificate,
)

KLEIN = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]


def test_special_examples():
    assert is_special(extraspecial(3, 1))
    assert is_special(D4())
    assert not is_special(group_from_table(KLEIN))


def test_special_needs_p_group():
    with pytest.raises(NotPGroup):
        is_special(S3())
    with pytest.raises(NotPGroup):
        is_semi_extraspecial(S3())


def test_ses_predicates():
    G = heisenberg(3, 2)
    assert is_semi_extraspecial(G) and is_ultraspecial(G)
    E = extraspecial(3, 1)
    assert is_semi_extraspecial(E) and is_ultraspecial(E)
    assert not is_semi_extraspecial(paper_H(3, 3))


def test_implications():
    for name in ("D4", "Q8", "extraspecial-3-2", "heisenberg-3-2", "paperH-3-3", "example-n4"):
        G = catalog_group(name)
        if is_ultraspecial(G):
            assert is_semi_extraspecial(G)
        if is_semi_extraspecial(G):
            assert is_special(G)


@pytest.mark.parametrize(
    "make",
    [lambda: extraspecial(3, 1), lambda: extraspecial(3, 2), lambda: heisenberg(3, 2), lambda: paper_H(3, 3),
     lambda: example_n4(3), lambda: heisenberg(5, 1)],
)
def test_forms_agree_with_quotients(make):
    G = make()
    if G.order > 3**7:
        pytest.skip("table too large")
    T = expand_bilinear_to_table(G)
    assert is_semi_extraspecial(G, via="forms") == is_semi_extraspecial(T, via="quotients")


def test_table_groups_ses():
    assert is_semi_extraspecial(D4()) and is_semi_extraspecial(Q8())


def test_certificate_heisenberg():
    c = ses_certificate(heisenberg(3, 2))
    assert (c.n_ses, c.m, c.l, c.a_min_observed) == (2, 2, 2, 2)
    assert c.holds and c.a_min_exact


def test_certificate_extraspecial():
    c = ses_certificate(extraspecial(3, 2))
    assert (c.n_ses, c.m, c.a_min_observed) == (2, 1, 2)
    assert c.a_min_observed * c.m == c.n_ses and c.holds


def test_certificate_generalized_semifield():
    c = ses_certificate(catalog_group("gab-3-3"))
    assert c.a_min_observed == 2 and c.n_ses == c.m == 3
    assert c.a_min_observed * (c.m + c.l) >= 2 * c.n_ses and c.holds


def test_certificate_rejects_non_ses():
    with pytest.raises(NotSes):
        ses_certificate(paper_H(3, 3))


def test_open_question_extraspecial():
    r = open_question_check(extraspecial(3, 1))
    assert r.exhaustive and r.property1["status"] == "HOLDS"
    assert r.property1["distinct_centers"] == 4


def test_open_question_heisenberg_deterministic():
    G = heisenberg(3, 2)
    a, b = open_question_check(G).to_json(), open_question_check(G).to_json()
    assert a == b and a["exhaustive"]
    assert a["property1"]["status"] in ("HOLDS", "FAILS")


def test_open_question_table_model():
    r = open_question_check(Q8())
    assert r.property1["status"] == "HOLDS" and r.property2["status"] == "HOLDS"


def test_open_question_rejects_non_ses():
    with pytest.raises(NotSes):
        open_question_check(paper_H(3, 3))


def test_h_candidate_n5():
    r = h_candidate_check(example_n5(3), 5)
    assert r.all_hold


def test_h_candidate_n4():
    r = h_candidate_check(example_n4(3), 4)
    assert r.order_exp == 7
    assert not r.properties["order_is_p_2n"]


def test_h_candidate_group_h():
    H = paper_H(3, 3)
    r = h_candidate_check(H, 3)
    # H/Z(H) has rank 2 here, so every centralizer is <h, Z(H)>
    assert r.all_hold and r.first_failure is None
    assert (r.order_exp, r.center_exp, r.derived_exp) == (6, 4, 1)


def test_fingerprint_reflexive():
    F = fingerprint(heisenberg(3, 2))
    assert not fingerprint_compare(F, F)["distinguishable"]


def test_fingerprint_same_type():
    F1, F2 = fingerprint(heisenberg(3, 1)), fingerprint(extraspecial(3, 1))
    assert not fingerprint_compare(F1, F2)["distinguishable"]


def test_fingerprint_separates_non_ses():
    F1, F2 = fingerprint(heisenberg(3, 2)), fingerprint(paper_H(3, 3))
    cmp = fingerprint_compare(F1, F2)
    assert cmp["distinguishable"] and "class_size_multiset" in cmp["differing_fields"]


def _invertible(seed, p, n):
    rng = np.random.default_rng(seed)
    while True:
        M = rng.integers(0, p, size=(n, n))
        if rank(M, p) == n:
            return M


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_fingerprint_invariant_under_basis_change(seed):
    G = heisenberg(3, 2)
    P = _invertible(seed, 3, G.d)
    Q = _invertible(seed + 1, 3, G.m)
    B2 = np.einsum("ia,jb,abk,kl->ijl", P, P, G.B, Q) % 3
    H = group_from_bilinear(3, G.d, G.m, B2)
    assert fingerprint(H) == fingerprint(G)
    assert is_semi_extraspecial(H) == is_semi_extraspecial(G)
