"""Special, semi-extraspecial and ultraspecial groups.

Predicates, the corollary bounds for s.e.s. groups, evidence for the two open
intersection questions, the centralizer profile of candidate subgroups, and
isoclinism-invariant fingerprints.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import config
from .algebra import Subspace, all_vectors, batch_rank, rank
from .centralizers import (
    _log,
    center,
    centralizer,
    class_size,
    element_center,
    noncentral_representatives,
    parameters,
    v_centralizer,
    _center_coeffs,
)
from .errors import CapExceeded, NotPGroup, NotSes
from .groups import FiniteGroup, Subgroup, TableGroup, subgroup_from_generators


# ---------------------------------------------------------------------------
# derived subgroup and quotients (table model)


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    if G.model == "bilinear":
        W = G.image_span
        return Subgroup.from_vspace(G, Subspace.zero(G.p, G.d), W)
    T = G.table.astype(np.int64)
    inv = G.inverse
    comm = T[T[inv][:, inv], T]  # [x, y] = x^-1 y^-1 x y
    gens = np.unique(comm)
    return subgroup_from_generators(G, [int(x) for x in gens])


def quotient(G: TableGroup, N: Subgroup) -> TableGroup:
    """``G/N`` for a normal subgroup, cosets numbered by least element."""
    T = G.table.astype(np.int64)
    nel = N.elements()
    heads = T[:, nel].min(axis=1)
    reps = np.unique(heads)
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[reps] = np.arange(reps.size)
    Q = pos[heads[T[np.ix_(reps, reps)]]]
    return TableGroup(Q, name=f"{G.name}/N")


def _maximal_subgroups_of_abelian(G: TableGroup, A: Subgroup) -> list[Subgroup]:
    """Index-p subgroups of an abelian p-subgroup, by walking its subgroup lattice."""
    p = G.prime_power[0]
    target = A.order // p
    start = subgroup_from_generators(G, [])
    frontier, seen, out = [start], {start.key}, []
    while frontier:
        nxt = []
        for H in frontier:
            if H.order == target:
                out.append(H)
                continue
            for x in A.elements():
                if H.mask[x]:
                    continue
                K = subgroup_from_generators(G, [int(y) for y in H.elements()] + [int(x)])
                if K.order <= target and K.key not in seen:
                    seen.add(K.key)
                    nxt.append(K)
        frontier = nxt
    return out


# ---------------------------------------------------------------------------
# predicates


def is_special(G: FiniteGroup) -> bool:
    if not G.is_p_group:
        raise NotPGroup(f"|G| = {G.order} is not a prime power")
    if G.model == "bilinear":
        return G.radical.dim == 0 and G.image_span.dim == G.m and G.m > 0
    return derived_subgroup(G) == center(G) and center(G).order > 1


def _is_extraspecial_table(Q: TableGroup, p: int) -> bool:
    ZQ = center(Q)
    return ZQ.order == p and derived_subgroup(Q) == ZQ


def functional_forms(G) -> list[np.ndarray]:
    """``lambda o B`` for one nonzero functional per scalar class."""
    forms = []
    for lam in all_vectors(G.p, G.m)[1:]:
        if lam[np.flatnonzero(lam)[0]] != 1:
            continue
        forms.append(np.tensordot(G.B, lam, axes=([2], [0])) % G.p)
    return forms


def is_semi_extraspecial(G: FiniteGroup, via: str | None = None) -> bool:
    """Every quotient by a maximal subgroup of ``Z(G)`` is extraspecial.

    ``via="forms"`` (bilinear only) uses nondegeneracy of every ``lambda o B``;
    ``via="quotients"`` builds the quotient tables.
    """
    if not G.is_p_group:
        raise NotPGroup(f"|G| = {G.order} is not a prime power")
    cache = G.__dict__.setdefault("_pgt_cache", {})
    via = via or ("forms" if G.model == "bilinear" else "quotients")
    key = ("ses", via)
    if key in cache:
        return cache[key]
    if via == "forms":
        ok = G.d > 0 and G.m > 0 and G.radical.dim == 0 and all(
            rank(F, G.p) == G.d for F in functional_forms(G)
        )
    else:
        Z = center(G)
        p = G.prime_power[0]
        if Z.order == 1 or Z.order == G.order:
            ok = False
        else:
            ok = all(_is_extraspecial_table(quotient(G, N), p) for N in _maximal_subgroups_of_abelian(G, Z))
    cache[key] = ok
    return ok


def is_ultraspecial(G: FiniteGroup) -> bool:
    if not is_semi_extraspecial(G):
        return False
    p = G.prime_power[0]
    zexp = _log(center(G).order, p)
    nexp = _log(G.order // center(G).order, p)
    return nexp == 2 * zexp


# ---------------------------------------------------------------------------
# corollary certificate


@dataclass
class SesCertificate:
    group: str
    p: int
    n_ses: int
    m: int
    l: int
    k: int | None
    is_special: bool
    is_ses: bool
    is_ultraspecial: bool
    a_min_observed: int
    a_min_exact: bool
    maximal_abelian_index_counts: dict
    corollary_bounds: dict
    verardi: dict

    @property
    def holds(self) -> bool:
        return all(self.corollary_bounds[k] for k in self.corollary_bounds if k.endswith("_holds")) and all(
            self.verardi.values()
        )

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "p": self.p,
            "n_ses": self.n_ses,
            "m": self.m,
            "l": self.l,
            "k": self.k,
            "is_special": self.is_special,
            "is_ses": self.is_ses,
            "is_ultraspecial": self.is_ultraspecial,
            "a_min_observed": self.a_min_observed,
            "a_min_exact": self.a_min_exact,
            "maximal_abelian_index_counts": {str(k): v for k, v in self.maximal_abelian_index_counts.items()},
            "corollary_bounds": self.corollary_bounds,
            "verardi": self.verardi,
        }


def _maximal_abelian_indices(G, samples: int = 200):
    """Exponents of ``|A:Z(G)|``; exact by enumeration, else greedy extensions of cyclic subgroups."""
    from .maxabelian import enumerate_maximal_abelian, extend_to_maximal_abelian

    p = G.prime_power[0]
    Z = center(G)
    try:
        subs = enumerate_maximal_abelian(G)
        exact = True
    except CapExceeded:
        reps = noncentral_representatives(G)[:samples]
        seen, subs = set(), []
        for g in reps:
            A = extend_to_maximal_abelian(G, subgroup_from_generators(G, [g]))
            if A.key not in seen:
                seen.add(A.key)
                subs.append(A)
        exact = False
    return [_log(A.order // Z.order, p) for A in subs], exact


def ses_certificate(G: FiniteGroup) -> SesCertificate:
    if not is_semi_extraspecial(G):
        raise NotSes(f"{G.name} is not semi-extraspecial")
    params = parameters(G)
    p, m, l = params.p, params.m, params.l
    n = params.n_total // 2
    idx, exact = _maximal_abelian_indices(G)
    a_min = min(idx)
    classes_ok = all(class_size(G, g) == p**m for g in noncentral_representatives(G))
    bounds = {
        "a_min_observed": a_min,
        "n_over_m_holds": a_min * m >= n,
        "two_n_over_m_plus_l_holds": a_min * (m + l) >= 2 * n,
        "a_ge_2_when_n_ge_2_holds": n < 2 or a_min >= 2,
    }
    verardi = {
        "max_abelian_le_p_n_plus_m": max(idx) + m <= n + m,
        "l_le_m": l <= m,
        "all_class_sizes_p_m": classes_ok,
    }
    return SesCertificate(
        group=G.name,
        p=p,
        n_ses=n,
        m=m,
        l=l,
        k=params.k,
        is_special=is_special(G),
        is_ses=True,
        is_ultraspecial=n == m,
        a_min_observed=a_min,
        a_min_exact=exact,
        maximal_abelian_index_counts=dict(sorted(Counter(idx).items())),
        corollary_bounds=bounds,
        verardi=verardi,
    )


# ---------------------------------------------------------------------------
# open-question evidence


@dataclass
class OpenQuestionReport:
    group: str
    exhaustive: bool
    seed: int | None
    max_tuple_length: int
    property1: dict
    property2: dict
    conjectured_bound: dict

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "exhaustive": self.exhaustive,
            "seed": self.seed,
            "max_tuple_length": self.max_tuple_length,
            "property1": self.property1,
            "property2": self.property2,
            "conjectured_bound": self.conjectured_bound,
        }


class _Algebra:
    """Uniform subgroup arithmetic for the open-question loops.

    Bilinear groups: every subgroup involved contains all central coordinates,
    so a subgroup is its ``v``-subspace and a product set is a sum.
    Table groups: boolean masks with literal product sets.
    """

    def __init__(self, G):
        self.G = G
        self.bilinear = G.model == "bilinear"
        D = derived_subgroup(G)
        self.derived = Subspace.zero(G.p, G.d) if self.bilinear else D.mask

    def of(self, H: Subgroup):
        return H.vpart if self.bilinear else H.mask

    def product(self, items):
        if self.bilinear:
            out = items[0]
            for S in items[1:]:
                out = out + S
            return out
        out = items[0]
        for S in items[1:]:
            out = self.G.product_set(out, S)
        return out

    def intersection(self, items):
        out = items[0]
        for S in items[1:]:
            out = out.intersection(S) if self.bilinear else out & S
        return out

    def center_of(self, X):
        G = self.G
        if self.bilinear:
            coeffs = _center_coeffs(G, X.basis, X)
            return Subspace.span(coeffs @ X.basis % G.p, G.p, G.d)
        return X & G.commuting[:, X].all(axis=1)

    def le(self, X, Y) -> bool:
        return Y.contains(X) if self.bilinear else not (X & ~Y).any()

    def meets_in_derived(self, X, Y) -> bool:
        if self.bilinear:
            return X.intersection(Y).dim == 0
        return np.array_equal(X & Y, self.derived)

    def dichotomy(self, subs):
        """Vectorized ``X <= T or X & T = G'`` over a fixed list ``subs``, as a function of ``T``."""
        if not self.bilinear:
            M = np.array(subs)

            def check(T):
                le = ~(M & ~T).any(axis=1)
                meet = ((M & T) == self.derived).all(axis=1)
                return le | meet

            return check
        p, d = self.G.p, self.G.d
        kmax = max(X.dim for X in subs)
        Xs = np.zeros((len(subs), max(kmax, 1), d), dtype=np.int64)
        dims = np.array([X.dim for X in subs])
        for i, X in enumerate(subs):
            Xs[i, : X.dim] = X.basis

        def check(T):
            if T.dim == 0:
                R = Xs
            else:
                R = (Xs - Xs[:, :, list(T.pivots)] @ T.basis) % p
            le = ~R.any(axis=(1, 2))
            meet = batch_rank(R, p) == dims
            return le | meet

        return check

    def key(self, X):
        return X._key if self.bilinear else X.tobytes()


def _distinct(alg, subgroups):
    seen, out = set(), []
    for S in subgroups:
        X = alg.of(S)
        k = alg.key(X)
        if k not in seen:
            seen.add(k)
            out.append(X)
    return out


def open_question_check(
    G: FiniteGroup,
    max_len: int = 3,
    max_tuples: int = config.OPENQ_MAX_TUPLES,
    exhaustive_order: int = config.OPENQ_EXHAUSTIVE_ORDER,
    seed: int = config.OPENQ_SEED,
) -> OpenQuestionReport:
    """Evidence for the two dichotomies and the conditional ``2kn/(m+l)`` bound.

    Both dichotomies depend on ``a`` only through ``Z(a)`` and on ``b_i`` only
    through ``Z(b_i)`` (property 1) or ``C_G(b_i)`` (property 2), so tuples
    range over distinct such subgroups; in the bilinear model the product of
    element centers is commutative, so multisets suffice there. Groups above
    ``exhaustive_order`` are sampled with a fixed seed.
    """
    if not is_semi_extraspecial(G):
        raise NotSes(f"{G.name} is not semi-extraspecial")
    alg = _Algebra(G)
    reps = noncentral_representatives(G)
    centers = _distinct(alg, [element_center(G, g) for g in reps])
    cents = _distinct(alg, [centralizer(G, g) for g in reps])
    exhaustive = G.order <= exhaustive_order

    def tuples(pool):
        for j in range(1, max_len + 1):
            if alg.bilinear:
                yield from itertools.combinations_with_replacement(range(len(pool)), j)
            else:
                yield from itertools.product(range(len(pool)), repeat=j)

    def sample(pool):
        if exhaustive:
            return list(tuples(pool))
        rng = random.Random(seed)
        out = []
        for _ in range(max_tuples // max(1, len(centers))):
            j = rng.randint(1, max_len)
            out.append(tuple(sorted(rng.randrange(len(pool)) for _ in range(j))))
        return out

    dichotomy = alg.dichotomy(centers)

    def run(pool, target_of):
        checked, witness = 0, None
        for tup in sample(pool):
            ok = dichotomy(target_of(tup))
            if not ok.all():
                ia = int(np.flatnonzero(~ok)[0])
                return checked + ia + 1, {"a_center": ia, "b_tuple": list(tup)}
            checked += len(centers)
        return checked, witness

    c1, w1 = run(centers, lambda tup: alg.product([centers[i] for i in tup]))
    c2, w2 = run(cents, lambda tup: alg.center_of(alg.intersection([cents[i] for i in tup])))
    prop1 = {"status": "FAILS" if w1 else "HOLDS", "checks": c1, "distinct_centers": len(centers)}
    prop2 = {"status": "FAILS" if w2 else "HOLDS", "checks": c2, "distinct_centralizers": len(cents)}
    if w1:
        prop1["witness"] = w1
    if w2:
        prop2["witness"] = w2

    params = parameters(G)
    n = params.n_total // 2
    idx, exact = _maximal_abelian_indices(G)
    small = [a for a in idx if a < n]
    bound = {"k": params.k, "n_ses": n, "m": params.m, "l": params.l, "enumeration_exact": exact}
    if params.k is None:
        bound["status"] = "VACUOUS"
    else:
        fails = [a for a in small if a * (params.m + params.l) < 2 * params.k * n]
        bound["status"] = "FAILS" if fails else "HOLDS"
        bound["small_indices_checked"] = len(small)
        if fails:
            bound["witness_index"] = min(fails)
    return OpenQuestionReport(G.name, exhaustive, None if exhaustive else seed, max_len, prop1, prop2, bound)


# ---------------------------------------------------------------------------
# centralizer profile of a candidate H


@dataclass
class HCandidateReport:
    group: str
    n: int
    order_exp: int
    center_exp: int
    derived_exp: int
    properties: dict
    first_failure: int | None = None

    @property
    def all_hold(self) -> bool:
        return all(self.properties.values())

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "n": self.n,
            "order_exp": self.order_exp,
            "center_exp": self.center_exp,
            "derived_exp": self.derived_exp,
            "properties": self.properties,
            "first_failure": self.first_failure,
        }


def h_candidate_check(H: FiniteGroup, n: int) -> HCandidateReport:
    """Report ``|H| = p^2n``, ``|Z(H)| = p^(n+1)``, ``|H'| <= p^n``, ``H' < Z(H)`` and
    ``C_H(h) = <h, Z(H)>`` for every noncentral ``h``, each separately."""
    p = H.prime_power[0]
    Z = center(H)
    D = derived_subgroup(H)
    first = None
    if H.model == "bilinear":
        minimal = True
        for v in all_vectors(p, H.d):
            if H.radical.contains_vector(v):
                continue
            if v_centralizer(H, v).dim != H.radical.dim + 1:
                minimal, first = False, H.index(v)
                break
    else:
        minimal = True
        zg = [int(z) for z in Z.elements()]
        for h in range(H.order):
            if Z.mask[h]:
                continue
            if centralizer(H, h) != subgroup_from_generators(H, [h] + zg):
                minimal, first = False, h
                break
    props = {
        "order_is_p_2n": H.order == p ** (2 * n),
        "center_is_p_n_plus_1": Z.order == p ** (n + 1),
        "derived_le_p_n": D.order <= p**n,
        "derived_lt_center": D <= Z and D.order < Z.order,
        "centralizers_minimal": minimal,
    }
    return HCandidateReport(
        H.name, n, _log(H.order, p), _log(Z.order, p), _log(D.order, p), props, first
    )


# ---------------------------------------------------------------------------
# fingerprints


@dataclass(frozen=True)
class Fingerprint:
    """Isoclinism invariants: every count is taken over cosets of ``Z(G)``."""

    p: int
    n_total: int
    derived_exp: int
    class_size_multiset: tuple
    element_center_index_multiset: tuple
    maximal_abelian_order_multiset: tuple | None

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n_total": self.n_total,
            "derived_exp": self.derived_exp,
            "class_size_multiset": [list(x) for x in self.class_size_multiset],
            "element_center_index_multiset": [list(x) for x in self.element_center_index_multiset],
            "maximal_abelian_order_multiset": None
            if self.maximal_abelian_order_multiset is None
            else [list(x) for x in self.maximal_abelian_order_multiset],
        }


def fingerprint(G: FiniteGroup) -> Fingerprint:
    if not G.is_p_group or G.order == 1:
        raise NotPGroup(f"|G| = {G.order} is not a prime power")
    p = G.prime_power[0]
    Z = center(G)
    classes, zidx = Counter(), Counter()
    if G.model == "bilinear":
        per_coset = p**G.radical.dim
        for v in all_vectors(p, G.d):
            if G.radical.contains_vector(v):
                continue
            g = G.index(v)
            classes[_log(class_size(G, g), p)] += 1
            zidx[_log(element_center(G, g).order // Z.order, p)] += 1
        classes = Counter({k: c // per_coset for k, c in classes.items()})
        zidx = Counter({k: c // per_coset for k, c in zidx.items()})
    else:
        for g in range(G.order):
            if Z.mask[g]:
                continue
            classes[_log(class_size(G, g), p)] += 1
            zidx[_log(element_center(G, g).order // Z.order, p)] += 1
        classes = Counter({k: c // Z.order for k, c in classes.items()})
        zidx = Counter({k: c // Z.order for k, c in zidx.items()})
    idx, exact = _maximal_abelian_indices(G) if Z.order < G.order else ([0], True)
    return Fingerprint(
        p=p,
        n_total=_log(G.order // Z.order, p),
        derived_exp=_log(derived_subgroup(G).order, p),
        class_size_multiset=tuple(sorted(classes.items())),
        element_center_index_multiset=tuple(sorted(zidx.items())),
        maximal_abelian_order_multiset=tuple(sorted(Counter(idx).items())) if exact else None,
    )


def fingerprint_compare(F1: Fingerprint, F2: Fingerprint) -> dict:
    names = ["p", "n_total", "derived_exp", "class_size_multiset", "element_center_index_multiset",
             "maximal_abelian_order_multiset"]
    differing = [f for f in names if getattr(F1, f) != getattr(F2, f)]
    return {"distinguishable": bool(differing), "differing_fields": differing}
