"""Centers, centralizers, centers of centralizers and conjugacy classes.

Everything here works on both group models. The table path reads the
commuting matrix; the bilinear path works with subspaces of ``V = GF(p)^d``:
for ``g = (v, z)`` the centralizer is ``{(w, *) : B(v, w) = 0}``, so every
centralizer and every ``Z(g)`` contains all central coordinates and depends on
``v`` alone (up to nonzero scalars).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass, replace

import numpy as np

from .algebra import Subspace, all_vectors, encode, normalize, rank, rank_and_kernel
from .errors import AbelianGroup, AllCentral, CentralElement, NotPrimePower
from .groups import BilinearGroup, FiniteGroup, Subgroup


def _cache(G: FiniteGroup, name: str) -> dict:
    store = G.__dict__.setdefault("_pgt_cache", {})
    return store.setdefault(name, {})


def _log(n: int, p: int) -> int:
    e = 0
    while n > 1:
        n //= p
        e += 1
    return e


# ---------------------------------------------------------------------------
# bilinear helpers


def _vkey(G: BilinearGroup, v) -> int:
    return encode(normalize(np.asarray(v, np.int64) % G.p, G.p), G.p)


def v_centralizer(G: BilinearGroup, v) -> Subspace:
    """``{w : B(v, w) = 0}``."""
    cache = _cache(G, "vcent")
    key = _vkey(G, v)
    if key not in cache:
        cache[key] = rank_and_kernel(G.left_map(v), G.p, G.d)[1]
    return cache[key]


def _center_coeffs(G: BilinearGroup, rows: np.ndarray, U: Subspace) -> np.ndarray:
    """Coefficient vectors ``c`` with ``B(sum c_i rows_i, u) = 0`` for ``u`` in ``U``."""
    k = rows.shape[0]
    if k == 0 or U.dim == 0:
        return np.eye(k, dtype=np.int64)
    # M[(j, l), i] = B(rows_i, u_j)_l
    vals = np.einsum("ia,jb,abl->jli", rows, U.basis, G.B) % G.p
    _, K = rank_and_kernel(vals.reshape(-1, k), G.p, k)
    return K.basis


def v_element_center(G: BilinearGroup, v) -> Subspace:
    """``v``-part of ``Z(C_G(g))``: the vectors of ``C_V(v)`` orthogonal to all of it."""
    cache = _cache(G, "vzent")
    key = _vkey(G, v)
    if key not in cache:
        C = v_centralizer(G, v)
        coeffs = _center_coeffs(G, C.basis, C)
        cache[key] = Subspace.span(coeffs @ C.basis % G.p, G.p, G.d)
    return cache[key]


def noncentral_vectors(G: BilinearGroup) -> np.ndarray:
    """All ``v`` outside the radical, lex order."""
    V = all_vectors(G.p, G.d)
    keep = G.radical.reduce(V).any(axis=1)
    return V[keep]


# ---------------------------------------------------------------------------
# basic subgroups


def center(G: FiniteGroup) -> Subgroup:
    cache = _cache(G, "center")
    if "Z" not in cache:
        if G.model == "bilinear":
            cache["Z"] = Subgroup.from_vspace(G, G.radical)
        else:
            cache["Z"] = Subgroup(G, mask=G.commuting.all(axis=1))
    return cache["Z"]


def is_central(G: FiniteGroup, g: int) -> bool:
    return center(G).contains(int(g))


def centralizer(G: FiniteGroup, g: int) -> Subgroup:
    g = int(g)
    if G.model == "bilinear":
        return Subgroup.from_vspace(G, v_centralizer(G, G.split(g)[0]))
    return Subgroup(G, mask=G.commuting[g].copy())


def centralizer_of(G: FiniteGroup, H: Subgroup) -> Subgroup:
    """``C_G(H)``."""
    if G.model == "bilinear":
        return Subgroup.from_vspace(G, G.perp(H.vpart))
    return Subgroup(G, mask=G.commuting[:, H.mask].all(axis=1))


def subgroup_center(H: Subgroup) -> Subgroup:
    """``Z(H)`` for any subgroup ``H``."""
    G = H.group
    if G.model == "bilinear":
        rows = H.space.basis
        coeffs = _center_coeffs(G, rows[:, : G.d], H.vpart)
        return Subgroup(G, space=Subspace.span(coeffs @ rows % G.p, G.p, G.n_coords))
    return Subgroup(G, mask=H.mask & G.commuting[:, H.mask].all(axis=1))


def is_abelian(H: Subgroup) -> bool:
    G = H.group
    if G.model == "bilinear":
        U = H.vpart.basis
        return not (np.einsum("ia,jb,abl->ijl", U, U, G.B) % G.p).any()
    idx = np.flatnonzero(H.mask)
    return bool(G.commuting[np.ix_(idx, idx)].all())


def element_center(G: FiniteGroup, g: int) -> Subgroup:
    """``Z(g) = Z(C_G(g))``, defined for noncentral ``g``."""
    g = int(g)
    if is_central(G, g):
        raise CentralElement(f"element {g} is central; Z(g) is undefined")
    if G.model == "bilinear":
        return Subgroup.from_vspace(G, v_element_center(G, G.split(g)[0]))
    cache = _cache(G, "zent")
    if g not in cache:
        cache[g] = subgroup_center(centralizer(G, g))
    return cache[g]


# ---------------------------------------------------------------------------
# conjugacy classes


@dataclass
class ConjugacyClass:
    representative: int
    members: np.ndarray
    size: int


def conjugacy_classes(G: FiniteGroup) -> list[ConjugacyClass]:
    """All classes, each headed by its least element, sorted by that element."""
    classes = []
    if G.model == "bilinear":
        p, m = G.p, G.m
        Zs = all_vectors(p, m)
        pv = p ** np.arange(m - 1, -1, -1, dtype=np.int64)
        for v in all_vectors(p, G.d):
            im = Subspace.span(G.left_map(v).T, p, m)
            offs = im.enumerate_vectors()
            base = G.index(v, np.zeros(m, np.int64))
            codes = ((Zs[:, None, :] + offs[None, :, :]) % p) @ pv
            heads = codes.min(axis=1)
            for h in np.unique(heads):
                mem = np.sort(codes[np.flatnonzero(heads == h)[0]]) + base
                classes.append(ConjugacyClass(int(mem[0]), mem, int(mem.size)))
    else:
        T, inv = G.table.astype(np.int64), G.inverse
        seen = np.zeros(G.order, dtype=bool)
        for x in range(G.order):
            if seen[x]:
                continue
            # y^-1 x y for all y
            conj = T[T[inv, x], np.arange(G.order)]
            mem = np.unique(conj)
            seen[mem] = True
            classes.append(ConjugacyClass(int(mem[0]), mem, int(mem.size)))
    classes.sort(key=lambda c: c.representative)
    return classes


def class_size(G: FiniteGroup, g: int) -> int:
    g = int(g)
    if G.model == "bilinear":
        return G.p ** rank(G.left_map(G.split(g)[0]), G.p)
    return G.order // int(G.commuting[g].sum())


def class_size_multiset(G: FiniteGroup) -> dict[int, int]:
    """``{class size: number of classes}``."""
    if G.model == "bilinear":
        counts = Counter()
        for v in all_vectors(G.p, G.d):
            r = G.p ** rank(G.left_map(v), G.p)
            counts[r] += G.p**G.m // r
        return dict(sorted(counts.items()))
    return dict(sorted(Counter(c.size for c in conjugacy_classes(G)).items()))


# ---------------------------------------------------------------------------
# parameters


@dataclass
class GroupParameters:
    p: int
    order_exp: int
    n_total: int
    m: int
    b: int
    l: int
    k: int | None = None

    def to_json(self) -> dict:
        return asdict(self)


def noncentral_representatives(G: FiniteGroup) -> list[int]:
    """One element per distinct centralizer pattern, enough for maxima and minima.

    Table model: every noncentral element. Bilinear model: ``(v, 0)`` for
    each normalized ``v`` outside the radical.
    """
    if G.model == "bilinear":
        seen, reps = set(), []
        for v in noncentral_vectors(G):
            key = _vkey(G, v)
            if key not in seen:
                seen.add(key)
                reps.append(G.index(v))
        return reps
    Z = center(G).mask
    return [int(x) for x in np.flatnonzero(~Z)]


def parameters(G: FiniteGroup) -> GroupParameters:
    """``n_total, m, b, l`` and, for s.e.s. groups, ``k``. Cached on the group."""
    cache = _cache(G, "params")
    if "value" not in cache:
        cache["value"] = _parameters(G)
    return replace(cache["value"])


def _parameters(G: FiniteGroup) -> GroupParameters:
    pp = G.prime_power
    if pp is None:
        raise NotPrimePower(f"|G| = {G.order} is not a prime power")
    p, e = pp
    Z = center(G)
    if Z.order == G.order:
        raise AbelianGroup("b and l are undefined for abelian groups")
    zexp = _log(Z.order, p)
    # per noncentral representative: (class size exponent, |Z(g):Z(G)| exponent)
    if G.model == "bilinear":
        seen, stats = set(), []
        for v in noncentral_vectors(G):
            key = _vkey(G, v)
            if key in seen:
                continue
            seen.add(key)
            stats.append((G.d - v_centralizer(G, v).dim, v_element_center(G, v).dim - G.radical.dim))
    else:
        stats = [
            (_log(class_size(G, g), p), _log(element_center(G, g).order // Z.order, p))
            for g in noncentral_representatives(G)
        ]
    b = max(s for s, _ in stats)
    l = max(t for _, t in stats)
    params = GroupParameters(p=p, order_exp=e, n_total=e - zexp, m=zexp, b=b, l=l)
    from .ses import is_semi_extraspecial  # local: ses builds on this module

    if is_semi_extraspecial(G):
        assert b == zexp, "noncentral class sizes of an s.e.s. group must equal |Z(G)|"
        n_ses = params.n_total // 2
        small = [t for _, t in stats if t < n_ses]
        params.k = min(small) if small else None
    return params


# ---------------------------------------------------------------------------
# the family of element centers


@dataclass
class CenterFamily:
    representatives: list[int]
    subgroups: list[Subgroup]
    restricted_to: Subgroup | None = None

    def __len__(self):
        return len(self.subgroups)

    @property
    def entries(self):
        return list(zip(self.representatives, self.subgroups))


def center_family(G: FiniteGroup, A: Subgroup | None = None) -> CenterFamily:
    """Distinct ``Z(a)`` over noncentral ``a`` (in ``A`` if given), least representative first."""
    Z = center(G)
    seen, reps, subs = set(), [], []
    if A is None and G.model == "bilinear":
        candidates = (G.index(v) for v in noncentral_vectors(G))
    else:
        pool = A.elements() if A is not None else G.elements()
        candidates = (int(x) for x in pool if not Z.contains(int(x)))
    vseen = set()
    for g in candidates:
        if G.model == "bilinear":
            vk = _vkey(G, G.split(g)[0])
            if vk in vseen:
                continue
            vseen.add(vk)
        S = element_center(G, g)
        if S.key not in seen:
            seen.add(S.key)
            reps.append(g)
            subs.append(S)
    if not subs:
        raise AllCentral("every element of the given set is central")
    order = np.argsort(reps, kind="stable")
    return CenterFamily([reps[i] for i in order], [subs[i] for i in order], A)


# ---------------------------------------------------------------------------
# lemma checks over elements and pairs


@dataclass
class LemmaReport:
    lemma: str
    group: str
    status: str
    pairs_checked: int
    counterexample: list | None = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status in ("pass", "not-applicable")

    def to_json(self) -> dict:
        doc = {"lemma": self.lemma, "group": self.group, "status": self.status, "pairs_checked": self.pairs_checked}
        if self.counterexample is not None:
            doc["counterexample"] = self.counterexample
        if self.note:
            doc["note"] = self.note
        return doc


class ElementView:
    """Noncentral representatives with their centralizers and element centers.

    Table groups use every noncentral element. Bilinear groups use ``(v, 0)``
    for every ``v`` outside the radical; each stands for the ``p**m`` elements
    ``(v, z)``, which share centralizer and element center, so a check over
    these representatives covers every element.
    """

    def __init__(self, G: FiniteGroup):
        self.G = G
        self.Z = center(G)
        if G.model == "bilinear":
            self.vecs = noncentral_vectors(G)
            self.reps = [G.index(v) for v in self.vecs]
            self.weight = G.p**G.m
            V = self.vecs
            self.commute = ~(np.einsum("ai,bj,ijl->abl", V, V, G.B) % G.p).any(axis=2)
            pos = np.full(G.p**G.d, -1, dtype=np.int64)
            pos[encode(V, G.p)] = np.arange(len(V))
            self._vpos = pos
        else:
            self.reps = [int(x) for x in np.flatnonzero(~self.Z.mask)]
            self.weight = 1
            idx = np.array(self.reps, dtype=np.int64)
            self.commute = G.commuting[np.ix_(idx, idx)] if idx.size else np.zeros((0, 0), bool)
            pos = np.full(G.order, -1, dtype=np.int64)
            pos[idx] = np.arange(idx.size)
            self._pos = pos

    def __len__(self):
        return len(self.reps)

    def centralizer(self, i: int) -> Subgroup:
        return centralizer(self.G, self.reps[i])

    def element_center(self, i: int) -> Subgroup:
        return element_center(self.G, self.reps[i])

    def positions(self, H: Subgroup) -> np.ndarray:
        """Rep indices of the noncentral elements of ``H`` (one per v-class)."""
        G = self.G
        if G.model == "bilinear":
            codes = encode(H.vpart.enumerate_vectors(), G.p)
            pos = self._vpos[codes]
            return pos[pos >= 0]
        pos = self._pos[np.flatnonzero(H.mask)]
        return pos[pos >= 0]

    def zc_matrix(self) -> np.ndarray:
        """``M[a, b]`` is True iff ``Z(a) <= C_G(b)``, computed from element centers."""
        if hasattr(self, "_zc"):
            return self._zc
        G, n = self.G, len(self.reps)
        M = np.zeros((n, n), dtype=bool)
        if G.model == "bilinear":
            for a in range(n):
                Zb = v_element_center(G, self.vecs[a]).basis
                vals = np.einsum("bi,kj,ijl->bkl", self.vecs, Zb, G.B) % G.p
                M[a] = ~vals.reshape(n, -1).any(axis=1)
        else:
            idx = np.array(self.reps, dtype=np.int64)
            for a in range(n):
                Zm = self.element_center(a).mask
                M[a] = G.commuting[np.ix_(idx, np.flatnonzero(Zm))].all(axis=1)
        self._zc = M
        return M

    def label(self, i: int) -> str:
        G = self.G
        return G.label(self.reps[i])


def _first_pair(bad: np.ndarray):
    hits = np.argwhere(bad)
    return (int(hits[0][0]), int(hits[0][1])) if hits.size else None


def _two_generated_subgroups(view: ElementView):
    """Distinct subgroups ``<x, y, Z(G)>`` over all pairs of elements."""
    G = view.G
    seen = set()
    if G.model == "bilinear":
        from .maxabelian import subspaces_up_to_dim

        for S in subspaces_up_to_dim(G.p, G.d, 2):
            H = Subgroup.from_vspace(G, S + G.radical)
            if H.key not in seen:
                seen.add(H.key)
                yield H
        return
    from .groups import subgroup_from_generators

    Zel = [int(z) for z in view.Z.elements()]
    cosets, covered = [], np.zeros(G.order, dtype=bool)
    for x in view.reps:
        if not covered[x]:
            cosets.append(x)
            covered[G.table[x, Zel]] = True
    for i, x in enumerate(cosets):
        for y in cosets[i:]:
            H = subgroup_from_generators(G, [x, y] + Zel)
            if H.key not in seen:
                seen.add(H.key)
                yield H


def lemma_check_s2(G: FiniteGroup, lemma_id: str, view: ElementView | None = None) -> LemmaReport:
    """Exhaustive check of one element/pair identity; stops at the first counterexample.

    ``lemma_id`` is one of ``well``, ``threee``, ``three1``, ``three2``, ``threef``.
    """
    view = view or ElementView(G)
    Z = view.Z
    n = len(view)
    name = G.name
    if lemma_id == "well":
        inter = Subgroup(G, mask=np.ones(G.order, bool)) if G.model == "table" else Subgroup.from_vspace(G, Subspace.full(G.p, G.d))
        if G.model == "bilinear":
            for v in all_vectors(G.p, G.d):
                inter = inter & Subgroup.from_vspace(G, v_centralizer(G, v))
            checked = G.p**G.d
        else:
            for x in range(G.order):
                inter = inter & Subgroup(G, mask=G.commuting[x])
            checked = G.order
        ok = inter == Z
        return LemmaReport("well", name, "pass" if ok else "fail", checked, None if ok else [])
    if n == 0:
        return LemmaReport(lemma_id, name, "not-applicable", 0, note="abelian group")
    if lemma_id == "threee":
        checked = 0
        for a in range(n):
            Za = view.element_center(a)
            Ca = view.centralizer(a)
            if G.model == "bilinear":
                inter = Subspace.full(G.p, G.d)
                for w in Ca.vpart.enumerate_vectors():
                    inter = inter & v_centralizer(G, w)
                rhs = Subgroup.from_vspace(G, inter)
            else:
                rhs = Subgroup(G, mask=G.commuting[:, Ca.mask].all(axis=1))
            checked += Ca.order if G.model == "table" else Ca.vpart.size
            if Za != rhs:
                return LemmaReport("threee", name, "fail", checked, [view.label(a)])
        return LemmaReport("threee", name, "pass", checked * view.weight)
    if lemma_id in ("three1", "three2"):
        ZC = view.zc_matrix()
        bad = (view.commute != ZC) if lemma_id == "three1" else (ZC != ZC.T)
        pair = _first_pair(bad)
        checked = n * n * view.weight**2
        if pair:
            return LemmaReport(lemma_id, name, "fail", checked, [view.label(pair[0]), view.label(pair[1])])
        return LemmaReport(lemma_id, name, "pass", checked)
    if lemma_id == "threef":
        ZC = view.zc_matrix()
        checked = 0
        for H in _two_generated_subgroups(view):
            pos = view.positions(H)
            rhs = bool(ZC[np.ix_(pos, pos)].all())
            checked += pos.size * pos.size
            if is_abelian(H) != rhs:
                return LemmaReport("threef", name, "fail", checked, [int(x) for x in H.elements()[:8]])
        return LemmaReport("threef", name, "pass", checked)
    raise ValueError(f"unknown lemma {lemma_id!r}")
