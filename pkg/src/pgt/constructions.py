"""Named groups: extraspecial, Heisenberg, the group H, semifield groups, G(alpha, beta).

Odd-p groups come out in the bilinear model. The 2-groups D4 and Q8 and the
non-p-groups S3, A4, S4 are fixed tables built from permutations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import ExtField, Semifield, Subspace, semifield_from_field, semifield_validate
from .centralizers import center, centralizer, centralizer_of, is_abelian
from .errors import EvenPrime, InconsistentRelations, InvalidN, PGTError, VerificationFailed
from .groups import BilinearGroup, Subgroup, TableGroup, group_from_bilinear, group_from_permutations


# ---------------------------------------------------------------------------
# commutator presentations


@dataclass
class CommutatorPresentation:
    """Exponent-p, class-2 presentation by commutators of the ``v`` generators.

    ``relations`` holds ``(x, y, word)`` meaning ``[x, y] = word``; a word is
    a ``{z_name: exponent}`` mapping or a single ``z`` name. Commutators not
    listed (and not implied by antisymmetry) are trivial.
    """

    p: int
    v_generators: list
    z_generators: list
    relations: list = field(default_factory=list)
    name: str | None = None

    def to_json(self) -> dict:
        rels = []
        for x, y, w in self.relations:
            rels.append([x, y, {w: 1} if isinstance(w, str) else dict(w)])
        return {"p": self.p, "v": list(self.v_generators), "z": list(self.z_generators), "relations": rels}


def _word_vector(P: CommutatorPresentation, word) -> np.ndarray:
    zpos = {z: i for i, z in enumerate(P.z_generators)}
    out = np.zeros(len(P.z_generators), dtype=np.int64)
    items = {word: 1}.items() if isinstance(word, str) else dict(word).items()
    for z, e in items:
        if z not in zpos:
            raise InconsistentRelations(f"{z!r} is not a central generator")
        out[zpos[z]] += e
    return out % P.p


def from_commutator_relations(P: CommutatorPresentation) -> BilinearGroup:
    if P.p == 2:
        raise EvenPrime("exponent-p presentations need an odd prime")
    vpos = {v: i for i, v in enumerate(P.v_generators)}
    d, m = len(P.v_generators), len(P.z_generators)
    B = np.zeros((d, d, m), dtype=np.int64)
    assigned = {}
    for x, y, word in P.relations:
        if x not in vpos or y not in vpos:
            raise InconsistentRelations(f"[{x}, {y}]: both sides must be v generators")
        i, j = vpos[x], vpos[y]
        val = _word_vector(P, word)
        if i == j:
            if val.any():
                raise InconsistentRelations(f"[{x}, {x}] must be trivial")
            continue
        if i > j:
            i, j, val = j, i, (-val) % P.p
        if (i, j) in assigned and not np.array_equal(assigned[(i, j)], val):
            raise InconsistentRelations(f"[{x}, {y}] assigned two different values")
        assigned[(i, j)] = val
        B[i, j] = val
        B[j, i] = (-val) % P.p
    return group_from_bilinear(P.p, d, m, B, name=P.name)


# ---------------------------------------------------------------------------
# the group H


def paper_H_presentation(p: int, n: int) -> CommutatorPresentation:
    """Generators ``a, b, c_1..c_{n-2}, z_1..z_n`` with ``[b, c_i] = z_i``.

    ``a`` and every ``z_i`` are central, so they are the central generators;
    ``b, c_1, ..., c_{n-2}`` span ``H/Z(H)``.
    """
    if n < 3:
        raise InvalidN(f"n = {n}; the construction needs n >= 3")
    cs = [f"c{i}" for i in range(1, n - 1)]
    zs = [f"z{i}" for i in range(1, n + 1)]
    rels = [("b", c, f"z{i}") for i, c in enumerate(cs, start=1)]
    return CommutatorPresentation(p, ["b"] + cs, ["a"] + zs, rels, name=f"paperH-{p}-{n}")


def paper_H(p: int, n: int) -> BilinearGroup:
    """The group H; checks ``|H| = p^2n``, ``|Z(H)| = p^(n+1)`` and ``C_H(b)`` maximal abelian of order ``p^(n+2)``."""
    H = from_commutator_relations(paper_H_presentation(p, n))
    b = H.index(np.eye(H.d, dtype=np.int64)[0])
    C = centralizer(H, b)
    checks = {
        "order": H.order == p ** (2 * n),
        "center": center(H).order == p ** (n + 1),
        "centralizer_of_b": C.order == p ** (n + 2),
        "centralizer_of_b_maximal_abelian": is_abelian(C) and centralizer_of(H, C) == C,
    }
    for k, ok in checks.items():
        if not ok:
            raise VerificationFailed(k, f"paper_H({p}, {n})")
    return H


# ---------------------------------------------------------------------------
# extraspecial and Heisenberg groups


def extraspecial(p: int, k: int):
    """Extraspecial group of order ``p^(2k+1)``; exponent p for odd p, D4 for p = 2."""
    if p == 2:
        if k != 1:
            raise PGTError("only the order-8 extraspecial 2-groups are built in (D4, Q8)")
        return D4()
    d = 2 * k
    B = np.zeros((d, d, 1), dtype=np.int64)
    for i in range(k):
        B[i, k + i, 0] = 1
        B[k + i, i, 0] = p - 1
    return group_from_bilinear(p, d, 1, B, name=f"extraspecial-{p}-{k}")


def _semifield_form(S: Semifield) -> np.ndarray:
    """``B((x1, y1), (x2, y2)) = x1*y2 - x2*y1`` on ``S + S``."""
    n, p = S.n, S.p
    B = np.zeros((2 * n, 2 * n, n), dtype=np.int64)
    B[:n, n:] = S.mul_constants
    B[n:, :n] = (-S.mul_constants.transpose(1, 0, 2)) % p
    return B


def semifield_heisenberg(S: Semifield, name: str | None = None) -> BilinearGroup:
    """Heisenberg-type group over a semifield, with its stated properties checked."""
    from .ses import is_ultraspecial

    if S.p == 2:
        raise EvenPrime("semifield groups need an odd prime")
    rep = semifield_validate(S)
    if not rep.passed:
        raise VerificationFailed("semifield", rep.reason)
    n = S.n
    G = group_from_bilinear(S.p, 2 * n, n, _semifield_form(S), name=name or f"sfheis-{S.p}-{n}")
    if G.order != S.p ** (3 * n):
        raise VerificationFailed("order", f"{G.order}")
    if not is_ultraspecial(G):
        raise VerificationFailed("ultraspecial")
    X = Subgroup.from_vspace(G, Subspace.span(np.eye(2 * n, dtype=np.int64)[:n], S.p, 2 * n))
    if not (is_abelian(X) and X.order == S.p ** (2 * n)):
        raise VerificationFailed("abelian subgroup of order p^2n", "{(x, 0)} x Z")
    return G


def heisenberg(p: int, a: int) -> BilinearGroup:
    """Unitriangular 3x3 matrices over GF(p^a), as a bilinear group with ``d = 2a``, ``m = a``."""
    if a > 4:
        raise PGTError("heisenberg degree a must be at most 4")
    return semifield_heisenberg(semifield_from_field(ExtField(p, a)), name=f"heisenberg-{p}-{a}")


# ---------------------------------------------------------------------------
# generalized semifield group


@dataclass
class GabVerification:
    order: bool
    ultraspecial: bool
    centralizer_matches_H: bool
    witness_p_n_plus_2: list
    witness_p_2n: list


def _h_basis_change(S: Semifield, one: np.ndarray) -> np.ndarray:
    """Rows: images of ``a, b, c_1, ...`` in S-coordinates, with ``a`` sent to the identity."""
    rows = [one]
    eye = np.eye(S.n, dtype=np.int64)
    for e in eye:
        if len(rows) == S.n:
            break
        if Subspace.span(rows + [e], S.p, S.n).dim == len(rows) + 1:
            rows.append(e)
    return np.array(rows, dtype=np.int64)


def generalized_semifield_group(S: Semifield, H_data: CommutatorPresentation | None = None, name=None):
    """The ultraspecial group on ``V + V`` (centre ``V``) with commutator map

        B((u1, v1), (u2, v2)) = alpha(u2, v1) - alpha(u1, v2) + beta(v1, v2)

    where ``alpha`` is the semifield product and ``beta = (1/2)[.,.]_H`` with
    ``H/<z_i>`` identified with ``V`` by sending ``a`` to the identity of S.
    Then ``C_G((0, 1)) = {(0, v)} x Z`` realizes ``H``. Returns
    ``(G, GabVerification)`` and raises ``VerificationFailed`` if any stated
    property is missing.
    """
    from .ses import is_ultraspecial
    from .centralizers import subgroup_center

    p, n = S.p, S.n
    if n < 3:
        raise InvalidN(f"n = {n}; the construction needs n >= 3")
    if p == 2:
        raise EvenPrime("generalized semifield groups need an odd prime")
    rep = semifield_validate(S)
    if not rep.passed:
        raise VerificationFailed("semifield", rep.reason)
    H_data = H_data or paper_H_presentation(p, n)
    Hgrp = from_commutator_relations(H_data)
    if Hgrp.d != n - 1 or Hgrp.m != n + 1:
        raise InvalidN("H data must have n-1 noncentral and n+1 central generators")
    gamma = pow(2, -1, p)

    # beta in H-coordinates (a, b, c_1, ...): the v generators of H follow a
    beta_h = np.zeros((n, n, n), dtype=np.int64)
    # H's central coordinates are (a, z_1..z_n); keep the z part
    beta_h[1:, 1:] = Hgrp.B[:, :, 1:] * gamma % p
    P = _h_basis_change(S, rep.identity)  # H-coords -> S-coords
    Pinv = _inverse_mod(P, p)
    # beta in S-coordinates: beta_s(x, y) = beta_h(x Pinv, y Pinv)
    beta_s = np.einsum("ia,jb,abk->ijk", Pinv, Pinv, beta_h) % p

    alpha = S.mul_constants
    B = np.zeros((2 * n, 2 * n, n), dtype=np.int64)
    B[:n, n:] = (-alpha) % p  # B(u_i, v_j) = -alpha(e_i, e_j)
    B[n:, :n] = alpha.transpose(1, 0, 2)  # B(v_j, u_i) = alpha(e_i, e_j)
    B[n:, n:] = beta_s
    G = group_from_bilinear(p, 2 * n, n, B % p, name=name or f"gab-{p}-{n}")

    one = rep.identity
    g = G.index(np.concatenate([np.zeros(n, np.int64), one]))
    C = centralizer(G, g)
    expected_C = Subspace.span(np.eye(2 * n, dtype=np.int64)[n:], p, 2 * n)
    C_ok = (
        C.order == p ** (2 * n)
        and C.vpart == expected_C
        and subgroup_center(C).order == p ** (n + 1)
        and _restricted_form_matches(G, beta_s)
    )
    b_vec = np.concatenate([np.zeros(n, np.int64), P[1]])
    A_small = Subgroup.from_vspace(G, Subspace.span([np.concatenate([np.zeros(n, np.int64), one]), b_vec], p, 2 * n))
    A_large = Subgroup.from_vspace(G, Subspace.span(np.eye(2 * n, dtype=np.int64)[:n], p, 2 * n))

    def maximal(A):
        return is_abelian(A) and centralizer_of(G, A) == A

    ver = GabVerification(
        order=G.order == p ** (3 * n),
        ultraspecial=is_ultraspecial(G),
        centralizer_matches_H=bool(C_ok),
        witness_p_n_plus_2=A_small.vpart.basis.tolist() if A_small.order == p ** (n + 2) and maximal(A_small) else [],
        witness_p_2n=A_large.vpart.basis.tolist() if A_large.order == p ** (2 * n) and maximal(A_large) else [],
    )
    for k in ("order", "ultraspecial", "centralizer_matches_H", "witness_p_n_plus_2", "witness_p_2n"):
        if not getattr(ver, k):
            raise VerificationFailed(k, G.name)
    return G, ver


def _restricted_form_matches(G: BilinearGroup, beta_s: np.ndarray) -> bool:
    n = G.d // 2
    return np.array_equal(G.B[n:, n:], beta_s % G.p)


def _inverse_mod(M: np.ndarray, p: int) -> np.ndarray:
    from .algebra import rref

    n = M.shape[0]
    R, piv = rref(np.hstack([M % p, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != tuple(range(n)):
        raise PGTError("matrix is singular")
    return R[:, n:]


# ---------------------------------------------------------------------------
# presentations with pairwise distinct commutators


def example_n4_presentation(p: int = 3) -> CommutatorPresentation:
    """``a_1, a_2, a_3, z`` with ``z`` central and the three commutators distinct."""
    rels = [("a1", "a2", "w12"), ("a1", "a3", "w13"), ("a2", "a3", "w23")]
    return CommutatorPresentation(p, ["a1", "a2", "a3"], ["z", "w12", "w13", "w23"], rels, name="example-n4")


def example_n5_presentation(p: int = 3) -> CommutatorPresentation:
    """``a_1..a_4, z``; ``[a1,a2], [a3,a4], [a1,a3], [a2,a4]`` and ``[a1,a4] = [a2,a3]`` distinct."""
    rels = [
        ("a1", "a2", "w1"),
        ("a3", "a4", "w2"),
        ("a1", "a3", "w3"),
        ("a2", "a4", "w4"),
        ("a1", "a4", "w5"),
        ("a2", "a3", "w5"),
    ]
    return CommutatorPresentation(p, ["a1", "a2", "a3", "a4"], ["z", "w1", "w2", "w3", "w4", "w5"], rels, name="example-n5")


def example_n4(p: int = 3) -> BilinearGroup:
    return from_commutator_relations(example_n4_presentation(p))


def example_n5(p: int = 3) -> BilinearGroup:
    return from_commutator_relations(example_n5_presentation(p))


# ---------------------------------------------------------------------------
# small tables


def S3() -> TableGroup:
    return group_from_permutations(3, [[1, 0, 2], [1, 2, 0]], name="S3")


def S4() -> TableGroup:
    return group_from_permutations(4, [[1, 0, 2, 3], [1, 2, 3, 0]], name="S4")


def A4() -> TableGroup:
    return group_from_permutations(4, [[1, 2, 0, 3], [1, 0, 3, 2]], name="A4")


def D4() -> TableGroup:
    """Symmetries of the square: ``r = (0 1 2 3)``, ``s = (1 3)``."""
    return group_from_permutations(4, [[1, 2, 3, 0], [0, 3, 2, 1]], name="D4")


_Q_UNITS = ["1", "i", "j", "k"]
# unit products: (sign, unit) for u * w
_Q_MUL = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def quaternion_elements():
    return [(s, u) for u in _Q_UNITS for s in (1, -1)]


def quaternion_permutations():
    """Right-regular permutations of ``i`` and ``j`` on the eight units ``+-1, +-i, +-j, +-k``."""
    els = quaternion_elements()
    pos = {e: n for n, e in enumerate(els)}

    def right(g):
        gs, gu = g
        out = []
        for s, u in els:
            t, w = _Q_MUL[(u, gu)]
            out.append(pos[(s * gs * t, w)])
        return out

    return [right((1, "i")), right((1, "j"))]


def Q8() -> TableGroup:
    return group_from_permutations(8, quaternion_permutations(), name="Q8")
