"""Two finite-group models and the subgroups that live in them.

``TableGroup`` is an explicit multiplication table. ``BilinearGroup`` is a
class-2, exponent-p group for odd p, stored as an alternating map
``B: GF(p)^d x GF(p)^d -> GF(p)^m``; its elements are pairs ``(v, z)`` and

    (v1, z1)(v2, z2) = (v1 + v2, z1 + z2 + B(v1, v2) / 2).

In both models an element is an ``int`` in ``range(order)``. Bilinear elements
are numbered by the lex rank of the concatenated coordinates ``(v, z)``, so
:func:`expand_bilinear_to_table` keeps every index fixed.
"""

from __future__ import annotations

from collections import deque
from functools import cached_property

import numpy as np

from . import config
from .algebra import Subspace, decode, encode, is_prime, prime_power, rank_and_kernel
from .errors import (
    CapExceeded,
    EvenPrime,
    NoIdentity,
    NotAlternating,
    NotAssociative,
    NotLatinSquare,
    NotPrime,
    PGTError,
)


def _index_dtype(n: int):
    return np.uint16 if n <= np.iinfo(np.uint16).max else np.int32


class FiniteGroup:
    model: str
    name: str
    order: int

    def elements(self) -> np.ndarray:
        return np.arange(self.order)

    @property
    def prime_power(self):
        return prime_power(self.order)

    @property
    def is_p_group(self) -> bool:
        return self.order == 1 or self.prime_power is not None

    def power(self, x: int, k: int) -> int:
        r = self.identity
        for _ in range(k):
            r = self.mul(r, x)
        return r

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.mul(y, x)
            k += 1
        return k

    def commutator(self, x: int, y: int) -> int:
        return self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))


class TableGroup(FiniteGroup):
    model = "table"

    def __init__(self, mul, labels=None, name=None):
        mul = np.asarray(mul)
        self.order = mul.shape[0]
        self.table = mul.astype(_index_dtype(self.order))
        self.table.setflags(write=False)
        self.identity = int(np.flatnonzero((mul == np.arange(self.order)).all(axis=1))[0])
        inv = np.argmax(mul == self.identity, axis=1)
        self.inverse = inv
        self.labels = list(labels) if labels is not None else None
        self.name = name or f"table-{self.order}"

    def __repr__(self):
        return f"TableGroup({self.name!r}, order={self.order})"

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def inv(self, x: int) -> int:
        return int(self.inverse[x])

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    @cached_property
    def commuting(self) -> np.ndarray:
        """``commuting[x, y]`` is True iff ``xy == yx``."""
        t = self.table
        return t == t.T

    def product_set(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """Mask of ``{xy : x in X, y in Y}`` for boolean masks ``X``, ``Y``."""
        out = np.zeros(self.order, dtype=bool)
        xs, ys = np.flatnonzero(X), np.flatnonzero(Y)
        for start in range(0, xs.size, 512):
            out[self.table[np.ix_(xs[start : start + 512], ys)].ravel()] = True
        return out

    def to_json(self) -> dict:
        doc = {"model": "table", "order": self.order, "mul": self.table.tolist()}
        if self.labels:
            doc["labels"] = self.labels
        doc["name"] = self.name
        return doc


class BilinearGroup(FiniteGroup):
    model = "bilinear"

    def __init__(self, p: int, d: int, m: int, B, name=None):
        self.p, self.d, self.m = p, d, m
        B = np.asarray(B, dtype=np.int64).reshape(d, d, m) % p
        B.setflags(write=False)
        self.B = B
        self.gamma = pow(2, -1, p)
        self.order = p ** (d + m)
        self.identity = 0
        self.name = name or f"bilinear-{p}-{d}-{m}"
        # B(v, w)_k = v @ flat[:, j*m + k] evaluated at w = e_j
        self._flat = B.reshape(d, d * m)

    def __repr__(self):
        return f"BilinearGroup({self.name!r}, p={self.p}, d={self.d}, m={self.m})"

    def __eq__(self, other):
        return (
            isinstance(other, BilinearGroup)
            and (self.p, self.d, self.m) == (other.p, other.d, other.m)
            and np.array_equal(self.B, other.B)
        )

    def __hash__(self):
        return hash((self.p, self.d, self.m, self.B.tobytes()))

    # coordinates -------------------------------------------------------
    @property
    def n_coords(self) -> int:
        return self.d + self.m

    def coords(self, x) -> np.ndarray:
        return decode(x, self.p, self.n_coords)

    def split(self, x):
        c = self.coords(x)
        return c[..., : self.d], c[..., self.d :]

    def index(self, v, z=None) -> int:
        v = np.asarray(v, dtype=np.int64)
        z = np.zeros(v.shape[:-1] + (self.m,), np.int64) if z is None else np.asarray(z, np.int64)
        return encode(np.concatenate([v, z], axis=-1) % self.p, self.p)

    def label(self, x: int) -> str:
        v, z = self.split(x)
        return f"({''.join(map(str, v))}|{''.join(map(str, z))})"

    # the form ----------------------------------------------------------
    def form(self, v, w) -> np.ndarray:
        """``B(v, w)`` for (broadcastable) coordinate vectors."""
        return np.einsum("...i,...j,ijk->...k", np.asarray(v), np.asarray(w), self.B) % self.p

    def left_map(self, v) -> np.ndarray:
        """The ``m x d`` matrix of ``w -> B(v, w)``."""
        return (np.asarray(v, dtype=np.int64) @ self._flat).reshape(self.d, self.m).T % self.p

    def left_maps(self, U: np.ndarray) -> np.ndarray:
        """Stack of ``w -> B(u, w)`` over the rows of ``U``, shape ``(k*m, d)``."""
        U = np.asarray(U, dtype=np.int64).reshape(-1, self.d)
        return (U @ self._flat).reshape(U.shape[0], self.d, self.m).transpose(0, 2, 1).reshape(-1, self.d) % self.p

    def perp(self, U: Subspace) -> Subspace:
        """``{w : B(u, w) = 0 for all u in U}``."""
        if U.dim == 0:
            return Subspace.full(self.p, self.d)
        return rank_and_kernel(self.left_maps(U.basis), self.p, self.d)[1]

    @cached_property
    def radical(self) -> Subspace:
        return self.perp(Subspace.full(self.p, self.d))

    @cached_property
    def image_span(self) -> Subspace:
        """Span of all values of ``B`` (the coordinates of G')."""
        return Subspace.span(self.B.reshape(self.d * self.d, self.m), self.p, self.m) if self.d else Subspace.zero(self.p, self.m)

    # group law ---------------------------------------------------------
    def mul(self, x: int, y: int) -> int:
        (v1, z1), (v2, z2) = self.split(x), self.split(y)
        z = z1 + z2 + self.gamma * self.form(v1, v2)
        return self.index((v1 + v2) % self.p, z % self.p)

    def inv(self, x: int) -> int:
        return encode((-self.coords(x)) % self.p, self.p)

    def commutator(self, x: int, y: int) -> int:
        (v1, _), (v2, _) = self.split(x), self.split(y)
        return self.index(np.zeros(self.d, np.int64), self.form(v1, v2))

    def to_json(self) -> dict:
        return {
            "model": "bilinear",
            "p": self.p,
            "d": self.d,
            "m": self.m,
            "B": self.B.tolist(),
            "name": self.name,
        }


# ---------------------------------------------------------------------------
# subgroups


class Subgroup:
    """A subgroup of a table or bilinear group in canonical form.

    Table subgroups hold a boolean membership mask. Bilinear subgroups hold a
    subspace ``L`` of ``GF(p)^(d+m)``: for odd p the subgroups of a class-2
    exponent-p group are exactly the subspaces closed under
    ``[(v, z), (w, y)] = (0, B(v, w))``, so ``L`` is the subgroup's own
    coordinate set. Either way equal subgroups have equal representations.
    """

    __slots__ = ("group", "mask", "space", "__dict__")

    def __init__(self, group: FiniteGroup, mask=None, space: Subspace | None = None):
        self.group = group
        self.mask = mask
        self.space = space
        if mask is not None:
            mask = np.asarray(mask, dtype=bool)
            mask.setflags(write=False)
            self.mask = mask

    @classmethod
    def from_elements(cls, G: FiniteGroup, elems) -> "Subgroup":
        elems = np.asarray(list(elems) if not isinstance(elems, np.ndarray) else elems, dtype=np.int64)
        if G.model == "table":
            mask = np.zeros(G.order, dtype=bool)
            mask[elems] = True
            return cls(G, mask=mask)
        space = Subspace.span(G.coords(elems), G.p, G.n_coords)
        sub = cls(G, space=space)
        if sub.order != len(set(elems.tolist())):
            raise PGTError("element set is not a subgroup")
        return sub

    @classmethod
    def from_vspace(cls, G: "BilinearGroup", U: Subspace, W: Subspace | None = None) -> "Subgroup":
        """``{(v, z) : v in U, z in W}``; ``W`` defaults to all central coordinates."""
        W = Subspace.full(G.p, G.m) if W is None else W
        rows = [np.hstack([U.basis, np.zeros((U.dim, G.m), np.int64)]),
                np.hstack([np.zeros((W.dim, G.d), np.int64), W.basis])]
        return cls(G, space=Subspace.span(np.vstack(rows), G.p, G.n_coords))

    # canonical identity ---------------------------------------------------
    @property
    def key(self):
        return self.mask.tobytes() if self.mask is not None else self.space._key

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.group is other.group and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Subgroup(order={self.order}, group={self.group.name!r})"

    @property
    def order(self) -> int:
        if self.mask is not None:
            return int(self.mask.sum())
        return self.space.size

    def elements(self) -> np.ndarray:
        """Sorted element indices."""
        if self.mask is not None:
            return np.flatnonzero(self.mask)
        return self.space.codes()

    def element_mask(self) -> np.ndarray:
        if self.mask is not None:
            return self.mask
        m = np.zeros(self.group.order, dtype=bool)
        m[self.space.codes()] = True
        return m

    def contains(self, x: int) -> bool:
        if self.mask is not None:
            return bool(self.mask[x])
        return self.space.contains_vector(self.group.coords(x))

    __contains__ = contains

    def __le__(self, other: "Subgroup") -> bool:
        if self.mask is not None:
            return not (self.mask & ~other.mask).any()
        return other.space.contains(self.space)

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self.order < other.order

    def intersection(self, other: "Subgroup") -> "Subgroup":
        if self.mask is not None:
            return Subgroup(self.group, mask=self.mask & other.mask)
        return Subgroup(self.group, space=self.space.intersection(other.space))

    __and__ = intersection

    # bilinear views --------------------------------------------------------
    @cached_property
    def vpart(self) -> Subspace:
        """Projection onto the ``v`` coordinates."""
        G = self.group
        return Subspace.span(self.space.basis[:, : G.d], G.p, G.d)

    @cached_property
    def zpart(self) -> Subspace:
        """Central coordinates of the elements with ``v = 0``."""
        G = self.group
        inner = self.space.intersection(Subgroup.from_vspace(G, Subspace.zero(G.p, G.d)).space)
        return Subspace.span(inner.basis[:, G.d :], G.p, G.m)

    def least_element_outside(self, other: "Subgroup | None") -> int | None:
        """Smallest element index of ``self`` not in ``other``."""
        for x in self.elements():
            if other is None or not other.contains(int(x)):
                return int(x)
        return None


# ---------------------------------------------------------------------------
# constructors


def group_from_table(mul_table, labels=None, name=None, validate_sample_seed=config.ASSOC_SEED) -> TableGroup:
    """Validate a square multiplication table and wrap it."""
    T = np.asarray(mul_table)
    if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] == 0:
        raise NotLatinSquare(f"table must be a nonempty square array, got shape {T.shape}")
    n = T.shape[0]
    if n > config.TABLE_CAP:
        raise CapExceeded(f"table order {n} exceeds {config.TABLE_CAP}")
    T = T.astype(np.int64)
    if (T < 0).any() or (T >= n).any():
        raise NotLatinSquare(f"entries must lie in 0..{n - 1}")
    full = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(T[i]), full):
            raise NotLatinSquare(f"row {i} is not a permutation")
    for j in range(n):
        col = np.sort(T[:, j])
        if not np.array_equal(col, full):
            dup = col[np.flatnonzero(col[1:] == col[:-1])[0]]
            rows = np.flatnonzero(T[:, j] == dup)
            raise NotLatinSquare(f"column {j} is not a permutation: rows {rows[0]} and {rows[1]} both give {dup}")
    left = np.flatnonzero((T == full).all(axis=1))
    right = np.flatnonzero((T == full[:, None]).all(axis=0))
    both = np.intersect1d(left, right)
    if both.size == 0:
        raise NoIdentity("no element acts as a two-sided identity")
    e = int(both[0])
    inv = np.argmax(T == e, axis=1)
    if not (T[np.arange(n), inv] == e).all():
        raise NoIdentity("inverse check failed")
    if n <= config.ASSOC_EXHAUSTIVE_CAP:
        for a in range(n):
            lhs = T[T[a]]  # (a b) c
            rhs = T[a][T]  # a (b c)
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                b, c = bad[0]
                raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")
    else:
        rng = np.random.default_rng(validate_sample_seed)
        done = 0
        while done < config.ASSOC_SAMPLES:
            k = min(200_000, config.ASSOC_SAMPLES - done)
            a, b, c = rng.integers(0, n, size=(3, k))
            bad = np.flatnonzero(T[T[a, b], c] != T[a, T[b, c]])
            if bad.size:
                i = bad[0]
                raise NotAssociative(f"({a[i]}*{b[i]})*{c[i]} != {a[i]}*({b[i]}*{c[i]})")
            done += k
    if labels is not None and len(labels) != n:
        raise PGTError(f"expected {n} labels, got {len(labels)}")
    return TableGroup(T, labels=labels, name=name)


def _cycle_label(perm) -> str:
    seen, parts = set(), []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = perm[j]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def group_from_permutations(degree: int, generators, cap: int = config.PERM_CLOSURE_CAP, name=None) -> TableGroup:
    """Breadth-first closure of permutation generators.

    A permutation is the image list ``[g(0), ..., g(degree-1)]`` and products
    act left to right: ``(x*y)(i) = y(x(i))``. Elements are numbered in BFS
    order from the identity, trying generators in the given order.
    """
    gens = [tuple(int(i) for i in g) for g in generators]
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise PGTError(f"{list(g)} is not a permutation of 0..{degree - 1}")
    ident = tuple(range(degree))
    index = {ident: 0}
    elems = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(g[i] for i in x)
            if y not in index:
                if len(elems) >= cap:
                    raise CapExceeded(f"closure exceeds {cap} elements")
                index[y] = len(elems)
                elems.append(y)
                queue.append(y)
    n = len(elems)
    arr = np.array(elems, dtype=np.int64).reshape(n, degree)
    T = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        # (x_i * x_j)(k) = x_j(x_i(k))
        prods = arr[:, arr[i]]
        T[i] = [index[tuple(row)] for row in prods]
    labels = [_cycle_label(e) for e in elems]
    return group_from_table(T, labels=labels, name=name)


def group_from_bilinear(p: int, d: int, m: int, B, name=None) -> BilinearGroup:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        raise EvenPrime("p = 2 groups must use the table or permutation model")
    if d + m > config.BILINEAR_RANK_CAP:
        raise CapExceeded(f"d + m = {d + m} exceeds {config.BILINEAR_RANK_CAP}")
    B = np.asarray(B, dtype=np.int64)
    if d == 0 or m == 0:
        B = np.zeros((d, d, m), dtype=np.int64) if B.size == 0 else B
    if B.shape != (d, d, m):
        raise NotAlternating(f"B must have shape {(d, d, m)}, got {B.shape}")
    if ((B < 0) | (B >= p)).any():
        raise NotAlternating(f"entries of B must lie in 0..{p - 1}")
    for i in range(d):
        if B[i, i].any():
            raise NotAlternating(f"B(e{i}, e{i}) = {B[i, i].tolist()} != 0")
        for j in range(i + 1, d):
            if ((B[i, j] + B[j, i]) % p).any():
                raise NotAlternating(f"B(e{i}, e{j}) != -B(e{j}, e{i})")
    return BilinearGroup(p, d, m, B, name=name)


def expand_bilinear_to_table(G: BilinearGroup, cap: int = config.TABLE_CAP) -> TableGroup:
    """Full multiplication table of a bilinear group, same element numbering."""
    if G.order > cap:
        raise CapExceeded(f"order {G.order} exceeds table cap {cap}")
    p, d = G.p, G.d
    C = G.coords(np.arange(G.order))
    V, Z = C[:, :d], C[:, d:]
    T = np.empty((G.order, G.order), dtype=_index_dtype(G.order))
    pv_v = p ** np.arange(G.n_coords - 1, G.m - 1, -1, dtype=np.int64)
    pv_z = p ** np.arange(G.m - 1, -1, -1, dtype=np.int64)
    VB = (V @ G._flat).reshape(V.shape[0], d, G.m)  # row a: j -> B(v_a, e_j)
    for a in range(G.order):
        form = np.einsum("jk,bj->bk", VB[a], V)
        vs = (V[a] + V) % p
        zs = (Z[a] + Z + G.gamma * form) % p
        T[a] = vs @ pv_v + zs @ pv_z
    labels = [G.label(x) for x in range(G.order)]
    return group_from_table(T, labels=labels, name=G.name + "/table")


# ---------------------------------------------------------------------------
# generated subgroups


def subgroup_from_generators(G: FiniteGroup, gens) -> Subgroup:
    gens = [int(g) for g in gens]
    if G.model == "bilinear":
        if not gens:
            return Subgroup(G, space=Subspace.zero(G.p, G.n_coords))
        C = G.coords(np.array(gens))
        V = C[:, : G.d]
        brackets = [
            np.concatenate([np.zeros(G.d, np.int64), G.form(V[i], V[j])])
            for i in range(len(gens))
            for j in range(i + 1, len(gens))
        ]
        rows = np.vstack([C] + brackets) if brackets else C
        # brackets of the spanned vectors are spanned by brackets of generators
        return Subgroup(G, space=Subspace.span(rows, G.p, G.n_coords))
    mask = np.zeros(G.order, dtype=bool)
    mask[G.identity] = True
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(G.table[x, g])
                if not mask[y]:
                    mask[y] = True
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, mask=mask)
