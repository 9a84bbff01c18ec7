"""Exact arithmetic over GF(p), its extensions, semifields and subspaces.

Vectors over GF(p) are numpy ``int64`` arrays with entries in ``0..p-1``.
Whenever vectors are put in order, the order is lexicographic with the first
coordinate most significant; :func:`encode` maps a vector to its rank in that
order, and :func:`decode` inverts it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import config
from .errors import (
    DimensionMismatch,
    NotIrreducible,
    NotPrime,
    PGTError,
    SizeCapExceeded,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(n: int):
    """Return ``(p, e)`` with ``n == p**e``, or ``None``. ``1`` is not a prime power."""
    if n < 2:
        return None
    p = 2
    while p * p <= n and n % p:
        p += 1
    if n % p:
        p = n
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return (p, e) if n == 1 else None


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(x, -1, self.p)

    @property
    def half(self) -> int:
        """The inverse of 2; only meaningful for odd p."""
        return self.inv(2)


# ---------------------------------------------------------------------------
# vector encoding


def place_values(p: int, n: int) -> np.ndarray:
    return p ** np.arange(n - 1, -1, -1, dtype=np.int64)


def encode(vectors, p: int) -> np.ndarray | int:
    v = np.asarray(vectors, dtype=np.int64)
    pv = place_values(p, v.shape[-1])
    out = v @ pv
    return int(out) if v.ndim == 1 else out


def decode(codes, p: int, n: int) -> np.ndarray:
    c = np.asarray(codes, dtype=np.int64)
    return (c[..., None] // place_values(p, n)) % p


def all_vectors(p: int, n: int) -> np.ndarray:
    """All of GF(p)^n in lex order, shape ``(p**n, n)``."""
    return decode(np.arange(p**n, dtype=np.int64), p, n)


def normalize(v: np.ndarray, p: int) -> np.ndarray:
    """Scale a nonzero vector so that its first nonzero entry is 1."""
    nz = np.flatnonzero(v)
    if nz.size == 0:
        return v
    return (v * pow(int(v[nz[0]]), -1, p)) % p


# ---------------------------------------------------------------------------
# row reduction


def rref(M, p: int):
    """Reduced row echelon form over GF(p).

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows.
    """
    A = np.array(M, dtype=np.int64) % p
    if A.ndim != 2:
        raise DimensionMismatch("rref expects a 2-d array")
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], tuple(pivots)


def rank(M, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def batch_rank(M, p: int) -> np.ndarray:
    """Ranks of a stack of matrices ``M[k]`` over GF(p), eliminated in lockstep."""
    M = np.array(M, dtype=np.int64) % p
    N, r, c = M.shape
    rk = np.zeros(N, dtype=np.int64)
    rows = np.arange(r)
    inv = np.array([0] + [pow(x, -1, p) for x in range(1, p)], dtype=np.int64)
    at = np.arange(N)
    for j in range(c):
        cand = (M[:, :, j] != 0) & (rows[None, :] >= rk[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        k = at[has]
        piv = cand[k].argmax(axis=1)
        tgt = rk[k]
        tgt_ok = tgt < r
        k, piv, tgt = k[tgt_ok], piv[tgt_ok], tgt[tgt_ok]
        prow = M[k, piv].copy()
        M[k, piv] = M[k, tgt]
        prow = prow * inv[prow[:, j]][:, None] % p
        M[k, tgt] = prow
        factors = M[k, :, j].copy()
        factors[np.arange(k.size), tgt] = 0
        M[k] = (M[k] - factors[:, :, None] * prow[:, None, :]) % p
        rk[k] += 1
    return rk


def rank_and_kernel(M, p: int, ncols: int | None = None):
    """Rank of ``M`` and its right kernel ``{v : M v = 0}`` as a :class:`Subspace`."""
    M = np.asarray(M, dtype=np.int64)
    if M.ndim != 2 or M.shape[0] == 0:
        n = ncols if ncols is not None else (M.shape[1] if M.ndim == 2 else 0)
        return 0, Subspace.full(p, n)
    n = M.shape[1]
    R, piv = rref(M, p)
    free = [c for c in range(n) if c not in piv]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, c in enumerate(piv):
            basis[i, c] = (-R[r, f]) % p
    return len(piv), Subspace.span(basis, p, n)


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A subspace of GF(p)^n held as its reduced row echelon basis.

    The basis is canonical, so two spans of the same vectors compare equal
    and hash alike.
    """

    __slots__ = ("p", "ambient_dim", "basis", "pivots", "_key")

    def __init__(self, p: int, ambient_dim: int, basis: np.ndarray, pivots: tuple):
        self.p = p
        self.ambient_dim = ambient_dim
        basis = np.ascontiguousarray(basis, dtype=np.int64).reshape(len(pivots), ambient_dim)
        basis.setflags(write=False)
        self.basis = basis
        self.pivots = pivots
        self._key = (p, ambient_dim, basis.tobytes())

    @classmethod
    def span(cls, vectors, p: int, n: int) -> "Subspace":
        V = np.asarray(vectors, dtype=np.int64)
        if V.size == 0 or n == 0:
            return cls.zero(p, n)
        V = V.reshape(-1, n)
        if V.shape[0] == 0:
            return cls.zero(p, n)
        R, piv = rref(V, p)
        return cls(p, n, R, piv)

    @classmethod
    def zero(cls, p: int, n: int) -> "Subspace":
        return cls(p, n, np.zeros((0, n), dtype=np.int64), ())

    @classmethod
    def full(cls, p: int, n: int) -> "Subspace":
        return cls(p, n, np.eye(n, dtype=np.int64), tuple(range(n)))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def size(self) -> int:
        return self.p**self.dim

    def __eq__(self, other):
        return isinstance(other, Subspace) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Subspace(p={self.p}, n={self.ambient_dim}, basis={self.basis.tolist()})"

    def _check(self, other: "Subspace"):
        if other.p != self.p or other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch(
                f"GF({self.p})^{self.ambient_dim} vs GF({other.p})^{other.ambient_dim}"
            )

    def reduce(self, v) -> np.ndarray:
        """Reduce ``v`` modulo this subspace (zero iff ``v`` lies in it)."""
        v = np.array(v, dtype=np.int64) % self.p
        for row, c in zip(self.basis, self.pivots):
            if v[..., c].any() if v.ndim > 1 else v[c]:
                if v.ndim == 1:
                    v = (v - v[c] * row) % self.p
                else:
                    v = (v - np.outer(v[:, c], row)) % self.p
        return v

    def contains_vector(self, v) -> bool:
        return not self.reduce(v).any()

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        if other.dim > self.dim:
            return False
        if other.dim == 0:
            return True
        return not self.reduce(other.basis).any()

    __ge__ = contains

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(np.vstack([self.basis, other.basis]), self.p, self.ambient_dim)

    def add_vectors(self, vectors) -> "Subspace":
        V = np.asarray(vectors, dtype=np.int64).reshape(-1, self.ambient_dim)
        return Subspace.span(np.vstack([self.basis, V]), self.p, self.ambient_dim)

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.p, self.ambient_dim)
        if self.contains(other):
            return other
        if other.contains(self):
            return self
        # (x, y) with x U = y W
        M = np.vstack([self.basis, (-other.basis) % self.p]).T
        _, K = rank_and_kernel(M, self.p)
        coeffs = K.basis[:, : self.dim]
        return Subspace.span(coeffs @ self.basis, self.p, self.ambient_dim)

    __and__ = intersection

    def enumerate_vectors(self) -> np.ndarray:
        """All ``p**dim`` vectors of the subspace in lex order."""
        coeffs = all_vectors(self.p, self.dim)
        vecs = (coeffs @ self.basis) % self.p if self.dim else np.zeros((1, self.ambient_dim), np.int64)
        codes = encode(vecs, self.p)
        return vecs[np.argsort(codes, kind="stable")]

    def codes(self) -> np.ndarray:
        """Sorted integer codes of all vectors."""
        coeffs = all_vectors(self.p, self.dim)
        vecs = (coeffs @ self.basis) % self.p if self.dim else np.zeros((1, self.ambient_dim), np.int64)
        return np.sort(encode(vecs, self.p))

    def complement_coordinates(self) -> list[int]:
        return [c for c in range(self.ambient_dim) if c not in self.pivots]


class SubspaceOps(NamedTuple):
    sum: Subspace
    intersection: Subspace
    contains: bool


def subspace_ops(U: Subspace, W: Subspace) -> SubspaceOps:
    """Sum, intersection and containment (``W <= U``) in one call."""
    U._check(W)
    return SubspaceOps(U + W, U.intersection(W), U.contains(W))


# ---------------------------------------------------------------------------
# polynomials over GF(p): coefficient lists, lowest degree first


def _trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_mod(f, g, p: int):
    f = [c % p for c in f]
    g = _trim([c % p for c in g])
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(g[-1], -1, p)
    f = _trim(f)
    while len(f) >= len(g):
        q = (f[-1] * inv) % p
        shift = len(f) - len(g)
        for i, c in enumerate(g):
            f[shift + i] = (f[shift + i] - q * c) % p
        f = _trim(f)
    return f


def monic_polys(p: int, degree: int):
    for tail in itertools.product(range(p), repeat=degree):
        yield list(tail) + [1]


def is_irreducible(f, p: int) -> bool:
    """Trial division by every monic polynomial of degree at most half of ``deg f``."""
    f = _trim([c % p for c in f])
    deg = len(f) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for g in monic_polys(p, d):
            if not poly_mod(f, g, p):
                return False
    return True


def default_irreducible(p: int, a: int):
    """First monic irreducible of degree ``a``, constant term running slowest.

    For ``(3, 2)`` this is ``x^2 + 1``; for ``(3, 3)`` it is ``x^3 + 2x + 1``.
    """
    for tail in itertools.product(range(p), repeat=a):
        cand = [tail[0]] + list(reversed(tail[1:])) + [1]
        if cand[0] and is_irreducible(cand, p):
            return cand
    raise NotIrreducible(f"no irreducible of degree {a} over GF({p})")


class ExtField:
    """GF(p^a) as GF(p)[x]/(f), elements as coefficient vectors (lowest first)."""

    def __init__(self, p: int, a: int, reduction_poly=None):
        PrimeField(p)
        if not 1 <= a <= config.EXT_DEGREE_CAP:
            raise SizeCapExceeded(f"extension degree {a} outside 1..{config.EXT_DEGREE_CAP}")
        if p**a > config.FIELD_ORDER_CAP:
            raise SizeCapExceeded(f"field order {p}^{a} exceeds {config.FIELD_ORDER_CAP}")
        if reduction_poly is None:
            reduction_poly = default_irreducible(p, a) if a > 1 else [0, 1]
        f = [int(c) % p for c in reduction_poly]
        if len(_trim(f)) != a + 1 or f[a] != 1:
            raise NotIrreducible(f"reduction polynomial must be monic of degree {a}: {reduction_poly}")
        if not is_irreducible(f, p):
            raise NotIrreducible(f"{reduction_poly} is reducible over GF({p})")
        self.p = p
        self.a = a
        self.reduction_poly = tuple(f)
        self.order = p**a
        # x^k mod f for k < 2a - 1
        powers = []
        for k in range(2 * a - 1):
            r = poly_mod([0] * k + [1], f, p)
            powers.append(r + [0] * (a - len(r)))
        self._powers = np.array(powers, dtype=np.int64)
        mc = np.zeros((a, a, a), dtype=np.int64)
        for i in range(a):
            for j in range(a):
                mc[i, j] = self._powers[i + j]
        mc.setflags(write=False)
        self.mul_constants = mc
        if self.order <= config.FIELD_AXIOM_CHECK_CAP:
            self._check_inverses()

    def __repr__(self):
        return f"ExtField(p={self.p}, a={self.a}, reduction_poly={list(self.reduction_poly)})"

    @property
    def one(self) -> np.ndarray:
        e = np.zeros(self.a, dtype=np.int64)
        e[0] = 1
        return e

    def mul(self, x, y) -> np.ndarray:
        return np.einsum("...i,...j,ijk->...k", np.asarray(x), np.asarray(y), self.mul_constants) % self.p

    def add(self, x, y) -> np.ndarray:
        return (np.asarray(x) + np.asarray(y)) % self.p

    def elements(self) -> np.ndarray:
        return all_vectors(self.p, self.a)

    def inv(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64) % self.p
        if not x.any():
            raise ZeroDivisionError("0 has no inverse")
        result, base, e = self.one, x, self.order - 2
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def _check_inverses(self):
        els = self.elements()[1:]
        prods = np.einsum("ai,bj,ijk->abk", els, els, self.mul_constants) % self.p
        is_one = (prods == self.one).all(axis=2)
        if not is_one.any(axis=1).all():
            raise NotIrreducible("some nonzero element has no inverse")


# ---------------------------------------------------------------------------
# semifields


class Semifield:
    """Multiplication on GF(p)^n given by structure constants.

    ``mul_constants[i, j]`` is the vector ``e_i * e_j``. Construction only
    checks shape and range; :func:`semifield_validate` runs the exhaustive
    checks and :meth:`validated` raises if they fail.
    """

    def __init__(self, p: int, n: int, mul_constants):
        PrimeField(p)
        mc = np.array(mul_constants, dtype=np.int64)
        if mc.shape != (n, n, n):
            raise DimensionMismatch(f"structure constants must have shape {(n, n, n)}, got {mc.shape}")
        if (mc < 0).any() or (mc >= p).any():
            raise PGTError(f"structure constants must lie in 0..{p - 1}")
        mc.setflags(write=False)
        self.p = p
        self.n = n
        self.mul_constants = mc

    def __repr__(self):
        return f"Semifield(p={self.p}, n={self.n})"

    def __eq__(self, other):
        return (
            isinstance(other, Semifield)
            and (self.p, self.n) == (other.p, other.n)
            and np.array_equal(self.mul_constants, other.mul_constants)
        )

    def __hash__(self):
        return hash((self.p, self.n, self.mul_constants.tobytes()))

    @property
    def order(self) -> int:
        return self.p**self.n

    def mul(self, x, y) -> np.ndarray:
        return np.einsum("...i,...j,ijk->...k", np.asarray(x), np.asarray(y), self.mul_constants) % self.p

    def left_matrix(self, x) -> np.ndarray:
        """Matrix ``L`` with ``y @ L == x * y``."""
        return np.einsum("i,ijk->jk", np.asarray(x), self.mul_constants) % self.p

    def identity(self):
        """The two-sided identity as a vector, or ``None``."""
        rep = semifield_validate(self, identity_only=True)
        return rep.identity

    def validated(self) -> "Semifield":
        rep = semifield_validate(self)
        if not rep.passed:
            raise PGTError(f"not a semifield: {rep.reason}")
        return self

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "mul": self.mul_constants.tolist()}

    @classmethod
    def from_json(cls, doc: dict) -> "Semifield":
        return cls(int(doc["p"]), int(doc["n"]), doc["mul"])


@dataclass
class ValidationReport:
    passed: bool
    identity: np.ndarray | None
    zero_divisor_count: int
    zero_divisors: list = field(default_factory=list)
    reason: str = ""


def semifield_from_field(F: ExtField) -> Semifield:
    return Semifield(F.p, F.a, F.mul_constants)


def semifield_validate(S: Semifield, identity_only: bool = False, max_witnesses: int = 10) -> ValidationReport:
    """Exhaustive identity search and zero-divisor sweep."""
    if S.order > config.SEMIFIELD_CHECK_CAP:
        raise SizeCapExceeded(f"semifield of order {S.order} exceeds {config.SEMIFIELD_CHECK_CAP}")
    p, n, mc = S.p, S.n, S.mul_constants
    els = all_vectors(p, n)
    eye = np.eye(n, dtype=np.int64)

    # e is a two-sided identity iff its left and right multiplication matrices are I
    left = np.einsum("ai,ijk->ajk", els, mc) % p
    right = np.einsum("ai,jik->ajk", els, mc) % p
    ok = (left == eye).all(axis=(1, 2)) & (right == eye).all(axis=(1, 2))
    hits = np.flatnonzero(ok)
    identity = els[hits[0]].copy() if hits.size else None
    if identity_only:
        return ValidationReport(identity is not None, identity, 0)

    witnesses = []
    count = 0
    # basis pairs first so a degenerate table reports the smallest-index witness
    for i in range(n):
        for j in range(n):
            if not mc[i, j].any():
                witnesses.append((eye[i], eye[j]))
    witnesses = witnesses[:max_witnesses]
    nonzero = els[1:]
    # x * y == 0 iff y @ L_x == 0; L_x singular <=> zero divisor on the left
    for start in range(0, nonzero.shape[0], 256):
        chunk = left[1:][start : start + 256]
        prods = np.einsum("bj,ajk->abk", nonzero, chunk) % p
        zero = ~prods.any(axis=2)
        count += int(zero.sum())
        if len(witnesses) < max_witnesses and zero.any():
            for a, b in zip(*np.nonzero(zero)):
                pair = (nonzero[start + a], nonzero[b])
                if not any(np.array_equal(pair[0], w[0]) and np.array_equal(pair[1], w[1]) for w in witnesses):
                    witnesses.append(pair)
                if len(witnesses) >= max_witnesses:
                    break
    reasons = []
    if identity is None:
        reasons.append("no two-sided identity")
    if count:
        reasons.append(f"{count} zero-divisor pairs")
    return ValidationReport(not reasons, identity, count, witnesses, "; ".join(reasons))
