"""The built-in catalog of groups and their frozen invariants.

Every expected value was produced by a naive commuting-graph computation
(``tests/oracle.py``) independent of the subspace machinery used here, and is
re-checked against the library on every ``pgt catalog --run-all``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .algebra import ExtField, semifield_from_field
from .centralizers import center, class_size_multiset, parameters
from .constructions import (
    A4,
    D4,
    Q8,
    S3,
    S4,
    example_n4,
    example_n5,
    extraspecial,
    generalized_semifield_group,
    heisenberg,
    paper_H,
    semifield_heisenberg,
)
from .errors import PGTError
from .groups import FiniteGroup
from .maxabelian import enumerate_maximal_abelian
from .ses import is_semi_extraspecial, is_ultraspecial


def _sfheis(p: int, n: int):
    return semifield_heisenberg(semifield_from_field(ExtField(p, n)), name=f"sfheis-{p}-{n}")


def _gab(p: int, n: int):
    return generalized_semifield_group(semifield_from_field(ExtField(p, n)), name=f"gab-{p}-{n}")[0]


# constructor id -> (callable, parameter names)
CONSTRUCTORS = {
    "extraspecial": (lambda p, k: extraspecial(p, k), ("p", "k")),
    "heisenberg": (lambda p, a: heisenberg(p, a), ("p", "a")),
    "paperH": (lambda p, n: paper_H(p, n), ("p", "n")),
    "sfheis": (_sfheis, ("p", "n")),
    "gab": (_gab, ("p", "n")),
    "example-n4": (lambda p=3: example_n4(p), ("p",)),
    "example-n5": (lambda p=3: example_n5(p), ("p",)),
    "D4": (D4, ()),
    "Q8": (Q8, ()),
    "S3": (S3, ()),
    "S4": (S4, ()),
    "A4": (A4, ()),
}


@dataclass
class CatalogEntry:
    name: str
    constructor: str
    params: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)
    # where the expected values come from: "oracle" (naive commuting graph) or
    # "closed-form" (orders forced by the construction)
    source: str = "oracle"

    def build(self) -> FiniteGroup:
        fn, _ = CONSTRUCTORS[self.constructor]
        G = fn(**self.params)
        G.name = self.name
        return G


def _e(order, center_order, max_abelian, params=None, classes=None, ses=None):
    out = {"order": order, "center_order": center_order, "max_abelian_orders": max_abelian}
    if params is not None:
        out["parameters"] = dict(zip(("n_total", "m", "b", "l"), params))
    if classes is not None:
        out["class_sizes"] = classes
    if ses is not None:
        out["semi_extraspecial"], out["ultraspecial"] = ses
    return out


DEFAULT_CATALOG = [
    CatalogEntry("S3", "S3", {}, _e(6, 1, {2: 3, 3: 1}, classes={1: 1, 2: 1, 3: 1})),
    CatalogEntry("S4", "S4", {}, _e(24, 1, {3: 4, 4: 7}, classes={1: 1, 3: 1, 6: 2, 8: 1})),
    CatalogEntry("A4", "A4", {}, _e(12, 1, {3: 4, 4: 1}, classes={1: 1, 3: 1, 4: 2})),
    CatalogEntry("D4", "D4", {}, _e(8, 2, {4: 3}, (2, 1, 1, 1), {1: 2, 2: 3}, (True, True))),
    CatalogEntry("Q8", "Q8", {}, _e(8, 2, {4: 3}, (2, 1, 1, 1), {1: 2, 2: 3}, (True, True))),
    CatalogEntry("extraspecial-3-1", "extraspecial", {"p": 3, "k": 1},
                 _e(27, 3, {9: 4}, (2, 1, 1, 1), {1: 3, 3: 8}, (True, True))),
    CatalogEntry("extraspecial-3-2", "extraspecial", {"p": 3, "k": 2},
                 _e(243, 3, {27: 40}, (4, 1, 1, 1), {1: 3, 3: 80}, (True, False))),
    CatalogEntry("extraspecial-5-1", "extraspecial", {"p": 5, "k": 1},
                 _e(125, 5, {25: 6}, (2, 1, 1, 1), {1: 5, 5: 24}, (True, True))),
    CatalogEntry("heisenberg-3-2", "heisenberg", {"p": 3, "a": 2},
                 _e(729, 9, {81: 10}, (4, 2, 2, 2), {1: 9, 9: 80}, (True, True))),
    CatalogEntry("heisenberg-5-1", "heisenberg", {"p": 5, "a": 1},
                 _e(125, 5, {25: 6}, (2, 1, 1, 1), {1: 5, 5: 24}, (True, True))),
    CatalogEntry("paperH-3-3", "paperH", {"p": 3, "n": 3},
                 _e(729, 81, {243: 4}, (2, 4, 1, 1), {1: 81, 3: 216}, (False, False))),
    CatalogEntry("paperH-3-4", "paperH", {"p": 3, "n": 4},
                 _e(6561, 243, {729: 9, 2187: 1}, (3, 5, 2, 2), ses=(False, False))),
    CatalogEntry("sfheis-3-2", "sfheis", {"p": 3, "n": 2},
                 _e(729, 9, {81: 10}, (4, 2, 2, 2), {1: 9, 9: 80}, (True, True))),
    CatalogEntry("sfheis-3-3", "sfheis", {"p": 3, "n": 3},
                 _e(19683, 27, {729: 28}, (6, 3, 3, 3), ses=(True, True))),
    CatalogEntry("gab-3-3", "gab", {"p": 3, "n": 3},
                 _e(19683, 27, {243: 351, 729: 1}, (6, 3, 3, 3), ses=(True, True))),
    CatalogEntry("example-n4", "example-n4", {"p": 3},
                 _e(2187, 81, {243: 13}, (3, 4, 2, 1), ses=(False, False))),
    CatalogEntry("example-n5", "example-n5", {"p": 3},
                 _e(59049, 729, {2187: 40}, (4, 6, 3, 1), ses=(False, False))),
]

CATALOG = {e.name: e for e in DEFAULT_CATALOG}


def catalog_group(name: str) -> FiniteGroup:
    """Build a catalog group, or any ``<constructor>-<params...>`` name like ``heisenberg-5-2``."""
    if name in CATALOG:
        return CATALOG[name].build()
    for cid, (fn, pnames) in CONSTRUCTORS.items():
        if name.startswith(cid + "-") and pnames:
            parts = name[len(cid) + 1 :].split("-")
            if len(parts) == len(pnames) and all(x.isdigit() for x in parts):
                G = fn(**{k: int(v) for k, v in zip(pnames, parts)})
                G.name = name
                return G
    raise PGTError(f"unknown catalog group {name!r}")


def measure(G: FiniteGroup, keys) -> dict:
    """Library-side values for the given expected keys."""
    out = {}
    for key in keys:
        if key == "order":
            out[key] = G.order
        elif key == "center_order":
            out[key] = center(G).order
        elif key == "max_abelian_orders":
            out[key] = dict(sorted(Counter(A.order for A in enumerate_maximal_abelian(G)).items()))
        elif key == "parameters":
            P = parameters(G)
            out[key] = {"n_total": P.n_total, "m": P.m, "b": P.b, "l": P.l}
        elif key == "class_sizes":
            out[key] = class_size_multiset(G)
        elif key == "semi_extraspecial":
            out[key] = is_semi_extraspecial(G)
        elif key == "ultraspecial":
            out[key] = is_ultraspecial(G)
    return out


def check_entry(entry: CatalogEntry, G: FiniteGroup | None = None) -> list[dict]:
    """Mismatches between an entry's expected values and the measured ones."""
    G = G or entry.build()
    got = measure(G, entry.expected)
    return [
        {"group": entry.name, "field": k, "expected": entry.expected[k], "measured": got[k]}
        for k in entry.expected
        if got[k] != entry.expected[k]
    ]
