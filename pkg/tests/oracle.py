"""Naive reference computations used to freeze and re-check expected values.

Nothing here uses the library's subspace machinery: groups are turned into
a raw commuting relation (on elements for tables, on ``v`` vectors for the
bilinear model, where every centralizer contains all central coordinates)
and everything is read off with plain set operations and networkx cliques.
"""

from collections import Counter
from itertools import product

import networkx as nx
import numpy as np


def _v_commuting(G):
    p, d = G.p, G.d
    V = np.array(list(product(range(p), repeat=d)), dtype=np.int64).reshape(-1, d)
    vals = np.einsum("ai,bj,ijl->abl", V, V, G.B) % p
    return V, ~vals.any(axis=2)


def _table_commuting(G):
    T = np.asarray(G.table, dtype=np.int64)
    return T == T.T


class Oracle:
    """Commuting-graph view of a group: ``points`` with weight ``mult`` each."""

    def __init__(self, G):
        self.G = G
        if G.model == "bilinear":
            self.V, self.comm = _v_commuting(G)
            self.mult = G.p**G.m
        else:
            self.comm = _table_commuting(G)
            self.mult = 1
        n = self.comm.shape[0]
        self.central = self.comm.all(axis=1)
        self.cent = [frozenset(np.flatnonzero(self.comm[i])) for i in range(n)]

    def center_order(self):
        return int(self.central.sum()) * self.mult

    def zentrum(self, i):
        C = sorted(self.cent[i])
        return frozenset(j for j in C if self.comm[j, C].all())

    def maximal_abelian(self):
        """Maximal cliques of the commuting graph, central points added back."""
        n = self.comm.shape[0]
        nc = [i for i in range(n) if not self.central[i]]
        cen = [i for i in range(n) if self.central[i]]
        g = nx.Graph()
        g.add_nodes_from(nc)
        sub = self.comm[np.ix_(nc, nc)]
        for a, b in zip(*np.nonzero(np.triu(sub, 1))):
            g.add_edge(nc[a], nc[b])
        if not nc:
            return [frozenset(range(n))]
        return sorted(frozenset(c) | frozenset(cen) for c in nx.find_cliques(g))

    def maximal_abelian_orders(self):
        return dict(sorted(Counter(len(c) * self.mult for c in self.maximal_abelian()).items()))

    def parameters(self):
        """``(n_total, m, b, l)`` from raw sets, for p-groups."""
        p = self.G.prime_power[0]
        order = self.G.order
        zc = self.center_order()

        def lg(x):
            e = 0
            while x > 1:
                x //= p
                e += 1
            return e

        b = l = 0
        for i in np.flatnonzero(~self.central):
            b = max(b, lg(order // (len(self.cent[i]) * self.mult)))
            l = max(l, lg(len(self.zentrum(i)) * self.mult // zc))
        return lg(order // zc), lg(zc), b, l

    def class_sizes(self):
        """``{size: number of classes}`` via ``|cl(g)| = |G:C(g)|``."""
        order = self.G.order
        counts = Counter()
        for i in range(self.comm.shape[0]):
            size = order // (len(self.cent[i]) * self.mult)
            counts[size] += self.mult
        return {s: c // s for s, c in sorted(counts.items())}
