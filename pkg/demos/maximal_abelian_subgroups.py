"""Maximal abelian subgroups, found two ways.

In the bilinear model a maximal abelian subgroup is a maximal isotropic
subspace of G/Z(G) (plus the centre). The table model finds the same
subgroups by brute force, which makes a handy cross-check.
"""

from collections import Counter

from pgt import enumerate_maximal_abelian, expand_bilinear_to_table, heisenberg, paper_H


def orders(G):
    return dict(sorted(Counter(A.order for A in enumerate_maximal_abelian(G)).items()))


if __name__ == "__main__":
    for G in (heisenberg(3, 2), paper_H(3, 3)):
        T = expand_bilinear_to_table(G)
        a = sorted(tuple(A.elements()) for A in enumerate_maximal_abelian(G))
        b = sorted(tuple(A.elements()) for A in enumerate_maximal_abelian(T))
        print(f"{G.name}: orders {orders(G)}; table model agrees: {a == b}")

    H = paper_H(3, 4)
    print(f"{H.name}: orders {orders(H)} (two different sizes)")
