"""An ultraspecial group with maximal abelian subgroups of two sizes.

Built from GF(27) and the group H on n - 1 + n + 1 generators: the centralizer
of (0, 1) reproduces H, whose C_H(b) lifts to a maximal abelian subgroup of
order p^(n+2), while {(u, 0)} x Z has order p^(2n).
"""

import time
from collections import Counter

from pgt import ExtField, enumerate_maximal_abelian, generalized_semifield_group, semifield_from_field

if __name__ == "__main__":
    t = time.perf_counter()
    G, ver = generalized_semifield_group(semifield_from_field(ExtField(3, 3)))
    print(f"{G.name}: |G| = 3^9, ultraspecial = {ver.ultraspecial}, C_G((0,1)) matches H = {ver.centralizer_matches_H}")
    print(f"  witness of order 3^5 (v-basis): {ver.witness_p_n_plus_2}")
    print(f"  witness of order 3^6 (v-basis): {ver.witness_p_2n}")
    counts = Counter(A.order for A in enumerate_maximal_abelian(G))
    print(f"  all maximal abelian subgroups: {dict(sorted(counts.items()))}  ({time.perf_counter() - t:.1f}s)")
