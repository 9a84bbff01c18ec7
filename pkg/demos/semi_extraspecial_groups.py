"""Semi-extraspecial groups and the bounds they satisfy.

The predicate is checked through the commutator form: G is s.e.s. exactly
when every nonzero functional composed with B is nondegenerate.
"""

from pgt import catalog_group, is_semi_extraspecial, is_ultraspecial, ses_certificate

if __name__ == "__main__":
    for name in ("extraspecial-3-2", "heisenberg-3-2", "sfheis-3-3", "gab-3-3", "paperH-3-3"):
        G = catalog_group(name)
        if not is_semi_extraspecial(G):
            print(f"{name}: not semi-extraspecial")
            continue
        c = ses_certificate(G)
        print(f"{name}: ultraspecial={is_ultraspecial(G)} n={c.n_ses} m={c.m} l={c.l} "
              f"a_min={c.a_min_observed} indices={c.maximal_abelian_index_counts} bounds hold={c.holds}")
