"""Centers of centralizers in small groups.

For a noncentral g, Z(g) is the center of C_G(g). This walks D4, Q8 and
the extraspecial group of order 27, printing each distinct Z(g) and the
group parameters derived from them.
"""

from pgt import D4, Q8, center, center_family, centralizer, extraspecial, parameters


def show(G):
    Z = center(G)
    print(f"{G.name}: |G| = {G.order}, |Z(G)| = {Z.order}")
    fam = center_family(G)
    for g, S in fam.entries:
        print(f"  g = {G.label(g):>12}  |C_G(g)| = {centralizer(G, g).order:>3}  |Z(g)| = {S.order}")
    P = parameters(G)
    print(f"  n_total={P.n_total} m={P.m} b={P.b} l={P.l}\n")


if __name__ == "__main__":
    for G in (D4(), Q8(), extraspecial(3, 1)):
        show(G)
