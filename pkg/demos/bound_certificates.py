"""Greedy witnesses for a(b + l) >= n.

For each maximal abelian A the certificate picks g_1, g_2, ... as the least
element of A outside the running product Z(g_1)...Z(g_{i-1}) and stops when
the product reaches A. The number of steps t never exceeds a = log_p |A:Z(G)|.
"""

from pgt import bound_certificate, catalog_group, enumerate_maximal_abelian

if __name__ == "__main__":
    for name in ("D4", "heisenberg-3-2", "paperH-3-4", "example-n4"):
        G = catalog_group(name)
        print(name)
        for A in enumerate_maximal_abelian(G)[:3]:
            c = bound_certificate(G, A)
            print(f"  |A| = {c.A_order:>5}  a={c.a} b={c.b} l={c.l} n={c.n_total} t={c.t}"
                  f"  a(b+l)={c.a * (c.b + c.l)} >= {c.n_total}: {c.holds}  chain={c.product_chain}")
