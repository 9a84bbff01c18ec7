"""Evidence on two dichotomies for element centers in s.e.s. groups.

Property (1): for each Z(a) and each product P of element centers, either
Z(a) <= P or Z(a) meets P only in G'. Property (2) does the same with
centres of intersections of centralizers. Small groups are searched
exhaustively; gab-3-3 is sampled with a fixed seed.
"""

import json

from pgt import catalog_group, open_question_check

if __name__ == "__main__":
    for name in ("extraspecial-3-2", "heisenberg-3-2", "sfheis-3-2", "gab-3-3"):
        r = open_question_check(catalog_group(name), max_tuples=20000)
        doc = r.to_json()
        print(f"{name}: exhaustive={r.exhaustive} (1) {r.property1['status']} (2) {r.property2['status']}"
              f"  bound: {r.conjectured_bound['status']}")
        if "witness" in r.property1:
            print("  witness for (1):", json.dumps(r.property1["witness"]))
