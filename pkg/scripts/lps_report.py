#!/usr/bin/env python3
"""Build an LPS Cayley graph and summarize its spectrum.

Reports the group, size, bipartiteness, both the strict and nontrivial
second eigenvalue, the Ramanujan margin, and the ratio to the
Alon-Boppana value 2 sqrt(d-1).
"""

import argparse
import json
import math
import sys

from blocksmith.graphs import is_ramanujan, lps_graph, spectrum


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("p", type=int, nargs="?", default=5)
    ap.add_argument("r", type=int, nargs="?", default=13)
    args = ap.parse_args()
    G, info = lps_graph(args.p, args.r, with_info=True)
    rep = spectrum(G)
    d = G.regular_degree()
    ab = 2 * math.sqrt(d - 1)
    out = {
        "p": info.p, "r": info.r, "legendre": info.legendre, "group": info.group,
        "vertices": G.n, "degree": d, "connected": G.is_connected(),
        "bipartite": rep.eigenvalues[-1] <= -d + 1e-6,
        "lambda_strict": rep.lam, "lambda_nontrivial": rep.lam_nontrivial,
        "ramanujan": is_ramanujan(G, rep), "alon_boppana": ab,
        "ratio": rep.lam_nontrivial / ab,
    }
    print(json.dumps(out, indent=1))
    return 0


if __name__ == "__main__":
    sys.exit(main())
