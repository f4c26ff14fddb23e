"""Brute-force reference implementations used to cross-check the package.

These avoid the package's fast paths on purpose: field products go through
raw polynomial arithmetic, spanning is decided by incidence alone, and
graph parameters are computed by enumerating every vertex subset.
"""

from __future__ import annotations

import itertools

from blocksmith.field import FieldSpec, GF


def poly_mul(spec: FieldSpec, a: int, b: int) -> int:
    """Product in GF(p^m) by schoolbook multiplication mod the defining polynomial."""
    p, m = spec.p, spec.m
    da = [(a // p**i) % p for i in range(m)]
    db = [(b // p**i) % p for i in range(m)]
    prod = [0] * (2 * m - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    mod = list(spec.modulus)  # monic, constant term first, length m + 1
    for deg in range(len(prod) - 1, m - 1, -1):
        c = prod[deg]
        if c:
            for i in range(m + 1):
                prod[deg - m + i] = (prod[deg - m + i] - c * mod[i]) % p
    return sum(c * p**i for i, c in enumerate(prod[:m]))


def poly_add(spec: FieldSpec, a: int, b: int) -> int:
    p, m = spec.p, spec.m
    return sum((((a // p**i) + (b // p**i)) % p) * p**i for i in range(m))


def dot(F: GF, u, v) -> int:
    acc = 0
    for x, y in zip(u, v):
        acc = F.add(acc, F.mul(x, y))
    return acc


def all_points(k: int, F: GF) -> list[tuple[int, ...]]:
    pts = []
    for v in itertools.product(range(F.q), repeat=k):
        lead = next((c for c in v if c), None)
        if lead == 1:
            pts.append(v)
    return pts


def hyperplane_sets(k: int, F: GF) -> list[frozenset]:
    pts = all_points(k, F)
    return [frozenset(P for P in pts if dot(F, u, P) == 0) for u in pts]


def strong_blocking_oracle(points, k: int, F: GF) -> bool:
    """B meets H in a spanning set iff B n H lies in no other hyperplane."""
    B = set(map(tuple, points))
    hyps = hyperplane_sets(k, F)
    for H in hyps:
        meet = B & H
        for H2 in hyps:
            if H2 is not H and meet <= H2:
                return False
    return True


def avoidance_oracle(lines, k: int, F: GF) -> bool:
    """No codim-2 space (an intersection of two hyperplanes) meets every line."""
    hyps = hyperplane_sets(k, F)
    line_sets = [set(map(tuple, ln)) for ln in lines]
    seen = set()
    for H1, H2 in itertools.combinations(hyps, 2):
        W = H1 & H2
        if W in seen:
            continue
        seen.add(W)
        if all(ln & W for ln in line_sets):
            return False
    return True


def codewords(F: GF, rows) -> list[tuple[int, ...]]:
    k, n = len(rows), len(rows[0])
    out = []
    for msg in itertools.product(range(F.q), repeat=k):
        if any(msg):
            out.append(tuple(dot(F, msg, [rows[i][j] for i in range(k)]) for j in range(n)))
    return out


def min_distance_oracle(F: GF, rows) -> int:
    return min(sum(1 for c in w if c) for w in codewords(F, rows))


def minimal_code_oracle(F: GF, rows) -> bool:
    supports = {frozenset(i for i, c in enumerate(w) if c) for w in codewords(F, rows)}
    return not any(a < b for a in supports for b in supports)


def components(n: int, edges, removed: set) -> list[set]:
    adj = {v: set() for v in range(n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    left = set(range(n)) - removed
    comps = []
    while left:
        stack = [left.pop()]
        comp = set(stack)
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w in left:
                    left.discard(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def integrity_oracle(n: int, edges) -> int:
    best = n
    for r in range(n + 1):
        for S in itertools.combinations(range(n), r):
            comps = components(n, edges, set(S))
            best = min(best, r + max((len(c) for c in comps), default=0))
    return best


def z_oracle(n: int, edges) -> int:
    nbr = {v: {v} for v in range(n)}
    for a, b in edges:
        nbr[a].add(b)
        nbr[b].add(a)
    best = 0
    for mask in range(1, 1 << n):
        A = [v for v in range(n) if mask >> v & 1]
        closed = set().union(*(nbr[a] for a in A))
        best = max(best, min(len(A), n - len(closed)))
    return best


def on_subline_oracle(Fbig: GF, q_small: int, A, B, C, D) -> bool:
    """D lies on the GF(q)-subline through A, B, C (Frobenius test on parameters).

    Writing X = alpha A + beta B, the parameter of X is beta / alpha. The
    subline through A (0), B (inf) and C (c) is {t c : t in GF(q)} u {inf}.
    """

    def param(X):
        for i, j in itertools.combinations(range(len(A)), 2):
            det = Fbig.sub(Fbig.mul(A[i], B[j]), Fbig.mul(A[j], B[i]))
            if det:
                al = Fbig.div(Fbig.sub(Fbig.mul(X[i], B[j]), Fbig.mul(X[j], B[i])), det)
                be = Fbig.div(Fbig.sub(Fbig.mul(A[i], X[j]), Fbig.mul(A[j], X[i])), det)
                return None if al == 0 else Fbig.div(be, al)
        raise ValueError("A and B coincide")

    c, d = param(C), param(D)
    if d is None:
        return True
    t = Fbig.div(d, c)
    return Fbig.pow(t, q_small) == t
