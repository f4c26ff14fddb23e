"""Vertex integrity and the bi-independent pair parameter z(G).

Both quantities are computed exactly by branch and bound over vertex
bitmasks, and each result carries a witness that can be re-checked
independently of the search that produced it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .errors import DegenerateSpectrum, TooLarge
from .graphs import Graph, gnp_sample

INTEGRITY_MAX_N = 25
Z_MAX_N = 30


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def kappa(G: Graph, removed=()) -> int:
    """Largest component size of G minus the given vertices."""
    comps = G.components(_mask(removed))
    return max((len(c) for c in comps), default=0)


@dataclass(frozen=True)
class IntegrityCertificate:
    value: int
    witness_set: tuple[int, ...]
    kappa: int

    def verify(self, G: Graph) -> bool:
        return kappa(G, self.witness_set) == self.kappa and self.value == len(self.witness_set) + self.kappa

    def to_json(self) -> dict:
        return {"value": self.value, "witness_set": list(self.witness_set), "kappa": self.kappa}


@dataclass(frozen=True)
class ZCertificate:
    value: int
    A: tuple[int, ...]
    B: tuple[int, ...]

    def verify(self, G: Graph) -> bool:
        A, B = set(self.A), set(self.B)
        if len(A) != self.value or len(B) != self.value or A & B:
            return False
        return all(v not in B for a in A for v in G.adj[a])

    def to_json(self) -> dict:
        return {"value": self.value, "A": list(self.A), "B": list(self.B)}


# -- integrity -----------------------------------------------------------------

def _connected_chunk(G: Graph, start: int, allowed: int, size: int) -> int:
    """BFS from ``start`` inside ``allowed``; mask of the first ``size`` vertices reached."""
    got = 1 << start
    count = 1
    queue = [start]
    i = 0
    while i < len(queue) and count < size:
        u = queue[i]
        i += 1
        for v in G.adj[u]:
            if allowed >> v & 1 and not got >> v & 1:
                got |= 1 << v
                count += 1
                queue.append(v)
                if count == size:
                    break
    return got


def _packing_bound(G: Graph, alive: int, size: int) -> int:
    """Greedy count of disjoint connected vertex sets of the given size in ``alive``."""
    count = 0
    free = alive
    for v in range(G.n):
        if free >> v & 1:
            chunk = _connected_chunk(G, v, free, size)
            if chunk.bit_count() == size:
                count += 1
                free &= ~chunk
            else:
                free &= ~chunk
    return count


def _cover_components(G: Graph, k: int, budget: int, full: int) -> int | None:
    """Smallest vertex set whose removal leaves components of size <= k, if of size <= budget.

    Iterative deepening over the removal size; within one depth the search
    branches on the vertices of a connected (k+1)-set, one of which must go.
    """

    def search(removed: int, left: int, kept: int) -> int | None:
        alive = full & ~removed
        # locate a component larger than k, lowest start vertex first
        seen = 0
        target = None
        for s in range(G.n):
            if not alive >> s & 1 or seen >> s & 1:
                continue
            comp = _connected_chunk(G, s, alive, G.n)
            seen |= comp
            if comp.bit_count() > k:
                target = s
                break
        if target is None:
            return removed
        if left == 0 or _packing_bound(G, alive, k + 1) > left:
            return None
        T = _bits(_connected_chunk(G, target, alive, k + 1))
        # branch i removes T[i] and keeps T[:i], so each removal set is visited once
        for i, v in enumerate(T):
            if kept >> v & 1:
                continue
            res = search(removed | (1 << v), left - 1, kept | _mask(T[:i]))
            if res is not None:
                return res
        return None

    for size in range(budget + 1):
        res = search(0, size, 0)
        if res is not None:
            return res
    return None


def integrity_exact(G: Graph, max_n: int = INTEGRITY_MAX_N) -> IntegrityCertificate:
    """Exact integrity min_S (|S| + kappa(G - S)) with a witness set."""
    if G.n > max_n:
        raise TooLarge(f"exact integrity limited to {max_n} vertices (got {G.n})")
    n = G.n
    if n == 0:
        return IntegrityCertificate(0, (), 0)
    full = (1 << n) - 1
    best_S = 0
    best_val = kappa(G)
    for k in range(1, n + 1):
        if k >= best_val:
            break
        S = _cover_components(G, k, best_val - k - 1, full)
        if S is not None:
            kap = max((len(c) for c in G.components(S)), default=0)
            val = S.bit_count() + kap
            if val < best_val:
                best_val, best_S = val, S
    witness = tuple(_bits(best_S))
    return IntegrityCertificate(best_val, witness, best_val - len(witness))


# -- z(G) ------------------------------------------------------------------------

def _find_pair(G: Graph, t: int, closed: list[int]) -> tuple[int, int] | None:
    """Find A of size t with at least t vertices outside N[A] above min(A).

    Returns (A mask, B mask) or None. Requiring B above min(A) is a valid
    symmetry break: any pair can be swapped so that min(A u B) lies in A.
    """
    n = G.n

    def dfs(A: int, size: int, nxt: int, NA: int, above: int) -> tuple[int, int] | None:
        avail = ~NA & above
        if avail.bit_count() < t:
            return None
        if size == t:
            B = 0
            cnt = 0
            for v in _bits(avail):
                B |= 1 << v
                cnt += 1
                if cnt == t:
                    break
            return A, B
        for j in range(nxt, n - (t - size) + 1):
            NA2 = NA | closed[j]
            if (~NA2 & above).bit_count() < t:
                continue
            res = dfs(A | (1 << j), size + 1, j + 1, NA2, above)
            if res is not None:
                return res
        return None

    full = (1 << n) - 1
    for a0 in range(n):
        above = full & ~((1 << (a0 + 1)) - 1)
        res = dfs(1 << a0, 1, a0 + 1, closed[a0], above)
        if res is not None:
            return res
    return None


def z_exact(G: Graph, max_n: int = Z_MAX_N) -> ZCertificate:
    """Largest z with disjoint z-sets A, B and no edge between them."""
    if G.n > max_n:
        raise TooLarge(f"exact z(G) limited to {max_n} vertices (got {G.n})")
    closed = [m | (1 << v) for v, m in enumerate(G.adj_masks)]
    best = ZCertificate(0, (), ())
    for t in range(1, G.n // 2 + 1):
        res = _find_pair(G, t, closed)
        if res is None:
            break
        best = ZCertificate(t, tuple(_bits(res[0])), tuple(_bits(res[1])))
    return best


@dataclass(frozen=True)
class SandwichResult:
    n: int
    z: int
    integrity: int
    holds: bool


def sandwich_check(G: Graph) -> SandwichResult:
    """n - 2 z(G) <= iota(G) <= n - z(G)."""
    z = z_exact(G).value
    iota = integrity_exact(G).value
    return SandwichResult(G.n, z, iota, G.n - 2 * z <= iota <= G.n - z)


def spectral_integrity_lb(n: int, d: float, lam: float) -> int:
    """ceil(n (d - lam) / (d + lam)), the integrity bound for (n, d, lam)-graphs."""
    if not 0 <= lam < d:
        raise DegenerateSpectrum(f"need 0 <= lambda < d, got lambda={lam}, d={d}")
    return math.ceil(n * (d - lam) / (d + lam) - 1e-9)


# -- random-graph experiments for z(G) ---------------------------------------------

@dataclass(frozen=True)
class WitnessRun:
    certificate: ZCertificate
    target: float
    met_target: bool
    trials: int
    sizes: tuple[int, ...] = field(default=())
    log_base: str = "e"


def appendix_lower_witness(G: Graph, d_avg: float, seed: int, trials: int = 20) -> WitnessRun:
    """Randomized edge-free pair: A ~ Bernoulli(ln d / 2d), B = vertices outside N[A].

    Both sides are trimmed to their common size. Returns the best pair over
    ``trials`` draws; whether it reaches n ln d / (4d) is reported, not enforced.
    """
    if d_avg < 2:
        raise ValueError("average degree bound must be >= 2")
    rng = random.Random(seed)
    p = math.log(d_avg) / (2 * d_avg)
    target = G.n * math.log(d_avg) / (4 * d_avg)
    closed = [m | (1 << v) for v, m in enumerate(G.adj_masks)]
    best = ZCertificate(0, (), ())
    sizes = []
    used = 0
    for _ in range(trials):
        used += 1
        A = [v for v in range(G.n) if rng.random() < p]
        NA = 0
        for v in A:
            NA |= closed[v]
        B = [v for v in range(G.n) if not NA >> v & 1]
        z = min(len(A), len(B))
        sizes.append(z)
        if z > best.value:
            best = ZCertificate(z, tuple(A[:z]), tuple(B[:z]))
        if best.value >= target:
            break
    return WitnessRun(best, target, best.value >= target, used, tuple(sizes))


@dataclass(frozen=True)
class UpperExperimentRow:
    seed: int
    n: int
    d: float
    edges: int
    z: int
    bound: float
    passed: bool

    def as_csv_row(self) -> list:
        return [self.seed, self.n, self.d, self.edges, self.z, f"{self.bound:.6f}",
                "pass" if self.passed else "fail"]


CSV_HEADER = ["seed", "n", "d", "e(G)", "z", "bound", "pass/fail"]


def appendix_upper_experiment(n: int, d: float, seed: int) -> UpperExperimentRow:
    """Sample G(n, d/n) and record e(G) and the exact z(G) against 2 n ln d / d."""
    G = gnp_sample(n, d / n, seed)
    z = z_exact(G).value
    bound = 2 * n * math.log(d) / d
    return UpperExperimentRow(seed, n, d, G.m, z, bound, z <= bound)
