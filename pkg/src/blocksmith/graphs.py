"""Graphs, adjacency spectra, LPS Cayley graphs and the expander mixing check."""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadResidueClass,
    BudgetExhausted,
    GroupTooLarge,
    NotRegular,
    ParityError,
    TooLarge,
)
from .field import is_prime, legendre, sqrt_mod

MAX_SPECTRUM_VERTICES = 20000
MAX_GROUP_VERTICES = 20000
# dense Jacobi is used up to this size, LAPACK beyond
JACOBI_MAX_VERTICES = 400


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Normalize to sorted unique pairs ``(u, v)`` with ``u < v``."""
        seen = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} outside vertex range [0, {n})")
            seen.add((min(u, v), max(u, v)))
        return cls(n, tuple(sorted(seen)))

    @cached_property
    def adj(self) -> list[list[int]]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        for a in nbrs:
            a.sort()
        return nbrs

    @cached_property
    def adj_masks(self) -> list[int]:
        return [sum(1 << v for v in a) for a in self.adj]

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def regular_degree(self) -> int | None:
        degs = set(self.degrees())
        return degs.pop() if len(degs) == 1 else None

    def adjacency_matrix(self) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        if self.edges:
            e = np.asarray(self.edges)
            A[e[:, 0], e[:, 1]] = 1
            A[e[:, 1], e[:, 0]] = 1
        return A

    def components(self, removed: int = 0) -> list[list[int]]:
        """Connected components of G minus the vertex bitmask ``removed``."""
        seen = removed
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = [s]
            seen |= 1 << s
            stack = [s]
            while stack:
                u = stack.pop()
                for v in self.adj[u]:
                    if not seen >> v & 1:
                        seen |= 1 << v
                        comp.append(v)
                        stack.append(v)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n == 0 or len(self.components()) == 1

    def relabel(self, order: Sequence[int]) -> "Graph":
        """Graph with vertex ``order[i]`` renamed to ``i``."""
        pos = {v: i for i, v in enumerate(order)}
        return Graph.from_edges(self.n, [(pos[u], pos[v]) for u, v in self.edges])

    # -- serialization -----------------------------------------------------------
    def to_edgelist(self) -> str:
        lines = [f"{self.n} {self.m}"] + [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edgelist(cls, text: str) -> "Graph":
        rows = [line.split() for line in text.splitlines() if line.strip() and not line.startswith("#")]
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
        if len(edges) != m:
            raise ValueError(f"header announces {m} edges, found {len(edges)}")
        return cls.from_edges(n, edges)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        return cls.from_edges(int(data["n"]), data["edges"])


# -- standard small graphs -----------------------------------------------------

def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def empty_graph(n: int) -> Graph:
    return Graph(n, ())


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


# -- LPS construction ------------------------------------------------------------

def jacobi_solutions(p: int) -> list[tuple[int, int, int, int]]:
    """All (b1, b2, b3, b4) with p = sum b_i^2, b1 > 0 and b2, b3, b4 even."""
    if p % 4 != 1 or not is_prime(p):
        raise BadResidueClass(f"{p} is not a prime congruent to 1 mod 4")
    bound = math.isqrt(p)
    sols = []
    for b1 in range(1, bound + 1):
        for b2 in range(-bound, bound + 1):
            for b3 in range(-bound, bound + 1):
                rest = p - b1 * b1 - b2 * b2 - b3 * b3
                if rest < 0:
                    continue
                b4 = math.isqrt(rest)
                if b4 * b4 != rest:
                    continue
                for s4 in {b4, -b4}:
                    if b2 % 2 == 0 and b3 % 2 == 0 and s4 % 2 == 0:
                        sols.append((b1, b2, b3, s4))
    return sorted(sols)


Matrix2 = tuple[int, int, int, int]  # (a, b, c, d) row-major


def _pgl_canonical(M: Sequence[int], r: int) -> Matrix2:
    """Scale a 2x2 matrix over F_r so its first nonzero entry (a, b, c, d order) is 1."""
    lead = next(x for x in M if x % r)
    s = pow(lead, r - 2, r)
    return tuple(x * s % r for x in M)  # type: ignore[return-value]


def _mat_mul(X: Matrix2, Y: Matrix2, r: int) -> Matrix2:
    a, b, c, d = X
    e, f, g, h = Y
    return ((a * e + b * g) % r, (a * f + b * h) % r, (c * e + d * g) % r, (c * f + d * h) % r)


def lps_generators(p: int, r: int) -> list[Matrix2]:
    """The p+1 matrices [[b1+i b2, b3+i b4], [-b3+i b4, b1-i b2]] over F_r, i^2 = -1."""
    i = sqrt_mod(-1, r)
    gens = []
    for b1, b2, b3, b4 in jacobi_solutions(p):
        M = ((b1 + i * b2) % r, (b3 + i * b4) % r, (-b3 + i * b4) % r, (b1 - i * b2) % r)
        gens.append(_pgl_canonical(M, r))
    return gens


@dataclass(frozen=True)
class LPSInfo:
    p: int
    r: int
    legendre: int
    group: str  # "PSL" or "PGL"
    expected_vertices: int
    vertices: int
    collapsed_degree: int


def lps_graph(p: int, r: int, max_vertices: int = MAX_GROUP_VERTICES, with_info: bool = False):
    """Cayley graph of the subgroup of PGL(2, F_r) generated by the LPS matrices.

    Vertices are group elements (projectively canonical 2x2 matrices) in
    sorted order; ``g ~ g s`` for every generator ``s``. The generated group
    is PSL(2, r) when p is a square mod r (every generator has square
    determinant) and all of PGL(2, r) otherwise; the vertex count is checked
    against ``r(r^2-1)/2`` resp. ``r(r^2-1)``.
    """
    for x in (p, r):
        if x % 4 != 1 or not is_prime(x):
            raise BadResidueClass(f"{x} is not a prime congruent to 1 mod 4")
    if p == r:
        raise BadResidueClass("p and r must be distinct")
    if r <= 2 * math.sqrt(p):
        raise BadResidueClass(f"need r > 2 sqrt(p), got r={r}, p={p}")
    ls = legendre(p, r)
    group = "PSL" if ls == 1 else "PGL"
    order = r * (r * r - 1) // (2 if ls == 1 else 1)
    if order > max_vertices:
        raise GroupTooLarge(f"group of order {order} exceeds cap {max_vertices}")
    gens = lps_generators(p, r)
    identity = (1, 0, 0, 1)
    index = {identity: 0}
    queue = deque([identity])
    raw_edges = []
    while queue:
        g = queue.popleft()
        for s in gens:
            h = _pgl_canonical(_mat_mul(g, s, r), r)
            if h not in index:
                if len(index) >= max_vertices:
                    raise GroupTooLarge("generated group exceeds cap")
                index[h] = len(index)
                queue.append(h)
            raw_edges.append((index[g], index[h]))
    n = len(index)
    if n != order:
        raise AssertionError(f"LPS({p},{r}) generated {n} elements, expected {order} ({group})")
    # relabel vertices by sorted matrix tuple for a presentation-independent order
    order_by_matrix = sorted(index, key=lambda M: M)
    relabel = {index[M]: i for i, M in enumerate(order_by_matrix)}
    G = Graph.from_edges(n, [(relabel[u], relabel[v]) for u, v in raw_edges if u != v])
    deg = G.regular_degree()
    if deg != p + 1:
        raise AssertionError(f"LPS({p},{r}) is not {p + 1}-regular after collapsing (degree {deg})")
    if with_info:
        return G, LPSInfo(p, r, ls, group, order, n, deg)
    return G


def _pair_stubs(n: int, d: int, rng: random.Random) -> set[tuple[int, int]] | None:
    """One pass of sequential stub pairing; None if it gets stuck."""
    stubs = [v for v in range(n) for _ in range(d)]
    edges: set[tuple[int, int]] = set()
    while stubs:
        for _ in range(100):
            i, j = rng.randrange(len(stubs)), rng.randrange(len(stubs))
            u, v = stubs[i], stubs[j]
            if u != v and (min(u, v), max(u, v)) not in edges:
                break
        else:
            left = set(stubs)
            if not any(a < b and (a, b) not in edges for a in left for b in left):
                return None
            continue
        edges.add((min(u, v), max(u, v)))
        for idx in sorted((i, j), reverse=True):
            stubs[idx] = stubs[-1]
            stubs.pop()
    return edges


def random_regular(n: int, d: int, seed: int, max_tries: int = 10000) -> Graph:
    """Seeded simple d-regular graph by sequential stub pairing.

    Stubs are joined two at a time, only along pairs that keep the graph
    simple; a pass that runs out of such pairs is restarted. For fixed d
    the output is close to uniform.
    """
    if (n * d) % 2:
        raise ParityError(f"n*d = {n * d} is odd")
    if d >= n:
        raise ValueError(f"degree {d} needs more than {n} vertices")
    rng = random.Random(seed)
    for _ in range(max_tries):
        edges = _pair_stubs(n, d, rng)
        if edges is not None:
            return Graph(n, tuple(sorted(edges)))
    raise BudgetExhausted(f"no simple {d}-regular graph on {n} vertices after {max_tries} tries")


def gnp_sample(n: int, p: float, seed: int) -> Graph:
    """Binomial random graph G(n, p)."""
    rng = random.Random(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph(n, tuple(edges))


# -- spectra ---------------------------------------------------------------------

def _round_robin(n: int) -> list[list[tuple[int, int]]]:
    """n-1 rounds (n even) of disjoint pairs covering every pair exactly once."""
    players = list(range(n))
    rounds = []
    for _ in range(n - 1):
        rounds.append([(min(players[i], players[n - 1 - i]), max(players[i], players[n - 1 - i]))
                       for i in range(n // 2)])
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def jacobi_eigenvalues(A: np.ndarray, tol: float = 1e-9, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Rotations are applied in round-robin order: each round annihilates n/2
    disjoint off-diagonal entries at once, and n-1 rounds make one sweep over
    all pairs. Stops when the off-diagonal Frobenius norm drops below ``tol``
    times the Frobenius norm of A (or ``tol`` itself for tiny matrices).
    Returns the eigenvalues sorted in descending order.
    """
    A = np.array(A, dtype=float)
    n = A.shape[0]
    if n == 0:
        return np.zeros(0)
    if not np.allclose(A, A.T):
        raise ValueError("matrix is not symmetric")
    pad = n % 2
    if pad:
        A = np.pad(A, ((0, 1), (0, 1)))
    N = A.shape[0]
    rounds = [(np.array([a for a, _ in rd]), np.array([b for _, b in rd])) for rd in _round_robin(N)]

    def off_norm(M):
        # direct sum; total minus diagonal cancels badly near convergence
        off = M - np.diag(np.diag(M))
        return math.sqrt(float((off * off).sum()))

    scale = max(1.0, float(np.linalg.norm(A)))
    for _ in range(max_sweeps):
        if off_norm(A) < tol * scale:
            break
        for P, Q in rounds:
            apq = A[P, Q]
            active = np.abs(apq) > 1e-300
            if not active.any():
                continue
            P_, Q_ = P[active], Q[active]
            apq = apq[active]
            app, aqq = A[P_, P_], A[Q_, Q_]
            theta = (aqq - app) / (2 * apq)
            with np.errstate(over="ignore"):
                t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1))
            t[theta == 0] = 1.0
            c = 1 / np.sqrt(t * t + 1)
            s = t * c
            # A <- J^T A J with J acting on column pairs (P_, Q_)
            colP, colQ = A[:, P_].copy(), A[:, Q_].copy()
            A[:, P_] = c * colP - s * colQ
            A[:, Q_] = s * colP + c * colQ
            rowP, rowQ = A[P_, :].copy(), A[Q_, :].copy()
            A[P_, :] = c[:, None] * rowP - s[:, None] * rowQ
            A[Q_, :] = s[:, None] * rowP + c[:, None] * rowQ
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    eig = np.diag(A)
    if pad:
        # the padding row/column is never coupled, so its zero eigenvalue is exact
        eig = np.delete(eig, N - 1)
    return np.sort(eig)[::-1]


@dataclass(frozen=True)
class SpectralReport:
    eigenvalues: tuple[float, ...]
    lam: float
    degree: int | None
    method: str

    @property
    def lambda1(self) -> float:
        return self.eigenvalues[0]

    @property
    def lam_nontrivial(self) -> float:
        """Largest |lambda| strictly below the degree (drops -d for bipartite graphs)."""
        if self.degree is None:
            return self.lam
        return max((abs(x) for x in self.eigenvalues[1:] if abs(x) < self.degree - 1e-6), default=0.0)

    def to_json(self, full: bool = False) -> dict:
        out = {
            "lambda1": self.lambda1,
            "lambda": self.lam,
            "lambda_nontrivial": self.lam_nontrivial,
            "degree": self.degree,
            "method": self.method,
            "n": len(self.eigenvalues),
        }
        if full:
            out["eigenvalues"] = list(self.eigenvalues)
        return out


def spectrum(G: Graph, method: str = "auto") -> SpectralReport:
    """Adjacency spectrum; ``lam`` is max |lambda_i| over i >= 2."""
    if G.n > MAX_SPECTRUM_VERTICES:
        raise TooLarge(f"{G.n} vertices exceed the dense eigensolver cap")
    if method == "auto":
        method = "jacobi" if G.n <= JACOBI_MAX_VERTICES else "lapack"
    A = G.adjacency_matrix()
    if method == "jacobi":
        eig = jacobi_eigenvalues(A)
    elif method == "lapack":
        eig = np.linalg.eigvalsh(A)[::-1]
    else:
        raise ValueError(f"unknown eigensolver {method!r}")
    eig = tuple(float(x) for x in eig)
    lam = max((abs(x) for x in eig[1:]), default=0.0)
    return SpectralReport(eig, lam, G.regular_degree(), method)


def is_ramanujan(G: Graph, report: SpectralReport | None = None, tol: float = 1e-9) -> bool:
    """max{|lambda_i| : |lambda_i| < d} <= 2 sqrt(d-1)."""
    d = G.regular_degree()
    if d is None:
        raise NotRegular("Ramanujan property needs a regular graph")
    report = report or spectrum(G)
    nontrivial = [abs(x) for x in report.eigenvalues if abs(x) < d - 1e-6]
    return max(nontrivial, default=0.0) <= 2 * math.sqrt(d - 1) + tol


def edge_count_between(G: Graph, S: Iterable[int], T: Iterable[int]) -> int:
    """Ordered pairs (x, y) in S x T with xy an edge."""
    Tset = set(T)
    return sum(1 for x in set(S) for y in G.adj[x] if y in Tset)


def mixing_check(G: Graph, S: Iterable[int], T: Iterable[int], lam: float | None = None,
                 tol: float = 1e-6) -> bool:
    """Expander mixing inequality for one pair of vertex sets."""
    d = G.regular_degree()
    if d is None:
        raise NotRegular("mixing lemma needs a regular graph")
    if lam is None:
        lam = spectrum(G).lam
    S, T = set(S), set(T)
    n = G.n
    e = edge_count_between(G, S, T)
    lhs = abs(e - d * len(S) * len(T) / n)
    rhs = lam * math.sqrt(max(len(S) * len(T) * (1 - len(S) / n) * (1 - len(T) / n), 0.0))
    return lhs <= rhs + tol
