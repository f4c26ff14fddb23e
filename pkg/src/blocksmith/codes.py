"""Linear codes over GF(q), their projective systems, and desk-scale code sources.

The asymptotically good families that the construction is designed around
are not constructible at this scale; Reed-Solomon codes and seeded random
codes stand in for them. Minimum distances are always certified by
exhaustive enumeration, never assumed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    BudgetExceeded,
    DegenerateCode,
    DimensionMismatch,
    DomainError,
    TooFewPoints,
)
from .field import FieldSpec, GF, coordinate_table, get_field, make_field
from .geometry import (
    Point,
    enumerate_points,
    normalize,
    num_points,
    rank,
)

DEFAULT_CODEWORD_BUDGET = 2**22
_CHUNK = 1 << 15


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d: int
    q: int

    def __str__(self) -> str:
        return f"[{self.n},{self.k},{self.d}]_{self.q}"


@dataclass(frozen=True)
class GeneratorMatrix:
    spec: FieldSpec
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.rows:
            raise DimensionMismatch("generator matrix needs at least one row")
        n = len(self.rows[0])
        if any(len(r) != n for r in self.rows):
            raise DimensionMismatch("ragged generator matrix")
        if rank(self.rows, self.field) != len(self.rows):
            raise DimensionMismatch("generator matrix rows are linearly dependent")

    @classmethod
    def from_rows(cls, spec: FieldSpec, rows: Sequence[Sequence[int]]) -> "GeneratorMatrix":
        return cls(spec, tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def field(self) -> GF:
        return get_field(self.spec)

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def q(self) -> int:
        return self.spec.q

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(r[j] for r in self.rows) for j in range(self.n)]

    def array(self) -> np.ndarray:
        return np.asarray(self.rows, dtype=np.int64)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "k": self.k,
            "n": self.n,
            "field": self.spec.to_json(),
            "rows": [list(r) for r in self.rows],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GeneratorMatrix":
        if "field" in data:
            spec = FieldSpec.from_json(data["field"])
        else:
            from .field import field_of_order

            spec = field_of_order(int(data["q"]))
        G = cls.from_rows(spec, data["rows"])
        if (G.k, G.n) != (int(data.get("k", G.k)), int(data.get("n", G.n))):
            raise DimensionMismatch("declared k/n disagree with rows")
        return G

    def to_text(self) -> str:
        return "\n".join(" ".join(str(x) for x in r) for r in self.rows) + "\n"

    @classmethod
    def from_text(cls, spec: FieldSpec, text: str) -> "GeneratorMatrix":
        rows = [[int(x) for x in line.split()] for line in text.splitlines() if line.strip()]
        return cls.from_rows(spec, rows)


def iter_codewords(G: GeneratorMatrix, projective: bool = False, budget: int | None = None):
    """Yield chunks of codewords (numpy arrays) for all nonzero messages.

    With ``projective=True`` only messages whose first nonzero entry is 1 are
    used, so each codeword is produced once per scalar class.
    """
    F = G.field
    budget = DEFAULT_CODEWORD_BUDGET if budget is None else budget
    count = num_points(G.k, F.q) if projective else F.q**G.k - 1
    if count > budget:
        raise BudgetExceeded(f"{count} codewords exceed budget {budget}")
    if projective:
        messages = np.asarray(enumerate_points(G.k, F), dtype=np.int64)
    else:
        idx = np.arange(1, F.q**G.k, dtype=np.int64)
        messages = np.stack([(idx // F.q**i) % F.q for i in reversed(range(G.k))], axis=1)
    R = G.array()
    for s in range(0, len(messages), _CHUNK):
        yield F.combine(messages[s : s + _CHUNK], R)


def min_distance(G: GeneratorMatrix, budget: int | None = None) -> int:
    """Exact minimum Hamming weight over all nonzero codewords."""
    best = G.n
    # scalar multiples share supports, so projective messages suffice
    for chunk in iter_codewords(G, projective=True, budget=budget):
        best = min(best, int((chunk != 0).sum(axis=1).min()))
    return best


def weight_distribution(G: GeneratorMatrix, budget: int | None = None) -> dict[int, int]:
    counts: dict[int, int] = {}
    for chunk in iter_codewords(G, budget=budget):
        w, c = np.unique((chunk != 0).sum(axis=1), return_counts=True)
        for wi, ci in zip(w.tolist(), c.tolist()):
            counts[wi] = counts.get(wi, 0) + ci
    return dict(sorted(counts.items()))


def code_params(G: GeneratorMatrix, budget: int | None = None) -> CodeParams:
    return CodeParams(G.n, G.k, min_distance(G, budget), G.q)


def rs_generator(spec: FieldSpec, n: int, k: int, points: Sequence[int | None] | None = None) -> GeneratorMatrix:
    """Vandermonde generator of the Reed-Solomon code ``[n, k, n-k+1]_q``.

    Evaluation points default to the first n field elements in canonical order.
    ``n = q + 1`` is allowed: the extra coordinate is the point at infinity
    (written ``None`` in ``points``), whose column is ``(0, ..., 0, 1)``; the
    code stays MDS.
    """
    F = get_field(spec)
    if points is None:
        if n > F.q + 1:
            raise TooFewPoints(f"only {F.q + 1} evaluation points available, {n} requested")
        points = list(range(min(n, F.q))) + ([None] if n == F.q + 1 else [])
    points = list(points)
    if len(points) != n or len(set(points)) != n:
        raise TooFewPoints("evaluation points must be n distinct field elements")
    if not 1 <= k <= n:
        raise DimensionMismatch(f"need 1 <= k <= n, got k={k}, n={n}")
    rows = [[int(i == k - 1) if x is None else F.pow(x, i) for x in points] for i in range(k)]
    return GeneratorMatrix.from_rows(spec, rows)


def repetition_generator(spec: FieldSpec, n: int) -> GeneratorMatrix:
    return GeneratorMatrix.from_rows(spec, [[1] * n])


def identity_generator(spec: FieldSpec, k: int) -> GeneratorMatrix:
    return GeneratorMatrix.from_rows(spec, [[int(i == j) for j in range(k)] for i in range(k)])


def simplex_generator(spec: FieldSpec, k: int) -> GeneratorMatrix:
    """Columns are all points of PG(k-1, q): the ``[(q^k-1)/(q-1), k]`` simplex code."""
    F = get_field(spec)
    cols = enumerate_points(k, F)
    return GeneratorMatrix.from_rows(spec, [[c[i] for c in cols] for i in range(k)])


def parity_check_generator(spec: FieldSpec, m: int) -> GeneratorMatrix:
    """Generator of the ``[m+1, m, 2]`` single parity-check code."""
    F = get_field(spec)
    rows = []
    for i in range(m):
        row = [0] * (m + 1)
        row[i] = 1
        row[m] = F.neg(1)
        rows.append(row)
    return GeneratorMatrix.from_rows(spec, rows)


def random_generator(spec: FieldSpec, k: int, n: int, seed: int, nondegenerate: bool = True,
                     max_tries: int = 1000) -> GeneratorMatrix:
    """Seeded uniformly random full-rank k x n generator (no zero column if asked)."""
    F = get_field(spec)
    rng = random.Random(seed)
    for _ in range(max_tries):
        rows = [[rng.randrange(F.q) for _ in range(n)] for _ in range(k)]
        if rank(rows, F) != k:
            continue
        if nondegenerate and any(all(r[j] == 0 for r in rows) for j in range(n)):
            continue
        return GeneratorMatrix.from_rows(spec, rows)
    raise BudgetExceeded("no admissible random generator found")


def concatenate(outer: GeneratorMatrix, inner: GeneratorMatrix, basis: Sequence[int] | None = None) -> GeneratorMatrix:
    """Concatenate an outer code over GF(q^m) with an inner ``[n_i, m]_q`` code.

    Each outer symbol is written in a fixed GF(q)-basis of GF(q^m) (default:
    powers of the generator ``1, w, ..., w^(m-1)``) and encoded by the inner
    code. Rows of the result are the images of ``b * g`` for every basis
    element ``b`` and outer row ``g``, so the dimension is ``k_outer * m``.
    """
    big, small = outer.field, inner.field
    if big.p != small.p or big.m % small.m:
        raise DimensionMismatch(f"{small} is not a subfield of {big}")
    m = big.m // small.m
    if inner.k != m:
        raise DimensionMismatch(f"inner dimension {inner.k} != extension degree {m}")
    coords = coordinate_table(big, small, basis)
    if basis is None:
        basis = [big.pow(big.generator, i) if big.m > 1 else 1 for i in range(m)]
    Gi = inner.array()
    rows = []
    for g in outer.rows:
        for b in basis:
            word = [big.mul(b, x) for x in g]
            expanded = coords[np.asarray(word, dtype=np.int64)]  # (n_outer, m)
            enc = small.combine(expanded, Gi)  # (n_outer, n_inner)
            rows.append(enc.reshape(-1).tolist())
    return GeneratorMatrix.from_rows(inner.spec, rows)


@dataclass(frozen=True)
class ProjectiveSystem:
    spec: FieldSpec
    points: tuple[Point, ...]
    params: CodeParams
    generator: GeneratorMatrix | None = field(default=None, compare=False)

    @property
    def field(self) -> GF:
        return get_field(self.spec)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def d(self) -> int:
        return self.params.d

    def is_set(self) -> bool:
        return len(set(self.points)) == len(self.points)


def system_max_hyperplane(spec: FieldSpec, points: Sequence[Point], k: int, limit: int | None = None) -> int:
    """Largest multiplicity-counted intersection of the points with a hyperplane."""
    F = get_field(spec)
    hyps = np.asarray(enumerate_points(k, F, limit), dtype=np.int64)
    P = np.asarray(points, dtype=np.int64)
    best = 0
    for s in range(0, len(hyps), _CHUNK):
        inc = F.dot_matrix(hyps[s : s + _CHUNK], P) == 0
        best = max(best, int(inc.sum(axis=1).max()))
    return best


def to_projective_system(G: GeneratorMatrix, budget: int | None = None, hyperplane_limit: int | None = None) -> ProjectiveSystem:
    """Column multiset of G as points; d certified two independent ways when feasible."""
    F = G.field
    pts = []
    for j, col in enumerate(G.columns()):
        P = normalize(col, F)
        if P is None:
            raise DegenerateCode(f"column {j} is zero")
        pts.append(P)
    d_geom = G.n - system_max_hyperplane(G.spec, pts, G.k, hyperplane_limit)
    try:
        d_enum = min_distance(G, budget)
    except BudgetExceeded:
        d_enum = d_geom
    if d_geom != d_enum:
        raise AssertionError(f"minimum distance mismatch: enumeration {d_enum}, hyperplanes {d_geom}")
    return ProjectiveSystem(G.spec, tuple(pts), CodeParams(G.n, G.k, d_enum, G.q), G)


def system_from_points(spec: FieldSpec, points: Sequence[Point]) -> ProjectiveSystem:
    """Projective system whose generator matrix has the given points as columns."""
    k = len(points[0])
    G = GeneratorMatrix.from_rows(spec, [[P[i] for P in points] for i in range(k)])
    return to_projective_system(G)


# -- q-ary entropy --------------------------------------------------------------

def q_entropy(q: float, x: float) -> float:
    if not 0 <= x <= 1 - 1 / q + 1e-15:
        raise DomainError(f"x={x} outside [0, 1 - 1/q]")
    if x == 0:
        return 0.0
    lq = math.log(q)
    out = x * math.log(q - 1) / lq - x * math.log(x) / lq
    if x < 1:
        out -= (1 - x) * math.log(1 - x) / lq
    return out


def gv_rate(q: float, delta: float) -> float:
    """Gilbert-Varshamov rate 1 - H_q(delta)."""
    return 1 - q_entropy(q, delta)


def q_entropy_inverse(q: float, y: float, tol: float = 1e-12) -> float:
    """The x in [0, 1-1/q] with H_q(x) = y, by bisection (H_q is increasing there)."""
    if not 0 <= y <= 1:
        raise DomainError("entropy value must lie in [0, 1]")
    lo, hi = 0.0, 1 - 1 / q
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if q_entropy(q, mid) < y:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2
