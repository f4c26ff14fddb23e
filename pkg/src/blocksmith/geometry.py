"""Points, subspaces and hyperplanes of PG(k-1, q).

Points are plain tuples of integer-encoded field elements, normalized so the
first nonzero coordinate is 1. Subspaces are stored by a reduced row-echelon
basis; hyperplanes by their dual point. Enumerators return materialized lists
in lexicographic order so that every downstream result is reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptySet, IdenticalPoints, SpaceTooLarge
from .field import GF

Point = tuple[int, ...]

MAX_ENUMERATION = 2**22


def num_points(k: int, q: int) -> int:
    return (q**k - 1) // (q - 1)


def gaussian_binomial(k: int, j: int, q: int) -> int:
    """Number of j-dimensional subspaces of a k-dimensional space over GF(q)."""
    if j < 0 or j > k:
        return 0
    num = den = 1
    for i in range(j):
        num *= q ** (k - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def normalize(v: Sequence[int], F: GF) -> Point | None:
    """Canonical representative of [v], or None for the zero vector."""
    for c in v:
        if c:
            if c == 1:
                return tuple(v)
            s = F.inv(c)
            return tuple(F.mul(s, x) for x in v)
    return None


def rref(rows: Iterable[Sequence[int]], F: GF) -> tuple[list[list[int]], list[int]]:
    """Reduced row-echelon form; returns (nonzero rows, pivot columns)."""
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Iterable[Sequence[int]], F: GF, stop_at: int | None = None) -> int:
    """Rank by incremental elimination; returns early once ``stop_at`` is reached."""
    basis: list[tuple[int, list[int]]] = []  # (pivot column, row with 1 at pivot)
    for row in rows:
        v = list(row)
        for pc, b in basis:
            if v[pc]:
                f = v[pc]
                v = [F.sub(x, F.mul(f, y)) for x, y in zip(v, b)]
        pc = next((i for i, x in enumerate(v) if x), None)
        if pc is None:
            continue
        inv = F.inv(v[pc])
        basis.append((pc, [F.mul(inv, x) for x in v]))
        if stop_at is not None and len(basis) >= stop_at:
            break
    return len(basis)


def rank_np(rows, F: GF, stop_at: int | None = None) -> int:
    """Rank by vectorized elimination over an (r, k) integer array."""
    M = np.array(rows, dtype=np.int64)
    if M.size == 0:
        return 0
    r, k = M.shape
    cur = 0
    for c in range(k):
        nz = np.flatnonzero(M[cur:, c])
        if nz.size == 0:
            continue
        piv = cur + int(nz[0])
        if piv != cur:
            M[[cur, piv]] = M[[piv, cur]]
        M[cur] = F.vmul(M[cur], F.inv(int(M[cur, c])))
        below = M[cur + 1 :]
        f = below[:, c]
        mask = f != 0
        if mask.any():
            below[mask] = F.vsub(below[mask], F.vmul(f[mask][:, None], M[cur][None, :]))
        cur += 1
        if cur == r or (stop_at is not None and cur >= stop_at):
            break
    return cur


def span_dim(points: Iterable[Point], F: GF) -> int:
    """Projective dimension of the span of a nonempty point set."""
    pts = list(points)
    if not pts:
        raise EmptySet("span of the empty set")
    return rank(pts, F) - 1


def null_space(rows: Sequence[Sequence[int]], k: int, F: GF) -> list[list[int]]:
    """Basis of {x : r . x = 0 for every row r} in GF(q)^k."""
    R, pivots = rref(rows, F) if rows else ([], [])
    free = [c for c in range(k) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * k
        v[f] = 1
        for row, pc in zip(R, pivots):
            v[pc] = F.neg(row[f])
        basis.append(v)
    return basis


def _check_count(count: int, limit: int | None) -> None:
    limit = MAX_ENUMERATION if limit is None else limit
    if count > limit:
        raise SpaceTooLarge(f"enumeration of {count} objects exceeds cap {limit}")


def enumerate_points(k: int, F: GF, limit: int | None = None) -> list[Point]:
    """All points of PG(k-1, q) in lexicographic order."""
    if k < 1:
        raise ValueError("k must be >= 1")
    _check_count(num_points(k, F.q), limit)
    out: list[Point] = []
    for lead in reversed(range(k)):
        head = (0,) * lead + (1,)
        for tail in itertools.product(range(F.q), repeat=k - lead - 1):
            out.append(head + tail)
    return out


def line_through(P: Point, Q: Point, F: GF) -> list[Point]:
    """The q+1 points of the line PQ, sorted."""
    if P == Q:
        raise IdenticalPoints("a line needs two distinct points")
    pts = {Q}
    for t in range(F.q):
        v = [F.add(F.mul(t, y), x) for x, y in zip(P, Q)]
        pts.add(normalize(v, F))
    if len(pts) != F.q + 1 or None in pts:
        raise IdenticalPoints(f"{P} and {Q} are not distinct projective points")
    return sorted(pts)


def points_of_span(basis: Sequence[Sequence[int]], F: GF) -> list[Point]:
    """All points of the projective subspace spanned by independent rows."""
    r = len(basis)
    B = np.asarray(basis, dtype=np.int64)
    coeffs = np.asarray(enumerate_points(r, F), dtype=np.int64)
    vecs = F.combine(coeffs, B)
    return sorted(normalize(tuple(int(x) for x in v), F) for v in vecs)


@dataclass(frozen=True)
class Subspace:
    """A projective subspace given by its RREF basis (r rows, dimension r - 1)."""

    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis) - 1

    @classmethod
    def span(cls, rows: Iterable[Sequence[int]], F: GF) -> "Subspace":
        R, _ = rref(rows, F)
        return cls(tuple(tuple(r) for r in R))

    def dual_basis(self, k: int, F: GF) -> list[list[int]]:
        """Rows u whose common zero set u . x = 0 is exactly this subspace."""
        return null_space(self.basis, k, F)

    def points(self, F: GF) -> list[Point]:
        return points_of_span(self.basis, F)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.basis]


@dataclass(frozen=True)
class Hyperplane:
    """Hyperplane {P : dual . P = 0}."""

    dual: Point

    def contains(self, P: Sequence[int], F: GF) -> bool:
        acc = 0
        for a, b in zip(self.dual, P):
            if a and b:
                acc = F.add(acc, F.mul(a, b))
        return acc == 0

    def points(self, F: GF) -> list[Point]:
        return points_of_span(null_space([self.dual], len(self.dual), F), F)


def enumerate_hyperplanes(k: int, F: GF, limit: int | None = None) -> list[Hyperplane]:
    return [Hyperplane(u) for u in enumerate_points(k, F, limit)]


def enumerate_subspaces(k: int, j: int, F: GF, limit: int | None = None) -> list[Subspace]:
    """All j-dimensional vector subspaces of GF(q)^k as canonical RREF bases.

    Ordered by pivot-column tuple, then lexicographically by free entries.
    """
    _check_count(gaussian_binomial(k, j, F.q), limit)
    out = []
    for pivots in itertools.combinations(range(k), j):
        # free positions: row i, column c > pivots[i], c not a pivot
        slots = [(i, c) for i in range(j) for c in range(pivots[i] + 1, k) if c not in pivots]
        for vals in itertools.product(range(F.q), repeat=len(slots)):
            rows = [[0] * k for _ in range(j)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, c), v in zip(slots, vals):
                rows[i][c] = v
            out.append(Subspace(tuple(tuple(r) for r in rows)))
    return out


def enumerate_codim2(k: int, F: GF, limit: int | None = None) -> list[Subspace]:
    """All codimension-2 subspaces of PG(k-1, q) (projective dimension k-3)."""
    if k < 3:
        raise ValueError("codimension-2 subspaces need k >= 3")
    return enumerate_subspaces(k, k - 2, F, limit)


def codim2_duals(k: int, F: GF, limit: int | None = None) -> np.ndarray:
    """Dual pairs (u1, u2) for every codimension-2 subspace, as an (N, 2, k) array.

    Each codimension-2 space W is {x : u1.x = u2.x = 0} where (u1, u2) is the
    RREF basis of the 2-dimensional annihilator of W. Enumerating those
    2-dimensional annihilators is in bijection with enumerating W itself.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    duals = enumerate_subspaces(k, 2, F, limit)
    return np.asarray([d.basis for d in duals], dtype=np.int64).reshape(len(duals), 2, k)


def subspace_from_dual(u1: Sequence[int], u2: Sequence[int], F: GF) -> Subspace:
    k = len(u1)
    return Subspace.span(null_space([list(u1), list(u2)], k, F), F)


def incidence(hyperplane_duals, points, F: GF) -> np.ndarray:
    """Boolean matrix: entry (h, i) is True when point i lies on hyperplane h."""
    return F.dot_matrix(hyperplane_duals, points) == 0
