"""Strong blocking sets from lines: line sets, avoidance, verification, baselines.

A graph G on the points of a projective system M gives one line per edge.
When no codimension-2 subspace meets all of those lines, the union of the
lines is a strong blocking set. Every check here is exhaustive over the
relevant subspaces and reports the first failing subspace as a witness.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .codes import GeneratorMatrix, ProjectiveSystem, iter_codewords, to_projective_system
from .config import Caps
from .errors import (
    CertificateError,
    DimensionMismatch,
    HypothesisUnmet,
    IntegrityHypothesisUnmet,
    RepeatedPoint,
    SpaceTooLarge,
)
from .field import FieldSpec, GF, get_field, make_field, prime_power
from .geometry import (
    Point,
    codim2_duals,
    enumerate_points,
    gaussian_binomial,
    line_through,
    num_points,
    rank,
    rank_np,
    subspace_from_dual,
)
from .graphs import Graph, SpectralReport, complete_graph
from .integrity import integrity_exact, spectral_integrity_lb

_CHUNK = 4096


@dataclass(frozen=True)
class LineSet:
    """Lines of PG(k-1, q), each stored as its sorted list of q+1 points."""

    spec: FieldSpec
    k: int
    lines: tuple[tuple[Point, ...], ...]
    provenance: tuple[tuple[tuple[int, int], int], ...] = ()  # (edge, line index)

    @property
    def field(self) -> GF:
        return get_field(self.spec)

    @classmethod
    def from_lines(cls, spec: FieldSpec, k: int, lines, provenance=()) -> "LineSet":
        F = get_field(spec)
        seen: dict[tuple[Point, ...], int] = {}
        out = []
        for ln in lines:
            ln = tuple(sorted(ln))
            if len(ln) != F.q + 1:
                raise ValueError(f"a line of PG({k - 1},{F.q}) has {F.q + 1} points, got {len(ln)}")
            if ln not in seen:
                seen[ln] = len(out)
                out.append(ln)
        return cls(spec, k, tuple(out), tuple(provenance))

    @classmethod
    def from_pairs(cls, spec: FieldSpec, pairs) -> "LineSet":
        F = get_field(spec)
        pairs = list(pairs)
        k = len(pairs[0][0]) if pairs else 0
        return cls.from_lines(spec, k, [line_through(P, Q, F) for P, Q in pairs])

    def spanning_pairs(self) -> list[tuple[Point, Point]]:
        return [(ln[0], ln[1]) for ln in self.lines]

    def __len__(self) -> int:
        return len(self.lines)


def build_lineset(M: ProjectiveSystem, G: Graph) -> LineSet:
    """L(M, G): the line through P_i and P_j for every edge ij."""
    if G.n != M.n:
        raise DimensionMismatch(f"graph has {G.n} vertices but the system has {M.n} points")
    F = M.field
    index: dict[tuple[Point, ...], int] = {}
    lines: list[tuple[Point, ...]] = []
    prov = []
    for i, j in sorted(G.edges):
        P, Q = M.points[i], M.points[j]
        if P == Q:
            raise RepeatedPoint(f"vertices {i} and {j} carry the same point {P}")
        ln = tuple(line_through(P, Q, F))
        if ln not in index:
            index[ln] = len(lines)
            lines.append(ln)
        prov.append(((i, j), index[ln]))
    return LineSet(M.spec, M.k, tuple(lines), tuple(prov))


def union_points(L: LineSet) -> list[Point]:
    return sorted({P for ln in L.lines for P in ln})


@dataclass(frozen=True)
class CheckResult:
    holds: bool
    witness: list | None = None  # failing subspace as basis rows, or hyperplane dual

    def to_json(self):
        return {"holds": self.holds, "witness": self.witness}


def _codim2_count(k: int, q: int) -> int:
    return gaussian_binomial(k, 2, q)


def check_avoidance(L: LineSet, limit: int | None = None) -> CheckResult:
    """True iff every codimension-2 subspace misses some line of L.

    A codim-2 space W = {u1.x = u2.x = 0} meets the line PQ exactly when the
    2x2 matrix [[u1.P, u1.Q], [u2.P, u2.Q]] is singular.
    """
    F = L.field
    k = L.k
    if not L.lines:
        # vacuously every codim-2 space meets every line
        return CheckResult(False, [])
    if k == 2:
        # the only codim-2 subspace is empty and meets nothing
        return CheckResult(True)
    limit = Caps().max_codim2 if limit is None else limit
    if _codim2_count(k, F.q) > limit:
        raise SpaceTooLarge(f"{_codim2_count(k, F.q)} codimension-2 subspaces exceed cap {limit}")
    duals = codim2_duals(k, F, limit)
    pairs = L.spanning_pairs()
    P = np.asarray([p for p, _ in pairs], dtype=np.int64)
    Q = np.asarray([q for _, q in pairs], dtype=np.int64)
    for s in range(0, len(duals), _CHUNK):
        U = duals[s : s + _CHUNK]
        a = F.dot_matrix(U[:, 0], P)
        b = F.dot_matrix(U[:, 0], Q)
        c = F.dot_matrix(U[:, 1], P)
        d = F.dot_matrix(U[:, 1], Q)
        ad = F.vmul(a, d)
        bc = F.vmul(b, c)
        singular = ad == bc
        meets_all = singular.all(axis=1)
        if meets_all.any():
            i = int(np.argmax(meets_all))
            W = subspace_from_dual(U[i, 0].tolist(), U[i, 1].tolist(), F)
            return CheckResult(False, W.to_json())
    return CheckResult(True)


def check_strong_blocking(points: Sequence[Point], k: int, spec: FieldSpec,
                          limit: int | None = None) -> CheckResult:
    """True iff the points meet every hyperplane in a set spanning that hyperplane."""
    F = get_field(spec)
    limit = Caps().max_hyperplanes if limit is None else limit
    if num_points(k, F.q) > limit:
        raise SpaceTooLarge(f"{num_points(k, F.q)} hyperplanes exceed cap {limit}")
    pts = sorted(set(map(tuple, points)))
    if not pts:
        return CheckResult(False, list(enumerate_points(k, F)[0]))
    hyps = enumerate_points(k, F)
    B = np.asarray(pts, dtype=np.int64)
    H = np.asarray(hyps, dtype=np.int64)
    for s in range(0, len(H), _CHUNK):
        inc = F.dot_matrix(H[s : s + _CHUNK], B) == 0
        counts = inc.sum(axis=1)
        for h in range(len(inc)):
            if counts[h] < k - 1:
                return CheckResult(False, list(hyps[s + h]))
            if rank_np(B[inc[h]], F, stop_at=k - 1) < k - 1:
                return CheckResult(False, list(hyps[s + h]))
    return CheckResult(True)


# -- certificates -----------------------------------------------------------------

@dataclass(frozen=True)
class IntegrityEvidence:
    """Lower bound on the integrity of a graph and where it came from."""

    kind: str  # "exact" | "spectral" | "baseline"
    value: int
    detail: dict = field(default_factory=dict)

    @classmethod
    def exact(cls, G: Graph, max_n: int = 25) -> "IntegrityEvidence":
        cert = integrity_exact(G, max_n)
        return cls("exact", cert.value, cert.to_json())

    @classmethod
    def spectral(cls, G: Graph, report: SpectralReport) -> "IntegrityEvidence":
        d = G.regular_degree()
        if d is None:
            raise HypothesisUnmet("spectral integrity evidence needs a regular graph")
        lb = spectral_integrity_lb(G.n, d, report.lam)
        return cls("spectral", lb, {"n": G.n, "d": d, "lambda": report.lam, "method": report.method})

    def to_json(self) -> dict:
        return {"kind": self.kind, "value": self.value, "detail": self.detail}


@dataclass
class SBSCertificate:
    spec: FieldSpec
    k: int
    points: list[Point]
    lines: list[tuple[Point, Point]] = field(default_factory=list)
    provenance: list = field(default_factory=list)
    evidence: dict | None = None
    checked: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    size: dict = field(default_factory=dict)
    seed: int | None = None
    source: dict | None = None  # content hash chain for derived sets
    notes: list[str] = field(default_factory=list)

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def strong(self):
        return self.checked.get("strong")

    def to_json(self) -> dict:
        return {
            "ambient": {"k": self.k, "q": self.q, "field": self.spec.to_json()},
            "points": [list(P) for P in self.points],
            "lines": [[list(P), list(Q)] for P, Q in self.lines],
            "provenance": [{"edge": list(e), "line": i} for e, i in self.provenance],
            "evidence": self.evidence,
            "checked": self.checked,
            "witnesses": self.witnesses,
            "size": self.size,
            "seed": self.seed,
            "source": self.source,
            "notes": list(self.notes),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)

    def content_hash(self) -> str:
        return hashlib.sha256(json.dumps(self.to_json(), sort_keys=True).encode()).hexdigest()

    @classmethod
    def from_json(cls, data: dict) -> "SBSCertificate":
        amb = data["ambient"]
        return cls(
            spec=FieldSpec.from_json(amb["field"]),
            k=int(amb["k"]),
            points=[tuple(P) for P in data["points"]],
            lines=[(tuple(P), tuple(Q)) for P, Q in data.get("lines", [])],
            provenance=[(tuple(p["edge"]), p["line"]) for p in data.get("provenance", [])],
            evidence=data.get("evidence"),
            checked=dict(data.get("checked", {})),
            witnesses=dict(data.get("witnesses", {})),
            size=dict(data.get("size", {})),
            seed=data.get("seed"),
            source=data.get("source"),
            notes=list(data.get("notes", [])),
        )

    def reverify(self, caps: Caps | None = None) -> CheckResult:
        caps = caps or Caps()
        return check_strong_blocking(self.points, self.k, self.spec, caps.max_hyperplanes)


def _run_checks(L: LineSet, points: list[Point], caps: Caps, avoidance: bool = True):
    checked: dict = {}
    witnesses: dict = {}
    q = L.spec.q
    if avoidance:
        if L.k == 2 or _codim2_count(L.k, q) <= caps.max_codim2:
            res = check_avoidance(L, caps.max_codim2)
            checked["avoidance"] = res.holds
            if not res.holds:
                witnesses["codim2"] = res.witness
        else:
            checked["avoidance"] = "skipped"
    if num_points(L.k, q) <= caps.max_hyperplanes:
        res = check_strong_blocking(points, L.k, L.spec, caps.max_hyperplanes)
        checked["strong"] = res.holds
        if not res.holds:
            witnesses["hyperplane"] = res.witness
    else:
        checked["strong"] = "skipped"
    if checked.get("avoidance") is True and checked["strong"] is False:
        raise CertificateError("avoidance holds but the union is not a strong blocking set")
    return checked, witnesses


def theorem_avoidance_to_sbs(L: LineSet, caps: Caps | None = None) -> SBSCertificate:
    """Run both checks on a line set and certify the union of its lines."""
    caps = caps or Caps()
    pts = union_points(L)
    checked, witnesses = _run_checks(L, pts, caps)
    return SBSCertificate(
        L.spec, L.k, pts,
        lines=L.spanning_pairs(),
        checked=checked, witnesses=witnesses,
        size={"size": len(pts), "lines": len(L)},
    )


def _size_block(M_n: int, edges: int, q: int, size: int) -> dict:
    bound = M_n + (q - 1) * edges
    if size > bound:
        raise CertificateError(f"union has {size} points, above n + (q-1)|E| = {bound}")
    return {"size": size, "n": M_n, "edges": edges, "bound": bound}


def construct_main(M: ProjectiveSystem, G: Graph, evidence: IntegrityEvidence,
                   caps: Caps | None = None, seed: int | None = None) -> SBSCertificate:
    """B(M, G) for a graph whose integrity is at least n - d + 1.

    The evidence is trusted for the hypothesis; whenever caps allow, the
    result is also checked directly against every hyperplane.
    """
    caps = caps or Caps()
    required = M.n - M.d + 1
    if evidence.value < required:
        raise IntegrityHypothesisUnmet(
            f"integrity evidence {evidence.value} ({evidence.kind}) is below n - d + 1 = {required}"
        )
    L = build_lineset(M, G)
    pts = union_points(L)
    checked, witnesses = _run_checks(L, pts, caps)
    if checked["strong"] is False:
        raise CertificateError(f"integrity hypothesis met but hyperplane {witnesses['hyperplane']} is not spanned")
    return SBSCertificate(
        M.spec, M.k, pts,
        lines=L.spanning_pairs(),
        provenance=list(L.provenance),
        evidence={**evidence.to_json(), "required": required, "system": {"n": M.n, "k": M.k, "d": M.d}},
        checked=checked, witnesses=witnesses,
        size=_size_block(M.n, G.m, M.spec.q, len(pts)),
        seed=seed,
    )


def prop_component_condition(M: ProjectiveSystem, G: Graph, max_n: int = 15) -> bool:
    """Exhaustive form of the component-spanning hypothesis.

    For every S, some component C of G - S must have S u C spanning the
    whole space. Exponential in n, intended only as a reference check.
    """
    if M.n > max_n:
        raise SpaceTooLarge(f"exhaustive subset check limited to {max_n} points")
    F = M.field
    n, k = M.n, M.k
    for r in range(n + 1):
        for S in itertools.combinations(range(n), r):
            mask = sum(1 << v for v in S)
            comps = G.components(mask) or [[]]
            if not any(rank([M.points[v] for v in (*S, *C)], F, stop_at=k) == k for C in comps):
                return False
    return True


# -- baselines ----------------------------------------------------------------------

def _standard_system(k: int, spec: FieldSpec) -> ProjectiveSystem:
    G = GeneratorMatrix.from_rows(spec, [[int(i == j) for j in range(k)] for i in range(k)])
    return to_projective_system(G)


def tetrahedron(k: int, q: int, caps: Caps | None = None) -> SBSCertificate:
    """Union of the lines joining k points in general position (the unit vectors)."""
    spec = make_field(*prime_power(q))
    M = _standard_system(k, spec)
    cert = construct_main(M, complete_graph(k), IntegrityEvidence("baseline", k, {"graph": "complete"}), caps)
    expected = math.comb(k, 2) * (q - 1) + k
    if len(cert.points) != expected:
        raise CertificateError(f"tetrahedron has {len(cert.points)} points, expected {expected}")
    return cert


def rational_normal_tangents(k: int, q: int, caps: Caps | None = None) -> SBSCertificate:
    """Tangent lines to the rational normal curve at 2k-3 parameters.

    Parameters are the first 2k-3 field elements in encoding order. The
    curve point is (1, t, ..., t^(k-1)) and the tangent direction is its
    formal derivative.
    """
    p, _ = prime_power(q)
    if q < 2 * k - 3 or p <= k:
        raise HypothesisUnmet(f"need q >= 2k-3 and characteristic > k (k={k}, q={q})")
    caps = caps or Caps()
    spec = make_field(*prime_power(q))
    F = get_field(spec)
    lines = []
    for t in range(2 * k - 3):
        P = tuple(F.pow(t, i) for i in range(k))
        D = tuple(0 if i == 0 else F.mul(i % p, F.pow(t, i - 1)) for i in range(k))
        lines.append(line_through(P, D, F))
    L = LineSet.from_lines(spec, k, lines)
    cert = theorem_avoidance_to_sbs(L, caps)
    cert.size["tangent_bound"] = (2 * k - 3) * (q + 1)
    return cert


@dataclass(frozen=True)
class BoundsReport:
    k: int
    q: int
    size: int
    lower: int
    min_lines: int
    existence_upper: float

    def to_json(self) -> dict:
        return self.__dict__.copy()


def bounds_report(k: int, q: int, size: int, strong: bool | None = None) -> BoundsReport:
    """Context bounds for a strong blocking set of the given size."""
    from .constants import existence_upper_bound

    lower = (q + 1) * (k - 1)
    if strong is True and size < lower:
        raise CertificateError(f"strong blocking set of size {size} below the lower bound {lower}")
    return BoundsReport(k, q, size, lower, k - 1 + (k - 1) // 2, existence_upper_bound(k, q))


# -- minimal codes ---------------------------------------------------------------------

def check_minimal_code(G: GeneratorMatrix, budget: int = 2**12, cross_validate: bool = False) -> bool:
    """True iff no nonzero codeword support strictly contains another one."""
    chunks = list(iter_codewords(G, projective=True, budget=budget))
    S = (np.concatenate(chunks) != 0).astype(np.int64)
    w = S.sum(axis=1)
    inter = S @ S.T
    contained = (inter == w[:, None]) & (w[:, None] < w[None, :])
    minimal = not bool(contained.any())
    if cross_validate:
        M = to_projective_system(G)
        strong = check_strong_blocking(M.points, G.k, G.spec).holds
        if strong != minimal:
            raise CertificateError(f"minimality {minimal} disagrees with strong blocking {strong}")
    return minimal
