"""Field reduction from PG(K-1, q^2) to PG(2K-1, q) and derived strong blocking sets.

Each coordinate over GF(q^2) is written in the basis {1, w} of GF(q^2) over
GF(q), where w is the class of x modulo the defining polynomial. A point
<v> then maps to the GF(q)-span of the expansions of v and w*v, which is a
line of the larger space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .codes import ProjectiveSystem
from .config import Caps
from .errors import AvoidanceNotCertified, CertificateError, DomainError, NotCollinear, NotDistinct
from .field import FieldSpec, GF, coordinate_table, get_field, make_field, subfield_embedding
from .geometry import Point, gaussian_binomial, line_through, normalize, num_points
from .graphs import Graph
from .sbs import (
    IntegrityEvidence,
    LineSet,
    SBSCertificate,
    build_lineset,
    check_avoidance,
    check_strong_blocking,
    union_points,
)


@dataclass(frozen=True)
class ReductionMap:
    """Data for reducing GF(q^2) coordinates to pairs over GF(q)."""

    big: FieldSpec
    small: FieldSpec

    @property
    def omega(self) -> int:
        return get_field(self.big).generator

    @property
    def table(self) -> np.ndarray:
        return _coord_table(self.big, self.small)

    @property
    def embedding(self) -> list[int]:
        return _embedding(self.big, self.small)


@lru_cache(maxsize=None)
def _coord_table(big: FieldSpec, small: FieldSpec) -> np.ndarray:
    return coordinate_table(get_field(big), get_field(small))


@lru_cache(maxsize=None)
def _embedding(big: FieldSpec, small: FieldSpec) -> list[int]:
    return subfield_embedding(get_field(big), get_field(small))


def reduction_for(big: FieldSpec) -> ReductionMap:
    if big.m % 2:
        raise DomainError(f"{big} is not a quadratic extension")
    return ReductionMap(big, make_field(big.p, big.m // 2))


def _expand(v: Sequence[int], R: ReductionMap) -> tuple[int, ...]:
    tab = R.table
    return tuple(int(c) for x in v for c in tab[x])


def field_reduce_point(P: Sequence[int], R: ReductionMap) -> tuple[Point, ...]:
    """The line of PG(2K-1, q) spanned by the expansions of P and w*P."""
    Fb = get_field(R.big)
    Fs = get_field(R.small)
    a = normalize(_expand(P, R), Fs)
    b = normalize(_expand([Fb.mul(R.omega, x) for x in P], R), Fs)
    return tuple(line_through(a, b, Fs))


def _solve_pair(a, b, c, F: GF) -> tuple[int, int]:
    """alpha, beta with c = alpha a + beta b, or NotCollinear."""
    k = len(a)
    for i in range(k):
        for j in range(i + 1, k):
            det = F.sub(F.mul(a[i], b[j]), F.mul(a[j], b[i]))
            if det:
                alpha = F.div(F.sub(F.mul(c[i], b[j]), F.mul(c[j], b[i])), det)
                beta = F.div(F.sub(F.mul(a[i], c[j]), F.mul(a[j], c[i])), det)
                for t in range(k):
                    if F.add(F.mul(alpha, a[t]), F.mul(beta, b[t])) != c[t]:
                        raise NotCollinear("third point is off the line through the first two")
                return alpha, beta
    raise NotDistinct("first two points coincide")


def subline_through(A: Point, B: Point, C: Point, R: ReductionMap) -> list[Point]:
    """The GF(q)-subline through three collinear points of a GF(q^2)-line.

    With C = alpha A + beta B, the subline is {alpha A + t beta B : t in GF(q)}
    together with B, so A, B, C sit at parameters 0, infinity, 1.
    """
    if len({A, B, C}) < 3:
        raise NotDistinct("subline needs three distinct points")
    F = get_field(R.big)
    alpha, beta = _solve_pair(A, B, C, F)
    a = [F.mul(alpha, x) for x in A]
    b = [F.mul(beta, x) for x in B]
    pts = {tuple(B)}
    for t in R.embedding:
        pts.add(normalize([F.add(x, F.mul(t, y)) for x, y in zip(a, b)], F))
    return sorted(pts)


@dataclass(frozen=True)
class ViableSet:
    spec: FieldSpec
    k: int
    quads: tuple[tuple[Point, Point, Point, Point], ...]

    def points(self) -> list[Point]:
        return sorted({P for quad in self.quads for P in quad})


def _quadruple(line: Sequence[Point], Pa: Point, Pb: Point, R: ReductionMap):
    Q3 = next(P for P in line if P not in (Pa, Pb))
    sub = set(subline_through(Pa, Pb, Q3, R))
    Q4 = next(P for P in line if P not in sub)
    return (Pa, Pb, Q3, Q4)


def viable_set(M: ProjectiveSystem, G: Graph) -> ViableSet:
    """Quadruples (P_a, P_b, Q3, Q4) per edge line; Q3, Q4 lexicographically first."""
    L = build_lineset(M, G)
    R = reduction_for(M.spec)
    done = set()
    quads = []
    for (i, j), li in L.provenance:
        if li in done:
            continue
        done.add(li)
        quads.append(_quadruple(L.lines[li], M.points[i], M.points[j], R))
    return ViableSet(M.spec, M.k, tuple(quads))


def viable_set_for_lines(L: LineSet) -> ViableSet:
    """Generic choice for any line set: the two smallest points, then Q3, Q4 as above."""
    R = reduction_for(L.spec)
    quads = tuple(_quadruple(ln, ln[0], ln[1], R) for ln in L.lines)
    return ViableSet(L.spec, L.k, quads)


def is_viable_quad(quad: Sequence[Point], R: ReductionMap) -> bool:
    """No GF(q)-subline contains all four points."""
    A, B, C, D = quad
    return D not in subline_through(A, B, C, R)


def derived_lineset(V: ViableSet) -> LineSet:
    R = reduction_for(V.spec)
    lines = [field_reduce_point(P, R) for P in V.points()]
    return LineSet.from_lines(R.small, 2 * V.k, lines)


# -- certified derivation --------------------------------------------------------------

def _within(count: int, cap: int) -> bool:
    return count <= cap


def _certify_source(L: LineSet, caps: Caps) -> tuple[str, dict]:
    """How the source union is known to be a strong blocking set, or ('', checked)."""
    checked: dict = {}
    q = L.spec.q
    if L.k == 2 or _within(gaussian_binomial(L.k, 2, q), caps.max_codim2):
        checked["avoidance"] = check_avoidance(L, caps.max_codim2).holds
    else:
        checked["avoidance"] = "skipped"
    if _within(num_points(L.k, q), caps.max_hyperplanes):
        checked["strong"] = check_strong_blocking(union_points(L), L.k, L.spec, caps.max_hyperplanes).holds
    else:
        checked["strong"] = "skipped"
    if checked["avoidance"] is True:
        return "avoidance", checked
    if checked["strong"] is True:
        return "strong", checked
    return "", checked


def _source_certificate(L: LineSet, checked: dict, evidence: dict | None) -> SBSCertificate:
    pts = union_points(L)
    return SBSCertificate(L.spec, L.k, pts, lines=L.spanning_pairs(), provenance=list(L.provenance),
                          evidence=evidence, checked=checked, size={"size": len(pts), "lines": len(L)})


def _derive_step(L: LineSet, V: ViableSet, caps: Caps, source: SBSCertificate, basis: str,
                 seed: int | None) -> SBSCertificate:
    D = derived_lineset(V)
    pts = union_points(D)
    q = D.spec.q
    checked: dict = {}
    witnesses: dict = {}
    if _within(num_points(D.k, q), caps.max_hyperplanes):
        res = check_strong_blocking(pts, D.k, D.spec, caps.max_hyperplanes)
        checked["strong"] = res.holds
        if not res.holds:
            witnesses["hyperplane"] = res.witness
    else:
        checked["strong"] = "skipped"
    if checked["strong"] is False:
        raise CertificateError(f"derived union fails at hyperplane {witnesses['hyperplane']}")
    n_viable = len(V.points())
    return SBSCertificate(
        D.spec, D.k, pts,
        lines=D.spanning_pairs(),
        evidence={"kind": "derived", "source_basis": basis},
        checked=checked, witnesses=witnesses,
        size={"size": len(pts), "viable": n_viable, "lines": len(D), "bound": n_viable * (q + 1)},
        seed=seed,
        source={"sha256": source.content_hash(), "ambient": {"k": L.k, "q": L.spec.q},
                "lines": len(L), "checked": source.checked},
    )


def derive_sbs(M: ProjectiveSystem, G: Graph, evidence: IntegrityEvidence | None = None,
               caps: Caps | None = None, seed: int | None = None) -> SBSCertificate:
    """Derived strong blocking set in PG(2K-1, q) from B(M, G) over GF(q^2).

    The source must be certified: by integrity evidence of at least n - d + 1,
    or else by a direct avoidance or strong-blocking check within the caps.
    """
    caps = caps or Caps()
    L = build_lineset(M, G)
    if evidence is not None and evidence.value >= M.n - M.d + 1:
        basis, checked = "integrity", {}
        ev = {**evidence.to_json(), "required": M.n - M.d + 1}
    else:
        basis, checked = _certify_source(L, caps)
        ev = None
    if not basis:
        raise AvoidanceNotCertified(f"source line set not certified ({checked})")
    source = _source_certificate(L, checked, ev)
    return _derive_step(L, viable_set(M, G), caps, source, basis, seed)


@dataclass
class DerivationChain:
    steps: list[SBSCertificate] = field(default_factory=list)

    @property
    def final(self) -> SBSCertificate:
        return self.steps[-1]

    def hashes(self) -> list[str]:
        return [c.content_hash() for c in self.steps]

    def verify_links(self) -> bool:
        return all(c.source and c.source["sha256"] == prev.content_hash()
                   for prev, c in zip(self.steps, self.steps[1:]))


def repeat_derivation(L: LineSet, r: int, caps: Caps | None = None,
                      seed: int | None = None) -> DerivationChain:
    """Apply r reduction steps GF(q^(2^r)) -> ... -> GF(q) to a line set.

    Step 0 of the chain certifies the input itself. A step whose source cannot
    be checked within the caps is marked "assumed" rather than verified.
    """
    caps = caps or Caps()
    if r < 0:
        raise DomainError("r must be >= 0")
    basis, checked = _certify_source(L, caps)
    if not basis and (checked["avoidance"] is False or checked["strong"] is False):
        raise AvoidanceNotCertified(f"input line set not certified ({checked})")
    chain = DerivationChain([_source_certificate(L, checked, {"kind": "input", "basis": basis or "assumed"})])
    current = L
    for _ in range(r):
        prev = chain.steps[-1]
        cert = _derive_step(current, viable_set_for_lines(current), caps, prev,
                            prev.evidence["basis"], seed)
        D = LineSet.from_pairs(cert.spec, cert.lines)
        basis, checked = _certify_source(D, caps)
        if not basis and (checked["avoidance"] is False or checked["strong"] is False):
            raise AvoidanceNotCertified(f"intermediate line set not certified ({checked})")
        cert.checked.update({"avoidance": checked["avoidance"]})
        cert.evidence["basis"] = basis or "assumed"
        chain.steps.append(cert)
        current = D
    return chain
