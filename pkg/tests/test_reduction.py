import itertools
import random

import pytest

from blocksmith.codes import identity_generator, rs_generator, system_from_points, to_projective_system
from blocksmith.config import Caps
from blocksmith.errors import AvoidanceNotCertified, DomainError, NotCollinear, NotDistinct
from blocksmith.field import GFq, field_of_order, get_field
from blocksmith.geometry import enumerate_points, line_through, normalize, span_dim
from blocksmith.graphs import Graph, complete_graph, cycle_graph, empty_graph
from blocksmith.reduction import (
    derive_sbs, derived_lineset, field_reduce_point, is_viable_quad, reduction_for, repeat_derivation,
    subline_through, viable_set,
)
from blocksmith.sbs import IntegrityEvidence, LineSet, check_strong_blocking, union_points
from oracles import on_subline_oracle

GF4, GF9, GF16 = field_of_order(4), field_of_order(9), field_of_order(16)


def triangle(spec):
    return to_projective_system(identity_generator(spec, 3))


def test_reduction_needs_square():
    with pytest.raises(DomainError):
        reduction_for(field_of_order(8))


def test_reduce_axis_point():
    R = reduction_for(GF4)
    assert set(field_reduce_point((1, 0), R)) == {(1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 0, 0)}


@pytest.mark.parametrize("spec,k", [(GF4, 2), (GF4, 3), (GF9, 2), (GF16, 2)])
def test_reduction_is_a_partition_into_lines(spec, k):
    R = reduction_for(spec)
    F, Fs = get_field(spec), get_field(R.small)
    images = [field_reduce_point(P, R) for P in enumerate_points(k, F)]
    for img in images:
        assert len(img) == Fs.q + 1 and span_dim(img, Fs) == 1
    flat = [P for img in images for P in img]
    assert len(flat) == len(set(flat)) == len(enumerate_points(2 * k, Fs))


def test_scalar_invariance():
    R = reduction_for(GF9)
    F = get_field(GF9)
    P = (1, 4, 7)
    for lam in range(1, 9):
        assert field_reduce_point([F.mul(lam, x) for x in P], R) == field_reduce_point(P, R)


def test_subline_pg14():
    R = reduction_for(GF4)
    A, B, C = (1, 0), (0, 1), (1, 1)
    sub = subline_through(A, B, C, R)
    assert set(sub) == {A, B, C}
    assert len(set(enumerate_points(2, get_field(GF4))) - set(sub)) == 2
    with pytest.raises(NotDistinct):
        subline_through(A, A, C, R)
    with pytest.raises(NotCollinear):
        subline_through((1, 0, 0), (0, 1, 0), (0, 0, 1), reduction_for(GF4))


@pytest.mark.parametrize("spec", [GF4, GF9, GF16])
def test_subline_matches_oracle(spec):
    R = reduction_for(spec)
    F = get_field(spec)
    rng = random.Random(spec.q)
    pts = enumerate_points(3, F)
    for _ in range(10):
        P, Q = rng.sample(pts, 2)
        line = line_through(P, Q, F)
        A, B, C = rng.sample(line, 3)
        sub = subline_through(A, B, C, R)
        assert len(sub) == R.small.q + 1
        assert {A, B, C} <= set(sub)
        for D in line:
            assert (D in sub) == on_subline_oracle(F, R.small.q, A, B, C, D)


def test_viable_set_triangle():
    M = triangle(GF4)
    V = viable_set(M, complete_graph(3))
    R = reduction_for(GF4)
    F = get_field(GF4)
    assert len(V.quads) == 3
    assert len(V.points()) <= 9
    for quad in V.quads:
        assert is_viable_quad(quad, R)
        assert span_dim(quad, F) == 1
    assert viable_set(M, empty_graph(3)).points() == []


def test_viable_single_edge():
    M = system_from_points(GF4, [(1, 0), (0, 1)])
    V = viable_set(M, Graph.from_edges(2, [(0, 1)]))
    assert len(V.quads) == 1 and len(set(V.quads[0])) == 4


def test_derive_triangle():
    cert = derive_sbs(triangle(GF4), complete_graph(3))
    assert (cert.k, cert.q) == (6, 2)
    assert cert.checked["strong"] is True
    assert 15 <= len(cert.points) <= 27
    assert check_strong_blocking(cert.points, 6, cert.spec).holds


def test_derive_rs_cycle():
    M = to_projective_system(rs_generator(GF9, 5, 2))
    cert = derive_sbs(M, cycle_graph(5), IntegrityEvidence.exact(cycle_graph(5)))
    assert (cert.k, cert.q) == (4, 3)
    assert cert.checked["strong"] is True
    assert len(cert.points) >= 12


def test_derive_requires_certificate():
    F = get_field(GF4)
    centre = (1, 0, 0)
    others = [(0, 1, 0), (0, 0, 1), (0, 1, 1)]
    M = system_from_points(GF4, [centre] + others)
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    with pytest.raises(AvoidanceNotCertified):
        derive_sbs(M, star)


def test_repeat_zero_and_one():
    L = LineSet.from_pairs(GF4, [((1, 0, 0), (0, 1, 0)), ((1, 0, 0), (0, 0, 1)), ((0, 1, 0), (0, 0, 1))])
    chain0 = repeat_derivation(L, 0)
    assert len(chain0.steps) == 1 and chain0.final.points == union_points(L)
    chain1 = repeat_derivation(L, 1)
    assert chain1.verify_links()
    assert chain1.final.points == derive_sbs(triangle(GF4), complete_graph(3)).points


@pytest.mark.slow
def test_repeat_twice_over_gf16():
    L = LineSet.from_pairs(GF16, [((1, 0, 0), (0, 1, 0)), ((1, 0, 0), (0, 0, 1)), ((0, 1, 0), (0, 0, 1))])
    chain = repeat_derivation(L, 2)
    assert chain.verify_links()
    final = chain.final
    assert (final.k, final.q) == (12, 2)
    assert final.checked["strong"] is True
    assert final.size["lines"] <= 48
