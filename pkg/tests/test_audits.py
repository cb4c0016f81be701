import pytest

from projquad import (
    ComplexBuilder,
    SimplicialBuilder,
    TwoColouring,
    ball_check,
    boundary_operator_audit,
    cycle_parity_vs_homology,
    fineness_check,
    odd_cycle_sphere,
    parity_audit,
    quadrangulation_check,
    sample_closed_walks,
    sphere_check,
    verify_z2_map_to_box,
)
from projquad.errors import MissingCoordinates, NotAClosedWalk, NotOnUnitSphere
from projquad.symmetry import bichromatic_edge_cells


def test_sphere_check_accepts_octahedron(octahedron):
    assert sphere_check(octahedron).ok
    assert sphere_check(octahedron, n=2).ok
    rep = sphere_check(octahedron, n=3)
    assert not rep.ok
    assert any(v.code == "WrongDimension" for v in rep.violations)


def test_sphere_check_rejects_projective_plane(projective_plane):
    rep = sphere_check(projective_plane)
    assert not rep.ok
    assert any(v.code == "WrongHomology" for v in rep.violations)


def test_sphere_check_rejects_ball(interval_ball):
    rep = sphere_check(interval_ball)
    assert not rep.ok


def test_sphere_check_zero_dimensional():
    b = ComplexBuilder()
    b.add_vertex()
    b.add_vertex()
    two_points = b.build()
    assert sphere_check(two_points, n=0).ok


def test_ball_check_interval(interval_ball):
    assert ball_check(interval_ball).ok


def test_ball_check_rejects_sphere(octahedron):
    rep = ball_check(octahedron)
    assert not rep.ok
    assert any(v.code == "NoBoundary" for v in rep.violations)


def test_ball_check_triangle_disc():
    sb = SimplicialBuilder()
    for _ in range(3):
        sb.add_vertex()
    sb.add_simplex((0, 1, 2))
    assert ball_check(sb.build()).ok


def test_boundary_operator_audit(octahedron, projective_plane):
    assert boundary_operator_audit(octahedron).ok
    assert boundary_operator_audit(projective_plane).ok


def test_quadrangulation_check_on_odd_cycle():
    sq = odd_cycle_sphere(2)
    edge_cells = bichromatic_edge_cells(sq.complex, sq.colouring)
    assert quadrangulation_check(sq.complex, edge_cells=edge_cells).ok


def test_quadrangulation_check_fails_without_selected_edges(octahedron):
    rep = quadrangulation_check(octahedron, edge_cells=frozenset())
    assert not rep.ok
    assert any(v.code == "NoEdge" for v in rep.violations)


def test_quadrangulation_check_against_graph(octahedron):
    # the 1-skeleton graph makes each face induce a triangle, which is not
    # complete bipartite
    g = octahedron.one_skeleton_graph()
    rep = quadrangulation_check(octahedron, g)
    # each triangle induces a triangle, not complete bipartite
    assert not rep.ok
    assert any(v.code == "NotCompleteBipartite" for v in rep.violations)


def test_parity_audit_on_built_sphere():
    sq = odd_cycle_sphere(3)
    edge_cells = bichromatic_edge_cells(sq.complex, sq.colouring)
    assert parity_audit(sq.complex, edge_cells=edge_cells).ok


def test_parity_audit_flags_odd_selection(octahedron):
    # select all three edges of one triangle: odd count (3) on that face
    tri = octahedron.cell(2, 0)
    rep = parity_audit(octahedron, edge_cells=frozenset(tri.facets))
    assert not rep.ok
    assert any(v.code == "OddSelection" for v in rep.violations)


def test_cycle_parity_vs_homology(octahedron):
    col = TwoColouring(black=frozenset({0, 1, 2}), white=frozenset({3, 4, 5}))
    edge_cells = bichromatic_edge_cells(octahedron, col)
    # equator square 0-1-3-4 as a closed walk
    ids = {frozenset(octahedron.cell(1, i).vertices): i for i in range(octahedron.n_cells(1))}
    walk = [ids[frozenset(p)] for p in ((0, 1), (1, 3), (3, 4), (4, 0))]
    out = cycle_parity_vs_homology(octahedron, walk, edge_cells=edge_cells)
    assert out["length"] == 4
    assert out["consistent"]
    assert out["homology_class"] == 0
    with pytest.raises(NotAClosedWalk):
        cycle_parity_vs_homology(octahedron, walk[:2], edge_cells=edge_cells)


def test_sample_closed_walks_deterministic(octahedron):
    col = TwoColouring(black=frozenset({0, 1, 2}), white=frozenset({3, 4, 5}))
    edge_cells = bichromatic_edge_cells(octahedron, col)
    w1 = sample_closed_walks(octahedron, edge_cells, 20, seed=3)
    w2 = sample_closed_walks(octahedron, edge_cells, 20, seed=3)
    assert w1 == w2
    assert len(w1) == 20
    for walk in w1:
        out = cycle_parity_vs_homology(octahedron, walk, edge_cells=edge_cells)
        assert out["consistent"]


def test_box_map_on_odd_cycle():
    sq = odd_cycle_sphere(2)
    assert verify_z2_map_to_box(sq.complex, sq.colouring, sq.graph, sq.labels, involution=sq.involution).ok


def test_fineness_requires_coordinates(projective_plane):
    col = TwoColouring(black=frozenset({0, 2, 4}), white=frozenset({1, 3, 5}))
    with pytest.raises(MissingCoordinates):
        fineness_check(projective_plane, col)


def test_fineness_requires_unit_sphere(interval_ball):
    col = TwoColouring(black=frozenset({0, 1}), white=frozenset({2}))
    with pytest.raises(NotOnUnitSphere):
        fineness_check(interval_ball, col)


def test_fineness_octahedron(octahedron):
    col = TwoColouring(black=frozenset({0, 1, 2}), white=frozenset({3, 4, 5}))
    out = fineness_check(octahedron, col)
    # bichromatic edges have length sqrt(2), threshold is 2/sqrt(5)
    assert out["fine"] is False
    assert abs(out["max_bichromatic_edge_length"] - 2 ** 0.5) < 1e-12
