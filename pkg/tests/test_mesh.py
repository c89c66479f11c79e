"""Mesh ingestion, Steiner graphs, graph-distance quality."""

import math

import numpy as np
import pytest

from cmpk import mesh as mesh_mod
from cmpk.errors import DisconnectedGraphError, MeshFormatError
from cmpk.spaces import space_from_descriptor

from meshgen import grid_mesh, icosphere, octahedron, write_obj


@pytest.fixture
def octa_path(tmp_path):
    v, f = octahedron()
    p = tmp_path / "octa.obj"
    write_obj(p, v, f)
    return p


# ---------------------------------------------------------------------------
# OBJ loading


def test_load_octahedron_euler_counts(octa_path):
    m = mesh_mod.load_obj(octa_path)
    assert len(m.vertices) == 6
    assert len(m.faces) == 8
    assert len(m.edges) == 12  # V - E + F = 2


def test_load_rejects_quad_faces(tmp_path):
    p = tmp_path / "quad.obj"
    p.write_text("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n")
    with pytest.raises(MeshFormatError, match="non-triangular face"):
        mesh_mod.load_obj(p)
    with pytest.raises(MeshFormatError, match="line 5"):
        mesh_mod.load_obj(p)


def test_load_icosphere_level3_counts(tmp_path):
    v, f = icosphere(3)
    p = tmp_path / "ico3.obj"
    write_obj(p, v, f)
    m = mesh_mod.load_obj(p)
    assert len(m.vertices) == 642
    assert len(m.faces) == 1280


def test_load_ignores_comments_and_other_records(tmp_path):
    p = tmp_path / "extra.obj"
    p.write_text(
        "# comment\nvn 0 0 1\nvt 0 0\no thing\n"
        "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1/1/1 2/2/2 3/3/3\n"
    )
    m = mesh_mod.load_obj(p)
    assert len(m.faces) == 1


def test_load_rejects_bad_vertex(tmp_path):
    p = tmp_path / "bad.obj"
    p.write_text("v 0 0\n")
    with pytest.raises(MeshFormatError, match="line 1"):
        mesh_mod.load_obj(p)


def test_non_manifold_rejected(tmp_path):
    p = tmp_path / "nm.obj"
    # three triangles sharing one edge
    p.write_text(
        "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 -1 0\nv 0 0 1\n"
        "f 1 2 3\nf 1 2 4\nf 1 2 5\n"
    )
    with pytest.raises(MeshFormatError, match="non-manifold"):
        mesh_mod.load_obj(p)


def test_degenerate_triangle_rejected(tmp_path):
    p = tmp_path / "deg.obj"
    p.write_text("v 0 0 0\nv 1 0 0\nv 2 0 0\nf 1 2 3\n")
    with pytest.raises(MeshFormatError, match="degenerate"):
        mesh_mod.load_obj(p)


def test_out_of_range_index_rejected(tmp_path):
    p = tmp_path / "oob.obj"
    p.write_text("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 9\n")
    with pytest.raises(MeshFormatError, match="out of range"):
        mesh_mod.load_obj(p)


# ---------------------------------------------------------------------------
# graph distances


def test_octahedron_opposite_vertices_two_edges(octa_path):
    m = mesh_mod.load_obj(octa_path)
    space = mesh_mod.mesh_space(m, steiner=0)
    # antipodal vertices: two graph edges of length sqrt(2)
    assert space.distance(0, 1) == pytest.approx(2.0 * math.sqrt(2.0), rel=1e-12)


def test_grid_diagonal(tmp_path):
    v, f = grid_mesh(8)
    p = tmp_path / "grid.obj"
    write_obj(p, v, f)
    space = mesh_mod.mesh_space(mesh_mod.load_obj(p), steiner=4)
    corner_a = 0
    corner_b = len(v) - 1
    assert space.distance(corner_a, corner_b) == pytest.approx(math.sqrt(2.0), rel=0.05)


def test_graph_distance_monotone_in_steiner(octa_path):
    m = mesh_mod.load_obj(octa_path)
    prev = None
    for s in (0, 2, 4, 8):
        space = mesh_mod.mesh_space(m, steiner=s)
        d = space.distance(0, 1)
        if prev is not None:
            assert d <= prev + 1e-12
        prev = d


def test_icosphere_distance_error_vs_analytic(rng):
    v, f = icosphere(2)
    space = mesh_mod.mesh_space(mesh_mod.TriMesh(v, f), steiner=4)
    nv = len(v)
    pairs = rng.integers(0, nv, size=(100, 2))
    pairs = pairs[pairs[:, 0] != pairs[:, 1]]
    rows = space.pairwise_distances(np.unique(pairs[:, 0]), range(nv))
    src_index = {int(s): i for i, s in enumerate(np.unique(pairs[:, 0]))}
    errs = []
    for a, b in pairs:
        graph_d = rows[src_index[int(a)], int(b)]
        true_d = math.atan2(np.linalg.norm(np.cross(v[a], v[b])), float(np.dot(v[a], v[b])))
        errs.append(abs(graph_d - true_d) / true_d)
    assert float(np.median(errs)) <= 0.08


def test_metric_axioms_exact(octa_path, rng):
    space = mesh_mod.mesh_space(mesh_mod.load_obj(octa_path), steiner=2)
    n = space.graph.n_nodes
    for _ in range(200):
        x, y, z = (int(v) for v in rng.integers(0, n, 3))
        dxy = space.distance(x, y)
        assert dxy == pytest.approx(space.distance(y, x), abs=1e-12)
        assert dxy <= space.distance(x, z) + space.distance(z, y) + 1e-12


def test_geodesic_paths_and_resolution(octa_path, rng):
    space = mesh_mod.mesh_space(mesh_mod.load_obj(octa_path), steiner=3)
    seg = space.geodesic(0, 1)
    assert seg.length == pytest.approx(space.distance(0, 1), abs=1e-12)
    # node-resolution evaluation: positions along the path are within one arc
    for t in np.linspace(0.0, seg.length, 7):
        node = seg.at(t)
        assert space.distance(0, node) <= t + space.resolution + 1e-12


def test_shortest_path_deterministic_ties(octa_path):
    space = mesh_mod.mesh_space(mesh_mod.load_obj(octa_path), steiner=0)
    # many equal-length paths between antipodes; tie-breaking must be stable
    p1, _ = space.graph.shortest_path(0, 1)
    p2, _ = space.graph.shortest_path(0, 1)
    assert p1 == p2


def test_sample_ball_within_radius(octa_path, rng):
    space = mesh_mod.mesh_space(mesh_mod.load_obj(octa_path), steiner=2)
    for _ in range(50):
        node = space.sample_ball(0, 1.2, rng)
        assert space.distance(0, node) <= 1.2


def test_disconnected_graph_rejected(tmp_path):
    p = tmp_path / "two.obj"
    p.write_text(
        "v 0 0 0\nv 1 0 0\nv 0 1 0\n"
        "v 5 5 5\nv 6 5 5\nv 5 6 5\n"
        "f 1 2 3\nf 4 5 6\n"
    )
    with pytest.raises(DisconnectedGraphError):
        mesh_mod.mesh_space(mesh_mod.load_obj(p), steiner=1)


def test_mesh_descriptor_round_trip(octa_path):
    desc = {"type": "mesh", "path": str(octa_path), "steiner": 2}
    space = space_from_descriptor(desc)
    assert space.steiner == 2
    assert space.descriptor()["path"] == str(octa_path)
