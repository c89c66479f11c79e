"""Triangulated-surface ingestion and graph-approximated geodesic distances.

Mesh distances come from a Steiner-point chord graph (vertices plus evenly
spaced points on each edge, complete chords within every triangle) and are
therefore upper bounds at graph resolution; criteria on meshes are
diagnostic only and reports carry an error-bar field.
"""

from __future__ import annotations

from dataclasses import dataclass
from heapq import heappop, heappush
from pathlib import Path

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as csgraph_dijkstra

from cmpk.config import DEFAULT_TOL, Tolerances
from cmpk.errors import DisconnectedGraphError, MeshFormatError
from cmpk.spaces import GeodesicSegment, GeodesicSpace, register_space_type


@dataclass(frozen=True)
class TriMesh:
    vertices: np.ndarray  # (nv, 3) float
    faces: np.ndarray     # (nf, 3) int

    @property
    def edges(self) -> np.ndarray:
        e = np.vstack([self.faces[:, [0, 1]], self.faces[:, [1, 2]], self.faces[:, [2, 0]]])
        return np.unique(np.sort(e, axis=1), axis=0)

    def bbox_diag(self) -> float:
        return float(np.linalg.norm(self.vertices.max(0) - self.vertices.min(0)))


def _validate_mesh(vertices: np.ndarray, faces: np.ndarray) -> TriMesh:
    nv = len(vertices)
    if faces.min(initial=0) < 0 or faces.max(initial=-1) >= nv:
        raise MeshFormatError(f"face index out of range (nv={nv})")
    if len(np.unique(np.sort(faces, axis=1), axis=0)) != len(faces):
        raise MeshFormatError("duplicate faces")
    mesh = TriMesh(vertices, faces)
    # manifold edges: each undirected edge in at most two triangles
    e = np.sort(
        np.vstack([faces[:, [0, 1]], faces[:, [1, 2]], faces[:, [2, 0]]]), axis=1
    )
    uniq, counts = np.unique(e, axis=0, return_counts=True)
    bad = uniq[counts > 2]
    if len(bad):
        raise MeshFormatError(f"non-manifold edges: {bad[:8].tolist()}")
    # degenerate triangles
    a = vertices[faces[:, 1]] - vertices[faces[:, 0]]
    b = vertices[faces[:, 2]] - vertices[faces[:, 0]]
    areas = 0.5 * np.linalg.norm(np.cross(a, b), axis=1)
    floor = 1e-12 * mesh.bbox_diag() ** 2
    if (areas <= floor).any():
        idx = int(np.argmax(areas <= floor))
        raise MeshFormatError(f"degenerate triangle at face {idx} (area {areas[idx]:.3g})")
    return mesh


def load_obj(path) -> TriMesh:
    """Wavefront OBJ reader: v/f records only, other records ignored."""
    vertices: list[list[float]] = []
    faces: list[list[int]] = []
    path = Path(path)
    with path.open() as fh:
        for lineno, raw in enumerate(fh, start=1):
            parts = raw.split()
            if not parts or parts[0].startswith("#"):
                continue
            tag = parts[0]
            if tag == "v":
                if len(parts) < 4:
                    raise MeshFormatError("vertex needs 3 coordinates", lineno)
                try:
                    vertices.append([float(x) for x in parts[1:4]])
                except ValueError as e:
                    raise MeshFormatError(f"bad vertex coordinate: {e}", lineno) from e
            elif tag == "f":
                refs = parts[1:]
                if len(refs) != 3:
                    raise MeshFormatError(
                        f"non-triangular face with {len(refs)} vertices", lineno
                    )
                try:
                    idx = [int(r.split("/")[0]) for r in refs]
                except ValueError as e:
                    raise MeshFormatError(f"bad face index: {e}", lineno) from e
                faces.append([i - 1 if i > 0 else len(vertices) + i for i in idx])
    if not vertices or not faces:
        raise MeshFormatError(f"{path} contains no triangulated geometry")
    return _validate_mesh(
        np.asarray(vertices, dtype=float), np.asarray(faces, dtype=np.int64)
    )


class GeodesicGraph:
    """Chord graph: mesh vertices plus `steiner` points per edge.

    Arcs join every pair of nodes sharing a triangle with the straight
    3-space chord as weight (exact in-surface length for coplanar pairs).
    """

    def __init__(self, mesh: TriMesh, steiner: int = 4):
        if steiner < 0:
            raise ValueError("steiner count must be >= 0")
        self.mesh = mesh
        self.steiner = int(steiner)
        nv = len(mesh.vertices)
        edges = mesh.edges
        edge_index = {tuple(e): i for i, e in enumerate(edges.tolist())}
        s = self.steiner

        pos = [mesh.vertices]
        if s > 0:
            frac = (np.arange(1, s + 1) / (s + 1.0))[None, :, None]
            v0 = mesh.vertices[edges[:, 0]][:, None, :]
            v1 = mesh.vertices[edges[:, 1]][:, None, :]
            pos.append((v0 + frac * (v1 - v0)).reshape(-1, 3))
        self.positions = np.vstack(pos)

        def edge_nodes(i: int, j: int) -> list[int]:
            a, b = (i, j) if i < j else (j, i)
            k = edge_index[(a, b)]
            ids = [nv + k * s + m for m in range(s)]
            return ids if (i, j) == (a, b) else ids[::-1]

        rows: list[np.ndarray] = []
        cols: list[np.ndarray] = []
        for f in mesh.faces.tolist():
            nodes = list(f)
            for i, j in ((0, 1), (1, 2), (2, 0)):
                nodes.extend(edge_nodes(f[i], f[j]))
            nodes = np.array(nodes)
            ii, jj = np.triu_indices(len(nodes), k=1)
            rows.append(nodes[ii])
            cols.append(nodes[jj])
        r = np.concatenate(rows)
        c = np.concatenate(cols)
        w = np.linalg.norm(self.positions[r] - self.positions[c], axis=1)
        # drop duplicate arcs (pairs on a shared edge appear once per face)
        n = len(self.positions)
        key = np.minimum(r, c) * n + np.maximum(r, c)
        _, keep = np.unique(key, return_index=True)
        r, c, w = r[keep], c[keep], w[keep]
        self.matrix = csr_matrix(
            (np.concatenate([w, w]), (np.concatenate([r, c]), np.concatenate([c, r]))),
            shape=(n, n),
        )
        self.max_arc = float(w.max())
        comp = csgraph_dijkstra(self.matrix, indices=[0])[0]
        if not np.isfinite(comp).all():
            raise DisconnectedGraphError(
                f"{int(np.isinf(comp).sum())} nodes unreachable from node 0"
            )

    @property
    def n_nodes(self) -> int:
        return self.matrix.shape[0]

    def distances_from(self, sources) -> np.ndarray:
        """Exact shortest-path distances, one row per source (batched, compiled)."""
        return csgraph_dijkstra(self.matrix, indices=list(sources))

    def shortest_path(self, src: int, dst: int) -> tuple[list[int], float]:
        """Dijkstra with lexicographic (distance, node-id) tie-breaking."""
        indptr, indices, data = self.matrix.indptr, self.matrix.indices, self.matrix.data
        n = self.n_nodes
        dist = np.full(n, np.inf)
        pred = np.full(n, -1, dtype=np.int64)
        done = np.zeros(n, dtype=bool)
        dist[src] = 0.0
        heap: list[tuple[float, int]] = [(0.0, src)]
        while heap:
            d, u = heappop(heap)
            if done[u]:
                continue
            done[u] = True
            if u == dst:
                break
            for off in range(indptr[u], indptr[u + 1]):
                v = indices[off]
                nd = d + data[off]
                # strict lexicographic: prefer smaller predecessor id on ties
                if nd < dist[v] or (nd == dist[v] and pred[v] > u):
                    dist[v] = nd
                    pred[v] = u
                    heappush(heap, (nd, v))
        if not done[dst]:
            raise DisconnectedGraphError(f"no path {src} -> {dst}")
        path = [dst]
        while path[-1] != src:
            path.append(int(pred[path[-1]]))
        return path[::-1], float(dist[dst])


class MeshSpace(GeodesicSpace):
    """Geodesic space over a GeodesicGraph; point handles are node ids."""

    name = "mesh"

    def __init__(self, mesh: TriMesh, steiner: int = 4, *,
                 path: str | None = None, tol: Tolerances = DEFAULT_TOL):
        super().__init__(tol)
        self.graph = GeodesicGraph(mesh, steiner)
        self.steiner = int(steiner)
        self.source_path = path
        self._cache: dict[int, np.ndarray] = {}
        self.known_curvature = None

    @property
    def resolution(self) -> float:
        """Length scale below which graph geodesics cannot resolve anything."""
        return self.graph.max_arc

    def _row(self, src: int) -> np.ndarray:
        src = int(src)
        if src not in self._cache:
            if len(self._cache) > 64:
                self._cache.clear()
            self._cache[src] = self.graph.distances_from([src])[0]
        return self._cache[src]

    def distance(self, x, y) -> float:
        return float(self._row(int(x))[int(y)])

    def pairwise_distances(self, sources, targets) -> np.ndarray:
        return self.graph.distances_from(sources)[:, list(targets)]

    def minimal_geodesics(self, x, y) -> list[GeodesicSegment]:
        x, y = int(x), int(y)
        if x == y:
            return [GeodesicSegment(self, x, y, 0.0, lambda t: x)]
        path, total = self.graph.shortest_path(x, y)
        pos = self.graph.positions
        cum = np.concatenate(
            [[0.0], np.cumsum(np.linalg.norm(np.diff(pos[path], axis=0), axis=1))]
        )

        def ev(t, path=path, cum=cum):
            return int(path[int(np.argmin(np.abs(cum - t)))])

        return [GeodesicSegment(self, x, y, total, ev)]

    def sample_ball(self, center, radius, rng):
        row = self._row(int(center))
        nodes = np.flatnonzero(row <= radius)
        return int(nodes[int(rng.integers(len(nodes)))])

    def point_to_data(self, x):
        return int(x)

    def point_from_data(self, data):
        node = int(data)
        if not 0 <= node < self.graph.n_nodes:
            raise ValueError(f"node id {node} out of range")
        return node

    def default_center(self):
        return 0

    def descriptor(self) -> dict:
        d = {"type": "mesh", "steiner": self.steiner}
        if self.source_path is not None:
            d["path"] = self.source_path
        return d


def mesh_space(mesh: TriMesh, steiner: int = 4, *,
               path: str | None = None, tol: Tolerances = DEFAULT_TOL) -> MeshSpace:
    return MeshSpace(mesh, steiner, path=path, tol=tol)


def _mesh_from_descriptor(d: dict, tol: Tolerances) -> MeshSpace:
    return mesh_space(load_obj(d["path"]), int(d.get("steiner", 4)), path=d["path"], tol=tol)


register_space_type("mesh", _mesh_from_descriptor, {"path", "steiner"})
