"""Mesh generators for tests: octahedron, icospheres, grids, OBJ writing."""

from __future__ import annotations

import numpy as np


def octahedron() -> tuple[np.ndarray, np.ndarray]:
    v = np.array(
        [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]],
        dtype=float,
    )
    f = np.array(
        [
            [0, 2, 4], [2, 1, 4], [1, 3, 4], [3, 0, 4],
            [2, 0, 5], [1, 2, 5], [3, 1, 5], [0, 3, 5],
        ]
    )
    return v, f


def icosahedron() -> tuple[np.ndarray, np.ndarray]:
    phi = (1.0 + np.sqrt(5.0)) / 2.0
    v = np.array(
        [
            [-1, phi, 0], [1, phi, 0], [-1, -phi, 0], [1, -phi, 0],
            [0, -1, phi], [0, 1, phi], [0, -1, -phi], [0, 1, -phi],
            [phi, 0, -1], [phi, 0, 1], [-phi, 0, -1], [-phi, 0, 1],
        ],
        dtype=float,
    )
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    f = np.array(
        [
            [0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
            [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
            [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
            [4, 9, 5], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1],
        ]
    )
    return v, f


def subdivide(v: np.ndarray, f: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    verts = list(map(tuple, v))
    index = {p: i for i, p in enumerate(verts)}
    cache: dict[tuple[int, int], int] = {}

    def midpoint(i: int, j: int) -> int:
        key = (min(i, j), max(i, j))
        if key not in cache:
            m = tuple(0.5 * (np.array(verts[i]) + np.array(verts[j])))
            if m not in index:
                index[m] = len(verts)
                verts.append(m)
            cache[key] = index[m]
        return cache[key]

    faces = []
    for a, b, c in f.tolist():
        ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
        faces.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]])
    return np.array(verts, dtype=float), np.array(faces)


def icosphere(level: int) -> tuple[np.ndarray, np.ndarray]:
    v, f = icosahedron()
    for _ in range(level):
        v, f = subdivide(v, f)
        v = v / np.linalg.norm(v, axis=1, keepdims=True)
    return v, f


def grid_mesh(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Unit square, (n+1)^2 vertices, cells split along the main diagonal."""
    xs = np.linspace(0.0, 1.0, n + 1)
    v = np.array([[x, y, 0.0] for y in xs for x in xs])
    f = []
    for j in range(n):
        for i in range(n):
            v00 = j * (n + 1) + i
            v10 = v00 + 1
            v01 = v00 + (n + 1)
            v11 = v01 + 1
            f.extend([[v00, v10, v11], [v00, v11, v01]])
    return v, np.array(f)


def write_obj(path, vertices: np.ndarray, faces: np.ndarray) -> None:
    with open(path, "w") as fh:
        for x, y, z in vertices:
            fh.write(f"v {float(x)!r} {float(y)!r} {float(z)!r}\n")
        for a, b, c in faces:
            fh.write(f"f {int(a) + 1} {int(b) + 1} {int(c) + 1}\n")
