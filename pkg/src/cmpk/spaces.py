"""Geodesic metric spaces: a uniform interface plus exact analytic examples.

Point handles are space-specific and opaque to callers: numpy vectors for the
plane / sphere / hyperboloid, ``(r, theta)`` tuples for the cone, ``(ray, r)``
for the tripod.  Spaces are immutable after construction; all randomness is
caller-supplied through numpy Generators.
"""

from __future__ import annotations

import json
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from cmpk.config import DEFAULT_TOL, Tolerances
from cmpk.errors import CmpkError, ShootUnavailable, SpaceDescriptorError

TWO_PI = 2.0 * math.pi


@dataclass
class GeodesicSegment:
    """A minimal geodesic, arclength-parametrized on [0, length]."""

    space: "GeodesicSpace"
    start: object
    end: object
    length: float
    _eval: Callable[[float], object]

    def at(self, t: float):
        """Point at arclength t from the start (tiny overshoot clamped)."""
        if t < -self.space.tol.geo or t > self.length + self.space.tol.geo:
            raise ValueError(f"t={t} outside [0, {self.length}]")
        return self._eval(min(max(t, 0.0), self.length))

    def subsegment(self, t0: float, t1: float) -> "GeodesicSegment":
        """Restriction from arclength t0 to t1; t1 < t0 reverses orientation."""
        sign = 1.0 if t1 >= t0 else -1.0
        return GeodesicSegment(
            self.space,
            self.at(t0),
            self.at(t1),
            abs(t1 - t0),
            lambda s, _t0=t0, _sign=sign: self._eval(_t0 + _sign * s),
        )

    def reversed(self) -> "GeodesicSegment":
        return self.subsegment(self.length, 0.0)

    def midpoint(self):
        return self.at(0.5 * self.length)


class GeodesicSpace(ABC):
    """Abstract geodesic metric space."""

    name: str = "abstract"
    known_curvature: float | None = None

    def __init__(self, tol: Tolerances = DEFAULT_TOL):
        self.tol = tol

    @abstractmethod
    def distance(self, x, y) -> float: ...

    @abstractmethod
    def minimal_geodesics(self, x, y) -> list[GeodesicSegment]:
        """All minimal geodesics from x to y, up to tie tolerance."""

    @abstractmethod
    def sample_ball(self, center, radius: float, rng: np.random.Generator):
        """Draw a point of the closed metric ball (uniform direction, uniform radius)."""

    @abstractmethod
    def point_to_data(self, x): ...

    @abstractmethod
    def point_from_data(self, data): ...

    @abstractmethod
    def default_center(self): ...

    @abstractmethod
    def descriptor(self) -> dict: ...

    def geodesic(self, x, y) -> GeodesicSegment:
        return self.minimal_geodesics(x, y)[0]

    def points_equal(self, x, y) -> bool:
        return self.distance(x, y) <= self.tol.pt

    def shoot(self, p, phi: float, length: float):
        """Endpoint of the unit-speed geodesic from p in direction angle phi."""
        raise ShootUnavailable(f"{self.name} has no angle-parametrized directions")

    def _segment(self, start, end, length, evaluator) -> GeodesicSegment:
        return GeodesicSegment(self, start, end, float(length), evaluator)


# ---------------------------------------------------------------------------
# Euclidean plane


class EuclideanPlane(GeodesicSpace):
    name = "plane"
    known_curvature = 0.0

    def distance(self, x, y) -> float:
        return float(np.hypot(y[0] - x[0], y[1] - x[1]))

    def minimal_geodesics(self, x, y) -> list[GeodesicSegment]:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        d = self.distance(x, y)
        if d == 0.0:
            return [self._segment(x, y, 0.0, lambda t: x)]
        u = (y - x) / d
        return [self._segment(x, y, d, lambda t: x + t * u)]

    def shoot(self, p, phi: float, length: float):
        return np.asarray(p, dtype=float) + length * np.array(
            [math.cos(phi), math.sin(phi)]
        )

    def sample_ball(self, center, radius, rng):
        return self.shoot(center, rng.uniform(0.0, TWO_PI), radius * rng.uniform())

    def point_to_data(self, x):
        return [float(x[0]), float(x[1])]

    def point_from_data(self, data):
        return np.asarray(data, dtype=float)

    def default_center(self):
        return np.zeros(2)

    def descriptor(self) -> dict:
        return {"type": "plane"}


# ---------------------------------------------------------------------------
# Round sphere of curvature k > 0 (unit-sphere handles, distances scaled)


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


class Sphere(GeodesicSpace):
    name = "sphere"

    def __init__(self, k: float, tol: Tolerances = DEFAULT_TOL):
        super().__init__(tol)
        if not (1e-6 <= k <= 1e6):
            raise SpaceDescriptorError(f"sphere requires k in [1e-6, 1e6], got {k}")
        self.k = float(k)
        self.radius = 1.0 / math.sqrt(k)
        self.known_curvature = self.k

    def _check(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if abs(np.dot(x, x) - 1.0) > 1e-10:
            raise ValueError("sphere handle must be a unit 3-vector")
        return x

    def distance(self, x, y) -> float:
        x, y = np.asarray(x, float), np.asarray(y, float)
        return self.radius * math.atan2(np.linalg.norm(np.cross(x, y)), float(np.dot(x, y)))

    def _basis(self, p: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        ref = np.array([0.0, 0.0, 1.0]) if abs(p[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
        u = _unit(np.cross(ref, p))
        return u, np.cross(p, u)

    def _arc(self, x, w, length) -> GeodesicSegment:
        def ev(t, x=x, w=w):
            a = t / self.radius
            return math.cos(a) * x + math.sin(a) * w

        return self._segment(x, ev(length), length, ev)

    def minimal_geodesics(self, x, y) -> list[GeodesicSegment]:
        x, y = self._check(x), self._check(y)
        d = self.distance(x, y)
        if d == 0.0:
            return [self._segment(x, y, 0.0, lambda t: x)]
        if math.pi * self.radius - d <= self.tol.tie:
            # antipodal: a continuum of minimal geodesics; report two of them
            u, v = self._basis(x)
            return [self._arc(x, u, d), self._arc(x, -u, d)]
        w = _unit(y - float(np.dot(x, y)) * x)
        return [self._arc(x, w, d)]

    def shoot(self, p, phi: float, length: float):
        p = self._check(p)
        u, v = self._basis(p)
        w = math.cos(phi) * u + math.sin(phi) * v
        a = length / self.radius
        return math.cos(a) * p + math.sin(a) * w

    def sample_ball(self, center, radius, rng):
        return self.shoot(center, rng.uniform(0.0, TWO_PI), radius * rng.uniform())

    def point_to_data(self, x):
        return [float(c) for c in x]

    def point_from_data(self, data):
        return self._check(_unit(np.asarray(data, dtype=float)))

    def default_center(self):
        return np.array([0.0, 0.0, 1.0])

    def descriptor(self) -> dict:
        return {"type": "sphere", "k": self.k}


# ---------------------------------------------------------------------------
# Hyperbolic plane of curvature k < 0 (unit-hyperboloid handles in Minkowski space)


def _mdot(u: np.ndarray, v: np.ndarray) -> float:
    return float(u[0] * v[0] + u[1] * v[1] - u[2] * v[2])


class Hyperbolic(GeodesicSpace):
    name = "hyperbolic"

    def __init__(self, k: float, tol: Tolerances = DEFAULT_TOL):
        super().__init__(tol)
        if not (1e-6 <= -k <= 1e6):
            raise SpaceDescriptorError(f"hyperbolic requires -k in [1e-6, 1e6], got {k}")
        self.k = float(k)
        self.radius = 1.0 / math.sqrt(-k)
        self.known_curvature = self.k

    def _check(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if abs(_mdot(x, x) + 1.0) > 1e-9 or x[2] <= 0.0:
            raise ValueError("hyperboloid handle must satisfy <x,x> = -1, x2 > 0")
        return x

    def distance(self, x, y) -> float:
        x, y = np.asarray(x, float), np.asarray(y, float)
        d = y - x
        # <y-x, y-x> = 4 sinh^2(theta/2); stable for nearby points
        q = max(float(d[0] * d[0] + d[1] * d[1] - d[2] * d[2]), 0.0)
        return self.radius * 2.0 * math.asinh(0.5 * math.sqrt(q))

    def _tangent_toward(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        c = -_mdot(x, y)  # cosh(theta)
        w = y - c * x
        n = math.sqrt(max(_mdot(w, w), 0.0))
        return w / n

    def _arc(self, x, w, length) -> GeodesicSegment:
        def ev(t, x=x, w=w):
            a = t / self.radius
            return math.cosh(a) * x + math.sinh(a) * w

        return self._segment(x, ev(length), length, ev)

    def minimal_geodesics(self, x, y) -> list[GeodesicSegment]:
        x, y = self._check(x), self._check(y)
        d = self.distance(x, y)
        if d == 0.0:
            return [self._segment(x, y, 0.0, lambda t: x)]
        return [self._arc(x, self._tangent_toward(x, y), d)]

    def _basis(self, p: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        u = np.array([1.0, 0.0, 0.0])
        u = u + _mdot(u, p) * p  # Minkowski projection onto T_p
        u = u / math.sqrt(_mdot(u, u))
        v = np.array([0.0, 1.0, 0.0])
        v = v + _mdot(v, p) * p - _mdot(v, u) * u
        v = v / math.sqrt(_mdot(v, v))
        return u, v

    def shoot(self, p, phi: float, length: float):
        p = self._check(p)
        u, v = self._basis(p)
        w = math.cos(phi) * u + math.sin(phi) * v
        a = length / self.radius
        return math.cosh(a) * p + math.sinh(a) * w

    def sample_ball(self, center, radius, rng):
        return self.shoot(center, rng.uniform(0.0, TWO_PI), radius * rng.uniform())

    def point_to_data(self, x):
        return [float(c) for c in x]

    def point_from_data(self, data):
        x = np.asarray(data, dtype=float)
        x[2] = math.sqrt(1.0 + x[0] * x[0] + x[1] * x[1])  # re-project onto the sheet
        return x

    def default_center(self):
        return np.array([0.0, 0.0, 1.0])

    def descriptor(self) -> dict:
        return {"type": "hyperbolic", "k": self.k}


# ---------------------------------------------------------------------------
# Euclidean cone over a circle of given perimeter


class Cone(GeodesicSpace):
    """Cone over a circle with perimeter L: points (r, theta), theta in [0, L).

    L < 2*pi is the lower-curvature-bound counterexample space; L > 2*pi is
    allowed for upper-bound experiments.  The apex is (0, 0).
    """

    name = "cone"

    def __init__(self, perimeter: float, tol: Tolerances = DEFAULT_TOL):
        super().__init__(tol)
        if not (perimeter > 0.0 and math.isfinite(perimeter)):
            raise SpaceDescriptorError(f"cone perimeter must be > 0, got {perimeter}")
        self.perimeter = float(perimeter)

    def _norm(self, x) -> tuple[float, float]:
        r, th = float(x[0]), float(x[1])
        if r < 0.0:
            raise ValueError("cone radius must be >= 0")
        if r == 0.0:
            return (0.0, 0.0)
        return (r, th % self.perimeter)

    def _sep(self, t1: float, t2: float) -> float:
        d = abs(t1 - t2) % self.perimeter
        return min(d, self.perimeter - d)

    @staticmethod
    def _chord(r1: float, r2: float, ang: float) -> float:
        # planar law of cosines; hypot form avoids cancellation for small angles
        s = 2.0 * math.sin(0.5 * ang)
        return math.hypot(r1 - r2, math.sqrt(r1 * r2) * s) if r1 * r2 > 0 else r1 + r2

    def distance(self, x, y) -> float:
        r1, t1 = self._norm(x)
        r2, t2 = self._norm(y)
        if r1 == 0.0 or r2 == 0.0:
            return r1 + r2
        sep = self._sep(t1, t2)
        if sep >= math.pi:
            return r1 + r2
        return self._chord(r1, r2, sep)

    def _apex_route(self, x, y) -> GeodesicSegment:
        r1, t1 = self._norm(x)
        r2, t2 = self._norm(y)

        def ev(t, r1=r1, t1=t1, t2=t2):
            if t <= r1:
                return (r1 - t, t1)
            return (t - r1, t2)

        return self._segment((r1, t1), (r2, t2), r1 + r2, ev)

    def _unrolled_route(self, x, y, signed_sep: float) -> GeodesicSegment:
        r1, t1 = self._norm(x)
        r2, t2 = self._norm(y)
        p1 = np.array([r1, 0.0])
        p2 = np.array([r2 * math.cos(signed_sep), r2 * math.sin(signed_sep)])
        length = float(np.linalg.norm(p2 - p1))
        u = (p2 - p1) / length

        def ev(t, p1=p1, u=u, t1=t1):
            q = p1 + t * u
            rho = float(np.hypot(q[0], q[1]))
            psi = math.atan2(q[1], q[0])
            return (rho, (t1 + psi) % self.perimeter)

        return self._segment((r1, t1), (r2, t2), length, ev)

    def minimal_geodesics(self, x, y) -> list[GeodesicSegment]:
        r1, t1 = self._norm(x)
        r2, t2 = self._norm(y)
        if self.distance((r1, t1), (r2, t2)) == 0.0:
            return [self._segment((r1, t1), (r2, t2), 0.0, lambda t: (r1, t1))]
        if r1 == 0.0 or r2 == 0.0:
            return [self._apex_route((r1, t1), (r2, t2))]
        ccw = (t2 - t1) % self.perimeter  # angle going counterclockwise from x
        candidates: list[tuple[float, GeodesicSegment]] = []
        for sep in ((ccw, ccw), (self.perimeter - ccw, ccw - self.perimeter)):
            mag, signed = sep
            if mag < math.pi:
                seg = self._unrolled_route((r1, t1), (r2, t2), signed)
                candidates.append((seg.length, seg))
        apex_len = r1 + r2
        if not candidates or apex_len <= min(c[0] for c in candidates) + self.tol.tie:
            candidates.append((apex_len, self._apex_route((r1, t1), (r2, t2))))
        best = min(c[0] for c in candidates)
        out = [seg for length, seg in candidates if length <= best + self.tol.tie]
        # drop duplicated routes (e.g. ccw == 0 yields one radial chord twice)
        dedup: list[GeodesicSegment] = []
        for seg in out:
            if not any(
                self.distance(seg.midpoint(), other.midpoint()) <= self.tol.pt
                for other in dedup
            ):
                dedup.append(seg)
        return dedup

    def shoot(self, p, phi: float, length: float):
        r, th = self._norm(p)
        if r == 0.0:
            return (length, phi % self.perimeter)
        q = np.array([r + length * math.cos(phi), length * math.sin(phi)])
        rho = float(np.hypot(q[0], q[1]))
        if rho <= self.tol.pt:
            raise ShootUnavailable("geodesic through the cone apex is not extendable")
        psi = math.atan2(q[1], q[0])
        return (rho, (th + psi) % self.perimeter)

    def sample_ball(self, center, radius, rng):
        r, _ = self._norm(center)
        phi = rng.uniform(0.0, self.perimeter if r == 0.0 else TWO_PI)
        return self.shoot(center, phi, radius * rng.uniform())

    def point_to_data(self, x):
        r, th = self._norm(x)
        return [r, th]

    def point_from_data(self, data):
        return self._norm((float(data[0]), float(data[1])))

    def default_center(self):
        return (0.0, 0.0)

    def descriptor(self) -> dict:
        return {"type": "cone", "perimeter": self.perimeter}


# ---------------------------------------------------------------------------
# Tripod: three rays glued at a point


class Tripod(GeodesicSpace):
    """Union of three rays from a common branch point; handles are (ray, r)."""

    name = "tripod"

    def _norm(self, x) -> tuple[int, float]:
        ray, r = int(x[0]), float(x[1])
        if ray not in (0, 1, 2):
            raise ValueError(f"tripod ray must be 0, 1 or 2, got {ray}")
        if r < 0.0:
            raise ValueError("tripod radius must be >= 0")
        return (0, 0.0) if r == 0.0 else (ray, r)

    def distance(self, x, y) -> float:
        i, r1 = self._norm(x)
        j, r2 = self._norm(y)
        if i == j or r1 == 0.0 or r2 == 0.0:
            return abs(r1 - r2) if i == j else r1 + r2
        return r1 + r2

    def minimal_geodesics(self, x, y) -> list[GeodesicSegment]:
        i, r1 = self._norm(x)
        j, r2 = self._norm(y)
        if i == j:
            sgn = 1.0 if r2 >= r1 else -1.0

            def ev_same(t, i=i, r1=r1, sgn=sgn):
                return (i, r1 + sgn * t)

            return [self._segment((i, r1), (j, r2), abs(r2 - r1), ev_same)]

        def ev(t, i=i, j=j, r1=r1):
            if t <= r1:
                return (i, r1 - t)
            return (j, t - r1)

        return [self._segment((i, r1), (j, r2), r1 + r2, ev)]

    def sample_ball(self, center, radius, rng):
        i, r0 = self._norm(center)
        s = radius * rng.uniform()
        if r0 == 0.0:
            return (int(rng.integers(3)), s)
        if rng.uniform() < 0.5:
            return (i, r0 + s)
        if s <= r0:
            return (i, r0 - s)
        others = [ray for ray in (0, 1, 2) if ray != i]
        return (others[int(rng.integers(2))], s - r0)

    def point_to_data(self, x):
        i, r = self._norm(x)
        return [i, r]

    def point_from_data(self, data):
        return self._norm((int(data[0]), float(data[1])))

    def default_center(self):
        return (0, 0.0)

    def descriptor(self) -> dict:
        return {"type": "tripod"}


# ---------------------------------------------------------------------------
# Convex spherical triangle domain (the smaller region bounded by a triangle)


class SphericalTriangleDomain(GeodesicSpace):
    """The smaller closed region of S^2_k bounded by a geodesic triangle.

    The vertex triple must lie strictly inside an open hemisphere; the region
    is then convex, so distances and geodesics coincide with the ambient
    sphere's restricted to the region.
    """

    name = "spherical_triangle"

    def __init__(self, k: float, vertices: Sequence, tol: Tolerances = DEFAULT_TOL):
        super().__init__(tol)
        self._sphere = Sphere(k, tol)
        self.k = self._sphere.k
        self.known_curvature = self.k
        vs = [np.asarray(_unit(np.asarray(v, dtype=float))) for v in vertices]
        if len(vs) != 3:
            raise SpaceDescriptorError("spherical triangle needs exactly 3 vertices")
        det = float(np.linalg.det(np.stack(vs)))
        if abs(det) < 1e-9:
            raise SpaceDescriptorError(
                "vertices are degenerate (coplanar with the center); no open hemisphere"
            )
        self.vertices = vs
        # inward normal of each edge great circle; orient toward the third vertex
        self._normals = []
        for i in range(3):
            n = np.cross(vs[(i + 1) % 3], vs[(i + 2) % 3])
            if float(np.dot(n, vs[i])) < 0.0:
                n = -n
            self._normals.append(n / np.linalg.norm(n))

    def contains(self, x, slack: float = 1e-12) -> bool:
        x = np.asarray(x, dtype=float)
        return all(float(np.dot(n, x)) >= -slack for n in self._normals)

    def _require_inside(self, x):
        if not self.contains(x):
            raise ValueError("point outside the triangle domain")
        return np.asarray(x, dtype=float)

    def distance(self, x, y) -> float:
        return self._sphere.distance(self._require_inside(x), self._require_inside(y))

    def minimal_geodesics(self, x, y) -> list[GeodesicSegment]:
        segs = self._sphere.minimal_geodesics(self._require_inside(x), self._require_inside(y))
        return [self._segment(s.start, s.end, s.length, s._eval) for s in segs]

    def shoot(self, p, phi: float, length: float):
        q = self._sphere.shoot(self._require_inside(p), phi, length)
        if not self.contains(q):
            raise ShootUnavailable("geodesic leaves the triangle domain")
        return q

    def sample_ball(self, center, radius, rng, max_tries: int = 1000):
        center = self._require_inside(center)
        for _ in range(max_tries):
            q = self._sphere.sample_ball(center, radius, rng)
            if self.contains(q):
                return q
        raise CmpkError("sample_ball: no interior draw in max_tries attempts")

    def point_to_data(self, x):
        return [float(c) for c in x]

    def point_from_data(self, data):
        return self._require_inside(_unit(np.asarray(data, dtype=float)))

    def default_center(self):
        return _unit(self.vertices[0] + self.vertices[1] + self.vertices[2])

    def descriptor(self) -> dict:
        return {
            "type": "spherical_triangle",
            "k": self.k,
            "vertices": [self.point_to_data(v) for v in self.vertices],
        }


# ---------------------------------------------------------------------------
# Constructors and the JSON descriptor interface


def make_euclidean_plane(tol: Tolerances = DEFAULT_TOL) -> EuclideanPlane:
    return EuclideanPlane(tol)


def make_sphere(k: float, tol: Tolerances = DEFAULT_TOL) -> Sphere:
    if k == 0.0:
        raise SpaceDescriptorError("k = 0 is the plane; use make_euclidean_plane")
    return Sphere(k, tol)


def make_hyperbolic(k: float, tol: Tolerances = DEFAULT_TOL) -> Hyperbolic:
    if k == 0.0:
        raise SpaceDescriptorError("k = 0 is the plane; use make_euclidean_plane")
    return Hyperbolic(k, tol)


def make_cone(perimeter: float, tol: Tolerances = DEFAULT_TOL) -> Cone:
    return Cone(perimeter, tol)


def make_tripod(tol: Tolerances = DEFAULT_TOL) -> Tripod:
    return Tripod(tol)


def make_spherical_triangle_domain(
    k: float, vertices: Sequence, tol: Tolerances = DEFAULT_TOL
) -> SphericalTriangleDomain:
    return SphericalTriangleDomain(k, vertices, tol)


def make_octant(k: float = 1.0, tol: Tolerances = DEFAULT_TOL) -> SphericalTriangleDomain:
    """Octant of S^2_k: vertices pairwise at distance pi/(2 sqrt(k))."""
    eye = np.eye(3)
    return SphericalTriangleDomain(k, [eye[0], eye[1], eye[2]], tol)


DESCRIPTOR_VERSION = 1

# type name -> (constructor from descriptor dict, allowed keys)
_SPACE_TYPES: dict[str, tuple[Callable[..., GeodesicSpace], set[str]]] = {}


def register_space_type(name: str, builder: Callable[..., GeodesicSpace], keys: set[str]):
    _SPACE_TYPES[name] = (builder, keys | {"type", "version"})


register_space_type("plane", lambda d, tol: make_euclidean_plane(tol), set())
register_space_type("sphere", lambda d, tol: make_sphere(d["k"], tol), {"k"})
register_space_type("hyperbolic", lambda d, tol: make_hyperbolic(d["k"], tol), {"k"})
register_space_type("cone", lambda d, tol: make_cone(d["perimeter"], tol), {"perimeter"})
register_space_type("tripod", lambda d, tol: make_tripod(tol), set())
register_space_type(
    "spherical_triangle",
    lambda d, tol: make_spherical_triangle_domain(d["k"], d["vertices"], tol),
    {"k", "vertices"},
)


def space_from_descriptor(desc, tol: Tolerances = DEFAULT_TOL) -> GeodesicSpace:
    """Build a space from a descriptor dict or its JSON text.

    Schema (version 1): ``{"type": <name>, ...params}``; unknown keys are
    rejected.  Types: plane, sphere{k}, hyperbolic{k}, cone{perimeter},
    tripod, spherical_triangle{k, vertices}, mesh{path, steiner}.
    """
    if isinstance(desc, str):
        try:
            desc = json.loads(desc)
        except json.JSONDecodeError as e:
            raise SpaceDescriptorError(f"descriptor is not valid JSON: {e}") from e
    if not isinstance(desc, dict):
        raise SpaceDescriptorError(f"descriptor must be an object, got {type(desc).__name__}")
    if desc.get("version", DESCRIPTOR_VERSION) != DESCRIPTOR_VERSION:
        raise SpaceDescriptorError(f"unsupported descriptor version {desc.get('version')}")
    kind = desc.get("type")
    if kind not in _SPACE_TYPES:
        raise SpaceDescriptorError(
            f"unknown space type {kind!r}; known: {sorted(_SPACE_TYPES)}"
        )
    builder, allowed = _SPACE_TYPES[kind]
    unknown = set(desc) - allowed
    if unknown:
        raise SpaceDescriptorError(f"unknown descriptor keys for {kind}: {sorted(unknown)}")
    try:
        return builder(desc, tol)
    except KeyError as e:
        raise SpaceDescriptorError(f"descriptor for {kind} is missing key {e}") from e
