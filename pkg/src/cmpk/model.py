"""Trigonometry of the two-dimensional constant-curvature model surfaces.

Public operations validate their domain (finite inputs, side bounds for
k > 0, triangle inequality) and apply the clamping policy; the raw number
crunching lives in the selected kernel backend (``cmpk.kernels``).

Conventions: angles in radians, lengths in length units, arclength
parametrization throughout.  The curvature constant k is any finite real.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from cmpk.config import DEFAULT_TOL, MAX_HYPERBOLIC_ARG, SPHERE_MARGIN, Tolerances
from cmpk.errors import DegenerateConfigError, ModelDomainError
from cmpk import kernels

PI = math.pi


def _require_finite(**values: float) -> None:
    for name, v in values.items():
        if not math.isfinite(v):
            raise ModelDomainError(f"{name} must be finite, got {v!r}")


def max_side(k: float) -> float:
    """Largest admissible single length for curvature k (pi/sqrt(k) if k>0)."""
    _require_finite(k=k)
    if k > 0.0:
        return PI / math.sqrt(k)
    return math.inf


def max_perimeter(k: float) -> float:
    """Admissible triangle perimeter bound, with the antipodal safety margin."""
    _require_finite(k=k)
    if k > 0.0:
        return (2.0 * PI - SPHERE_MARGIN) / math.sqrt(k)
    return math.inf


def _check_length(k: float, d: float, name: str = "d") -> None:
    _require_finite(k=k, **{name: d})
    if d < 0.0:
        raise ModelDomainError(f"{name} must be >= 0, got {d}")
    if k > 0.0 and d >= max_side(k):
        raise ModelDomainError(
            f"{name}={d} violates {name} < pi/sqrt(k) = {max_side(k)} for k={k}"
        )
    if k < 0.0 and math.sqrt(-k) * d > MAX_HYPERBOLIC_ARG:
        raise ModelDomainError(
            f"sqrt(-k)*{name} = {math.sqrt(-k) * d:.3g} exceeds the representable range"
        )


def generalized_cos(k: float, d: float) -> float:
    """cs_k(d): cos(sqrt(k) d) for k>0, cosh(sqrt(-k) d) for k<0, series near 0."""
    _check_length(k, d)
    return kernels.cs(k, d)


def generalized_sin(k: float, d: float) -> float:
    """sn_k(d): sin(sqrt(k) d)/sqrt(k) for k>0, sinh analog for k<0, d at k=0."""
    _check_length(k, d)
    return kernels.sn(k, d)


@dataclass(frozen=True)
class SideTriple:
    """Nonnegative side lengths (a, b, c); c is opposite the angle of interest."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        _require_finite(a=self.a, b=self.b, c=self.c)
        if min(self.a, self.b, self.c) < 0.0:
            raise ModelDomainError(f"sides must be >= 0, got {self.as_tuple()}")
        slack = DEFAULT_TOL.tri_rel * self.perimeter()
        for x, y, z in ((self.a, self.b, self.c), (self.b, self.c, self.a), (self.c, self.a, self.b)):
            if x > y + z + slack:
                raise ModelDomainError(
                    f"triangle inequality violated by {self.as_tuple()}"
                )

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)

    def perimeter(self) -> float:
        return self.a + self.b + self.c


def _as_triple(sides) -> SideTriple:
    if isinstance(sides, SideTriple):
        return sides
    return SideTriple(*sides)


def _check_triple(k: float, sides: SideTriple) -> None:
    for name, d in zip("abc", sides.as_tuple()):
        _check_length(k, d, name)
    if k > 0.0 and sides.perimeter() >= max_perimeter(k):
        raise ModelDomainError(
            f"perimeter {sides.perimeter()} >= admissible bound {max_perimeter(k)} for k={k}"
        )


def _clamped_acos(x: float, tol: Tolerances) -> float:
    if x > 1.0:
        if x > 1.0 + tol.clamp:
            raise ModelDomainError(f"cosine argument {x} exceeds 1 beyond clamp tolerance")
        x = 1.0
    elif x < -1.0:
        if x < -1.0 - tol.clamp:
            raise ModelDomainError(f"cosine argument {x} below -1 beyond clamp tolerance")
        x = -1.0
    return math.acos(x)


def comparison_angle(k: float, sides, *, tol: Tolerances = DEFAULT_TOL) -> float:
    """Angle of the model triangle between sides a and b (c opposite).

    Inverse of :func:`side_from_angle` in its angle argument.
    """
    triple = _as_triple(sides)
    _check_triple(k, triple)
    floor = 1e-12 * max(triple.perimeter(), 1e-300)
    if triple.a <= floor or triple.b <= floor:
        raise DegenerateConfigError(
            f"sides adjacent to the angle must be > 0, got {triple.as_tuple()}"
        )
    raw = kernels.cos_angle_from_sides(k, triple.a, triple.b, triple.c)
    return _clamped_acos(raw, tol)


def side_from_angle(k: float, a: float, b: float, gamma: float) -> float:
    """Side c of the model triangle with sides a, b enclosing angle gamma."""
    _check_length(k, a, "a")
    _check_length(k, b, "b")
    _require_finite(gamma=gamma)
    if not 0.0 <= gamma <= PI:
        raise ModelDomainError(f"gamma must lie in [0, pi], got {gamma}")
    if k > 0.0 and (a >= max_side(k) or b >= max_side(k)):
        raise ModelDomainError("degenerate configuration: side at the antipodal bound")
    c = kernels.side_from_angle_cos(k, a, b, math.cos(gamma))
    if k > 0.0 and a + b + c >= max_perimeter(k):
        raise ModelDomainError(
            f"resulting triangle perimeter {a + b + c} is inadmissible for k={k}"
        )
    return c


def pythagorean_defect(k: float, leg1: float, leg2: float, hyp: float,
                       *, tol: Tolerances = DEFAULT_TOL) -> float:
    """Signed comparison-angle defect against a right angle.

    Negative means the lower-curvature-bound inequality holds strictly at
    this triple, positive the upper-bound one.
    """
    return comparison_angle(k, (leg1, leg2, hyp), tol=tol) - 0.5 * PI


def comparison_distance_at(k: float, d_qp: float, d_qr: float, d_pr: float,
                           t: float, *, tol: Tolerances = DEFAULT_TOL) -> float:
    """Model distance from q~ to the point at arclength t along [p~ r~]."""
    triple = SideTriple(d_qp, d_pr, d_qr)
    _check_triple(k, triple)
    if not -tol.geo <= t <= d_pr + tol.geo:
        raise ModelDomainError(f"t={t} outside [0, {d_pr}]")
    t = min(max(t, 0.0), d_pr)
    if t == 0.0:
        return d_qp
    if t == d_pr:
        return d_qr
    alpha = comparison_angle(k, triple, tol=tol)
    return side_from_angle(k, d_qp, t, alpha)


@dataclass(frozen=True)
class ComparisonTriangle:
    """Side triple with its three model angles; angles[i] is opposite sides[i]."""

    k: float
    sides: SideTriple
    angles: tuple[float, float, float]

    def angle_sum_excess(self) -> float:
        """Angle sum minus pi; its sign matches the sign of k."""
        return sum(self.angles) - PI


def build_comparison_triangle(k: float, sides, *, tol: Tolerances = DEFAULT_TOL) -> ComparisonTriangle:
    """Realize a SideTriple in the curvature-k model surface."""
    triple = _as_triple(sides)
    a, b, c = triple.as_tuple()
    angles = (
        comparison_angle(k, (b, c, a), tol=tol),
        comparison_angle(k, (c, a, b), tol=tol),
        comparison_angle(k, (a, b, c), tol=tol),
    )
    return ComparisonTriangle(k, triple, angles)
