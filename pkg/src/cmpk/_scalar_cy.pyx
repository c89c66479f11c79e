# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled scalar trig kernels; line-for-line twin of cmpk._scalar_py."""

from libc.math cimport asin, asinh, cos, cosh, fabs, sin, sinh, sqrt, M_PI

# |k| * d^2 below which the Taylor branches engage (continuity through k = 0).
SERIES_EPS = 1e-8
cdef double _SERIES_EPS = 1e-8


cdef inline double _cs(double k, double d) nogil:
    cdef double w = k * d * d
    if fabs(w) < _SERIES_EPS:
        return 1.0 - w / 2.0 + w * w / 24.0 - w * w * w / 720.0
    if k > 0.0:
        return cos(sqrt(k) * d)
    return cosh(sqrt(-k) * d)


cdef inline double _sn(double k, double d) nogil:
    cdef double w = k * d * d
    cdef double rk
    if fabs(w) < _SERIES_EPS:
        return d * (1.0 - w / 6.0 + w * w / 120.0 - w * w * w / 5040.0)
    if k > 0.0:
        rk = sqrt(k)
        return sin(rk * d) / rk
    rk = sqrt(-k)
    return sinh(rk * d) / rk


cdef inline double _vcs(double k, double d) nogil:
    cdef double w = k * d * d
    cdef double s
    if fabs(w) < _SERIES_EPS:
        return d * d * (0.5 - w / 24.0 + w * w / 720.0)
    if k > 0.0:
        s = sin(0.5 * sqrt(k) * d)
        return 2.0 * s * s / k
    s = sinh(0.5 * sqrt(-k) * d)
    return 2.0 * s * s / (-k)


cdef inline double _arc_from_vcs(double k, double v) nogil:
    cdef double x2
    if v < 0.0:
        v = 0.0
    x2 = 0.5 * k * v
    if fabs(x2) < 0.25 * _SERIES_EPS:
        return sqrt(2.0 * v) * (1.0 + k * v / 12.0 + 3.0 * k * k * v * v / 160.0)
    if k > 0.0:
        if x2 >= 1.0:
            x2 = 1.0
        if x2 <= 0.5:
            return 2.0 * asin(sqrt(x2)) / sqrt(k)
        return (M_PI - 2.0 * asin(sqrt(1.0 - x2))) / sqrt(k)
    return 2.0 * asinh(sqrt(-x2)) / sqrt(-k)


def cs(double k, double d):
    """Generalized cosine cs_k(d): cos for k>0, cosh for k<0, series near 0."""
    return _cs(k, d)


def sn(double k, double d):
    """Generalized sine sn_k(d) in length units."""
    return _sn(k, d)


def vcs(double k, double d):
    """Generalized versine (1 - cs_k(d))/k >= 0, with limit d^2/2 at k = 0."""
    return _vcs(k, d)


def arc_from_vcs(double k, double v):
    """Inverse of vcs in d."""
    return _arc_from_vcs(k, v)


def cos_angle_from_sides(double k, double a, double b, double c):
    """Raw cosine of the model angle between sides a and b (c opposite)."""
    return (_vcs(k, a) + _cs(k, a) * _vcs(k, b) - _vcs(k, c)) / (_sn(k, a) * _sn(k, b))


def side_from_angle_cos(double k, double a, double b, double cos_gamma):
    """Third side of the model triangle with sides a, b enclosing angle gamma."""
    cdef double v = _vcs(k, a) + _cs(k, a) * _vcs(k, b) - _sn(k, a) * _sn(k, b) * cos_gamma
    return _arc_from_vcs(k, v)
