"""cmpk: curvature-bound comparison tests for geodesic metric spaces."""

__version__ = "0.1.0"
