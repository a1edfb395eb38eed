"""Geometry of the scattering disk.

The disk carries the degenerate metric 4*(dx^2+dy^2)/(1-x^2-y^2): finite
diameter, infinite area.  This module evaluates the closed-form geodesics,
the radial distance, and the area density.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

_CLAMP = 1e-12


@dataclass(frozen=True)
class GeodesicParams:
    """Geodesic through (r0, theta0) with shape constant c0 >= 1/r0^2.

    sign picks one of the two mirror branches about theta = c1.
    """

    r0: float
    theta0: float
    c0: float
    sign: int = 1

    def __post_init__(self):
        if not 0 < self.r0 < 1:
            raise DomainError(f"r0 = {self.r0} must lie in (0, 1)")
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        if self.c0 < self.r0**-2 - _CLAMP:
            raise DomainError(
                f"c0 = {self.c0} below the admissible bound {self.r0 ** -2}"
            )

    @property
    def turning_radius(self):
        return self.c0**-0.5


def _clamped_sqrt(x: float) -> float:
    if x < 0:
        if x < -_CLAMP:
            raise DomainError(f"negative radicand {x}")
        return 0.0
    return math.sqrt(x)


def _branch_angle(c0: float, r: float) -> float:
    # The bracketed quantity of the geodesic formula; both radicands vanish
    # at the turning radius r = c0^(-1/2).
    g = _clamped_sqrt((c0 * r * r - 1) / (1 - r * r))
    s = (c0 * r * r - 1) / (c0 - 1)
    if s < -_CLAMP or s > 1 + _CLAMP:
        raise DomainError(f"arcsin argument {s} outside [0, 1]")
    s = min(max(s, 0.0), 1.0)
    return math.atan(g) - math.asin(math.sqrt(s)) / math.sqrt(c0)


def geodesic_theta(gp: GeodesicParams, r: float) -> float:
    """Polar angle theta(r) along the geodesic.

    Admissible band: turning radius c0^(-1/2) <= r < 1 (arguments within
    1e-12 of the band are clamped to absorb rounding).
    """
    if r >= 1:
        raise DomainError(f"r = {r} not below 1")
    if r * r < 1 / gp.c0 - _CLAMP:
        raise DomainError(f"r = {r} below the turning radius {gp.turning_radius}")
    c1 = gp.theta0 - gp.sign * _branch_angle(gp.c0, gp.r0)
    return gp.sign * _branch_angle(gp.c0, r) + c1


def geodesic_polyline(gp: GeodesicParams, samples: int = 256):
    """(r, theta) pairs from the turning radius out to the boundary."""
    if samples < 2:
        raise DomainError("need at least two samples")
    lo = gp.turning_radius
    hi = 1 - 1e-9
    if lo >= hi:
        raise DomainError("degenerate band; c0 too close to 1")
    pts = []
    for i in range(samples):
        r = lo + (hi - lo) * i / (samples - 1)
        pts.append((r, geodesic_theta(gp, r)))
    return pts


def radial_distance(r: float) -> float:
    """Metric length of the straight ray from the centre to radius r.

    Integrates 2/sqrt(1-s^2): equals 2*arcsin(r), so the full radius has
    length pi and a diameter 2*pi.
    """
    if r < 0 or r > 1:
        raise DomainError(f"r = {r} outside [0, 1]")
    return 2 * math.asin(r)


def area_density(x: float, y: float) -> float:
    """Density of the area form against dx dy: 4/(1-x^2-y^2)."""
    rho2 = x * x + y * y
    if rho2 >= 1:
        raise DomainError("point not in the open unit disk")
    return 4 / (1 - rho2)
