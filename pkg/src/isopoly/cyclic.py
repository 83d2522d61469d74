"""Cyclic realization of a side list.

Every admissible side list has exactly one convex realization inscribed in a
circle, and it has the largest area among all polygons with those sides.  The
circumradius R solves one of two equations, depending on whether the center
of the circle lies inside the polygon:

* inside:   sum_i asin(a_i / 2R) = pi
* outside:  sum_{i != k} asin(a_i / 2R) = asin(a_k / 2R),  k = longest side

The case is decided once at R = a_max / 2.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Callable, Iterable
from dataclasses import dataclass

import numpy as np

from .errors import AmbiguousMax, CenterNotInside, NoConvergence
from .geometry import DEFAULT_TOL, SideList, Tolerance, VertexPolygon, validate_sides

# bisection hands over to Newton once the bracket is this tight (relative)
_BISECT_REL = 1e-6


class Location(str, enum.Enum):
    INSIDE = "Inside"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"


@dataclass(frozen=True)
class CenterLocation:
    kind: Location
    index: int | None = None  # longest side, set for OUTSIDE only

    def __str__(self):
        if self.kind is Location.OUTSIDE:
            return f"Outside({self.index})"
        return self.kind.value

    @property
    def inside(self) -> bool:
        return self.kind is Location.INSIDE


@dataclass(frozen=True)
class CyclicPolygon:
    sides: SideList
    R: float
    half_angles: tuple[float, ...]
    center: CenterLocation
    vertices: VertexPolygon
    closure_residual: float

    @property
    def n(self) -> int:
        return self.sides.n


def _half_angles(a: np.ndarray, R: float) -> np.ndarray:
    return np.arcsin(np.minimum(1.0, a / (2.0 * R)))


def _case_residual(a: np.ndarray, k: int) -> float:
    """sum_{i != k} asin(a_i / a_max) - pi/2, i.e. the inside residual at R = a_max/2."""
    others = np.delete(a, k)
    return math.fsum(np.arcsin(np.minimum(1.0, others / a[k]))) - 0.5 * math.pi


def _inside_eq(a: np.ndarray) -> tuple[Callable, Callable]:
    def f(R):
        return math.fsum(_half_angles(a, R)) - math.pi

    def df(R):
        x = np.minimum(a / (2.0 * R), 1.0)
        with np.errstate(divide="ignore"):
            t = x / np.sqrt((1.0 - x) * (1.0 + x))
        return -math.fsum(t) / R

    return f, df


def _outside_eq(a: np.ndarray, k: int) -> tuple[Callable, Callable]:
    # sign flipped so that, like the inside residual, it starts positive
    others = np.delete(a, k)
    ak = a[k]

    def f(R):
        return math.asin(min(1.0, ak / (2.0 * R))) - math.fsum(np.arcsin(others / (2.0 * R)))

    def df(R):
        x = others / (2.0 * R)
        xk = min(1.0, ak / (2.0 * R))
        tk = xk / math.sqrt((1.0 - xk) * (1.0 + xk)) if xk < 1.0 else math.inf
        return (math.fsum(x / np.sqrt((1.0 - x) * (1.0 + x))) - tk) / R

    return f, df


def _find_root(f, df, lo: float, tol: Tolerance) -> float:
    """Root of f on (lo, inf), given f(lo) > 0 and f < 0 beyond the root."""
    iters = 0
    hi = 2.0 * lo
    while f(hi) > 0:
        lo, hi = hi, 2.0 * hi
        iters += 1
        if iters >= tol.max_iter:
            raise NoConvergence("could not bracket the circumradius")

    while hi - lo > _BISECT_REL * hi:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
        iters += 1
        if iters >= tol.max_iter:
            raise NoConvergence("bisection hit the iteration cap")

    R = 0.5 * (lo + hi)
    while True:
        fr = f(R)
        if fr == 0.0:
            return R
        if fr > 0:
            lo = R
        else:
            hi = R
        d = df(R)
        step = fr / d if d != 0 and math.isfinite(d) else math.nan
        new = R - step
        if not (lo <= new <= hi) or not math.isfinite(new):
            new = 0.5 * (lo + hi)
        if abs(new - R) <= tol.rel_tol * R or hi - lo <= 4 * math.ulp(R):
            return new
        R = new
        iters += 1
        if iters >= tol.max_iter:
            raise NoConvergence("Newton polish hit the iteration cap")


def circumradius_of_sides(
    s: SideList | Iterable[float], tol: Tolerance = DEFAULT_TOL
) -> tuple[float, CenterLocation]:
    """Circumradius of the cyclic polygon with sides ``s`` and where its center lies."""
    s = validate_sides(s)
    a = s.array()
    k = int(np.argmax(a))
    half = 0.5 * a[k]
    h = _case_residual(a, k)
    if abs(h) <= tol.abs_tol:
        return float(half), CenterLocation(Location.BOUNDARY)
    if h > 0:
        f, df = _inside_eq(a)
        return _find_root(f, df, half, tol), CenterLocation(Location.INSIDE)
    if np.count_nonzero(a == a[k]) > 1:
        raise AmbiguousMax("tied longest sides in the center-outside regime")
    f, df = _outside_eq(a, k)
    return _find_root(f, df, half, tol), CenterLocation(Location.OUTSIDE, k)


def build_cyclic(s: SideList | Iterable[float], tol: Tolerance = DEFAULT_TOL) -> CyclicPolygon:
    s = validate_sides(s)
    R, center = circumradius_of_sides(s, tol)
    a = s.array()
    theta = _half_angles(a, R)
    k = int(np.argmax(a))
    if center.kind is Location.BOUNDARY:
        theta[k] = 0.5 * math.pi
    else:
        # asin(a_k / 2R) has unbounded slope as the longest side nears a
        # diameter, so an R good to rel_tol can still be ~sqrt(rel_tol) off
        # in that angle; take it from the closure relation instead
        rest = math.fsum(np.delete(theta, k))
        theta[k] = min(0.5 * math.pi, rest if center.kind is Location.OUTSIDE else math.pi - rest)

    turn = 2.0 * theta
    if center.kind is Location.OUTSIDE:
        turn[center.index] = -turn[center.index]
    ang = np.concatenate(([0.0], np.cumsum(turn)))
    pts = R * np.column_stack((np.cos(ang), np.sin(ang)))
    closure = float(np.hypot(*(pts[-1] - pts[0])))
    verts = VertexPolygon(tuple(map(tuple, pts[:-1])))
    return CyclicPolygon(
        sides=s,
        R=float(R),
        half_angles=tuple(float(t) for t in theta),
        center=center,
        vertices=verts,
        closure_residual=closure,
    )


def cyclic_area(c: CyclicPolygon) -> float:
    a = c.sides.array()
    # R^2/2 sin(2 theta) written as (a/2) R cos(theta)
    tri = 0.5 * a * c.R * np.cos(np.asarray(c.half_angles))
    if c.center.kind is Location.OUTSIDE:
        tri[c.center.index] = -tri[c.center.index]
    return math.fsum(tri)


def cyclic_inradius(c: CyclicPolygon) -> float:
    """Distance from the circumcenter to the nearest side."""
    if not c.center.inside:
        raise CenterNotInside(f"center location is {c.center}")
    return float(min(c.R * math.cos(t) for t in c.half_angles))


def max_area(s: SideList | Iterable[float], tol: Tolerance = DEFAULT_TOL) -> float:
    """Area of the cyclic realization, the largest for these sides."""
    return cyclic_area(build_cyclic(s, tol))
