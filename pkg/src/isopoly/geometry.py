"""Polygon primitives: validated side lists, vertex polygons, elementary areas."""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadCount,
    DegenerateVertices,
    NonPositiveSide,
    PolygonInequalityViolated,
    TooFewSides,
)

# Smallest admissible factor 1 - 2 a_i / L.  Anything thinner is numerically a
# segment: the roots and logs built on these factors lose every digit there.
MIN_SLACK = 1e-14


@dataclass(frozen=True)
class Tolerance:
    rel_tol: float = 1e-12
    abs_tol: float = 1e-12
    max_iter: int = 200

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class SideList:
    """Side lengths a_1..a_n of a polygon, in traversal order.

    Instances are always valid: every side positive and ``2 a_i < L`` for
    all i.  Build them with :func:`validate_sides` or directly; both check.
    """

    lengths: tuple[float, ...]

    def __post_init__(self):
        lengths = tuple(float(a) for a in self.lengths)
        object.__setattr__(self, "lengths", lengths)
        _check_sides(lengths)

    @property
    def n(self) -> int:
        return len(self.lengths)

    @property
    def L(self) -> float:
        return math.fsum(self.lengths)

    def array(self) -> np.ndarray:
        return np.asarray(self.lengths, dtype=float)

    def scaled(self, c: float) -> SideList:
        return SideList(tuple(c * a for a in self.lengths))

    def __len__(self):
        return len(self.lengths)

    def __iter__(self):
        return iter(self.lengths)


def _check_sides(lengths: Sequence[float]) -> None:
    if len(lengths) < 3:
        raise TooFewSides(f"need at least 3 sides, got {len(lengths)}")
    for a in lengths:
        if not math.isfinite(a):
            raise NonPositiveSide(f"side length {a!r} is not finite")
        if a <= 0:
            raise NonPositiveSide(f"side length {a!r} is not positive")
    L = math.fsum(lengths)
    a_max = max(lengths)
    if (L - 2.0 * a_max) / L < MIN_SLACK:
        raise PolygonInequalityViolated(
            f"longest side {a_max!r} is not shorter than the sum of the others"
        )


def validate_sides(raw: Iterable[float]) -> SideList:
    """Return a :class:`SideList` for ``raw`` or raise a :class:`PolygonError`."""
    if isinstance(raw, SideList):
        return raw
    return SideList(tuple(float(a) for a in raw))


def perimeter(s: SideList) -> float:
    return s.L


@dataclass(frozen=True)
class VertexPolygon:
    """Planar polygon as a counterclockwise vertex cycle (no repeated endpoint)."""

    vertices: tuple[tuple[float, float], ...]

    def __post_init__(self):
        pts = tuple((float(x), float(y)) for x, y in self.vertices)
        if len(pts) < 3:
            raise TooFewSides(f"need at least 3 vertices, got {len(pts)}")
        for p, q in zip(pts, pts[1:] + pts[:1]):
            if p == q:
                raise DegenerateVertices(f"repeated consecutive vertex {p}")
        if _signed_area(pts) < 0:
            pts = pts[::-1]
        object.__setattr__(self, "vertices", pts)

    @classmethod
    def from_flat(cls, coords: Sequence[float]) -> VertexPolygon:
        if len(coords) % 2:
            raise ValueError("odd number of vertex coordinates")
        return cls(tuple(zip(coords[0::2], coords[1::2])))

    def array(self) -> np.ndarray:
        return np.asarray(self.vertices, dtype=float)

    def side_lengths(self) -> tuple[float, ...]:
        v = self.array()
        d = np.roll(v, -1, axis=0) - v
        return tuple(float(x) for x in np.hypot(d[:, 0], d[:, 1]))


def _signed_area(pts) -> float:
    v = np.asarray(pts, dtype=float)
    x, y = v[:, 0], v[:, 1]
    return 0.5 * math.fsum(x * np.roll(y, -1) - np.roll(x, -1) * y)


def shoelace_area(p: VertexPolygon, tol: Tolerance = DEFAULT_TOL) -> float:
    area = _signed_area(p.vertices)
    if area < tol.abs_tol:
        raise DegenerateVertices(f"polygon area {area!r} below {tol.abs_tol}")
    return area


def heron_area(a: float, b: float, c: float) -> float:
    """Triangle area written through the perimeter factors 1 - 2a/L."""
    s = validate_sides((a, b, c))
    return _product_form(s)


def brahmagupta_bound(a: float, b: float, c: float, d: float) -> float:
    """Upper bound on the area of a quadrilateral with these sides.

    Attained exactly when the quadrilateral is cyclic.
    """
    s = validate_sides((a, b, c, d))
    return _product_form(s)


def _product_form(s: SideList) -> float:
    L = s.L
    prod = math.prod((L - 2.0 * a) / L for a in s.lengths)
    return 0.25 * L * L * math.sqrt(prod)


def regular_polygon(n: int, R: float = 1.0) -> VertexPolygon:
    if n < 3:
        raise BadCount(f"a polygon needs n >= 3, got {n}")
    if not R > 0:
        raise ValueError("circumradius must be positive")
    k = np.arange(n)
    ang = 2.0 * math.pi * k / n
    return VertexPolygon(tuple(zip(R * np.cos(ang), R * np.sin(ang))))


def regular_sides(n: int, side: float = 1.0) -> SideList:
    if n < 3:
        raise BadCount(f"a polygon needs n >= 3, got {n}")
    return SideList((float(side),) * n)
