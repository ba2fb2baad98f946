"""Polygonal scatterers in the plane: obstacles, boundary cells, reflections.

An obstacle is a finite union of simple polygons (solid pieces) plus
optional free segment cells (crack-type pieces).  The exterior is the
unbounded open complement; all types are immutable after construction
and all operations are pure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import DegenerateEdge, SeedInsideScatterer, SelfIntersecting

BOUNDARY_TOL_FACTOR = 1e-9  # default on-boundary tolerance, relative to bounding radius


class PointLocation(Enum):
    INTERIOR = "interior"
    ON_BOUNDARY = "on_boundary"
    EXTERIOR = "exterior"


@dataclass(frozen=True)
class Polygon:
    """Simple polygon with counterclockwise vertex order.

    vertices : (n, 2) float array, n >= 3, no repeated consecutive points.
    """

    vertices: np.ndarray

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def signed_area(self) -> float:
        x, y = self.vertices[:, 0], self.vertices[:, 1]
        return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))

    def edges(self) -> np.ndarray:
        """All edges as an (n, 2, 2) array of (start, end) pairs."""
        return np.stack([self.vertices, np.roll(self.vertices, -1, axis=0)], axis=1)


@dataclass(frozen=True)
class Cell:
    """One straight boundary cell: a segment plus its unit normal.

    For polygon edges the normal points into the exterior; free cells keep
    the normal they were constructed with.
    """

    segment: np.ndarray  # (2, 2): endpoints
    normal: np.ndarray  # (2,): unit, perpendicular to the segment
    owner: str  # "edge" or "free"

    @property
    def length(self) -> float:
        return float(np.linalg.norm(self.segment[1] - self.segment[0]))

    @property
    def midpoint(self) -> np.ndarray:
        return 0.5 * (self.segment[0] + self.segment[1])

    @property
    def tangent(self) -> np.ndarray:
        d = self.segment[1] - self.segment[0]
        return d / np.linalg.norm(d)


@dataclass(frozen=True)
class Line:
    """Infinite line through `point` with unit `direction`."""

    point: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.direction, dtype=float)
        n = np.linalg.norm(d)
        if not np.isfinite(n) or n == 0.0:
            raise ValueError("line direction must be nonzero")
        object.__setattr__(self, "point", np.asarray(self.point, dtype=float))
        object.__setattr__(self, "direction", d / n)

    @property
    def normal(self) -> np.ndarray:
        return np.array([-self.direction[1], self.direction[0]])

    def param_of(self, x) -> float:
        """Signed parameter of the projection of x onto the line."""
        return float(np.dot(np.asarray(x, dtype=float) - self.point, self.direction))

    def at(self, t: float) -> np.ndarray:
        return self.point + t * self.direction


@dataclass(frozen=True)
class Scatterer:
    """Compact obstacle: solid polygons plus free (crack) cells."""

    polygons: tuple[Polygon, ...]
    free_cells: tuple[Cell, ...] = ()
    exterior_connected: bool = field(default=True, compare=False)

    @property
    def bounding_radius(self) -> float:
        radii = [0.0]
        for p in self.polygons:
            radii.append(float(np.max(np.linalg.norm(p.vertices, axis=1))))
        for c in self.free_cells:
            radii.append(float(np.max(np.linalg.norm(c.segment, axis=1))))
        return max(radii)

    @property
    def has_free_cells(self) -> bool:
        return len(self.free_cells) > 0

    @property
    def is_empty(self) -> bool:
        return not self.polygons and not self.free_cells


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------
def _segments_properly_intersect(p1, p2, q1, q2, eps=1e-14) -> bool:
    """True if open segments (p1,p2) and (q1,q2) cross or overlap improperly."""

    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1 = orient(q1, q2, p1)
    d2 = orient(q1, q2, p2)
    d3 = orient(p1, p2, q1)
    d4 = orient(p1, p2, q2)
    if ((d1 > eps and d2 < -eps) or (d1 < -eps and d2 > eps)) and (
        (d3 > eps and d4 < -eps) or (d3 < -eps and d4 > eps)
    ):
        return True

    def on_segment(a, b, c):
        # c collinear with (a, b); is it strictly inside?
        if abs(orient(a, b, c)) > eps:
            return False
        t = np.dot(c - a, b - a) / max(np.dot(b - a, b - a), eps)
        return eps < t < 1.0 - eps

    return any(
        on_segment(a, b, c)
        for a, b, c in ((q1, q2, p1), (q1, q2, p2), (p1, p2, q1), (p1, p2, q2))
    )


def make_polygon(vertices: Sequence) -> Polygon:
    """Validate and normalize a polygon to counterclockwise orientation.

    Clockwise input is reversed; repeated consecutive vertices raise
    DegenerateEdge; crossing edges raise SelfIntersecting.
    """
    v = np.asarray(vertices, dtype=float)
    if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
        raise ValueError("polygon needs at least 3 points of dimension 2")
    if np.allclose(v[0], v[-1]) and len(v) > 3:
        v = v[:-1]  # tolerate an explicitly closed ring

    scale = max(float(np.max(np.abs(v))), 1.0)
    edge_len = np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1)
    if np.any(edge_len <= 1e-12 * scale):
        raise DegenerateEdge("zero-length polygon edge")

    poly = Polygon(vertices=v)
    if abs(poly.signed_area) <= 1e-14 * scale * scale:
        raise SelfIntersecting("polygon has zero area")
    if poly.signed_area < 0.0:
        poly = Polygon(vertices=v[::-1].copy())

    edges = poly.edges()
    n = len(edges)
    for i in range(n):
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue  # shared-vertex neighbours
            if _segments_properly_intersect(
                edges[i, 0], edges[i, 1], edges[j, 0], edges[j, 1], eps=1e-14 * scale * scale
            ):
                raise SelfIntersecting(f"edges {i} and {j} intersect")
    poly.vertices.setflags(write=False)
    return poly


def make_free_cell(p0, p1) -> Cell:
    """Free (crack) segment cell; the stored normal is one of the two choices."""
    a = np.asarray(p0, dtype=float)
    b = np.asarray(p1, dtype=float)
    d = b - a
    length = np.linalg.norm(d)
    if length <= 0.0:
        raise DegenerateEdge("zero-length free cell")
    t = d / length
    return Cell(segment=np.array([a, b]), normal=np.array([-t[1], t[0]]), owner="free")


def make_scatterer(polygons=(), free_cells=(), verify_exterior=True, grid_n=96) -> Scatterer:
    """Bundle polygons and free cells; optionally verify exterior connectivity.

    Connectivity of the complement is checked by flood fill on a uniform
    grid over a box of twice the bounding radius; disconnected exteriors
    raise ValueError.
    """
    polys = tuple(p if isinstance(p, Polygon) else make_polygon(p) for p in polygons)
    cells = tuple(
        c if isinstance(c, Cell) else make_free_cell(c[0], c[1]) for c in free_cells
    )
    s = Scatterer(polygons=polys, free_cells=cells)
    if verify_exterior and not s.is_empty:
        connected = _exterior_connected(s, grid_n=grid_n)
        if not connected:
            raise ValueError("exterior of the scatterer is not connected")
        s = Scatterer(polygons=polys, free_cells=cells, exterior_connected=connected)
    return s


def _exterior_connected(s: Scatterer, grid_n: int = 96) -> bool:
    """Flood-fill check that the grid complement of D forms one component."""
    R = s.bounding_radius
    if R == 0.0:
        return True
    lo, hi = -2.0 * R, 2.0 * R
    xs = np.linspace(lo, hi, grid_n)
    h = xs[1] - xs[0]
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    pts = np.column_stack([X.ravel(), Y.ravel()])
    loc = classify_points(s, pts, tol=0.75 * h)
    free = (loc == PointLocation.EXTERIOR.value).reshape(grid_n, grid_n)

    labels = np.zeros(free.shape, dtype=int)
    current = 0
    for i0 in range(grid_n):
        for j0 in range(grid_n):
            if free[i0, j0] and labels[i0, j0] == 0:
                current += 1
                stack = [(i0, j0)]
                labels[i0, j0] = current
                while stack:
                    i, j = stack.pop()
                    for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                        a, b = i + di, j + dj
                        if 0 <= a < grid_n and 0 <= b < grid_n and free[a, b] and labels[a, b] == 0:
                            labels[a, b] = current
                            stack.append((a, b))
    return current <= 1


# ---------------------------------------------------------------------------
# queries
# ---------------------------------------------------------------------------
def _point_segment_distance(pts: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Distances from points (m, 2) to segment [a, b]."""
    ab = b - a
    denom = float(np.dot(ab, ab))
    if denom == 0.0:
        return np.linalg.norm(pts - a, axis=-1)
    t = np.clip((pts - a) @ ab / denom, 0.0, 1.0)
    proj = a + t[..., None] * ab
    return np.linalg.norm(pts - proj, axis=-1)


def distance_to_boundary(s: Scatterer, pts) -> np.ndarray:
    """Distance from each point to the union of all boundary cells."""
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    if s.is_empty:
        return np.full(len(pts), np.inf)
    d = np.full(len(pts), np.inf)
    for poly in s.polygons:
        for a, b in poly.edges():
            d = np.minimum(d, _point_segment_distance(pts, a, b))
    for c in s.free_cells:
        d = np.minimum(d, _point_segment_distance(pts, c.segment[0], c.segment[1]))
    return d


def _inside_polygon(poly: Polygon, pts: np.ndarray) -> np.ndarray:
    """Even-odd rule, half-open in y to be stable under vertex rotation."""
    x, y = pts[:, 0], pts[:, 1]
    inside = np.zeros(len(pts), dtype=bool)
    v = poly.vertices
    n = len(v)
    for i in range(n):
        x1, y1 = v[i]
        x2, y2 = v[(i + 1) % n]
        crosses = (y1 > y) != (y2 > y)
        if not np.any(crosses):
            continue
        xint = x1 + (y[crosses] - y1) * (x2 - x1) / (y2 - y1)
        hit = np.zeros(len(pts), dtype=bool)
        hit[crosses] = x[crosses] < xint
        inside ^= hit
    return inside


def classify_points(s: Scatterer, pts, tol: float | None = None) -> np.ndarray:
    """Classify points as interior / on_boundary / exterior (vectorized).

    Returns an array of PointLocation values (their .value strings).
    """
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    if tol is None:
        tol = BOUNDARY_TOL_FACTOR * max(s.bounding_radius, 1.0)
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    out = np.full(len(pts), PointLocation.EXTERIOR.value, dtype=object)
    if s.is_empty:
        return out
    on = distance_to_boundary(s, pts) <= tol
    inside = np.zeros(len(pts), dtype=bool)
    for poly in s.polygons:
        inside |= _inside_polygon(poly, pts)
    out[inside] = PointLocation.INTERIOR.value
    out[on] = PointLocation.ON_BOUNDARY.value
    return out


def classify_point(s: Scatterer, x, tol: float | None = None) -> PointLocation:
    """Single-point version of classify_points."""
    return PointLocation(classify_points(s, [x], tol=tol)[0])


def reflect(x, line: Line):
    """Euclidean reflection across a line; accepts a point or a polyline."""
    pts = np.asarray(x, dtype=float)
    single = pts.ndim == 1
    pts = np.atleast_2d(pts)
    d = line.direction
    rel = pts - line.point
    along = rel @ d
    refl = line.point + 2.0 * along[:, None] * d - rel
    return refl[0] if single else refl


def boundary_cells(s: Scatterer) -> list[Cell]:
    """Every polygon edge plus every free cell, each exactly once.

    Polygon-edge normals point into the exterior: for counterclockwise
    vertices the outward normal of edge direction t is (t_y, -t_x).
    """
    cells: list[Cell] = []
    for poly in s.polygons:
        for a, b in poly.edges():
            t = (b - a) / np.linalg.norm(b - a)
            cells.append(
                Cell(segment=np.array([a, b]), normal=np.array([t[1], -t[0]]), owner="edge")
            )
    cells.extend(s.free_cells)
    return cells


def line_component(s: Scatterer, line: Line, seed, window: float) -> list[tuple[float, float]]:
    """Maximal interval of line \\ D containing the seed, clipped to the window.

    Parameters are signed arc lengths along the line; the seed must lie on
    the line and strictly outside the obstacle.
    """
    seed = np.asarray(seed, dtype=float)
    t_seed = line.param_of(seed)
    perp = abs(np.dot(seed - line.point, line.normal))
    scale = max(s.bounding_radius, 1.0, abs(window))
    if perp > 1e-9 * scale:
        raise ValueError("seed does not lie on the line")
    if classify_point(s, seed) != PointLocation.EXTERIOR:
        raise SeedInsideScatterer("seed lies inside or on the scatterer")

    lo, hi = -abs(window), abs(window)
    cuts = {lo, hi}
    d = line.direction

    def add_segment_cuts(a, b):
        # Intersection params of segment [a, b] with the line.
        ab = b - a
        denom = float(d[0] * ab[1] - d[1] * ab[0])
        rel = a - line.point
        off_a = float(np.dot(a - line.point, line.normal))
        off_b = float(np.dot(b - line.point, line.normal))
        if abs(denom) <= 1e-14 * scale:
            if abs(off_a) <= 1e-9 * scale:  # collinear overlap
                cuts.add(line.param_of(a))
                cuts.add(line.param_of(b))
            return
        u = -(d[0] * rel[1] - d[1] * rel[0]) / denom  # position along [a, b]
        if -1e-12 <= u <= 1.0 + 1e-12:
            cuts.add(float(np.dot(a + u * ab - line.point, d)))

    for poly in s.polygons:
        for a, b in poly.edges():
            add_segment_cuts(a, b)
    for c in s.free_cells:
        add_segment_cuts(c.segment[0], c.segment[1])

    params = sorted(t for t in cuts if lo - 1e-12 <= t <= hi + 1e-12)
    if t_seed < lo or t_seed > hi:
        raise ValueError("seed lies outside the window")

    # Classify each gap by its midpoint; blocked gaps belong to closed D.
    blocked = []
    for t0, t1 in zip(params[:-1], params[1:]):
        if t1 - t0 <= 1e-14 * scale:
            continue
        mid = line.at(0.5 * (t0 + t1))
        if classify_point(s, mid) != PointLocation.EXTERIOR:
            blocked.append((t0, t1))
    # A cut point on D (transversal crack, grazed corner) blocks by itself.
    for t in params:
        if lo < t < hi and classify_point(s, line.at(t)) != PointLocation.EXTERIOR:
            blocked.append((t, t))

    left, right = lo, hi
    for t0, t1 in blocked:
        if t1 <= t_seed:
            left = max(left, t1)
        elif t0 >= t_seed:
            right = min(right, t0)
        else:
            raise SeedInsideScatterer("seed lies in a blocked stretch of the line")
    return [(left, right)]


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------
def scatterer_to_json(s: Scatterer) -> str:
    doc = {
        "polygons": [p.vertices.tolist() for p in s.polygons],
        "free_cells": [c.segment.tolist() for c in s.free_cells],
    }
    return json.dumps(doc, sort_keys=True)


def scatterer_from_json(text: str) -> Scatterer:
    doc = json.loads(text)
    return make_scatterer(
        polygons=[np.asarray(p) for p in doc.get("polygons", [])],
        free_cells=[(np.asarray(c[0]), np.asarray(c[1])) for c in doc.get("free_cells", [])],
    )
