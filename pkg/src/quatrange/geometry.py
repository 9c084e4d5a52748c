"""Planar convex geometry: hulls, half-plane intersections, Hausdorff distances.

Polygons are (V, 2) float arrays in counterclockwise order starting from the
lexicographically smallest vertex.  Degenerate polygons with one (point) or
two (segment) vertices are legal everywhere.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "convex_hull",
    "halfplane_intersection",
    "clip_polygon",
    "polygon_contains",
    "signed_inner_distance",
    "point_polygon_distance",
    "points_polygon_distance",
    "points_in_polygon",
    "hausdorff_convex",
    "minkowski_sum",
    "polygon_support",
    "DegenerateRegionError",
]


class DegenerateRegionError(RuntimeError):
    """Raised when a half-plane intersection collapses to the empty set."""


def _canonical(vertices: np.ndarray) -> np.ndarray:
    """Rotate a CCW vertex list to start at the lexicographic minimum."""
    if len(vertices) <= 1:
        return vertices
    start = np.lexsort((vertices[:, 1], vertices[:, 0]))[0]
    return np.roll(vertices, -start, axis=0)


def _prune_interior(pts: np.ndarray) -> np.ndarray:
    """Drop points strictly inside the hull of eight directional extremes.

    Exact hull-preserving reduction (Akl-Toussaint): the extreme points span a
    convex polygon contained in the true hull, so its strict interior holds no
    hull vertex.
    """
    if len(pts) <= 16:
        return pts
    dirs = np.array([(1, 0), (0, 1), (1, 1), (1, -1),
                     (-1, 0), (0, -1), (-1, -1), (-1, 1)], dtype=float)
    proj = pts @ dirs.T
    corners = pts[np.unique(np.argmax(proj, axis=0))]
    if len(corners) < 3:
        return pts
    order = np.argsort(np.arctan2(corners[:, 1] - corners[:, 1].mean(),
                                  corners[:, 0] - corners[:, 0].mean()))
    ring = corners[order]
    d = np.roll(ring, -1, axis=0) - ring
    if np.any((d * d).sum(axis=1) < 1e-300):
        return pts
    cross = (d[None, :, 0] * (pts[:, 1:2] - ring[None, :, 1])
             - d[None, :, 1] * (pts[:, 0:1] - ring[None, :, 0]))
    orient = 1.0 if _ring_area(ring) > 0 else -1.0
    inside = np.all(orient * cross > 1e-12, axis=1)
    return pts[~inside]


def _ring_area(ring: np.ndarray) -> float:
    x, y = ring[:, 0], ring[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def convex_hull(points) -> np.ndarray:
    """Convex hull via the monotone chain, collinear points dropped."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if pts.shape[0] == 0:
        raise ValueError("convex hull of an empty point set")
    pts = _prune_interior(pts)
    pts = np.unique(pts, axis=0)  # lexicographic sort + dedupe
    if pts.shape[0] == 1:
        return pts
    if pts.shape[0] == 2:
        return pts

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2:
                o, a = out[-2], out[-1]
                cross = (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0])
                if cross <= 0.0:
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(pts[::-1])
    hull = np.array(lower[:-1] + upper[:-1])
    if hull.shape[0] == 0:
        return pts[:1]
    if hull.shape[0] <= 2:
        uniq = np.unique(hull, axis=0)
        return uniq
    return _canonical(hull)


def clip_polygon(poly: np.ndarray, normal, offset: float) -> np.ndarray:
    """Sutherland-Hodgman clip of a convex polygon by normal . p <= offset."""
    if len(poly) == 0:
        return poly
    n = np.asarray(normal, dtype=float)
    vals = poly @ n - offset
    if np.all(vals <= 0.0):
        return poly
    if np.all(vals > 0.0):
        return poly[:0]
    out = []
    m = len(poly)
    for i in range(m):
        p, vp = poly[i], vals[i]
        q, vq = poly[(i + 1) % m], vals[(i + 1) % m]
        if vp <= 0.0:
            out.append(p)
        if (vp <= 0.0) != (vq <= 0.0):
            t = vp / (vp - vq)
            out.append(p + t * (q - p))
    return np.array(out)


def _dedupe_ring(poly: np.ndarray, tol: float) -> np.ndarray:
    if len(poly) <= 1:
        return poly
    keep = [poly[0]]
    for p in poly[1:]:
        if np.max(np.abs(p - keep[-1])) > tol:
            keep.append(p)
    while len(keep) > 1 and np.max(np.abs(keep[0] - keep[-1])) <= tol:
        keep.pop()
    return np.array(keep)


def halfplane_intersection(constraints, bound: float) -> np.ndarray:
    """Intersect half-planes n . p <= c within a centered square of half-width bound.

    ``constraints`` is a sequence of (nx, ny, c).  The result is re-hulled to a
    canonical CCW polygon; collapses to a segment or point when the feasible
    set is lower-dimensional.  Raises DegenerateRegionError when empty.
    """
    r = float(bound)
    poly = np.array([(-r, -r), (r, -r), (r, r), (-r, r)], dtype=float)
    for nx, ny, c in constraints:
        poly = clip_polygon(poly, (nx, ny), float(c))
        if len(poly) == 0:
            raise DegenerateRegionError("half-plane intersection is empty")
    poly = _dedupe_ring(poly, 1e-12 * (1.0 + r))
    return convex_hull(poly) if len(poly) >= 3 else _canonical(np.unique(poly, axis=0))


def _segment_distances(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Distances from points p (m, 2) to segments a->b (k, 2); returns (m, k)."""
    d = b - a
    dd = np.maximum(np.sum(d * d, axis=1), 1e-300)
    w = p[:, None, :] - a[None, :, :]
    t = np.clip(np.einsum("mkc,kc->mk", w, d) / dd[None, :], 0.0, 1.0)
    proj = a[None, :, :] + t[:, :, None] * d[None, :, :]
    return np.linalg.norm(p[:, None, :] - proj, axis=2)


def _edges(poly: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if len(poly) == 1:
        return poly, poly
    if len(poly) == 2:
        return poly[:1], poly[1:]
    return poly, np.roll(poly, -1, axis=0)


def signed_inner_distance(poly: np.ndarray, point) -> float:
    """Distance to the boundary, positive inside, negative outside.

    For degenerate polygons the value is minus the distance to the set.
    """
    p = np.asarray(point, dtype=float).reshape(1, 2)
    if len(poly) <= 2:
        a, b = _edges(poly)
        return -float(_segment_distances(p, a, b).min())
    a = poly
    b = np.roll(poly, -1, axis=0)
    d = b - a
    lengths = np.linalg.norm(d, axis=1)
    lengths = np.maximum(lengths, 1e-300)
    cross = (d[:, 0] * (p[0, 1] - a[:, 1]) - d[:, 1] * (p[0, 0] - a[:, 0])) / lengths
    inside = float(np.min(cross))
    if inside >= 0.0:
        return inside
    return -float(_segment_distances(p, a, b).min())


def polygon_contains(poly: np.ndarray, point, tol: float = 0.0) -> bool:
    return signed_inner_distance(poly, point) >= -tol


def point_polygon_distance(poly: np.ndarray, point) -> float:
    return max(0.0, -signed_inner_distance(poly, point))


def points_in_polygon(poly: np.ndarray, points: np.ndarray, tol: float = 0.0) -> np.ndarray:
    """Vectorized membership mask for a convex CCW polygon."""
    p = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(poly) < 3:
        a, b = _edges(poly)
        return _segment_distances(p, a, b).min(axis=1) <= tol
    d = np.roll(poly, -1, axis=0) - poly
    lengths = np.maximum(np.linalg.norm(d, axis=1), 1e-300)
    cross = (d[None, :, 0] * (p[:, 1:2] - poly[None, :, 1])
             - d[None, :, 1] * (p[:, 0:1] - poly[None, :, 0])) / lengths[None, :]
    return np.all(cross >= -tol, axis=1)


def points_polygon_distance(poly: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Distances from many points to a convex polygon (vectorized)."""
    p = np.asarray(points, dtype=float).reshape(-1, 2)
    a, b = _edges(poly)
    dist = _segment_distances(p, a, b).min(axis=1)
    if len(poly) >= 3:
        dist = np.where(points_in_polygon(poly, p), 0.0, dist)
    return dist


def hausdorff_convex(P: np.ndarray, Q: np.ndarray) -> float:
    """Hausdorff distance between two convex polygons.

    dist(., Q) is convex, so the supremum over P is attained at a vertex;
    the same holds with the roles swapped.
    """
    d1 = float(points_polygon_distance(Q, P).max())
    d2 = float(points_polygon_distance(P, Q).max())
    return max(d1, d2)


def minkowski_sum(P: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """Minkowski sum of convex polygons via the hull of pairwise vertex sums."""
    sums = (P[:, None, :] + Q[None, :, :]).reshape(-1, 2)
    return convex_hull(sums)


def polygon_support(poly: np.ndarray, directions: np.ndarray) -> np.ndarray:
    """Support values max_v <v, d> for each row direction d."""
    return (np.asarray(poly) @ np.asarray(directions).T).max(axis=0)
