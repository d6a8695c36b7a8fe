"""Planar point-in-polygon test (strict interior, ray casting)."""

from __future__ import annotations

Point = tuple[float, float]


def on_segment(point: Point, a: Point, b: Point) -> bool:
    px, py = point
    ax, ay = a
    bx, by = b
    cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
    if cross != 0.0:
        return False
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


def point_in_polygon(point: Point, polygon: list[Point]) -> bool:
    """True iff the point is strictly inside the polygon (even-odd rule).

    Boundary points count as outside.  Self-intersecting polygons are fine;
    the even-odd rule decides their interior.
    """
    px, py = point
    inside = False
    n = len(polygon)
    for i in range(n):
        a = polygon[i]
        b = polygon[(i + 1) % n]
        if on_segment(point, a, b):
            return False
        (ax, ay), (bx, by) = a, b
        if (ay <= py < by) or (by <= py < ay):
            xi = ax + (py - ay) * (bx - ax) / (by - ay)
            if px < xi:
                inside = not inside
    return inside
