"""Independent geometric count of crossings between two convex curves.

Marked points are exact rational points of the unit circle (rational
tangent-half-angle parametrization close to the regular n-gon angles), scaled to
integers.  A curve is the boundary of its hull thickened by a small octagon.
Crossings are counted with integer orientation tests and the configuration is
accepted only if no bigon between the two boundaries is free of marked points.
Around a shared point one curve has to be drawn thicker than the other, and a
bad choice leaves an empty bigon there, so the choices are searched.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from math import isqrt, lcm
from typing import Dict, List, Sequence, Tuple

Point = Tuple[int, int]

__all__ = ["DegenerateGeometry", "marked_points", "intersection_by_geometry"]


class DegenerateGeometry(RuntimeError):
    pass


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@lru_cache(maxsize=None)
def marked_points(n: int) -> Tuple[Point, ...]:
    """Integer points on a circle, clockwise, in the order of labels 1..n."""
    fracs = []
    for k in range(n):
        theta = 0.3141 - 2 * math.pi * k / n  # generic offset keeps tan finite
        t = Fraction(math.tan(theta / 2)).limit_denominator(1000)
        d = 1 + t * t
        fracs.append(((1 - t * t) / d, 2 * t / d))
    den = 1
    for x, y in fracs:
        den = lcm(den, x.denominator, y.denominator)
    scale = den * 1000
    return tuple((int(x * scale), int(y * scale)) for x, y in fracs)


def _hull(points: Sequence[Point]) -> List[Point]:
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: List[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]  # counterclockwise


_OCTAGON = ((2, 1), (1, 2), (-1, 2), (-2, 1), (-2, -1), (-1, -2), (1, -2), (2, -1))


@lru_cache(maxsize=None)
def _unit(n: int) -> int:
    """Octagon scale s such that thickening by 2s swallows no other point."""
    pts = marked_points(n)
    best = None
    for k in range(n):
        for i in range(n):
            for j in range(i + 1, n):
                if k in (i, j):
                    continue
                p, q, r = pts[i], pts[j], pts[k]
                cr = _cross(p, q, r)
                l2 = (q[0] - p[0]) ** 2 + (q[1] - p[1]) ** 2
                d2 = Fraction(cr * cr, l2)  # squared distance from r to line pq
                if best is None or d2 < best:
                    best = d2
    # octagon circumradius is sqrt(5)*s; keep 2*sqrt(5)*s below half the gap
    s = isqrt(int(best / 80))
    if s < 1:
        raise DegenerateGeometry("marked points too close for integer thickening")
    return s


def _thicken(n: int, members: Sequence[int], factors: Dict[int, int]) -> List[Point]:
    pts = marked_points(n)
    unit = _unit(n)
    cloud = []
    for m in members:
        s = unit * factors.get(m, 1)
        cloud.extend((pts[m - 1][0] + s * dx, pts[m - 1][1] + s * dy) for dx, dy in _OCTAGON)
    return _hull(cloud)


def _crossings(P: List[Point], Q: List[Point]):
    """Transversal crossings as (point, position on P, position on Q)."""
    out = []
    m, k = len(P), len(Q)
    for i in range(m):
        p0, p1 = P[i], P[(i + 1) % m]
        for j in range(k):
            q0, q1 = Q[j], Q[(j + 1) % k]
            d1 = _cross(p0, p1, q0)
            d2 = _cross(p0, p1, q1)
            d3 = _cross(q0, q1, p0)
            d4 = _cross(q0, q1, p1)
            if d1 == 0 or d2 == 0 or d3 == 0 or d4 == 0:
                # a vertex on the other edge's line: fine unless it is on the edge
                if (
                    (d1 == 0 and _on_segment(p0, p1, q0))
                    or (d2 == 0 and _on_segment(p0, p1, q1))
                    or (d3 == 0 and _on_segment(q0, q1, p0))
                    or (d4 == 0 and _on_segment(q0, q1, p1))
                ):
                    raise DegenerateGeometry("boundary vertex lies on the other boundary")
                continue
            if (d1 > 0) != (d2 > 0) and (d3 > 0) != (d4 > 0):
                t = Fraction(d3, d3 - d4)  # along P edge
                u = Fraction(d1, d1 - d2)  # along Q edge
                x = p0[0] + t * (p1[0] - p0[0])
                y = p0[1] + t * (p1[1] - p0[1])
                out.append(((x, y), (i, t), (j, u)))
    return out


def _on_segment(a: Point, b: Point, p: Point) -> bool:
    """p is known to be collinear with a, b."""
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _arcs(poly: List[Point], marks: List[Tuple[int, Fraction, int]]):
    """Split a closed polygon at the crossings; marks are (edge, t, crossing id).

    Returns arcs as (start id, end id, list of points).
    """
    order = sorted(marks)
    arcs = []
    m = len(poly)
    for idx, (edge, t, cid) in enumerate(order):
        nxt_edge, nt, nid = order[(idx + 1) % len(order)]
        pts: List = []
        if not (nxt_edge == edge and nt > t):
            # collect the polygon vertices edge+1, ..., nxt_edge
            e = (edge + 1) % m
            pts.append(poly[e])
            while e != nxt_edge:
                e = (e + 1) % m
                pts.append(poly[e])
        arcs.append((cid, nid, pts))
    return arcs


def _inside(poly: List[Tuple[Fraction, Fraction]], pt: Point) -> bool:
    x, y = pt
    inside = False
    m = len(poly)
    for i in range(m):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % m]
        if (y0 > y) != (y1 > y):
            xc = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
            if xc > x:
                inside = not inside
    return inside


def _has_empty_bigon(n: int, P: List[Point], Q: List[Point], cr) -> bool:
    if not cr:
        return False
    pts = marked_points(n)
    cpt = {i: c[0] for i, c in enumerate(cr)}
    arcs_p = _arcs(P, [(c[1][0], c[1][1], i) for i, c in enumerate(cr)])
    arcs_q = _arcs(Q, [(c[2][0], c[2][1], i) for i, c in enumerate(cr)])
    for s1, e1, body1 in arcs_p:
        for s2, e2, body2 in arcs_q:
            if {s1, e1} != {s2, e2}:
                continue
            if s1 == e1:
                continue
            # walk P-arc s1 -> e1, then Q-arc back to s1
            ring = [cpt[s1]] + list(body1) + [cpt[e1]]
            back = list(body2)
            if s2 == e1:
                ring += back
            else:
                ring += back[::-1]
            ring = [(Fraction(x), Fraction(y)) for x, y in ring]
            if not any(_inside(ring, p) for p in pts):
                return True
    return False


def intersection_by_geometry(n: int, A: Sequence[int], B: Sequence[int]) -> int:
    """Crossing count of the first bigon-free thickening.

    At each shared point one of the two curves is drawn thicker; the
    assignments are searched until the two boundaries bound no empty bigon,
    which by the bigon criterion means minimal position.
    """
    shared = sorted(set(A) & set(B))
    k = len(shared)
    masks = [(1 << k) - 1, 0] + list(range(1, (1 << k) - 1))
    for mask in masks:
        fa = {p: 2 if (mask >> i) & 1 else 1 for i, p in enumerate(shared)}
        fb = {p: 3 - fa[p] for p in shared}
        P = _thicken(n, A, fa)
        Q = _thicken(n, B, fb)
        cr = _crossings(P, Q)
        if len(cr) % 2:
            raise DegenerateGeometry("odd number of crossings between closed curves")
        if not _has_empty_bigon(n, P, Q, cr):
            return len(cr)
    raise DegenerateGeometry(f"no bigon-free thickening for {tuple(A)} vs {tuple(B)}")
