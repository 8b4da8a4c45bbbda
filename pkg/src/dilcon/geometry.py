"""Exact integer geometry: winding, area, dilation, crossing tests.

Everything here is integer arithmetic.  Raw contours live in corner
units; dilated contours store doubled coordinates (half units), which
makes edge midpoints exactly representable, so no rounding or epsilon
appears anywhere in this module.  Predicates are decided with int64
cross products (exact for the coordinate ranges a raster can produce; a
guard falls back to Python big ints beyond that).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import InternalConsistencyError

# abs coordinates below this make every int64 cross product exact
_SAFE_COORD = 1 << 20


class Orientation(str, Enum):
    """Winding of a closed chain in the y-up frame.

    Loops that enclose white pixels run counterclockwise (positive
    area); loops that enclose holes run clockwise (negative area).
    """

    OBJECT_CCW = "object"
    HOLE_CW = "hole"


class HalfPoint(NamedTuple):
    """Point stored in half units: value = 2 x geometric coordinate.

    A lattice corner has both components even; an edge midpoint has
    exactly one odd component.
    """

    x2: int
    y2: int


@dataclass(frozen=True, eq=False)
class DilatedContour:
    """Closed chain of edge midpoints, in half units, same cyclic order
    and length as the contour it came from."""

    points: np.ndarray  # (n, 2) int32, half units
    source: "object"  # the originating Contour

    def __len__(self) -> int:
        return len(self.points)

    def point(self, k: int) -> HalfPoint:
        x2, y2 = self.points[k]
        return HalfPoint(int(x2), int(y2))

    def point_list(self) -> list[tuple[int, int]]:
        return [tuple(p) for p in self.points.tolist()]


def _as_points(chain) -> np.ndarray:
    pts = getattr(chain, "points", chain)
    arr = np.asarray(pts, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"expected an (n, 2) point chain, got shape {arr.shape}")
    return arr


def signed_area2(points) -> int:
    """Twice the shoelace area of a closed chain, in the chain's units.

    Positive for counterclockwise chains in the y-up frame, negative for
    clockwise; exact integer arithmetic.
    """
    pts = _as_points(points)
    n = len(pts)
    if n < 3:
        raise ValueError(f"need at least 3 points, got {n}")
    x = pts[:, 0]
    y = pts[:, 1]
    if int(np.abs(pts).max()) >= _SAFE_COORD:
        total = 0
        xs = x.tolist()
        ys = y.tolist()
        for k in range(n):
            k1 = (k + 1) % n
            total += xs[k] * ys[k1] - xs[k1] * ys[k]
        return total
    xn = np.roll(x, -1)
    yn = np.roll(y, -1)
    return int(np.sum(x * yn - xn * y, dtype=np.int64))


def classify(contour) -> Orientation:
    """Winding of a contour (or raw point chain) from its area sign.

    Zero area cannot come out of the tracer; it is reported as an
    internal-consistency failure rather than assumed away.
    """
    a2 = signed_area2(contour)
    if a2 == 0:
        raise InternalConsistencyError(
            "degenerate contour with zero enclosed area", stage="geometry"
        )
    return Orientation.OBJECT_CCW if a2 > 0 else Orientation.HOLE_CW


# midpoint (doubled) offset from the doubled parent corner, per edge code
_MID_DX = np.array([0, 1, 2, 1, 0], dtype=np.int32)
_MID_DY = np.array([0, 0, 1, 2, 1], dtype=np.int32)


def midpoints2(edge_set, edge_ids) -> np.ndarray:
    """(n, 2) int32 midpoints, in half units, of the given edge ids."""
    ids = np.asarray(edge_ids)
    et = edge_set.etypes[ids]
    mx = 2 * edge_set.parent_x[ids] + _MID_DX[et]
    my = 2 * edge_set.parent_y[ids] + _MID_DY[et]
    return np.stack((mx, my), axis=1)


def dilate(contour, edge_set) -> DilatedContour:
    """Replace each contour point by the midpoint of its edge.

    Connectivity and cyclic order are untouched; the result offsets the
    chain by half a pixel and fully separates loops that met only at a
    single corner.
    """
    pts = midpoints2(edge_set, contour.edge_ids)
    pts.flags.writeable = False
    return DilatedContour(points=pts, source=contour)


def _segments(chain):
    pts = _as_points(chain)
    return pts, np.roll(pts, -1, axis=0)


def _cross_sign_grid(p, q, r):
    """orient(p[i], q[i], r[j]) for all i, j: sign of (q-p) x (r-p)."""
    dqp = q - p  # (n, 2)
    rx = r[:, 0][None, :] - p[:, 0][:, None]  # (n, m)
    ry = r[:, 1][None, :] - p[:, 1][:, None]
    return dqp[:, 0][:, None] * ry - dqp[:, 1][:, None] * rx


def chains_properly_intersect(a, b) -> bool:
    """True iff a segment of one closed chain crosses a segment of the
    other (intersection interior to both) or overlaps it collinearly
    over positive length.  A shared single point that is an endpoint
    touch is permitted and returns False.
    """
    p1, q1 = _segments(a)
    p2, q2 = _segments(b)
    return _pairs_properly_intersect(p1, q1, p2, q2).any()


def _pairs_properly_intersect(p1, q1, p2, q2):
    """(n, m) boolean matrix of proper intersections between segment sets."""
    d1 = _cross_sign_grid(p1, q1, p2)  # orient of b's tails wrt a's segments
    d2 = _cross_sign_grid(p1, q1, q2)
    d3 = _cross_sign_grid(p2, q2, p1).T
    d4 = _cross_sign_grid(p2, q2, q1).T
    proper = (np.sign(d1) * np.sign(d2) < 0) & (np.sign(d3) * np.sign(d4) < 0)
    collinear = (d1 == 0) & (d2 == 0) & (d3 == 0) & (d4 == 0)
    if collinear.any():
        lo1 = np.minimum(p1, q1)
        hi1 = np.maximum(p1, q1)
        lo2 = np.minimum(p2, q2)
        hi2 = np.maximum(p2, q2)
        ox = np.minimum(hi1[:, 0][:, None], hi2[:, 0][None, :]) - np.maximum(
            lo1[:, 0][:, None], lo2[:, 0][None, :]
        )
        oy = np.minimum(hi1[:, 1][:, None], hi2[:, 1][None, :]) - np.maximum(
            lo1[:, 1][:, None], lo2[:, 1][None, :]
        )
        # collinear segments overlap in more than a point iff the shared
        # bounding box has positive extent along some axis
        proper = proper | (collinear & ((ox > 0) | (oy > 0)))
    return proper


def _on_segment(dzero, lo, hi, r):
    """Collinear points r within the closed bbox of each segment.

    ``dzero``: (n, m) collinearity mask, ``lo``/``hi``: (n, 2) segment
    bboxes, ``r``: (m, 2) points; returns (n, m).
    """
    in_x = (r[:, 0][None, :] >= lo[:, 0][:, None]) & (
        r[:, 0][None, :] <= hi[:, 0][:, None]
    )
    in_y = (r[:, 1][None, :] >= lo[:, 1][:, None]) & (
        r[:, 1][None, :] <= hi[:, 1][:, None]
    )
    return dzero & in_x & in_y


def chains_share_point(a, b) -> bool:
    """True iff the two closed chains share any point at all, endpoint
    touches included (the predicate behind the dilated-separation
    guarantee)."""
    p1, q1 = _segments(a)
    p2, q2 = _segments(b)
    e1 = _cross_sign_grid(p1, q1, p2)  # (n, m)
    e2 = _cross_sign_grid(p1, q1, q2)  # (n, m)
    e3 = _cross_sign_grid(p2, q2, p1)  # (m, n)
    e4 = _cross_sign_grid(p2, q2, q1)  # (m, n)
    crossing = (np.sign(e1) * np.sign(e2) < 0) & (
        np.sign(e3).T * np.sign(e4).T < 0
    )
    if crossing.any():
        return True
    lo1, hi1 = np.minimum(p1, q1), np.maximum(p1, q1)
    lo2, hi2 = np.minimum(p2, q2), np.maximum(p2, q2)
    touch = (
        _on_segment(e1 == 0, lo1, hi1, p2)
        | _on_segment(e2 == 0, lo1, hi1, q2)
        | _on_segment(e3 == 0, lo2, hi2, p1).T
        | _on_segment(e4 == 0, lo2, hi2, q1).T
    )
    return bool(touch.any())


def chain_self_intersects(chain) -> bool:
    """True iff any two non-adjacent segments of one closed chain
    properly intersect (crossing or positive-length overlap).  Revisiting
    a single point, as pinched raw contours do, is not an intersection.
    """
    pts = _as_points(chain)
    n = len(pts)
    if n < 4:
        return False
    p, q = pts, np.roll(pts, -1, axis=0)
    hit = _pairs_properly_intersect(p, q, p, q)
    idx = np.arange(n)
    adjacent = (
        (idx[:, None] == idx[None, :])
        | ((idx[:, None] + 1) % n == idx[None, :])
        | ((idx[None, :] + 1) % n == idx[:, None])
    )
    return bool((hit & ~adjacent).any())
