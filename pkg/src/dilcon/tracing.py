"""Endpoint indexing and loop construction over a boundary edge set.

Tracing joins the directed edges head-to-tail into closed chains.  Each
corner of the grid touches either two or four boundary edges, half
incoming and half outgoing.  At a two-valent corner the continuation is
forced; at a four-valent corner (two white pixels meeting at exactly one
point) the walk continues on the outgoing edge owned by the same pixel
as the edge just traversed.  That tie-break makes the choice unique and
deliberately weakens the single-point contact, so the dilated versions
of the loops separate completely.

Loops are seeded from the lowest unused edge id and a cursor only ever
moves forward, so the whole stage is one linear pass in which every edge
is consumed exactly once; a running used-edge count checked against the
edge total confirms completion.  Loops that enclose white pixels come
out counterclockwise, loops around holes clockwise, and no loop is
shorter than four points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _backend, geometry
from .edges import CornerPoint, EdgeSet
from .errors import InternalConsistencyError


def _point_of_key(key: int, width: int) -> CornerPoint:
    return CornerPoint(int(key % (width + 1)), int(key // (width + 1)))


class EndpointIndex:
    """Map from corner points to their incident edges, split by direction.

    Backed by four flat arrays indexed by corner key
    ``y * (width + 1) + x`` holding up to two outgoing and two incoming
    edge ids in ascending order (-1 = empty).  Valence is checked at
    build time: anything other than 1+1 or 2+2 incident edges means the
    edge set did not come from a bilevel raster.
    """

    __slots__ = ("width", "height", "_out_a", "_out_b", "_in_a", "_in_b")

    def __init__(self, width, height, out_a, out_b, in_a, in_b):
        self.width = int(width)
        self.height = int(height)
        self._out_a = out_a
        self._out_b = out_b
        self._in_a = in_a
        self._in_b = in_b

    def _key(self, p) -> int:
        x, y = p
        if not (0 <= x <= self.width and 0 <= y <= self.height):
            raise IndexError(f"corner ({x}, {y}) outside the corner lattice")
        return y * (self.width + 1) + x

    def incident(self, p) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(incoming ids, outgoing ids) at a corner, each ascending."""
        k = self._key(p)
        incoming = tuple(
            int(v) for v in (self._in_a[k], self._in_b[k]) if v >= 0
        )
        outgoing = tuple(
            int(v) for v in (self._out_a[k], self._out_b[k]) if v >= 0
        )
        return incoming, outgoing

    def valence(self, p) -> int:
        incoming, outgoing = self.incident(p)
        return len(incoming) + len(outgoing)

    def __contains__(self, p) -> bool:
        return self.valence(p) > 0

    def points(self) -> list[CornerPoint]:
        """All corners with incident edges, in key (row-major) order."""
        keys = np.flatnonzero(self._out_a >= 0)
        return [_point_of_key(int(k), self.width) for k in keys]

    def __len__(self) -> int:
        return int(np.count_nonzero(self._out_a >= 0))


def build_endpoint_index(edge_set: EdgeSet) -> EndpointIndex:
    """Index every edge endpoint; fails loudly on impossible valences."""
    out_a, out_b, in_a, in_b, err = _backend.kernels.fill_point_table(
        edge_set.parent_x,
        edge_set.parent_y,
        edge_set.etypes,
        edge_set.width,
        edge_set.height,
    )
    if err >= 0:
        raise InternalConsistencyError(
            f"corner point {tuple(_point_of_key(err, edge_set.width))} has more "
            "than four incident edges",
            stage="contour-tracing",
        )
    out_n = (out_a >= 0).astype(np.int8) + (out_b >= 0).astype(np.int8)
    in_n = (in_a >= 0).astype(np.int8) + (in_b >= 0).astype(np.int8)
    bad = out_n != in_n
    if bad.any():
        k = int(np.flatnonzero(bad)[0])
        p = _point_of_key(k, edge_set.width)
        raise InternalConsistencyError(
            f"corner point {tuple(p)} has {int(in_n[k])} incoming but "
            f"{int(out_n[k])} outgoing edges (valence must be 2 or 4, balanced)",
            stage="contour-tracing",
        )
    return EndpointIndex(edge_set.width, edge_set.height, out_a, out_b, in_a, in_b)


@dataclass(frozen=True, eq=False)
class Contour:
    """Closed oriented chain of corner points.

    ``points[k]`` is the first corner of edge ``edge_ids[k]``; the edge
    ends at ``points[(k + 1) % n]``, which closes the chain.
    """

    points: np.ndarray  # (n, 2) int32, corner units
    edge_ids: np.ndarray  # (n,) int32

    def __len__(self) -> int:
        return len(self.edge_ids)

    def point(self, k: int) -> CornerPoint:
        x, y = self.points[k]
        return CornerPoint(int(x), int(y))

    def point_list(self) -> list[tuple[int, int]]:
        return [tuple(p) for p in self.points.tolist()]

    @property
    def orientation(self) -> geometry.Orientation:
        return geometry.classify(self)


def trace_loops(edge_set: EdgeSet, index: EndpointIndex):
    """Raw kernel walk: (order, offsets) where ``order`` is the edge-id
    permutation in traversal order and ``offsets`` bounds each loop."""
    order, offsets, used_total, err = _backend.kernels.trace_edges(
        edge_set.parent_x,
        edge_set.parent_y,
        edge_set.etypes,
        index._out_a,
        index._out_b,
        edge_set.width,
        edge_set.height,
    )
    if err >= 0:
        p = _point_of_key(err, edge_set.width)
        raise InternalConsistencyError(
            f"no legal continuation at corner point {tuple(p)}",
            stage="contour-tracing",
        )
    if used_total != len(edge_set):
        raise InternalConsistencyError(
            f"tracing consumed {used_total} of {len(edge_set)} edges",
            stage="contour-tracing",
        )
    return order, offsets


def trace_contours(edge_set: EdgeSet, index: EndpointIndex) -> list[Contour]:
    """All closed loops of the edge set, in seed-edge order.

    Every edge id appears in exactly one contour exactly once, each
    contour point is the first corner of its edge, and the walk applies
    the same-parent tie-break at four-valent corners.
    """
    order, offsets = trace_loops(edge_set, index)
    first = edge_set.first_points()[order]
    contours = []
    for i in range(len(offsets) - 1):
        a, b = int(offsets[i]), int(offsets[i + 1])
        pts = np.ascontiguousarray(first[a:b])
        ids = np.ascontiguousarray(order[a:b])
        pts.flags.writeable = False
        ids.flags.writeable = False
        contours.append(Contour(points=pts, edge_ids=ids))
    return contours


def used_edge_count(contours: Iterable[Contour]) -> int:
    """Edges consumed by the traced loops so far.

    Each contour point stands for exactly one consumed edge, so after a
    complete trace this equals the edge-set size (the tracer itself
    re-checks that internally before returning).
    """
    return sum(len(c) for c in contours)
