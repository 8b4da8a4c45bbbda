"""Boundary-edge extraction from bilevel images.

Every white pixel owns four directed unit edges, traversed
counterclockwise around the pixel: bottom, right, top, left.  An edge
belongs to the boundary set exactly when the 4-neighbor on its far side
is black or outside the image.  That per-pixel test is equivalent to
generating all four edges of every white pixel and keeping the unit
segments that occur exactly once (segments shared by two white pixels
cancel pairwise), and it needs no communication between pixels, which is
what makes the stage embarrassingly parallel.

The white parent pixel is always on the interior (left-hand) side of its
edges, so each boundary edge knows which side of the shape is inside.

``extract_edges`` cuts the image into horizontal row bands handed to a
thread pool; per-band buffers are concatenated in band order, so the
enumeration is identical for every worker count: pixels in raster order
(top file row first), then bottom/right/top/left within a pixel.  Edge
ids are dense integers 0..count-1 in that order, which lets the tracing
stage keep its used/unused labels in a flat array.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from enum import IntEnum
from typing import Iterator, NamedTuple

import numpy as np

from . import _backend
from .image import BinaryImage, PixelCoord


class EdgeType(IntEnum):
    """Which side of the parent pixel an edge runs along.

    The numeric codes 1..4 follow the counterclockwise traversal order
    bottom, right, top, left and are what the kernels store.
    """

    BOTTOM = 1
    RIGHT = 2
    TOP = 3
    LEFT = 4


class CornerPoint(NamedTuple):
    """Lattice corner of the pixel grid, in corner units (y up)."""

    x: int
    y: int


class BoundaryEdge(NamedTuple):
    parent: PixelCoord
    etype: EdgeType
    id: int


# corner offsets per edge code; index 0 unused
_FIRST_DX = np.array([0, 0, 1, 1, 0], dtype=np.int32)
_FIRST_DY = np.array([0, 0, 0, 1, 1], dtype=np.int32)
_SECOND_DX = np.array([0, 1, 1, 0, 0], dtype=np.int32)
_SECOND_DY = np.array([0, 0, 1, 1, 0], dtype=np.int32)
# 4-neighbor on the far (black) side of each edge
_ACROSS = {
    EdgeType.BOTTOM: (0, -1),
    EdgeType.RIGHT: (1, 0),
    EdgeType.TOP: (0, 1),
    EdgeType.LEFT: (-1, 0),
}


def edge_endpoints(edge: BoundaryEdge) -> tuple[CornerPoint, CornerPoint]:
    """Both corners of an edge, in traversal order (parent kept on the left)."""
    x, y = edge.parent
    code = int(edge.etype)
    return (
        CornerPoint(x + int(_FIRST_DX[code]), y + int(_FIRST_DY[code])),
        CornerPoint(x + int(_SECOND_DX[code]), y + int(_SECOND_DY[code])),
    )


class EdgeSet:
    """Deterministic enumeration of all boundary edges of one image.

    Array-backed and immutable: ``parent_x``, ``parent_y`` (int32, math
    frame) and ``etypes`` (uint8 codes 1..4) are parallel arrays indexed
    by edge id.
    """

    __slots__ = ("width", "height", "parent_x", "parent_y", "etypes")

    def __init__(self, width, height, parent_x, parent_y, etypes):
        self.width = int(width)
        self.height = int(height)
        self.parent_x = _frozen(parent_x, np.int32)
        self.parent_y = _frozen(parent_y, np.int32)
        self.etypes = _frozen(etypes, np.uint8)
        if not (len(self.parent_x) == len(self.parent_y) == len(self.etypes)):
            raise ValueError("parent/etype arrays must have equal length")

    @property
    def count(self) -> int:
        return len(self.etypes)

    def __len__(self) -> int:
        return len(self.etypes)

    def edge(self, i: int) -> BoundaryEdge:
        if not 0 <= i < len(self):
            raise IndexError(f"edge id {i} out of range 0..{len(self) - 1}")
        return BoundaryEdge(
            PixelCoord(int(self.parent_x[i]), int(self.parent_y[i])),
            EdgeType(int(self.etypes[i])),
            i,
        )

    __getitem__ = edge

    def __iter__(self) -> Iterator[BoundaryEdge]:
        return (self.edge(i) for i in range(len(self)))

    def first_points(self) -> np.ndarray:
        """(n, 2) int32 array of each edge's first corner."""
        et = self.etypes
        return np.stack(
            (self.parent_x + _FIRST_DX[et], self.parent_y + _FIRST_DY[et]), axis=1
        )

    def second_points(self) -> np.ndarray:
        """(n, 2) int32 array of each edge's second corner."""
        et = self.etypes
        return np.stack(
            (self.parent_x + _SECOND_DX[et], self.parent_y + _SECOND_DY[et]), axis=1
        )

    def __repr__(self):
        return f"EdgeSet({len(self)} edges, {self.width}x{self.height} image)"


def _frozen(arr, dtype):
    out = np.ascontiguousarray(arr, dtype=dtype)
    out.flags.writeable = False
    return out


def _row_bands(height: int, workers: int) -> list[tuple[int, int]]:
    workers = min(workers, height)
    base, extra = divmod(height, workers)
    bands = []
    r = 0
    for i in range(workers):
        step = base + (1 if i < extra else 0)
        bands.append((r, r + step))
        r += step
    return bands


def extract_edges(img: BinaryImage, workers: int = 1) -> EdgeSet:
    """All boundary edges of ``img``, bit-identical for any worker count.

    ``workers`` > 1 splits the image into that many row bands processed
    concurrently; the result is a deterministic concatenation in band
    order, so parallelism never changes ids, order or content.
    """
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    raster = img.raster
    h = img.height
    kern = _backend.kernels
    bands = _row_bands(h, workers)
    if len(bands) == 1:
        parts = [kern.extract_rows(raster, 0, h)]
    else:
        with ThreadPoolExecutor(max_workers=len(bands)) as pool:
            parts = list(pool.map(lambda b: kern.extract_rows(raster, b[0], b[1]), bands))
    px = np.concatenate([p[0] for p in parts])
    py = np.concatenate([p[1] for p in parts])
    et = np.concatenate([p[2] for p in parts])
    return EdgeSet(img.width, h, px, py, et)
