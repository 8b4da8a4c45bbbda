"""Pipeline driver and the JSON / SVG serializations of its output.

A contour document stores every traced loop with its points in half
units (doubled integers), so both raw corner chains and dilated midpoint
chains serialize exactly, the JSON is integer-only and diffable, and two
runs over the same input are byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import geometry, tracing
from .edges import EdgeSet, extract_edges
from .errors import DilconError, InternalConsistencyError
from .image import BinaryImage


@dataclass(frozen=True, eq=True)
class ContourRecord:
    index: int
    kind: str  # "object" | "hole"
    dilated: bool
    points: tuple  # ((x2, y2), ...) half units
    signed_area2: int  # twice the area of `points`, half-unit frame
    length: int


@dataclass(frozen=True, eq=True)
class ContourDocument:
    width: int
    height: int
    contours: tuple

    def to_json_bytes(self) -> bytes:
        """Canonical byte form: fixed key order, no whitespace, integers only."""
        payload = {
            "width": self.width,
            "height": self.height,
            "contours": [
                {
                    "index": r.index,
                    "kind": r.kind,
                    "dilated": r.dilated,
                    "points": [list(p) for p in r.points],
                    "signed_area2": r.signed_area2,
                    "length": r.length,
                }
                for r in self.contours
            ],
        }
        return json.dumps(payload, separators=(",", ":")).encode("ascii")


def run_pipeline(
    img: BinaryImage, dilated: bool = False, workers: int = 1
) -> ContourDocument:
    """Extract, index and trace ``img`` into a contour document.

    ``dilated=True`` stores midpoint chains instead of corner chains.
    Output is deterministic and byte-identical for every worker count.

    The per-loop fields are computed in bulk from the flat trace arrays
    rather than per contour; tests pin this fast path to the composition
    of ``trace_contours`` / ``classify`` / ``dilate``.
    """
    edge_set = extract_edges(img, workers=workers)
    index = tracing.build_endpoint_index(edge_set)
    order, offsets = tracing.trace_loops(edge_set, index)
    n = len(order)
    raw = 2 * edge_set.first_points()[order]
    pts = geometry.midpoints2(edge_set, order) if dilated else raw
    # kind comes from the raw winding; areas of the stored points are
    # what the record reports
    raw_areas = _loop_areas2(raw, offsets)
    areas = raw_areas if not dilated else _loop_areas2(pts, offsets)
    if n and ((areas == 0).any() or (raw_areas == 0).any()):
        k = int(np.flatnonzero((areas == 0) | (raw_areas == 0))[0])
        raise InternalConsistencyError(
            f"contour {k} has zero enclosed area", stage="geometry"
        )
    records = []
    pts_list = pts.tolist()
    for i in range(len(offsets) - 1):
        a = int(offsets[i])
        b = int(offsets[i + 1])
        records.append(
            ContourRecord(
                index=i,
                kind="object" if raw_areas[i] > 0 else "hole",
                dilated=dilated,
                points=tuple(tuple(p) for p in pts_list[a:b]),
                signed_area2=int(areas[i]),
                length=b - a,
            )
        )
    return ContourDocument(
        width=img.width, height=img.height, contours=tuple(records)
    )


def _loop_areas2(pts, offsets) -> np.ndarray:
    """Twice the shoelace area of each loop in a flat point array."""
    n = len(pts)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    nxt = np.arange(1, n + 1, dtype=np.int64)
    nxt[np.asarray(offsets[1:], dtype=np.int64) - 1] = np.asarray(
        offsets[:-1], dtype=np.int64
    )
    x = pts[:, 0].astype(np.int64)
    y = pts[:, 1].astype(np.int64)
    cross = x * y[nxt] - x[nxt] * y
    return np.add.reduceat(cross, np.asarray(offsets[:-1], dtype=np.int64))


def document_from_json(data) -> ContourDocument:
    """Parse bytes/str produced by :meth:`ContourDocument.to_json_bytes`."""
    try:
        obj = json.loads(data)
        records = tuple(
            ContourRecord(
                index=int(r["index"]),
                kind=str(r["kind"]),
                dilated=bool(r["dilated"]),
                points=tuple((int(x), int(y)) for x, y in r["points"]),
                signed_area2=int(r["signed_area2"]),
                length=int(r["length"]),
            )
            for r in obj["contours"]
        )
        return ContourDocument(
            width=int(obj["width"]), height=int(obj["height"]), contours=records
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DilconError(f"malformed contour document: {exc}") from exc


def export_json(doc: ContourDocument, path) -> None:
    with open(path, "wb") as fh:
        fh.write(doc.to_json_bytes())
        fh.write(b"\n")


def _half_decimal(v: int) -> str:
    """Exact decimal of a half-unit value: always .0 or .5."""
    q, r = divmod(v, 2)
    return f"{q}.5" if r else f"{q}.0"


_STROKE = {"object": "#1f77b4", "hole": "#d62728"}


def svg_string(doc: ContourDocument) -> str:
    """One closed path per contour, y flipped to screen convention,
    objects and holes styled distinguishably.  Byte-stable."""
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{doc.width}" '
        f'height="{doc.height}" viewBox="0 0 {doc.width} {doc.height}">',
    ]
    flip = 2 * doc.height
    for rec in doc.contours:
        coords = [
            f"{_half_decimal(x2)} {_half_decimal(flip - y2)}" for x2, y2 in rec.points
        ]
        d = "M " + " L ".join(coords) + " Z"
        out.append(
            f'<path class="{rec.kind}" fill="none" stroke="{_STROKE[rec.kind]}" '
            f'stroke-width="0.08" d="{d}"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def export_svg(doc: ContourDocument, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(svg_string(doc))


def naive_records(edge_set: EdgeSet, contours, dilated: bool) -> tuple:
    """Reference record builder from the per-contour operations; used to
    pin the fused path in ``run_pipeline``."""
    records = []
    for i, c in enumerate(contours):
        pts = geometry.dilate(c, edge_set).points if dilated else 2 * c.points
        records.append(
            ContourRecord(
                index=i,
                kind=geometry.classify(c).value,
                dilated=dilated,
                points=tuple(tuple(p) for p in pts.tolist()),
                signed_area2=geometry.signed_area2(pts),
                length=len(c),
            )
        )
    return tuple(records)
