"""dilcon: oriented and dilated polygon contours from bilevel raster images.

The pipeline has two stages.  First, every white pixel is examined
independently (and in parallel) for boundary edges: directed unit edges
whose far side is black, i.e. exactly the unit segments of multiplicity
one.  Second, a single linear pass connects those edges into closed
loops, counterclockwise around objects and clockwise around holes,
resolving four-valent corners by staying on the same pixel.  Replacing
each loop point by its edge midpoint yields the dilated variant, stored
in exact half-unit integers, which separates shapes that touched at a
single corner.

Hot kernels run in a compiled extension when built, with a pure
NumPy/Python fallback selected automatically at import
(``DILCON_BACKEND`` overrides).
"""

from ._backend import backend_name
from .bench import BenchReport, BenchRow, bench
from .document import (
    ContourDocument,
    ContourRecord,
    document_from_json,
    export_json,
    export_svg,
    run_pipeline,
    svg_string,
)
from .edges import (
    BoundaryEdge,
    CornerPoint,
    EdgeSet,
    EdgeType,
    edge_endpoints,
    extract_edges,
)
from .errors import DilconError, ImageFormatError, InternalConsistencyError
from .geometry import (
    DilatedContour,
    HalfPoint,
    Orientation,
    chain_self_intersects,
    chains_properly_intersect,
    chains_share_point,
    classify,
    dilate,
    signed_area2,
)
from .image import (
    BinaryImage,
    ImageFormat,
    PixelCoord,
    detect_format,
    load_image,
    parse_grid_text,
    parse_pbm,
    write_grid_text,
)
from .tracing import (
    Contour,
    EndpointIndex,
    build_endpoint_index,
    trace_contours,
    used_edge_count,
)

__version__ = "0.1.0"

__all__ = [
    "BenchReport",
    "BenchRow",
    "BinaryImage",
    "BoundaryEdge",
    "Contour",
    "ContourDocument",
    "ContourRecord",
    "CornerPoint",
    "DilatedContour",
    "DilconError",
    "EdgeSet",
    "EdgeType",
    "EndpointIndex",
    "HalfPoint",
    "ImageFormat",
    "ImageFormatError",
    "InternalConsistencyError",
    "Orientation",
    "PixelCoord",
    "backend_name",
    "bench",
    "build_endpoint_index",
    "chain_self_intersects",
    "chains_properly_intersect",
    "chains_share_point",
    "classify",
    "detect_format",
    "dilate",
    "document_from_json",
    "edge_endpoints",
    "export_json",
    "export_svg",
    "extract_edges",
    "load_image",
    "parse_grid_text",
    "parse_pbm",
    "run_pipeline",
    "signed_area2",
    "svg_string",
    "trace_contours",
    "used_edge_count",
    "write_grid_text",
]
