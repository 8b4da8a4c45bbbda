"""Bilevel raster images and the file formats that carry them.

Coordinate convention
---------------------
A pixel with coordinate ``(x, y)`` occupies the closed unit square whose
lower-left corner is ``(x, y)`` and whose upper-right corner is
``(x + 1, y + 1)``, with the y axis pointing up.  File formats store rows
top-first, so file row ``r`` holds the pixels with ``y = height - 1 - r``.
Every geometric statement downstream (winding sign, areas, the SVG y
flip) derives from this frame.

White pixels are the objects whose boundaries get traced; black pixels
are background and holes, and everything outside the image counts as
black.

Formats
-------
``pbm_ascii`` / ``pbm_binary``
    Netpbm PBM, magic ``P1`` (ASCII) or ``P4`` (packed, MSB first, rows
    padded to whole bytes).  PBM stores 1 = black; the loader keeps that
    convention by default and ``invert=True`` flips it, because masks in
    the wild use both.
``grid_text``
    Whitespace-separated rows of ``0``/``1`` characters, top row first,
    ``1`` = white.  The human-writable fixture format.
"""

from __future__ import annotations

import enum
from typing import NamedTuple

import numpy as np

from .errors import ImageFormatError


class ImageFormat(str, enum.Enum):
    PBM_ASCII = "pbm_ascii"
    PBM_BINARY = "pbm_binary"
    GRID_TEXT = "grid_text"


class PixelCoord(NamedTuple):
    """Pixel position in the mathematical frame (x = column, y counts up)."""

    x: int
    y: int


class BinaryImage:
    """Immutable width x height grid of black/white pixels.

    ``raster`` is the uint8 storage, shape ``(height, width)``, file row
    order (row 0 = top), value 1 = white.  ``pixel_at`` and friends take
    math-frame coordinates and do the row flip internally.
    """

    __slots__ = ("_raster",)

    def __init__(self, width, height, pixels):
        if width < 1 or height < 1:
            raise ValueError(f"image dimensions must be positive, got {width}x{height}")
        arr = np.asarray(pixels, dtype=np.uint8).reshape(-1)
        if arr.size != width * height:
            raise ValueError(
                f"pixel count {arr.size} does not match {width}x{height} = {width * height}"
            )
        self._init_from(arr.reshape(height, width))

    def _init_from(self, raster):
        raster = np.ascontiguousarray(raster != 0).astype(np.uint8)
        raster.flags.writeable = False
        self._raster = raster

    @classmethod
    def from_array(cls, raster) -> "BinaryImage":
        """Build from a 2-D array-like, rows top-first, nonzero = white."""
        arr = np.asarray(raster)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D array, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"image dimensions must be positive, got shape {arr.shape}")
        img = cls.__new__(cls)
        img._init_from(arr)
        return img

    @property
    def raster(self) -> np.ndarray:
        return self._raster

    @property
    def width(self) -> int:
        return int(self._raster.shape[1])

    @property
    def height(self) -> int:
        return int(self._raster.shape[0])

    @property
    def pixels(self) -> np.ndarray:
        """Flat row-major (top row first) boolean view, True = white."""
        return self._raster.reshape(-1).astype(bool)

    @property
    def white_count(self) -> int:
        return int(np.count_nonzero(self._raster))

    def pixel_at(self, p) -> bool:
        """Strict lookup; raises IndexError outside the image."""
        x, y = p
        if not (0 <= x < self.width and 0 <= y < self.height):
            raise IndexError(
                f"pixel ({x}, {y}) outside {self.width}x{self.height} image"
            )
        return bool(self._raster[self.height - 1 - y, x])

    def pixel_at_or_black(self, p) -> bool:
        """Like ``pixel_at`` but the universe outside the image is black."""
        x, y = p
        if not (0 <= x < self.width and 0 <= y < self.height):
            return False
        return bool(self._raster[self.height - 1 - y, x])

    def inverted(self) -> "BinaryImage":
        return BinaryImage.from_array(1 - self._raster)

    def to_grid_text(self) -> str:
        rows = ["".join("1" if v else "0" for v in row) for row in self._raster]
        return "\n".join(rows) + "\n"

    def __eq__(self, other):
        if not isinstance(other, BinaryImage):
            return NotImplemented
        return self._raster.shape == other._raster.shape and bool(
            np.array_equal(self._raster, other._raster)
        )

    def __hash__(self):
        return hash((self.width, self.height, self._raster.tobytes()))

    def __repr__(self):
        return f"BinaryImage({self.width}x{self.height}, {self.white_count} white)"


def detect_format(data: bytes) -> ImageFormat:
    """Sniff the format from the leading bytes."""
    if data.startswith(b"P1"):
        return ImageFormat.PBM_ASCII
    if data.startswith(b"P4"):
        return ImageFormat.PBM_BINARY
    return ImageFormat.GRID_TEXT


def _line_of(data: bytes, offset: int) -> int:
    return data.count(b"\n", 0, offset) + 1


def _pbm_header(data: bytes, path):
    """Parse magic + dimensions, comments allowed; returns (w, h, offset past header)."""
    if data[:2] not in (b"P1", b"P4"):
        raise ImageFormatError(
            f"not a PBM file (magic {data[:2]!r}, expected P1 or P4)", path=path, byte=0
        )
    pos = 2
    fields = []
    while len(fields) < 2:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos : pos + 1] == b"#":
            nl = data.find(b"\n", pos)
            pos = len(data) if nl < 0 else nl + 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        if pos == start:
            raise ImageFormatError(
                "unexpected end of file in header (width and height expected)",
                path=path,
                line=_line_of(data, min(start, len(data) - 1) if data else 0),
            )
        token = data[start:pos]
        if not token.isdigit():
            raise ImageFormatError(
                f"illegal header token {token!r} (expected a decimal integer)",
                path=path,
                line=_line_of(data, start),
            )
        fields.append((int(token), start))
    (w, w_at), (h, h_at) = fields
    if w == 0 or h == 0:
        at = w_at if w == 0 else h_at
        raise ImageFormatError(
            f"zero image dimension {w}x{h}", path=path, line=_line_of(data, at)
        )
    return w, h, pos


def parse_pbm(data: bytes, *, invert: bool = False, path=None) -> BinaryImage:
    """Decode PBM P1 or P4 bytes.

    By default PBM sample 1 maps to black (the Netpbm convention);
    ``invert=True`` maps 1 to white instead.
    """
    w, h, pos = _pbm_header(data, path)
    if data[:2] == b"P1":
        samples = np.empty(w * h, dtype=np.uint8)
        count = 0
        i = pos
        n = len(data)
        while i < n and count < w * h:
            c = data[i : i + 1]
            if c.isspace():
                i += 1
            elif c == b"#":
                nl = data.find(b"\n", i)
                i = n if nl < 0 else nl + 1
            elif c in (b"0", b"1"):
                samples[count] = c == b"1"
                count += 1
                i += 1
            else:
                raise ImageFormatError(
                    f"illegal character {c!r} in P1 raster (only 0/1 allowed)",
                    path=path,
                    line=_line_of(data, i),
                )
        if count < w * h:
            raise ImageFormatError(
                f"raster ended after {count} of {w * h} samples",
                path=path,
                line=_line_of(data, max(n - 1, 0)),
            )
        rest = data[i:]
        if rest.strip():
            raise ImageFormatError(
                f"{len(rest.strip())} bytes of trailing data after raster",
                path=path,
                line=_line_of(data, i),
            )
        black = samples.reshape(h, w)
    else:
        # P4: exactly one whitespace byte separates header from raster
        if pos >= len(data) or not data[pos : pos + 1].isspace():
            raise ImageFormatError(
                "missing whitespace after P4 header", path=path, byte=pos
            )
        pos += 1
        row_bytes = (w + 7) // 8
        need = row_bytes * h
        got = len(data) - pos
        if got < need:
            raise ImageFormatError(
                f"P4 raster truncated: need {need} bytes, have {got}",
                path=path,
                byte=len(data),
            )
        if got > need and data[pos + need :].strip(b" \t\r\n"):
            raise ImageFormatError(
                f"{got - need} bytes of trailing data after P4 raster",
                path=path,
                byte=pos + need,
            )
        packed = np.frombuffer(data, dtype=np.uint8, count=need, offset=pos)
        bits = np.unpackbits(packed.reshape(h, row_bytes), axis=1)[:, :w]
        black = bits
    white = (black == 0) if not invert else (black != 0)
    return BinaryImage.from_array(white)


def parse_grid_text(text, *, invert: bool = False, path=None) -> BinaryImage:
    """Decode the grid_text fixture format (rows of 0/1, top row first)."""
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise ImageFormatError(
                f"grid_text is not ASCII (byte {exc.object[exc.start]!r})",
                path=path,
                byte=exc.start,
            ) from None
    rows = []
    width = None
    for line_no, line in enumerate(text.splitlines(), start=1):
        for token in line.split():
            bad = set(token) - {"0", "1"}
            if bad:
                raise ImageFormatError(
                    f"illegal character {min(bad)!r} in grid row {token!r}",
                    path=path,
                    line=line_no,
                )
            if width is None:
                width = len(token)
            elif len(token) != width:
                raise ImageFormatError(
                    f"row of width {len(token)} does not match first-row width {width}",
                    path=path,
                    line=line_no,
                )
            rows.append(token)
    if not rows:
        raise ImageFormatError("no grid rows found", path=path, line=1)
    arr = np.array([[c == "1" for c in row] for row in rows], dtype=np.uint8)
    if invert:
        arr = 1 - arr
    return BinaryImage.from_array(arr)


_FORMAT_ALIASES = {
    "pbm_ascii": ImageFormat.PBM_ASCII,
    "pbm_binary": ImageFormat.PBM_BINARY,
    "grid_text": ImageFormat.GRID_TEXT,
    "grid": ImageFormat.GRID_TEXT,
    "pbm": None,  # accept either PBM flavor, dispatch on magic
}


def load_image(path, fmt=None, *, invert: bool = False) -> BinaryImage:
    """Load a bilevel image from disk.

    ``fmt`` is an :class:`ImageFormat`, one of the strings
    ``pbm_ascii`` / ``pbm_binary`` / ``grid_text`` / ``pbm`` / ``grid``,
    or None to sniff from the file content.  A declared format that does
    not match the content is an error, not a silent fallback.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    if fmt is None:
        fmt = detect_format(data)
    elif isinstance(fmt, str) and not isinstance(fmt, ImageFormat):
        try:
            fmt = _FORMAT_ALIASES[fmt]
        except KeyError:
            raise ValueError(f"unknown image format {fmt!r}") from None
        if fmt is None:  # "pbm": either flavor
            fmt = detect_format(data)
            if fmt is ImageFormat.GRID_TEXT:
                raise ImageFormatError(
                    f"declared pbm but magic is {data[:2]!r}", path=path, byte=0
                )
    if fmt is ImageFormat.PBM_ASCII:
        if not data.startswith(b"P1"):
            raise ImageFormatError(
                f"declared pbm_ascii but magic is {data[:2]!r}", path=path, byte=0
            )
        return parse_pbm(data, invert=invert, path=path)
    if fmt is ImageFormat.PBM_BINARY:
        if not data.startswith(b"P4"):
            raise ImageFormatError(
                f"declared pbm_binary but magic is {data[:2]!r}", path=path, byte=0
            )
        return parse_pbm(data, invert=invert, path=path)
    return parse_grid_text(data, invert=invert, path=path)


def write_grid_text(img: BinaryImage, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(img.to_grid_text())
