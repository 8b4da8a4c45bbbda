"""Exception types shared by all stages, each tagged with the stage it belongs to."""


class DilconError(Exception):
    """Base class for every error this package raises on purpose."""

    stage = "dilcon"


class ImageFormatError(DilconError):
    """An input image file could not be parsed.

    Carries the offending location (``line`` for text formats, ``byte``
    for binary ones) so the CLI can point at the exact spot.
    """

    stage = "image-io"

    def __init__(self, message, *, path=None, line=None, byte=None):
        self.path = path
        self.line = line
        self.byte = byte
        where = ""
        if line is not None:
            where = f" (line {line})"
        elif byte is not None:
            where = f" (byte {byte})"
        prefix = f"{path}: " if path is not None else ""
        super().__init__(f"{prefix}{message}{where}")


class InternalConsistencyError(DilconError):
    """A structural invariant the pipeline guarantees by construction was violated.

    This is never raised for well-formed inputs; seeing it means an edge
    set was corrupted or hand-built wrongly, and it is reported loudly
    instead of being silently repaired.
    """

    def __init__(self, message, *, stage="pipeline"):
        self.stage = stage
        super().__init__(message)
