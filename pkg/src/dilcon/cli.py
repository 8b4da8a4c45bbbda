"""Command line driver: extract contours, or benchmark the parallel stage."""

from __future__ import annotations

import argparse
import os
import sys

from .bench import bench
from .document import export_json, export_svg, run_pipeline, svg_string
from .errors import DilconError
from .image import load_image

THREADS_ENV = "DILCON_THREADS"


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise DilconError(f"{THREADS_ENV}={raw!r} is not an integer")
    if n < 1:
        raise DilconError(f"{THREADS_ENV} must be >= 1, got {n}")
    return n


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dilcon",
        description="Extract oriented (optionally dilated) contours from bilevel images.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("extract", help="trace an image and emit SVG or JSON")
    ex.add_argument("input", help="input image path")
    ex.add_argument("--format", choices=["pbm", "grid"], default=None,
                    help="input format (default: sniff from content)")
    ex.add_argument("--invert", action="store_true",
                    help="flip the white/black interpretation of the input")
    ex.add_argument("--dilated", action="store_true",
                    help="emit midpoint-dilated contours")
    ex.add_argument("--out", default=None, help="output path (default: stdout)")
    ex.add_argument("--emit", choices=["svg", "json"], default="json")
    ex.add_argument("--threads", type=int, default=None,
                    help=f"extraction workers (default: ${THREADS_ENV} or 1)")

    be = sub.add_parser("bench", help="benchmark edge extraction across worker counts")
    be.add_argument("input", help="input image path")
    be.add_argument("--format", choices=["pbm", "grid"], default=None)
    be.add_argument("--invert", action="store_true")
    be.add_argument("--threads", default="1,2,4,8",
                    help="comma-separated worker counts (default 1,2,4,8)")
    be.add_argument("--reps", type=int, default=5, help="repetitions per count")
    be.add_argument("--csv", default=None, help="also write a CSV table here")
    return parser


def _cmd_extract(args) -> int:
    threads = args.threads if args.threads is not None else _default_threads()
    if threads < 1:
        raise DilconError(f"--threads must be >= 1, got {threads}")
    img = load_image(args.input, args.format, invert=args.invert)
    doc = run_pipeline(img, dilated=args.dilated, workers=threads)
    if args.emit == "json":
        if args.out:
            export_json(doc, args.out)
        else:
            sys.stdout.write(doc.to_json_bytes().decode("ascii") + "\n")
    else:
        if args.out:
            export_svg(doc, args.out)
        else:
            sys.stdout.write(svg_string(doc))
    return 0


def _cmd_bench(args) -> int:
    try:
        counts = [int(tok) for tok in args.threads.split(",") if tok.strip()]
    except ValueError:
        raise DilconError(f"--threads expects a comma list of integers, got {args.threads!r}")
    img = load_image(args.input, args.format, invert=args.invert)
    report = bench(img, counts, args.reps)
    sys.stdout.write(report.to_text())
    if args.csv:
        with open(args.csv, "w", encoding="ascii") as fh:
            fh.write(report.to_csv())
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "extract":
            return _cmd_extract(args)
        return _cmd_bench(args)
    except DilconError as exc:
        print(f"dilcon: {exc.stage}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"dilcon: image-io: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"dilcon: arguments: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
