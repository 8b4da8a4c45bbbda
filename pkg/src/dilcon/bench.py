"""Benchmark edge extraction across worker counts.

Times only the parallel stage (the rest of the pipeline is sequential by
contract), reports the median wall time per worker count, and asserts
that every run produced exactly the same edge set as the single-worker
run, so a speedup can never come from a different answer.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass

import numpy as np

from ._backend import backend_name
from .edges import extract_edges
from .errors import InternalConsistencyError
from .image import BinaryImage

CSV_HEADER = "workers,median_ns,edges"


@dataclass(frozen=True)
class BenchRow:
    workers: int
    median_ns: int
    edges: int


@dataclass(frozen=True)
class BenchReport:
    width: int
    height: int
    repetitions: int
    backend: str
    rows: tuple

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        lines += [f"{r.workers},{r.median_ns},{r.edges}" for r in self.rows]
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        head = (
            f"edge extraction, {self.width}x{self.height} image, "
            f"median of {self.repetitions} runs, backend={self.backend}"
        )
        lines = [head, f"{'workers':>8} {'median_ms':>12} {'edges':>10}"]
        for r in self.rows:
            lines.append(f"{r.workers:>8} {r.median_ns / 1e6:>12.3f} {r.edges:>10}")
        return "\n".join(lines) + "\n"


def bench(img: BinaryImage, worker_counts, repetitions: int) -> BenchReport:
    counts = list(worker_counts)
    if not counts:
        raise ValueError("worker_counts must be non-empty")
    if any(w < 1 for w in counts):
        raise ValueError(f"worker counts must be positive, got {counts}")
    if repetitions < 1:
        raise ValueError(f"repetitions must be positive, got {repetitions}")
    baseline = extract_edges(img, workers=1)
    rows = []
    for w in counts:
        times = []
        result = None
        for _ in range(repetitions):
            t0 = time.perf_counter_ns()
            result = extract_edges(img, workers=w)
            times.append(time.perf_counter_ns() - t0)
        same = (
            np.array_equal(result.parent_x, baseline.parent_x)
            and np.array_equal(result.parent_y, baseline.parent_y)
            and np.array_equal(result.etypes, baseline.etypes)
        )
        if not same:
            raise InternalConsistencyError(
                f"extraction with {w} workers differs from the 1-worker run",
                stage="edge-extraction",
            )
        rows.append(
            BenchRow(
                workers=w,
                median_ns=int(statistics.median(times)),
                edges=len(baseline),
            )
        )
    return BenchReport(
        width=img.width,
        height=img.height,
        repetitions=repetitions,
        backend=backend_name(),
        rows=tuple(rows),
    )
