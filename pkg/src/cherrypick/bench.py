"""Wall-clock scaling measurements for the solvers."""

from __future__ import annotations

import hashlib
import statistics
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .disjoint import solve_cp2
from .grid import Grid, generate_grid
from .oracle import oracle_cubic


@dataclass(frozen=True)
class BenchPoint:
    N: int
    cells: int
    seconds: float
    times: tuple[float, ...]
    checksum: str


@dataclass(frozen=True)
class BenchReport:
    algo: str
    workload: str
    points: tuple[BenchPoint, ...]
    slope: Optional[float]
    band: tuple[float, float] = field(default=(0.85, 1.20))

    @property
    def within_band(self) -> Optional[bool]:
        if self.slope is None:
            return None
        return self.band[0] <= self.slope <= self.band[1]


def ridge_grid(N: int, seed: int) -> Grid:
    """Uniform [0, 9] cells plus 10 on the centre column.

    On plain uniform grids lp and rp almost never meet, so the solver stops
    after the F table.  The ridge pulls both boundary paths to the centre,
    which forces the full Ml/Mr recurrence and the witness replay.
    """
    a = generate_grid(N, N, 0, 9, seed).array.copy()
    a[:, N // 2] += 10
    return Grid(a)


WORKLOADS: dict[str, Callable[[int, int], Grid]] = {
    "ridge": ridge_grid,
    "uniform": lambda N, seed: generate_grid(N, N, 0, 9, seed),
}


def _describe(answer) -> str:
    if hasattr(answer, "left_path"):
        return "|".join([str(answer.total), ",".join(map(str, answer.left_path.cols)),
                         ",".join(map(str, answer.right_path.cols))])
    return str(answer)


RUNNERS: dict[str, Callable[[Grid], object]] = {"linear": solve_cp2, "cubic": oracle_cubic}


def fit_slope(cells: Sequence[int], seconds: Sequence[float]) -> Optional[float]:
    """Least-squares slope of log(time) against log(cells); None below two sizes."""
    if len(cells) < 2:
        return None
    slope, _ = np.polyfit(np.log(np.asarray(cells, float)), np.log(np.asarray(seconds, float)), 1)
    return float(slope)


def run_bench(sizes: Sequence[int], reps: int = 5, seed: int = 0, algo: str = "linear",
              warmup: int = 1, band: tuple[float, float] = (0.85, 1.20),
              workload: str = "ridge") -> BenchReport:
    """Time a solver on N x N grids from the chosen workload.

    Grid generation is outside the timed region.  The JIT is triggered on a
    tiny grid first; ``warmup`` further full-size runs per size are discarded.
    """
    sizes = list(sizes)
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be strictly increasing")
    if reps < 1:
        raise ValueError("reps must be >= 1")
    run = RUNNERS[algo]
    make = WORKLOADS[workload]
    run(make(8, seed))
    points = []
    for N in sizes:
        g = make(N, seed + N)
        for _ in range(warmup):
            run(g)
        times = []
        answer = None
        for _ in range(reps):
            t0 = time.perf_counter()
            answer = run(g)
            times.append(time.perf_counter() - t0)
        digest = hashlib.sha256(_describe(answer).encode()).hexdigest()[:16]
        points.append(BenchPoint(N, N * N, statistics.median(times), tuple(times), digest))
    slope = fit_slope([p.cells for p in points], [p.seconds for p in points])
    return BenchReport(algo, workload, tuple(points), slope, band)
