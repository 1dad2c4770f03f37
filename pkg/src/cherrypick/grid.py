"""Problem model: cell values, grids, falling paths and step profiles.

Cells are stored as int64 with a reserved sentinel ``NEG`` standing for
negative infinity.  Finite values are bounded so that no finite sum of a
pair of paths can come near the sentinel, which keeps every kernel exact
in 64-bit arithmetic.  At the Python boundary the sentinel is exposed as
the ``NEG_INF`` singleton.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

VALUE_BOUND = 10**9

# Internal representation of negative infinity and the saturation threshold.
# Every finite quantity handled by the solvers stays within +-2**60, so any
# int64 below NEG_CUT is a (possibly shifted) infinity and is renormalized.
NEG = -(2**62)
NEG_CUT = -(2**61)
SUM_LIMIT = 2**58


class NegInfinity:
    """Negative infinity as a cell value.  Absorbs addition, loses every max."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "-inf"

    __str__ = __repr__

    def __add__(self, other):
        if other is self or isinstance(other, (int, np.integer)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, np.integer)):
            return self
        return NotImplemented

    def __lt__(self, other) -> bool:
        return other is not self

    def __le__(self, other) -> bool:
        return True

    def __gt__(self, other) -> bool:
        return False

    def __ge__(self, other) -> bool:
        return other is self

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("cherrypick.NegInfinity")

    def __reduce__(self):
        return (NegInfinity, ())


NEG_INF = NegInfinity()

CellValue = Union[int, NegInfinity]


def to_cell(x) -> CellValue:
    """Convert an internal int64 value to a public cell value."""
    x = int(x)
    return NEG_INF if x <= NEG_CUT else x


def from_cell(v) -> int:
    """Convert a public cell value (int, NEG_INF, '-inf', float -inf) to int64 form."""
    if v is NEG_INF:
        return NEG
    if isinstance(v, str):
        if v.strip() == "-inf":
            return NEG
        return int(v)
    if isinstance(v, float):
        if v == float("-inf"):
            return NEG
        if not v.is_integer():
            raise ValueError(f"non-integer cell value {v!r}")
        return int(v)
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return int(v)
    raise ValueError(f"unsupported cell value {v!r}")


class Grid:
    """Immutable H x W grid of cell values (H, W >= 2)."""

    __slots__ = ("_a", "value_bound")

    def __init__(self, cells, value_bound: int = VALUE_BOUND):
        if isinstance(cells, np.ndarray) and cells.dtype == np.int64 and cells.ndim == 2:
            a = cells.copy()
            a[a <= NEG_CUT] = NEG
        else:
            rows = [list(r) for r in cells]
            if not rows:
                raise ValueError("grid must have at least 2 rows")
            w = len(rows[0])
            for r in rows:
                if len(r) != w:
                    raise ValueError("ragged grid: all rows must have the same width")
            a = np.array([[from_cell(v) for v in r] for r in rows], dtype=np.int64)
        if a.ndim != 2 or a.shape[0] < 2 or a.shape[1] < 2:
            raise ValueError(f"grid must be at least 2x2, got shape {a.shape}")
        h, w = a.shape
        finite = a[a != NEG]
        if finite.size and int(np.abs(finite).max()) > value_bound:
            raise ValueError(f"cell value exceeds bound {value_bound}")
        if value_bound * h * w >= SUM_LIMIT:
            raise ValueError(
                f"grid {h}x{w} with value bound {value_bound} risks 64-bit overflow"
            )
        a.setflags(write=False)
        self._a = a
        self.value_bound = value_bound

    @classmethod
    def from_array(cls, a: np.ndarray, value_bound: int | None = None) -> "Grid":
        """Wrap an int64 array already using the internal sentinel."""
        a = np.asarray(a, dtype=np.int64)
        if value_bound is None:
            finite = a[a > NEG_CUT]
            value_bound = max(VALUE_BOUND, int(np.abs(finite).max()) if finite.size else 0)
        return cls(a, value_bound=value_bound)

    @property
    def H(self) -> int:
        return self._a.shape[0]

    @property
    def W(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def array(self) -> np.ndarray:
        """Read-only int64 view; negative infinity appears as ``NEG``."""
        return self._a

    def __getitem__(self, ij) -> CellValue:
        i, j = ij
        return to_cell(self._a[i, j])

    def rows(self) -> list[list[CellValue]]:
        return [[to_cell(x) for x in r] for r in self._a]

    def has_neg_inf(self) -> bool:
        return bool((self._a == NEG).any())

    def is_nonnegative(self) -> bool:
        """All cells finite and >= 0."""
        return bool((self._a >= 0).all())

    def mirrored(self) -> "Grid":
        return Grid(self._a[:, ::-1].copy(), self.value_bound)

    def flipped(self) -> "Grid":
        return Grid(self._a[::-1, :].copy(), self.value_bound)

    def __eq__(self, other) -> bool:
        return isinstance(other, Grid) and np.array_equal(self._a, other._a)

    def __hash__(self) -> int:
        return hash((self._a.shape, self._a.tobytes()))

    def __repr__(self) -> str:
        return f"Grid({self.rows()!r})"


@dataclass(frozen=True)
class StepProfile:
    """Per-row step widths: ``widths[i-1]`` bounds |col(i) - col(i-1)|."""

    widths: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "widths", tuple(int(d) for d in self.widths))

    @classmethod
    def unit(cls, h: int) -> "StepProfile":
        return cls((1,) * (h - 1))

    @classmethod
    def coerce(cls, steps, h: int) -> "StepProfile":
        """Accept None (unit rule), an int (uniform width) or a sequence."""
        if steps is None:
            return cls.unit(h)
        if isinstance(steps, StepProfile):
            return steps
        if isinstance(steps, (int, np.integer)):
            return cls((int(steps),) * (h - 1))
        return cls(tuple(steps))

    def width(self, i: int) -> int:
        """Step width for the move from row i-1 into row i."""
        return self.widths[i - 1]

    def is_unit(self) -> bool:
        return all(d == 1 for d in self.widths)

    def check(self, g: Grid) -> None:
        if len(self.widths) != g.H - 1:
            raise ValueError(
                f"step profile has {len(self.widths)} widths, grid needs {g.H - 1}"
            )
        for d in self.widths:
            if not 0 <= d < g.W:
                raise ValueError(f"step width {d} outside [0, {g.W})")

    def as_array(self) -> np.ndarray:
        """int64 array of length H with d[0] unused (set to 0)."""
        return np.array((0,) + self.widths, dtype=np.int64)


@dataclass(frozen=True)
class FallingPath:
    """One column index per covered row, starting at ``start_row``."""

    start_row: int
    cols: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "cols", tuple(int(c) for c in self.cols))

    def __len__(self) -> int:
        return len(self.cols)

    def __getitem__(self, k: int) -> int:
        return self.cols[k]

    def at_row(self, i: int) -> int:
        return self.cols[i - self.start_row]

    @property
    def end_row(self) -> int:
        return self.start_row + len(self.cols) - 1

    def sub(self, lo_row: int, hi_row: int) -> "FallingPath":
        """Subpath covering rows lo_row..hi_row inclusive."""
        a, b = lo_row - self.start_row, hi_row - self.start_row
        return FallingPath(lo_row, self.cols[a : b + 1])

    def concat(self, tail: "FallingPath") -> "FallingPath":
        if tail.start_row != self.end_row + 1:
            raise ValueError("paths are not adjacent")
        return FallingPath(self.start_row, self.cols + tail.cols)


def path_sum(g: Grid, p: FallingPath) -> CellValue:
    """Sum of g over the cells of p."""
    a = g.array
    if p.start_row < 0 or p.end_row >= g.H:
        raise ValueError("path escapes grid")
    total = 0
    for k, c in enumerate(p.cols):
        if not 0 <= c < g.W:
            raise ValueError("path escapes grid")
        v = int(a[p.start_row + k, c])
        if v == NEG:
            return NEG_INF
        total += v
    return total


def validate_path(g: Grid, p: FallingPath, steps=None) -> bool:
    """True iff p stays inside g and every move respects the step width."""
    prof = StepProfile.coerce(steps, g.H)
    if p.start_row < 0 or p.end_row >= g.H or not p.cols:
        return False
    if any(not 0 <= c < g.W for c in p.cols):
        return False
    for k in range(1, len(p.cols)):
        row = p.start_row + k
        if abs(p.cols[k] - p.cols[k - 1]) > prof.width(row):
            return False
    return True


def generate_grid(h: int, w: int, lo: int, hi: int, seed: int,
                  value_bound: int = VALUE_BOUND) -> Grid:
    """Deterministic uniform random integer grid with cells in [lo, hi]."""
    if h < 2 or w < 2:
        raise ValueError("grid must be at least 2x2")
    if lo > hi:
        raise ValueError("empty value range: lo > hi")
    if max(abs(lo), abs(hi)) > value_bound:
        raise ValueError(f"value range exceeds bound {value_bound}")
    rng = np.random.default_rng(seed)
    a = rng.integers(lo, hi + 1, size=(h, w), dtype=np.int64)
    return Grid(a, value_bound=value_bound)


def as_grid(g: Union[Grid, Sequence[Sequence], np.ndarray]) -> Grid:
    return g if isinstance(g, Grid) else Grid(g)

