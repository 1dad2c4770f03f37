"""Single-robot dynamic programming: F, udF, the boundary paths lp/rp and MFPS."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .grid import NEG, NEG_CUT, CellValue, FallingPath, Grid, StepProfile, as_grid, to_cell
from .swm import swm_into


@njit(cache=True)
def sat(a, b):
    s = a + b
    if s < NEG_CUT:
        return NEG
    return s


# ---------------------------------------------------------------- kernels

@njit(cache=True)
def f_table_unit(g):
    H, W = g.shape
    F = np.empty((H, W), dtype=np.int64)
    F[H - 1] = g[H - 1]
    for i in range(H - 2, -1, -1):
        nxt = F[i + 1]
        F[i, 0] = sat(g[i, 0], max(nxt[0], nxt[1]))
        F[i, W - 1] = sat(g[i, W - 1], max(nxt[W - 2], nxt[W - 1]))
        for j in range(1, W - 1):
            F[i, j] = sat(g[i, j], max(nxt[j - 1], nxt[j], nxt[j + 1]))
    return F


@njit(cache=True)
def f_table_steps(g, d):
    """F under per-row step widths; d[i] is the width of the move into row i."""
    H, W = g.shape
    F = np.empty((H, W), dtype=np.int64)
    F[H - 1] = g[H - 1]
    win = np.empty(W, dtype=np.int64)
    dq = np.empty(W, dtype=np.int64)
    for i in range(H - 2, -1, -1):
        swm_into(F[i + 1], d[i + 1], win, dq)
        for j in range(W):
            F[i, j] = sat(g[i, j], win[j])
    return F


@njit(cache=True)
def udf_table_unit(g):
    H, W = g.shape
    U = np.empty((H, W), dtype=np.int64)
    U[0] = g[0]
    for i in range(1, H):
        prv = U[i - 1]
        for j in range(W):
            best = prv[j]
            if j > 0 and prv[j - 1] > best:
                best = prv[j - 1]
            if j < W - 1 and prv[j + 1] > best:
                best = prv[j + 1]
            U[i, j] = sat(g[i, j], best)
    return U


@njit(cache=True)
def bounds_unit(F):
    """lp/rp exactly as the reference listing compares neighbours."""
    H, W = F.shape
    lp = np.empty(H, dtype=np.int64)
    rp = np.empty(H, dtype=np.int64)
    lp[0] = 0
    rp[0] = W - 1
    for i in range(1, H):
        lj = lp[i - 1]
        lp[i] = lj
        if lj > 0 and F[i, lj - 1] >= F[i, lj]:
            lp[i] = lj - 1
        if lj < W - 1 and F[i, lp[i]] < F[i, lj + 1]:
            lp[i] = lj + 1
        rj = rp[i - 1]
        rp[i] = rj
        if rj < W - 1 and F[i, rj + 1] >= F[i, rj]:
            rp[i] = rj + 1
        if rj > 0 and F[i, rp[i]] < F[i, rj - 1]:
            rp[i] = rj - 1
    return lp, rp


@njit(cache=True)
def step_argmax(row, c, w, rightmost):
    """Extreme argmax of row over [c-w, c+w] clipped."""
    W = row.shape[0]
    lo = max(0, c - w)
    hi = min(W - 1, c + w)
    best = lo
    for k in range(lo + 1, hi + 1):
        if row[k] > row[best] or (rightmost and row[k] == row[best]):
            best = k
    return best


@njit(cache=True)
def bounds_steps(F, d):
    H, W = F.shape
    lp = np.empty(H, dtype=np.int64)
    rp = np.empty(H, dtype=np.int64)
    lp[0] = 0
    rp[0] = W - 1
    for i in range(1, H):
        lp[i] = step_argmax(F[i], lp[i - 1], d[i], False)
        rp[i] = step_argmax(F[i], rp[i - 1], d[i], True)
    return lp, rp


@njit(cache=True)
def greedy_path(F, d, i0, j0, rightmost, out):
    """Follow extreme argmax successors of F from (i0, j0); fills out[i0:]."""
    H = F.shape[0]
    c = j0
    out[i0] = c
    for i in range(i0 + 1, H):
        c = step_argmax(F[i], c, d[i], rightmost)
        out[i] = c


# ---------------------------------------------------------------- public API

@dataclass(frozen=True)
class FTable:
    """Maximum falling-path sums from each cell down to the bottom row."""

    values: np.ndarray
    steps: StepProfile

    def __getitem__(self, ij) -> CellValue:
        return to_cell(self.values[ij])

    def rows(self) -> list[list[CellValue]]:
        return [[to_cell(x) for x in r] for r in self.values]


@dataclass(frozen=True)
class UdFTable:
    """Maximum falling-path sums from the top row down to each cell."""

    values: np.ndarray

    def __getitem__(self, ij) -> CellValue:
        return to_cell(self.values[ij])

    def rows(self) -> list[list[CellValue]]:
        return [[to_cell(x) for x in r] for r in self.values]


@dataclass(frozen=True)
class BoundPair:
    """Leftmost maximal path from (0,0) and rightmost maximal path from (0,W-1)."""

    lp: FallingPath
    rp: FallingPath
    lp_arr: np.ndarray
    rp_arr: np.ndarray

    def intersects(self) -> bool:
        return bool((self.lp_arr >= self.rp_arr).any())


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def compute_F(g, steps=None) -> FTable:
    g = as_grid(g)
    prof = StepProfile.coerce(steps, g.H)
    prof.check(g)
    if prof.is_unit():
        F = f_table_unit(g.array)
    else:
        F = f_table_steps(g.array, prof.as_array())
    return FTable(_readonly(F), prof)


def compute_udF(g) -> UdFTable:
    g = as_grid(g)
    return UdFTable(_readonly(udf_table_unit(g.array)))


def compute_bounds(F: FTable) -> BoundPair:
    vals = F.values
    if F.steps.is_unit():
        lp, rp = bounds_unit(vals)
    else:
        lp, rp = bounds_steps(vals, F.steps.as_array())
    return BoundPair(FallingPath(0, lp.tolist()), FallingPath(0, rp.tolist()),
                     _readonly(lp), _readonly(rp))


def solve_mfps(g, start_col: int, steps=None) -> tuple[CellValue, FallingPath]:
    """Maximum falling-path sum from (0, start_col) and a witness path."""
    g = as_grid(g)
    if not 0 <= start_col < g.W:
        raise ValueError(f"start column {start_col} outside [0, {g.W})")
    F = compute_F(g, steps)
    out = np.empty(g.H, dtype=np.int64)
    greedy_path(F.values, F.steps.as_array(), 0, start_col, False, out)
    return to_cell(F.values[0, start_col]), FallingPath(0, out.tolist())


def masked_left(g, bounds: BoundPair) -> Grid:
    """g with every cell strictly right of lp replaced by negative infinity."""
    g = as_grid(g)
    a = g.array.copy()
    cols = np.arange(g.W)[None, :]
    a[cols > bounds.lp_arr[:, None]] = NEG
    return Grid(a, g.value_bound)


def masked_right(g, bounds: BoundPair) -> Grid:
    """g with every cell strictly left of rp replaced by negative infinity."""
    g = as_grid(g)
    a = g.array.copy()
    cols = np.arange(g.W)[None, :]
    a[cols < bounds.rp_arr[:, None]] = NEG
    return Grid(a, g.value_bound)
