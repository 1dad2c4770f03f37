"""Linear-time maximum pair of non-intersecting falling paths.

Two tables drive the solver.  ``Ml[i, j]`` is the best total of a pair whose
left path starts on lp at row i and whose right path starts at column j,
both staying non-intersecting down to the bottom row.  ``Mr[i, j]`` is the
mirror: the right path starts on rp, the left one at column j.  Row i of
each table depends only on row i+1, and every cell needs O(1) work.

Witness paths are rebuilt by replaying the recurrence from the answer cell.
A transition that lets the right path leave rp towards an F-optimal tail is
replayed with an "overlay": the rebuilt right path is the pointwise max of
the anchored path and the greedy F path (mirrored with min on the left).
Pointwise max/min of valid paths is a valid path, and greedy extreme-argmax
descents never cross each other, so one overlay column per side suffices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from numba import njit

from .falling import (
    BoundPair,
    FTable,
    bounds_unit,
    f_table_unit,
    sat,
    step_argmax,
)
from .grid import NEG, CellValue, FallingPath, Grid, NEG_INF, as_grid, to_cell


@njit(cache=True)
def rmax(row, a, b):
    """max(row[a..b]); negative infinity for an empty range."""
    best = NEG
    for k in range(a, b + 1):
        if row[k] > best:
            best = row[k]
    return best


@njit(cache=True)
def rargmax(row, a, b):
    """Smallest index attaining max(row[a..b]); -1 for an empty range."""
    best = -1
    for k in range(a, b + 1):
        if best < 0 or row[k] > row[best]:
            best = k
    return best


# ---------------------------------------------------------------- M tables

@njit(cache=True)
def m_tables(g, F, lp, rp, neutral, stop_row):
    """Ml/Mr rows H-1 down to stop_row (combined two-term recurrence)."""
    H, W = g.shape
    Ml = np.full((H, W), NEG, dtype=np.int64)
    Mr = np.full((H, W), NEG, dtype=np.int64)

    b = H - 1
    for j in range(max(rp[b], lp[b] + 1), W):
        Ml[b, j] = sat(g[b, lp[b]], g[b, j])
    for j in range(0, min(lp[b], rp[b] - 1) + 1):
        Mr[b, j] = sat(g[b, rp[b]], g[b, j])

    for i in range(H - 2, stop_row - 1, -1):
        l0, l1 = lp[i], lp[i + 1]
        r0, r1 = rp[i], rp[i + 1]
        Fn = F[i + 1]
        Mri = rmax(Mr[i + 1], max(0, l0 - 1), l1 - 1)
        Mli = rmax(Ml[i + 1], r1 + 1, min(W - 1, r0 + 1))
        left_cell = g[i, l0]
        right_cell = g[i, r0]

        guard1 = max(l0, 1) <= l1
        guard2 = l1 + 2 <= W
        for j in range(max(l0 + 1, r0), W):
            m1 = neutral
            m2 = neutral
            if guard1:
                m1 = sat(sat(rmax(Fn, max(r1, j - 1), min(j + 1, W - 1)), Mri), -Fn[r1])
            if guard2:
                m2 = rmax(Ml[i + 1], max(j - 1, r1, l1 + 1), min(j + 1, W - 1))
            Ml[i, j] = sat(sat(left_cell, g[i, j]), max(m1, m2))

        guard1 = r1 <= min(W - 2, r0)
        guard2 = 1 <= r1
        for j in range(0, min(l0, r0 - 1) + 1):
            m1 = neutral
            m2 = neutral
            if guard1:
                m1 = sat(sat(rmax(Fn, max(0, j - 1), min(j + 1, l1)), Mli), -Fn[l1])
            if guard2:
                m2 = rmax(Mr[i + 1], max(j - 1, 0), min(j + 1, l1, r1 - 1))
            Mr[i, j] = sat(sat(right_cell, g[i, j]), max(m1, m2))
    return Ml, Mr


@njit(cache=True)
def m_tables_four_case(g, F, lp, rp, neutral):
    """Ml/Mr via the uncombined recurrence with three guarded terms per side."""
    H, W = g.shape
    Ml = np.full((H, W), NEG, dtype=np.int64)
    Mr = np.full((H, W), NEG, dtype=np.int64)

    b = H - 1
    for j in range(max(rp[b], lp[b] + 1), W):
        Ml[b, j] = sat(g[b, lp[b]], g[b, j])
    for j in range(0, min(lp[b], rp[b] - 1) + 1):
        Mr[b, j] = sat(g[b, rp[b]], g[b, j])

    for i in range(H - 2, -1, -1):
        l0, l1 = lp[i], lp[i + 1]
        r0, r1 = rp[i], rp[i + 1]
        Fn = F[i + 1]
        Mri = rmax(Mr[i + 1], max(l0 - 1, 0), l1 - 1)
        Mli = rmax(Ml[i + 1], r1 + 1, min(r0 + 1, W - 1))

        for j in range(max(l0 + 1, r0), W):
            m1 = neutral
            m2 = neutral
            m3 = neutral
            # left path leaves lp, right path lands on rp
            if j - 1 <= r1 and max(l0, 1) <= l1:
                m1 = Mri
            # left path stays on lp
            if l1 + 2 <= W:
                m2 = rmax(Ml[i + 1], max(j - 1, r1, l1 + 1), min(j + 1, W - 1))
            # left path leaves lp, right path lands strictly right of rp
            if max(1, l0) <= l1 and r1 + 2 <= W and r0 < j:
                m3 = sat(sat(Mri, rmax(Fn, max(r1 + 1, j - 1), min(j + 1, W - 1))), -Fn[r1])
            Ml[i, j] = sat(sat(g[i, l0], g[i, j]), max(m1, m2, m3))

        for j in range(0, min(l0, r0 - 1) + 1):
            m1 = neutral
            m2 = neutral
            m3 = neutral
            if j + 1 >= l1 and min(r0, W - 2) >= r1:
                m1 = Mli
            if r1 >= 1:
                m2 = rmax(Mr[i + 1], max(j - 1, 0), min(j + 1, l1, r1 - 1))
            if min(W - 2, r0) >= r1 and l1 >= 1 and l0 > j:
                m3 = sat(sat(Mli, rmax(Fn, max(j - 1, 0), min(j + 1, l1 - 1))), -Fn[l1])
            Mr[i, j] = sat(sat(g[i, r0], g[i, j]), max(m1, m2, m3))
    return Ml, Mr


# ---------------------------------------------------------------- witnesses

@njit(cache=True)
def trace_pair(F, lp, rp, Ml, Mr, kind, i0, c0, left, right):
    """Rebuild a pair realizing Ml[i0, c0] (kind 0) or Mr[i0, c0] (kind 1).

    Fills left[i0:], right[i0:].  Returns False if the replay hits a cell
    whose value came from no admissible transition.
    """
    H, W = F.shape
    c = c0
    ovl = -1
    ovr = -1
    for i in range(i0, H):
        if kind == 0:
            sl = lp[i]
            sr = c
        else:
            sl = c
            sr = rp[i]
        left[i] = sl if ovl < 0 else min(sl, ovl)
        right[i] = sr if ovr < 0 else max(sr, ovr)
        if i == H - 1:
            break
        Fn = F[i + 1]
        l0, l1 = lp[i], lp[i + 1]
        r0, r1 = rp[i], rp[i + 1]
        nl = -1 if ovl < 0 else step_argmax(Fn, ovl, 1, False)
        nr = -1 if ovr < 0 else step_argmax(Fn, ovr, 1, True)
        j = c
        if kind == 0:
            m1 = NEG
            m2 = NEG
            Mri = NEG
            if max(l0, 1) <= l1:
                Mri = rmax(Mr[i + 1], max(0, l0 - 1), l1 - 1)
                m1 = sat(sat(rmax(Fn, max(r1, j - 1), min(j + 1, W - 1)), Mri), -Fn[r1])
            if l1 + 2 <= W:
                m2 = rmax(Ml[i + 1], max(j - 1, r1, l1 + 1), min(j + 1, W - 1))
            if m2 == NEG and m1 == NEG:
                return False
            if m2 >= m1:
                c = rargmax(Ml[i + 1], max(j - 1, r1, l1 + 1), min(j + 1, W - 1))
            else:
                c = rargmax(Mr[i + 1], max(0, l0 - 1), l1 - 1)
                k2 = rargmax(Fn, max(r1, j - 1), min(j + 1, W - 1))
                nr = max(nr, k2)
                kind = 1
        else:
            m1 = NEG
            m2 = NEG
            if r1 <= min(W - 2, r0):
                Mli = rmax(Ml[i + 1], r1 + 1, min(W - 1, r0 + 1))
                m1 = sat(sat(rmax(Fn, max(0, j - 1), min(j + 1, l1)), Mli), -Fn[l1])
            if 1 <= r1:
                m2 = rmax(Mr[i + 1], max(j - 1, 0), min(j + 1, l1, r1 - 1))
            if m2 == NEG and m1 == NEG:
                return False
            if m2 >= m1:
                c = rargmax(Mr[i + 1], max(j - 1, 0), min(j + 1, l1, r1 - 1))
            else:
                c = rargmax(Ml[i + 1], r1 + 1, min(W - 1, r0 + 1))
                k2 = rargmax(Fn, max(0, j - 1), min(j + 1, l1))
                nl = k2 if nl < 0 else min(nl, k2)
                kind = 0
        ovl = nl
        ovr = nr
    return True


# ---------------------------------------------------------------- fast variant kernels

@njit(cache=True)
def corner_udf(g, last_row, corner_col, lo, hi):
    """Best downward path sums from (0, corner_col) to cells of rows 0..last_row.

    Row i may only use columns lo[i]..hi[i]; everything else stays -inf.
    """
    W = g.shape[1]
    U = np.full((last_row + 1, W), NEG, dtype=np.int64)
    U[0, corner_col] = g[0, corner_col]
    for i in range(1, last_row + 1):
        for j in range(lo[i], hi[i] + 1):
            best = U[i - 1, j]
            if j > 0 and U[i - 1, j - 1] > best:
                best = U[i - 1, j - 1]
            if j < W - 1 and U[i - 1, j + 1] > best:
                best = U[i - 1, j + 1]
            U[i, j] = sat(g[i, j], best)
    return U


@njit(cache=True)
def climb(U, i0, j0, out):
    """Walk a best path from (i0, j0) back up to row 0 using the upward table U."""
    W = U.shape[1]
    c = j0
    out[i0] = c
    for i in range(i0 - 1, -1, -1):
        best = -1
        for k in range(max(0, c - 1), min(W - 1, c + 1) + 1):
            if best < 0 or U[i, k] > U[i, best]:
                best = k
        c = best
        out[i] = c


# ---------------------------------------------------------------- public API

@dataclass(frozen=True)
class MTables:
    """Ml/Mr tables with their defined column ranges per row.

    Row i of Ml is defined on columns ``ml_lo[i] .. W-1`` and row i of Mr
    on ``0 .. mr_hi[i]``; all other cells hold negative infinity.
    """

    Ml: np.ndarray
    Mr: np.ndarray
    ml_lo: np.ndarray
    mr_hi: np.ndarray

    def ml(self, i: int, j: int) -> CellValue:
        return to_cell(self.Ml[i, j])

    def mr(self, i: int, j: int) -> CellValue:
        return to_cell(self.Mr[i, j])

    def same_defined(self, other: "MTables") -> bool:
        """Exact equality restricted to the defined domains."""
        if not (np.array_equal(self.ml_lo, other.ml_lo) and np.array_equal(self.mr_hi, other.mr_hi)):
            return False
        W = self.Ml.shape[1]
        cols = np.arange(W)[None, :]
        lmask = cols >= self.ml_lo[:, None]
        rmask = cols <= self.mr_hi[:, None]
        return bool(
            np.array_equal(self.Ml[lmask], other.Ml[lmask])
            and np.array_equal(self.Mr[rmask], other.Mr[rmask])
        )


@dataclass(frozen=True)
class Cp2Result:
    """Best total and a witness pair; paths are None when the total is -inf."""

    total: CellValue
    left_path: Optional[FallingPath]
    right_path: Optional[FallingPath]


@dataclass(frozen=True)
class FirstIntersection:
    fi: int
    fj: int


def neutral_for(g: Grid) -> int:
    """Value of a guarded term whose guard fails: 0 on nonnegative grids, else -inf."""
    return 0 if g.is_nonnegative() else NEG


def _check_consistent(g: Grid, F: FTable, bounds: BoundPair) -> None:
    a, f = g.array, F.values
    lp, rp = bounds.lp_arr, bounds.rp_arr
    H, W = a.shape
    ok = (
        f.shape == a.shape
        and lp.shape == (H,)
        and rp.shape == (H,)
        and lp[0] == 0
        and rp[0] == W - 1
        and np.array_equal(f[H - 1], a[H - 1])
        and (lp >= 0).all() and (rp < W).all()
        and (np.abs(np.diff(lp)) <= 1).all() and (np.abs(np.diff(rp)) <= 1).all()
    )
    if ok and H > 1:
        rows = np.arange(H - 1)
        for path in (lp, rp):
            here = f[rows, path[:-1]]
            finite = here > NEG // 2
            expect = a[rows, path[:-1]] + f[rows + 1, path[1:]]
            if not np.array_equal(here[finite], expect[finite]):
                ok = False
    if not ok:
        raise ValueError("bounds/F mismatch")


def _domains(lp: np.ndarray, rp: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    ml_lo = np.maximum(lp + 1, rp)
    mr_hi = np.minimum(lp, rp - 1)
    return ml_lo, mr_hi


def _freeze(*arrs):
    for a in arrs:
        a.setflags(write=False)


def compute_M(g, F: FTable, bounds: BoundPair, neutral: Optional[int] = None) -> MTables:
    """Ml/Mr tables by the combined two-term recurrence."""
    g = as_grid(g)
    _check_consistent(g, F, bounds)
    if neutral is None:
        neutral = neutral_for(g)
    Ml, Mr = m_tables(g.array, F.values, bounds.lp_arr, bounds.rp_arr, np.int64(neutral), 0)
    ml_lo, mr_hi = _domains(bounds.lp_arr, bounds.rp_arr)
    _freeze(Ml, Mr, ml_lo, mr_hi)
    return MTables(Ml, Mr, ml_lo, mr_hi)


def compute_M_four_case(g, F: FTable, bounds: BoundPair, neutral: Optional[int] = None) -> MTables:
    """Ml/Mr tables by the three-term case split; debug cross-check of compute_M."""
    g = as_grid(g)
    _check_consistent(g, F, bounds)
    if neutral is None:
        neutral = neutral_for(g)
    Ml, Mr = m_tables_four_case(g.array, F.values, bounds.lp_arr, bounds.rp_arr, np.int64(neutral))
    ml_lo, mr_hi = _domains(bounds.lp_arr, bounds.rp_arr)
    _freeze(Ml, Mr, ml_lo, mr_hi)
    return MTables(Ml, Mr, ml_lo, mr_hi)


def _path(arr: np.ndarray, start: int = 0) -> FallingPath:
    return FallingPath(start, arr[start:].tolist())


def _pair_result(total: int, left: np.ndarray, right: np.ndarray) -> Cp2Result:
    return Cp2Result(to_cell(total), _path(left), _path(right))


def _unsolvable() -> Cp2Result:
    return Cp2Result(NEG_INF, None, None)


def solve_cp2(g, four_case: bool = False) -> Cp2Result:
    """Maximum total of two non-intersecting falling paths from the top corners."""
    g = as_grid(g)
    a = g.array
    H, W = a.shape
    F = f_table_unit(a)
    lp, rp = bounds_unit(F)
    if F[0, 0] == NEG or F[0, W - 1] == NEG:
        return _unsolvable()
    if not (lp >= rp).any():
        return _pair_result(int(F[0, 0]) + int(F[0, W - 1]), lp, rp)
    neutral = np.int64(neutral_for(g))
    if four_case:
        Ml, Mr = m_tables_four_case(a, F, lp, rp, neutral)
    else:
        Ml, Mr = m_tables(a, F, lp, rp, neutral, 0)
    total = int(Ml[0, W - 1])
    if total == NEG:
        return _unsolvable()
    left = np.empty(H, dtype=np.int64)
    right = np.empty(H, dtype=np.int64)
    if not trace_pair(F, lp, rp, Ml, Mr, 0, 0, W - 1, left, right):
        raise RuntimeError("witness replay failed")
    return _pair_result(total, left, right)


def first_intersection(bounds: BoundPair) -> Optional[FirstIntersection]:
    hits = np.nonzero(bounds.lp_arr >= bounds.rp_arr)[0]
    if hits.size == 0:
        return None
    fi = int(hits[0])
    return FirstIntersection(fi, int(bounds.lp_arr[fi]))


def _corridor_limits(lp, rp, fi: int, W: int, right: bool):
    lo = np.zeros(fi + 1, dtype=np.int64)
    hi = np.full(fi + 1, W - 1, dtype=np.int64)
    if right:
        lo[:fi] = rp[:fi]
    else:
        hi[:fi] = lp[:fi]
    return lo, hi


def corridor_grid(g, bounds: BoundPair, right: bool) -> Grid:
    """Grid seen by the prefix search from one top corner.

    Rows above the first lp/rp meeting keep only the cells at or right of
    rp (right corner) or at or left of lp (left corner); the meeting row is
    kept whole and every row below it is -inf.  Row 0 keeps only the corner.
    """
    g = as_grid(g)
    H, W = g.shape
    fx = first_intersection(bounds)
    fi = H - 1 if fx is None else fx.fi
    lo, hi = _corridor_limits(bounds.lp_arr, bounds.rp_arr, fi, W, right)
    corner = W - 1 if right else 0
    lo[0] = hi[0] = corner
    a = np.full((H, W), NEG, dtype=np.int64)
    for i in range(fi + 1):
        a[i, lo[i]: hi[i] + 1] = g.array[i, lo[i]: hi[i] + 1]
    return Grid(a, g.value_bound)


def solve_cp2_fast(g) -> Cp2Result:
    """Same answer as solve_cp2, computing Ml/Mr only from the first lp/rp meeting down.

    Above the first meeting row fi one of the optimal paths coincides with
    lp (or rp), so the answer splits into that prefix, an Ml (or Mr) value at
    row fi, and the best path from the opposite corner to the partner cell.
    """
    g = as_grid(g)
    a = g.array
    H, W = a.shape
    F = f_table_unit(a)
    lp, rp = bounds_unit(F)
    if F[0, 0] == NEG or F[0, W - 1] == NEG:
        return _unsolvable()
    hits = np.nonzero(lp >= rp)[0]
    if hits.size == 0:
        return _pair_result(int(F[0, 0]) + int(F[0, W - 1]), lp, rp)
    fi = int(hits[0])
    fj = int(lp[fi])
    Ml, Mr = m_tables(a, F, lp, rp, np.int64(neutral_for(g)), fi)

    up_right = corner_udf(a, fi, W - 1, *_corridor_limits(lp, rp, fi, W, True))
    up_left = corner_udf(a, fi, 0, *_corridor_limits(lp, rp, fi, W, False))
    row = a[fi]
    cand_l = np.full(W, NEG, dtype=np.int64)
    cand_r = np.full(W, NEG, dtype=np.int64)
    for j in range(fj + 1, W):
        if Ml[fi, j] != NEG and up_right[fi, j] != NEG:
            cand_l[j] = Ml[fi, j] + up_right[fi, j] - row[j]
    for j in range(0, fj):
        if Mr[fi, j] != NEG and up_left[fi, j] != NEG:
            cand_r[j] = Mr[fi, j] + up_left[fi, j] - row[j]
    prefix = int(F[fi, fj])
    jl = int(np.argmax(cand_l))
    jr = int(np.argmax(cand_r))
    l_max = int(cand_l[jl]) + int(F[0, 0]) - prefix if cand_l[jl] != NEG else NEG
    r_max = int(cand_r[jr]) + int(F[0, W - 1]) - prefix if cand_r[jr] != NEG else NEG
    if l_max == NEG and r_max == NEG:
        return _unsolvable()

    left = np.empty(H, dtype=np.int64)
    right = np.empty(H, dtype=np.int64)
    if l_max >= r_max:
        ok = trace_pair(F, lp, rp, Ml, Mr, 0, fi, jl, left, right)
        left[:fi] = lp[:fi]
        climb(up_right, fi, jl, right)
        total = l_max
    else:
        ok = trace_pair(F, lp, rp, Ml, Mr, 1, fi, jr, left, right)
        right[:fi] = rp[:fi]
        climb(up_left, fi, jr, left)
        total = r_max
    if not ok:
        raise RuntimeError("witness replay failed")
    return _pair_result(total, left, right)
