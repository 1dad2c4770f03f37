"""Slow reference solvers: the cubic pair DP and brute-force enumeration."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product

import numpy as np
from numba import njit

from .falling import sat
from .grid import NEG, CellValue, StepProfile, as_grid, to_cell

EXHAUSTIVE_MAX = 8
DM_MAX = 7


# ---------------------------------------------------------------- cubic DP

@njit(cache=True)
def cubic_kernel(g):
    H, W = g.shape
    cur = np.full((W, W), NEG, dtype=np.int64)
    for j1 in range(W):
        for j2 in range(j1 + 1, W):
            cur[j1, j2] = sat(g[H - 1, j1], g[H - 1, j2])
    tmp = np.empty((W, W), dtype=np.int64)
    nxt = np.empty((W, W), dtype=np.int64)
    for i in range(H - 2, -1, -1):
        # max over the right robot's successor column
        for k1 in range(W):
            for j2 in range(W):
                best = cur[k1, j2]
                if j2 > 0 and cur[k1, j2 - 1] > best:
                    best = cur[k1, j2 - 1]
                if j2 < W - 1 and cur[k1, j2 + 1] > best:
                    best = cur[k1, j2 + 1]
                tmp[k1, j2] = best
        for j1 in range(W):
            for j2 in range(W):
                if j1 >= j2:
                    nxt[j1, j2] = NEG
                    continue
                best = tmp[j1, j2]
                if j1 > 0 and tmp[j1 - 1, j2] > best:
                    best = tmp[j1 - 1, j2]
                if j1 < W - 1 and tmp[j1 + 1, j2] > best:
                    best = tmp[j1 + 1, j2]
                nxt[j1, j2] = sat(sat(g[i, j1], g[i, j2]), best)
        cur, nxt = nxt, cur
    return cur[0, W - 1]


def oracle_cubic(g) -> CellValue:
    """Two robots from (0,0) and (0,W-1), strictly left/right of each other in every row."""
    g = as_grid(g)
    return to_cell(cubic_kernel(g.array))


# ---------------------------------------------------------------- enumeration

@lru_cache(maxsize=256)
def _offsets(widths: tuple[int, ...]) -> np.ndarray:
    """All column offsets relative to the start column, one row per path."""
    ranges = [range(-d, d + 1) for d in widths]
    steps = np.array(list(product(*ranges)), dtype=np.int64).reshape(-1, len(widths))
    out = np.zeros((steps.shape[0], len(widths) + 1), dtype=np.int64)
    out[:, 1:] = np.cumsum(steps, axis=1)
    out.setflags(write=False)
    return out


def all_paths(h: int, w: int, start: int, widths: tuple[int, ...]) -> np.ndarray:
    """Every in-grid falling path from (0, start) as an (n, h) column array."""
    cols = _offsets(widths) + start
    ok = ((cols >= 0) & (cols < w)).all(axis=1)
    return np.ascontiguousarray(cols[ok])


@njit(cache=True)
def path_sums(g, P):
    n, h = P.shape
    out = np.empty(n, dtype=np.int64)
    for a in range(n):
        s = 0
        for y in range(h):
            s = sat(s, g[y, P[a, y]])
        out[a] = s
    return out


@njit(cache=True)
def best_pair(g, L, Ls, R, Rs, overlap):
    """Max over path pairs; overlap scores shared cells once, else they are forbidden."""
    h = L.shape[1]
    best = NEG
    for a in range(L.shape[0]):
        for b in range(R.shape[0]):
            val = sat(Ls[a], Rs[b])
            if val <= best:
                continue
            clash = False
            for y in range(h):
                if L[a, y] == R[b, y]:
                    if not overlap:
                        clash = True
                        break
                    v = g[y, L[a, y]]
                    if v == NEG:
                        val = NEG
                    else:
                        val = sat(val, -v)
            if not clash and val > best:
                best = val
    return best


def oracle_exhaustive_starts(g, j1: int, j2: int, allow_overlap: bool = True,
                             steps=None) -> CellValue:
    """Brute force over all path pairs starting at columns j1 and j2 of row 0."""
    g = as_grid(g)
    if g.H > EXHAUSTIVE_MAX or g.W > EXHAUSTIVE_MAX:
        raise ValueError(
            f"exhaustive enumeration limited to {EXHAUSTIVE_MAX}x{EXHAUSTIVE_MAX}, got {g.H}x{g.W}"
        )
    prof = StepProfile.coerce(steps, g.H)
    prof.check(g)
    a = g.array
    L = all_paths(g.H, g.W, j1, prof.widths)
    R = all_paths(g.H, g.W, j2, prof.widths)
    return to_cell(best_pair(a, L, path_sums(a, L), R, path_sums(a, R), bool(allow_overlap)))


def oracle_exhaustive(g, allow_overlap: bool, steps=None) -> CellValue:
    """Brute force for robots at the two top corners.

    allow_overlap=True scores shared cells once; False requires the two
    paths to use different cells in every row.
    """
    g = as_grid(g)
    return oracle_exhaustive_starts(g, 0, g.W - 1, allow_overlap, steps)


# ---------------------------------------------------------------- diamond mine

@lru_cache(maxsize=16)
def _monotone_paths(n: int) -> np.ndarray:
    """Row index at each step for every right/down path from (0,0) to (n,n)."""
    paths = []
    for downs in combinations(range(2 * n), n):
        rows = [0]
        r = 0
        dset = set(downs)
        for t in range(2 * n):
            if t in dset:
                r += 1
            rows.append(r)
        paths.append(rows)
    out = np.array(paths, dtype=np.int64).reshape(-1, 2 * n + 1)
    out.setflags(write=False)
    return out


@njit(cache=True)
def dm_best(vals, P):
    n_paths, steps = P.shape
    scores = np.full(n_paths, -1, dtype=np.int64)
    for a in range(n_paths):
        s = 0
        for t in range(steps):
            v = vals[P[a, t], t - P[a, t]]
            if v < 0:
                s = -1
                break
            s += v
        scores[a] = s
    best = -1
    for a in range(n_paths):
        if scores[a] < 0:
            continue
        for b in range(a, n_paths):
            if scores[b] < 0:
                continue
            s = scores[a] + scores[b]
            for t in range(steps):
                if P[a, t] == P[b, t]:
                    s -= vals[P[a, t], t - P[a, t]]
            if s > best:
                best = s
    return best


def oracle_dm(g_dm) -> int:
    """Diamond Mine by brute force over pairs of monotone paths.

    A round trip is the union of a right/down path and a reversed right/down
    path; cells on the same anti-diagonal step are the only possible shared
    cells, and each diamond counts once.
    """
    g = as_grid(g_dm)
    N = g.H
    if g.W != N:
        raise ValueError("diamond mine grid must be square")
    if N > DM_MAX:
        raise ValueError(f"diamond mine enumeration limited to N <= {DM_MAX}")
    a = g.array
    if not np.isin(a, (-1, 0, 1)).all():
        raise ValueError("diamond mine cells must be -1, 0 or 1")
    best = dm_best(a, _monotone_paths(N - 1))
    return max(int(best), 0)
