"""Extensions of the two-robot solver.

* generalized step widths: row i may be entered from up to d_i columns away;
* Diamond Mine (go to the far corner of a square grid and back) reduced to
  the corner-to-bottom problem by a 45 degree rotation;
* two robots starting at arbitrary top-row columns.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np
from numba import njit

from .disjoint import neutral_for, rmax, solve_cp2
from .falling import bounds_steps, f_table_steps, sat, solve_mfps
from .grid import NEG, CellValue, Grid, StepProfile, as_grid, to_cell
from .swm import Swm, swm_build, swm_into

__all__ = [
    "Swm",
    "swm_build",
    "StepProfile",
    "solve_cp2_extended",
    "UNREACHABLE",
    "reduce_diamond_mine",
    "solve_diamond_mine",
    "TwoRobotInstance",
    "solve_two_robots",
]


# ---------------------------------------------------------------- generalized steps

@njit(cache=True)
def m_tables_steps(g, F, lp, rp, d, neutral):
    """Ml/Mr under per-row step widths, one sliding maximum per row and table."""
    H, W = g.shape
    Ml = np.full((H, W), NEG, dtype=np.int64)
    Mr = np.full((H, W), NEG, dtype=np.int64)
    masked = np.empty(W, dtype=np.int64)
    win_f = np.empty(W, dtype=np.int64)
    win_m = np.empty(W, dtype=np.int64)
    dq = np.empty(W, dtype=np.int64)

    b = H - 1
    for j in range(max(rp[b], lp[b] + 1), W):
        Ml[b, j] = sat(g[b, lp[b]], g[b, j])
    for j in range(0, min(lp[b], rp[b] - 1) + 1):
        Mr[b, j] = sat(g[b, rp[b]], g[b, j])

    for i in range(H - 2, -1, -1):
        w = d[i + 1]
        l0, l1 = lp[i], lp[i + 1]
        r0, r1 = rp[i], rp[i + 1]
        Fn = F[i + 1]

        # Ml row: right path lands in [j-w, j+w]; left path leaves lp into
        # [l0-w, l1-1] (scalar Mri) or stays on lp (Ml of the next row)
        lo = max(l0 + 1, r0)
        if lo <= W - 1:
            Mri = rmax(Mr[i + 1], max(0, l0 - w), l1 - 1)
            guard1 = l1 >= 1 and l1 >= l0 - w + 1
            guard2 = l1 + 2 <= W
            if guard1:
                for k in range(W):
                    masked[k] = Fn[k] if k >= r1 else NEG
                swm_into(masked, w, win_f, dq)
            if guard2:
                swm_into(Ml[i + 1], w, win_m, dq)
            base = g[i, l0]
            for j in range(lo, W):
                m1 = neutral
                m2 = neutral
                if guard1:
                    m1 = sat(sat(win_f[j], Mri), -Fn[r1])
                if guard2:
                    m2 = win_m[j]
                Ml[i, j] = sat(sat(base, g[i, j]), max(m1, m2))

        hi = min(l0, r0 - 1)
        if hi >= 0:
            Mli = rmax(Ml[i + 1], r1 + 1, min(W - 1, r0 + w))
            guard1 = r1 <= W - 2 and r1 <= r0 + w - 1
            guard2 = r1 >= 1
            if guard1:
                for k in range(W):
                    masked[k] = Fn[k] if k <= l1 else NEG
                swm_into(masked, w, win_f, dq)
            if guard2:
                swm_into(Mr[i + 1], w, win_m, dq)
            base = g[i, r0]
            for j in range(0, hi + 1):
                m1 = neutral
                m2 = neutral
                if guard1:
                    m1 = sat(sat(win_f[j], Mli), -Fn[l1])
                if guard2:
                    m2 = win_m[j]
                Mr[i, j] = sat(sat(base, g[i, j]), max(m1, m2))
    return Ml, Mr


def solve_cp2_extended(g, steps=None) -> CellValue:
    """Best non-intersecting pair from the top corners when row i allows |step| <= d_i."""
    g = as_grid(g)
    prof = StepProfile.coerce(steps, g.H)
    prof.check(g)
    d = prof.as_array()
    a = g.array
    W = g.W
    F = f_table_steps(a, d)
    lp, rp = bounds_steps(F, d)
    if F[0, 0] == NEG or F[0, W - 1] == NEG:
        return to_cell(NEG)
    if not (lp >= rp).any():
        return to_cell(int(F[0, 0]) + int(F[0, W - 1]))
    Ml, _ = m_tables_steps(a, F, lp, rp, d, np.int64(neutral_for(g)))
    return to_cell(Ml[0, W - 1])


# ---------------------------------------------------------------- diamond mine

class _Unreachable:
    def __repr__(self) -> str:
        return "UNREACHABLE"

    def __bool__(self) -> bool:
        return False


UNREACHABLE = _Unreachable()


def _dm_array(g_dm) -> np.ndarray:
    g = as_grid(g_dm)
    a = g.array
    if g.H != g.W:
        raise ValueError(f"diamond mine grid must be square, got {g.H}x{g.W}")
    if not np.isin(a, (-1, 0, 1)).all():
        raise ValueError("diamond mine cells must be -1, 0 or 1")
    return a


def dm_reachable(a: np.ndarray) -> bool:
    """BFS over right/down moves avoiding -1 cells, from (0,0) to (N-1,N-1)."""
    N = a.shape[0]
    if a[0, 0] == -1:
        return False
    seen = np.zeros_like(a, dtype=bool)
    seen[0, 0] = True
    queue = deque([(0, 0)])
    while queue:
        i, j = queue.popleft()
        if i == N - 1 and j == N - 1:
            return True
        for ni, nj in ((i + 1, j), (i, j + 1)):
            if ni < N and nj < N and not seen[ni, nj] and a[ni, nj] != -1:
                seen[ni, nj] = True
                queue.append((ni, nj))
    return False


def reduce_diamond_mine(g_dm):
    """Rotate a Diamond Mine grid into a (3N-2) x (2N-1) corner-to-bottom instance.

    Returns UNREACHABLE when the far corner cannot be reached at all.
    """
    a = _dm_array(g_dm)
    N = a.shape[0]
    if not dm_reachable(a):
        return UNREACHABLE
    n = N - 1
    size = 2 * n + 1
    block = -10 * N
    g1 = [[None] * size for _ in range(size)]

    # rotate by 45 degrees: anti-diagonal i+j becomes row i+j
    for i in range(N):
        for j in range(N):
            g1[i + j][n + i - j] = int(a[i, j])

    def is_marker(r: int, c: int) -> bool:
        return 0 <= c < size and g1[r][c] == -1

    # connector cell directly above every rotated cell except the apex
    connector = set()
    for i in range(N):
        for j in range(N):
            if i + j < 1:
                continue
            r, c = i + j - 1, n + i - j
            connector.add((r, c))
            if g1[i + j][c] == -1 or (is_marker(r, c - 1) and is_marker(r, c + 1)):
                g1[r][c] = block
            else:
                g1[r][c] = 0

    g2 = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            outside = i + j < n or i + j > 3 * n or i + n < j or i > j + n
            # connectors above the two upper edges fall outside the diamond;
            # they are the second lane along the border and must survive
            if 0 < i < 2 * n and outside and (i, j) not in connector:
                g2[i][j] = block
            elif i == 0 and (j < n - 1 or j > n + 1):
                # blocked, not zero: a zero here would let a robot bypass
                # the apex and join a border lane part-way down
                g2[i][j] = block
            elif i == 2 * n and j != n:
                g2[i][j] = 0
            else:
                if g1[i][j] is None:
                    raise AssertionError(f"cell ({i},{j}) left unfilled by the rotation")
                g2[i][j] = g1[i][j]

    g3 = [[block if v == -1 else v for v in row] for row in g2]
    g4 = [[0] * size for _ in range(n)] + g3
    return Grid(g4)


def solve_diamond_mine(g_dm) -> int:
    """Most diamonds collectable on a round trip (0,0) -> (N-1,N-1) -> (0,0)."""
    g4 = reduce_diamond_mine(g_dm)
    if g4 is UNREACHABLE:
        return 0
    total = solve_cp2(g4).total
    return int(total)


# ---------------------------------------------------------------- two robots

@dataclass(frozen=True)
class TwoRobotInstance:
    grid: Grid
    j1: int
    j2: int

    def __post_init__(self):
        object.__setattr__(self, "grid", as_grid(self.grid))
        if not 0 <= self.j1 < self.j2 <= self.grid.W - 1:
            raise ValueError(f"need 0 <= j1 < j2 <= W-1, got j1={self.j1}, j2={self.j2}")


def two_robot_grid(inst: TwoRobotInstance) -> tuple[Grid, int]:
    """Padded corner-start grid whose best pair must pass both start cells.

    Returns the grid and the total boost 2*m*H to subtract from its answer.
    """
    g = inst.grid
    H, W = g.shape
    lo = max(0, inst.j1 - H)
    hi = min(W - 1, inst.j2 + H)
    sub = g.array[:, lo: hi + 1]
    padded = np.vstack([np.zeros((2 * H, sub.shape[1]), dtype=np.int64), sub])
    m = int(padded.max())
    boost = m * H
    padded[2 * H, inst.j1 - lo] += boost
    padded[2 * H, inst.j2 - lo] += boost
    return Grid.from_array(padded), 2 * boost


def solve_two_robots(inst: TwoRobotInstance) -> CellValue:
    """Best total for robots starting at (0, j1) and (0, j2), shared cells counted once.

    Exact for nonnegative grids.
    """
    g = inst.grid
    if inst.j2 - inst.j1 > 2 * g.H:
        s1, _ = solve_mfps(g, inst.j1)
        s2, _ = solve_mfps(g, inst.j2)
        return s1 + s2
    padded, shift = two_robot_grid(inst)
    total = solve_cp2(padded).total
    return total - shift
