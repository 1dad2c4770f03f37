"""Sliding-window maximum with a monotonic deque.

``SWM_{v,w}(j) = max(v[j-w], ..., v[j+w])`` over in-range indices.  Build is
O(|v|) amortized, each query O(1).
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from numba import njit

from .grid import NEG, CellValue, from_cell, to_cell


@njit(cache=True)
def swm_into(v, w, out, dq):
    """Write the radius-w sliding maximum of v into out.

    dq is a scratch int64 buffer of length >= len(v) used as the deque of
    candidate indices, kept with strictly decreasing values.
    """
    n = v.shape[0]
    head = 0
    tail = 0
    for k in range(n + w):
        if k < n:
            x = v[k]
            while tail > head and v[dq[tail - 1]] <= x:
                tail -= 1
            dq[tail] = k
            tail += 1
        j = k - w
        if j >= 0:
            while dq[head] < j - w:
                head += 1
            out[j] = v[dq[head]]


@njit(cache=True)
def swm_array(v, w):
    out = np.empty(v.shape[0], dtype=np.int64)
    dq = np.empty(v.shape[0], dtype=np.int64)
    swm_into(v, w, out, dq)
    return out


class Swm:
    """Immutable sliding-window maximum over a vector of cell values."""

    __slots__ = ("source", "radius", "_max")

    def __init__(self, v: Sequence, w: int):
        if w < 0:
            raise ValueError("window radius must be >= 0")
        src = np.array([from_cell(x) for x in v], dtype=np.int64)
        if src.size == 0:
            raise ValueError("empty vector")
        self.source = src
        self.radius = int(w)
        m = swm_array(src, np.int64(min(self.radius, src.size)))
        m.setflags(write=False)
        self._max = m

    def query(self, j: int) -> CellValue:
        return to_cell(self._max[j])

    def maxima(self) -> list[CellValue]:
        return [to_cell(x) for x in self._max]

    def __len__(self) -> int:
        return self.source.size


def swm_build(v: Sequence, w: int) -> Swm:
    return Swm(v, w)


def naive_window_max(v: Sequence, w: int) -> list[CellValue]:
    """Direct O(|v| * w) scan, kept as the reference for tests."""
    a = [from_cell(x) for x in v]
    n = len(a)
    return [to_cell(max(a[max(0, j - w): min(n, j + w + 1)], default=NEG)) for j in range(n)]
