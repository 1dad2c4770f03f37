"""Two node-disjoint shortest paths on the grid DAG (Suurballe's method).

Every cell becomes a node; a cell's outgoing edges carry weight m - g[i][j]
with m the grid maximum, so all weights are nonnegative.  A source feeds
the two top corners and every bottom cell feeds the sink.  Each s-t path
visits exactly H cells, so a pair of cell-disjoint paths with total weight
M' collects 2*m*H - M'.

Dijkstra uses a binary heap, O(E log V).  A Fibonacci heap would give
O(E + V log V); at the sizes this module serves as a cross-check the
difference is irrelevant.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .grid import NEG, CellValue, as_grid


@dataclass(frozen=True)
class WeightedDag:
    n_nodes: int
    adj: tuple[tuple[tuple[int, int], ...], ...]
    source: int
    sink: int
    H: int
    W: int
    m: int

    @property
    def n_edges(self) -> int:
        return sum(len(a) for a in self.adj)

    def cell_of(self, v: int) -> tuple[int, int] | None:
        if v >= self.H * self.W:
            return None
        return divmod(v, self.W)


@dataclass(frozen=True)
class DisjointPathsAnswer:
    total_weight: int
    paths: tuple[tuple[int, ...], tuple[int, ...]]


def build_reduction_dag(g) -> WeightedDag:
    g = as_grid(g)
    a = g.array
    if (a == NEG).any():
        raise ValueError("reduction requires finite grid")
    H, W = g.shape
    m = int(a.max())
    s, t = H * W, H * W + 1
    adj: list[list[tuple[int, int]]] = [[] for _ in range(H * W + 2)]
    for i in range(H):
        for j in range(W):
            u = i * W + j
            w = m - int(a[i, j])
            if i == H - 1:
                adj[u].append((t, w))
                continue
            for k in (j - 1, j, j + 1):
                if 0 <= k < W:
                    adj[u].append(((i + 1) * W + k, w))
    adj[s] = [(0, 0), (W - 1, 0)]
    return WeightedDag(H * W + 2, tuple(tuple(x) for x in adj), s, t, H, W, m)


def _dijkstra(n: int, adj: list[dict[int, int]], src: int) -> tuple[list, list]:
    inf = float("inf")
    dist = [inf] * n
    parent = [-1] * n
    dist[src] = 0
    heap = [(0, src)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w in adj[u].items():
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                parent[v] = u
                heapq.heappush(heap, (nd, v))
    return dist, parent


def _walk_back(parent: list[int], src: int, dst: int) -> list[int]:
    path = [dst]
    while path[-1] != src:
        path.append(parent[path[-1]])
    return path[::-1]


def suurballe_two_disjoint(dag: WeightedDag) -> DisjointPathsAnswer:
    """Minimum-weight pair of s-t paths sharing no node other than s and t."""
    # split v into v_in = 2v and v_out = 2v+1 joined by a zero-weight edge
    n = 2 * dag.n_nodes
    adj: list[dict[int, int]] = [dict() for _ in range(n)]
    for v in range(dag.n_nodes):
        adj[2 * v][2 * v + 1] = 0
        for u, w in dag.adj[v]:
            adj[2 * v + 1][2 * u] = w
    src, dst = 2 * dag.source + 1, 2 * dag.sink

    dist, parent = _dijkstra(n, adj, src)
    if dist[dst] == float("inf"):
        raise ValueError("no two disjoint paths")
    first = _walk_back(parent, src, dst)

    # reduced costs w(u,v) + d(u) - d(v) are >= 0 on the reachable part
    radj: list[dict[int, int]] = [dict() for _ in range(n)]
    for u in range(n):
        if dist[u] == float("inf"):
            continue
        for v, w in adj[u].items():
            rw = w + dist[u] - dist[v]
            assert rw >= 0, "negative reduced cost"
            radj[u][v] = rw
    for u, v in zip(first, first[1:]):
        del radj[u][v]
        radj[v][u] = 0

    dist2, parent2 = _dijkstra(n, radj, src)
    if dist2[dst] == float("inf"):
        raise ValueError("no two disjoint paths")
    second = _walk_back(parent2, src, dst)

    edges = set(zip(first, first[1:]))
    for u, v in zip(second, second[1:]):
        if (v, u) in edges:
            edges.remove((v, u))
        else:
            edges.add((u, v))

    succ: dict[int, list[int]] = {}
    for u, v in edges:
        succ.setdefault(u, []).append(v)
    paths = []
    total = 0
    for start in sorted(succ[src]):
        walk = [src, start]
        while walk[-1] != dst:
            walk.append(succ[walk[-1]][0])
        for u, v in zip(walk, walk[1:]):
            total += adj[u][v]
        # keep only the original node ids
        paths.append(tuple(x // 2 for x in walk[::2]) + (dag.sink,))
    if len(paths) != 2:
        raise ValueError("no two disjoint paths")
    return DisjointPathsAnswer(total, (paths[0], paths[1]))


def solve_cp2_via_suurballe(g) -> CellValue:
    """Cherry total recovered from the disjoint-paths weight: 2*m*H - M'."""
    g = as_grid(g)
    dag = build_reduction_dag(g)
    ans = suurballe_two_disjoint(dag)
    return 2 * dag.m * dag.H - ans.total_weight
