"""Bottleneck-path compression and comparison-counting Dijkstra.

A vertex alone on its BFS level is a bottleneck vertex; a maximal run of
bottleneck vertices on consecutive levels is a bottleneck path.  Every
bottleneck vertex is reached through its predecessor on the path, whatever
the weights, so once the head of a path is popped the following path
vertices can be emitted by galloping over prefix sums instead of going
through the heap one by one.

Only edge-weight comparisons are counted here; BFS and prefix-sum
arithmetic are free.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Any

from .dijkstra import Counters, DijkstraTrace, HEAP_KINDS, make_heap
from .errors import UnreachableError, UsageError
from .fib_heap import HeapStats
from .graph import Graph, hop_levels


@dataclass
class BfsLevels:
    level: list[int]
    sets: list[list[int]]

    @property
    def depth(self) -> int:
        return len(self.sets)


@dataclass
class BottleneckPath:
    vertices: list[int]
    # prefix[i] = weight of the path from vertices[0] to vertices[i]
    prefix: list[int]
    # edges[i] = index of the lightest arc vertices[i-1] -> vertices[i]; edges[0] = -1
    edges: list[int]

    def __len__(self) -> int:
        return len(self.vertices)


class ComparisonCounter:
    __slots__ = ("count",)

    def __init__(self) -> None:
        self.count = 0

    def __repr__(self) -> str:
        return f"ComparisonCounter({self.count})"


def compute_levels(g: Graph, s: int) -> BfsLevels:
    if not 0 <= s < g.num_vertices:
        raise UsageError(f"source {s} outside 0..{g.num_vertices - 1}")
    level = hop_levels(g, s)
    sets: list[list[int]] = []
    for v, lv in enumerate(level):
        if lv is None:
            raise UnreachableError(v)
        while len(sets) <= lv:
            sets.append([])
        sets[lv].append(v)
    return BfsLevels(level, sets)


def find_bottleneck_paths(g: Graph, levels: BfsLevels) -> list[BottleneckPath]:
    paths: list[BottleneckPath] = []
    run: list[int] = []
    for lv in levels.sets + [[]]:
        if len(lv) == 1:
            run.append(lv[0])
            continue
        if run:
            paths.append(_make_path(g, run))
            run = []
    return paths


def _make_path(g: Graph, vertices: list[int]) -> BottleneckPath:
    prefix = [0]
    edges = [-1]
    adj = g.adjacency
    for prev, cur in zip(vertices, vertices[1:]):
        best = None
        for v, w, ei in adj[prev]:
            if v == cur and (best is None or w < best[0]):
                best = (w, ei)
        if best is None:
            raise UsageError(f"no arc {prev} -> {cur} between consecutive bottleneck vertices")
        prefix.append(prefix[-1] + best[0])
        edges.append(best[1])
    return BottleneckPath(list(vertices), prefix, edges)


def _compress(g: Graph, paths: list[BottleneckPath]) -> tuple[Graph, list[int]]:
    """Compressed graph plus, per compressed arc, the original arc index."""
    where: dict[int, tuple[int, int]] = {}
    for p, path in enumerate(paths):
        for i, v in enumerate(path.vertices):
            where[v] = (p, i)
    arcs = []
    origin = []
    limit = (1 << 63) - 1
    for ei, (u, v, w) in enumerate(g.edges()):
        pos = where.get(u)
        if pos is None or pos[1] == 0:
            arcs.append((u, v, w))
            origin.append(ei)
            continue
        p, i = pos
        path = paths[p]
        if i + 1 < len(path) and v == path.vertices[i + 1]:
            arcs.append((u, v, w))
            origin.append(ei)
            continue
        vpos = where.get(v)
        if vpos is not None and vpos[0] == p:
            # points back along its own path: can never relax anything
            continue
        w2 = path.prefix[i] + w
        if w2 > limit:
            raise OverflowError(f"rerouted weight for arc ({u}, {v}) overflows 64 bits")
        arcs.append((path.vertices[0], v, w2))
        origin.append(ei)
    order = sorted(range(len(arcs)), key=lambda k: arcs[k][0])
    return Graph(g.num_vertices, [arcs[k] for k in order]), [origin[k] for k in order]


def compress(g: Graph, paths: list[BottleneckPath]) -> Graph:
    """Reroute every arc leaving a non-head path vertex to the path head.

    An arc ``(u_i, v)`` becomes ``(u_1, v)`` with weight
    ``prefix[i] + w(u_i, v)``.  Arcs to the path successor are kept and
    arcs pointing back into the same path are dropped.
    """
    return _compress(g, paths)[0]


def exponential_search(path: BottleneckPath, i: int, base_distance: int,
                       threshold: Any, counter: ComparisonCounter) -> int:
    """Largest ``j >= i`` whose distance is below ``threshold``.

    Distances are ``base_distance + prefix[j] - prefix[i]``.  A tuple
    threshold is compared against ``(distance, vertex)``.  ``None`` or
    ``math.inf`` stands for an empty heap and returns the last index without
    comparing.  Vertex ``i`` itself is assumed to be below the threshold.
    """
    last = len(path.vertices) - 1
    if not 0 <= i <= last:
        raise UsageError(f"index {i} outside path of length {last + 1}")
    if threshold is None or threshold == math.inf:
        return last
    prefix, verts = path.prefix, path.vertices
    offset = base_distance - prefix[i]
    keyed = isinstance(threshold, tuple)

    def below(q: int) -> bool:
        counter.count += 1
        d = offset + prefix[q]
        return ((d, verts[q]) if keyed else d) < threshold

    good, bad, step = i, last + 1, 1
    while good < last:
        probe = min(i + step, last)
        if below(probe):
            good = probe
            step *= 2
        else:
            bad = probe
            break
    while bad - good > 1:
        mid = (good + bad) // 2
        if below(mid):
            good = mid
        else:
            bad = mid
    return good


def run_compressed(g: Graph, s: int, heap: str = "timestamp") -> DijkstraTrace:
    """Dijkstra with compressed bottleneck paths.

    Vertices emitted by the search never enter the heap; their push and pop
    stamps both equal the clock at emission.  ``trace.iterations`` records,
    per main-loop iteration, whether the popped vertex was a bottleneck
    vertex.
    """
    if heap not in HEAP_KINDS:
        raise UsageError(f"unknown heap kind {heap!r}")
    start = time.perf_counter_ns()
    levels = compute_levels(g, s)
    paths = find_bottleneck_paths(g, levels)
    g2, origin = _compress(g, paths)
    where: dict[int, tuple[BottleneckPath, int]] = {}
    for path in paths:
        for i, v in enumerate(path.vertices):
            where[v] = (path, i)

    N = g.num_vertices
    adj = g2.adjacency
    stats = HeapStats()
    h = make_heap(heap, stats)
    search = ComparisonCounter()
    dist: list[Any] = [None] * N
    a = [-1] * N
    b = [-1] * N
    parent = [-1] * N
    pedge = [-1] * N
    handles: list[Any] = [None] * N
    order: list[int] = []
    iterations: list[bool] = []
    relax_cmp = pops = dks = pop_steps = 0
    log_size = 0.0
    t = 0

    def relax(u: int, du: int, arcs, skip: int) -> None:
        nonlocal t, relax_cmp, dks
        for v, w, ei in arcs:
            if v == skip:
                continue
            dv = dist[v]
            nd = du + w
            if dv is None:
                dist[v] = nd
                handles[v] = h.push(v, nd)
                a[v] = t
                t += 1
                parent[v] = g.edge(origin[ei])[0]
                pedge[v] = origin[ei]
            elif handles[v] is not None:
                relax_cmp += 1
                if nd < dv:
                    dist[v] = nd
                    h.decrease_key(handles[v], nd)
                    dks += 1

    dist[s] = 0
    handles[s] = h.push(s, 0)
    a[s] = 0
    t = 1
    while h:
        log_size += math.log2(len(h))
        before = stats.steps
        u, du = h.pop()[:2]
        pop_steps += stats.steps - before
        pops += 1
        b[u] = t
        handles[u] = None
        order.append(u)
        pos = where.get(u)
        iterations.append(pos is not None)
        if pos is None or pos[1] == len(pos[0]) - 1:
            relax(u, du, adj[u], -1)
            continue
        path, i = pos
        verts = path.vertices
        relax(u, du, adj[u], verts[i + 1])
        if h:
            e, k = h.peek()
            threshold = (k, e)
        else:
            threshold = None
        j = exponential_search(path, i, du, threshold, search)
        base = du - path.prefix[i]
        for q in range(i + 1, j + 1):
            v = verts[q]
            dist[v] = base + path.prefix[q]
            parent[v] = verts[q - 1]
            pedge[v] = path.edges[q]
            a[v] = b[v] = t
            order.append(v)
        uj = verts[j]
        relax(uj, dist[uj], [arc for arc in adj[uj] if arc[0] == verts[j + 1]]
              if j + 1 < len(verts) else adj[uj], -1)

    c = Counters(pushes=t, pops=pops, decrease_keys=dks,
                 comparisons=stats.comparisons + relax_cmp + search.count,
                 heap_comparisons=stats.comparisons, relax_comparisons=relax_cmp,
                 search_comparisons=search.count, heap_steps=stats.steps,
                 pop_steps=pop_steps, heap_log_size=log_size)
    trace = DijkstraTrace(s, heap, "compressed", order, dist, a, b, parent, pedge, c,
                          iterations=iterations)
    trace.wall_ns = time.perf_counter_ns() - start
    return trace


def forward_edge_count(g: Graph, s: int, trace: DijkstraTrace, variant: str = "tree-excluding") -> int:
    """Count forward arcs ``(u, v)``: ``dist(v) > dist(u)`` and ``(v, u)``
    is not a tree arc.  ``tree-excluding`` also skips tree arcs ``(u, v)``."""
    if variant not in ("paper-literal", "tree-excluding"):
        raise UsageError(f"unknown forward-edge variant {variant!r}")
    if trace.source != s:
        raise UsageError("trace was computed from a different source")
    tree = set(trace.tree_edges())
    dist = trace.distance
    count = 0
    for u, v, _ in g.edges():
        if dist[v] > dist[u] and (v, u) not in tree:
            if variant == "tree-excluding" and (u, v) in tree:
                continue
            count += 1
    return count


def forward_edge_counts(g: Graph, s: int, trace: DijkstraTrace) -> dict[str, int]:
    return {v: forward_edge_count(g, s, trace, v) for v in ("paper-literal", "tree-excluding")}
