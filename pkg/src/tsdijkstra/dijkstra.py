"""Dijkstra's algorithm over a pluggable heap, fully instrumented.

The clock ticks after every push, so vertex ``v`` is pushed at time
``pushed_at[v]`` and popped at ``popped_at[v]`` regardless of the heap kind.
``parent[v]`` is the vertex whose relaxation first pushed ``v`` (the
exploration tree), which need not be the final shortest-path predecessor.
"""
from __future__ import annotations

import hashlib
import heapq
import json
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Any

from . import _backend
from .binary_heap import BinaryHeap
from .errors import UnreachableError, UsageError
from .fib_heap import FibonacciHeap, HeapStats
from .graph import Graph, hop_levels
from .ts_heap import TimestampHeap

HEAP_KINDS = ("binary", "fibonacci", "timestamp")


@dataclass
class Counters:
    pushes: int = 0
    pops: int = 0
    decrease_keys: int = 0
    comparisons: int = 0
    heap_comparisons: int = 0
    relax_comparisons: int = 0
    search_comparisons: int = 0
    heap_steps: int = 0
    pop_steps: int = 0
    heap_log_size: float = 0.0


@dataclass
class DijkstraTrace:
    source: int
    heap: str
    algorithm: str
    order: list[int]
    distance: list[int]
    pushed_at: list[int]
    popped_at: list[int]
    parent: list[int]
    parent_edge: list[int]
    counters: Counters = field(default_factory=Counters)
    backend: str = "python"
    wall_ns: int = 0
    # compressed runs only: per main-loop iteration, whether the popped
    # vertex lies on a bottleneck path
    iterations: list[bool] | None = None

    @property
    def n(self) -> int:
        return len(self.distance) - 1

    def intervals(self) -> list[tuple[int, int]]:
        """``(a, b)`` for every vertex except the source, in vertex order."""
        s = self.source
        return [(a, b) for v, (a, b) in enumerate(zip(self.pushed_at, self.popped_at)) if v != s]

    def tree_edges(self) -> list[tuple[int, int]]:
        return [(p, v) for v, p in enumerate(self.parent) if p >= 0]

    def distance_digest(self) -> str:
        return hashlib.sha256(",".join(map(str, self.distance)).encode()).hexdigest()[:16]

    def order_digest(self) -> str:
        return hashlib.sha256(",".join(map(str, self.order)).encode()).hexdigest()[:16]

    def to_dict(self) -> dict[str, Any]:
        return {
            "source": self.source,
            "heap": self.heap,
            "algorithm": self.algorithm,
            "backend": self.backend,
            "order": self.order,
            "distances": self.distance,
            "timestamps": [[a, b] for a, b in zip(self.pushed_at, self.popped_at)],
            "parent": self.parent,
            "counters": asdict(self.counters),
            "interval_budget": interval_budget(self),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def make_heap(kind: str, stats: HeapStats | None = None):
    if kind == "binary":
        return BinaryHeap(stats)
    if kind == "fibonacci":
        return FibonacciHeap(stats)
    if kind == "timestamp":
        return TimestampHeap(stats)
    raise UsageError(f"unknown heap kind {kind!r}; choose from {', '.join(HEAP_KINDS)}")


def require_reachable(g: Graph, s: int) -> list[int]:
    if not 0 <= s < g.num_vertices:
        raise UsageError(f"source {s} outside 0..{g.num_vertices - 1}")
    levels = hop_levels(g, s)
    for v, lv in enumerate(levels):
        if lv is None:
            raise UnreachableError(v)
    return levels


def run(g: Graph, s: int, heap: str = "timestamp", backend: str | None = None) -> DijkstraTrace:
    """Run Dijkstra from ``s`` with the requested heap kind.

    ``backend`` picks the compiled kernel or the pure-Python loop; both
    produce identical traces, counters included.  ``None`` uses the
    import-time default.
    """
    if heap not in HEAP_KINDS:
        raise UsageError(f"unknown heap kind {heap!r}; choose from {', '.join(HEAP_KINDS)}")
    require_reachable(g, s)
    kernel = _backend.resolve(backend)
    if kernel is not None:
        start = time.perf_counter_ns()
        raw = kernel.dijkstra(g.indptr, g.targets, g.weights, s, HEAP_KINDS.index(heap))
        wall = time.perf_counter_ns() - start
        order, dist, a, b, parent, pedge, ints, log_size = raw
        c = Counters(*ints, heap_log_size=log_size)
        return DijkstraTrace(s, heap, "plain", order, dist, a, b, parent, pedge, c,
                             backend="compiled", wall_ns=wall)
    start = time.perf_counter_ns()
    trace = _run_python(g, s, heap)
    trace.wall_ns = time.perf_counter_ns() - start
    return trace


def _run_python(g: Graph, s: int, kind: str) -> DijkstraTrace:
    N = g.num_vertices
    adj = g.adjacency
    stats = HeapStats()
    h = make_heap(kind, stats)
    push, pop, decrease = h.push, h.pop, h.decrease_key
    dist: list[Any] = [None] * N
    a = [-1] * N
    b = [-1] * N
    parent = [-1] * N
    pedge = [-1] * N
    handles: list[Any] = [None] * N
    order = []
    log2 = math.log2
    relax_cmp = pops = dks = pop_steps = 0
    log_size = 0.0

    dist[s] = 0
    handles[s] = push(s, 0)
    a[s] = 0
    t = 1
    size = 1
    while size:
        log_size += log2(size)
        before = stats.steps
        u, du = pop()[:2]
        pop_steps += stats.steps - before
        size -= 1
        pops += 1
        b[u] = t
        handles[u] = None
        order.append(u)
        for v, w, ei in adj[u]:
            dv = dist[v]
            nd = du + w
            if dv is None:
                dist[v] = nd
                handles[v] = push(v, nd)
                a[v] = t
                t += 1
                size += 1
                parent[v] = u
                pedge[v] = ei
            elif handles[v] is not None:
                relax_cmp += 1
                if nd < dv:
                    dist[v] = nd
                    decrease(handles[v], nd)
                    dks += 1
    c = Counters(pushes=t, pops=pops, decrease_keys=dks,
                 comparisons=stats.comparisons + relax_cmp,
                 heap_comparisons=stats.comparisons, relax_comparisons=relax_cmp,
                 heap_steps=stats.steps, pop_steps=pop_steps, heap_log_size=log_size)
    return DijkstraTrace(s, kind, "plain", order, dist, a, b, parent, pedge, c)


def run_reference(g: Graph, s: int) -> tuple[list[int], list[int]]:
    """Textbook heapq Dijkstra with lazy deletion; ties broken by vertex id."""
    if not 0 <= s < g.num_vertices:
        raise UsageError(f"source {s} outside 0..{g.num_vertices - 1}")
    N = g.num_vertices
    adj = g.adjacency
    dist: list[Any] = [None] * N
    done = [False] * N
    dist[s] = 0
    pq = [(0, s)]
    order = []
    while pq:
        d, u = heapq.heappop(pq)
        if done[u]:
            continue
        done[u] = True
        order.append(u)
        for v, w, _ in adj[u]:
            nd = d + w
            dv = dist[v]
            if dv is None or nd < dv:
                dist[v] = nd
                heapq.heappush(pq, (nd, v))
    if len(order) != N:
        raise UnreachableError(next(v for v in range(N) if not done[v]))
    return dist, order


def bellman_ford(g: Graph, s: int) -> list[int | None]:
    dist: list[Any] = [None] * g.num_vertices
    dist[s] = 0
    edges = list(g.edges())
    for _ in range(g.num_vertices - 1):
        changed = False
        for u, v, w in edges:
            du = dist[u]
            if du is not None and (dist[v] is None or du + w < dist[v]):
                dist[v] = du + w
                changed = True
        if not changed:
            break
    return dist


def sum_log_intervals(trace: DijkstraTrace) -> float:
    # vertices emitted by the compressed search have a == b and cost nothing
    return sum(math.log2(max(1, b - a)) for a, b in trace.intervals())


def interval_budget(trace: DijkstraTrace) -> float:
    """Sum over non-source vertices of ``1 + log2(b - a)``."""
    return trace.n + sum_log_intervals(trace)
