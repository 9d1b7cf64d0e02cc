"""Directed graphs with positive integer weights, DIMACS-sp I/O and generators.

Vertices are ``0 .. num_vertices - 1``.  Arcs are kept in CSR form (numpy
``int64`` arrays) grouped by source in insertion order; the pure-Python
code paths read the cached :attr:`Graph.adjacency` lists instead.
"""
from __future__ import annotations

import heapq
import io
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, TextIO

import numpy as np

from .errors import ParseError, UsageError

DEFAULT_WEIGHTS = (1, 1 << 20)
_MAX_TOTAL = (1 << 63) - 1


class Graph:
    """Immutable weighted digraph.

    ``adjacency[u]`` is a list of ``(v, w, edge_index)`` triples where
    ``edge_index`` is the arc's position in the CSR arrays.
    """

    __slots__ = ("num_vertices", "indptr", "targets", "weights", "_adj", "_src")

    def __init__(self, num_vertices: int, edges: Iterable[tuple[int, int, int]] = ()) -> None:
        if num_vertices < 1:
            raise UsageError("a graph needs at least one vertex")
        arcs = list(edges)
        total = 0
        for u, v, w in arcs:
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise UsageError(f"arc ({u}, {v}) has an endpoint outside 0..{num_vertices - 1}")
            if u == v:
                raise UsageError(f"self-loop at vertex {u}")
            if int(w) != w or w < 1:
                raise UsageError(f"arc ({u}, {v}) has non-positive or non-integer weight {w!r}")
            total += w
        if total > _MAX_TOTAL:
            raise OverflowError("total edge weight does not fit a 64-bit accumulator")
        arcs.sort(key=lambda a: a[0])
        self.num_vertices = num_vertices
        src = np.fromiter((a[0] for a in arcs), dtype=np.int64, count=len(arcs))
        self.targets = np.fromiter((a[1] for a in arcs), dtype=np.int64, count=len(arcs))
        self.weights = np.fromiter((a[2] for a in arcs), dtype=np.int64, count=len(arcs))
        self.indptr = np.zeros(num_vertices + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=num_vertices), out=self.indptr[1:])
        for arr in (self.indptr, self.targets, self.weights):
            arr.flags.writeable = False
        self._src = src
        self._adj = None

    @property
    def m(self) -> int:
        return len(self.targets)

    @property
    def n(self) -> int:
        """Number of non-source vertices."""
        return self.num_vertices - 1

    @property
    def adjacency(self) -> list[list[tuple[int, int, int]]]:
        if self._adj is None:
            adj: list[list[tuple[int, int, int]]] = [[] for _ in range(self.num_vertices)]
            for i, (u, v, w) in enumerate(zip(self._src.tolist(), self.targets.tolist(),
                                               self.weights.tolist())):
                adj[u].append((v, w, i))
            self._adj = adj
        return self._adj

    def edges(self) -> Iterator[tuple[int, int, int]]:
        return zip(self._src.tolist(), self.targets.tolist(), self.weights.tolist())

    def edge(self, index: int) -> tuple[int, int, int]:
        return int(self._src[index]), int(self.targets[index]), int(self.weights[index])

    def with_weights(self, weights: Iterable[int]) -> Graph:
        """Same topology and arc order, new weights."""
        ws = list(weights)
        if len(ws) != self.m:
            raise UsageError(f"expected {self.m} weights, got {len(ws)}")
        return Graph(self.num_vertices, zip(self._src.tolist(), self.targets.tolist(), ws))

    def in_neighbors(self) -> list[set[int]]:
        inn: list[set[int]] = [set() for _ in range(self.num_vertices)]
        for u, v, _ in self.edges():
            inn[v].add(u)
        return inn

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.num_vertices == other.num_vertices
                and sorted(self.edges()) == sorted(other.edges()))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Graph(num_vertices={self.num_vertices}, m={self.m})"


# -- DIMACS-sp ------------------------------------------------------------------


def from_dimacs(text: str | TextIO) -> tuple[Graph, int]:
    """Parse DIMACS-sp.  Returns the graph and the default source (vertex 0).

    Vertices are 1-indexed in the file and 0-indexed in the graph.
    """
    stream = io.StringIO(text) if isinstance(text, str) else text
    header = None
    arcs: list[tuple[int, int, int]] = []
    lineno = 0
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if header is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] != "sp":
                raise ParseError(f"malformed problem line {line!r}", lineno)
            try:
                nv, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"non-integer counts in {line!r}", lineno) from None
            if nv < 1 or m < 0:
                raise ParseError(f"invalid counts in {line!r}", lineno)
            header = (nv, m)
        elif tag == "a":
            if header is None:
                raise ParseError("arc before problem line", lineno)
            if len(parts) != 4:
                raise ParseError(f"malformed arc line {line!r}", lineno)
            try:
                u, v, w = (int(x) for x in parts[1:])
            except ValueError:
                raise ParseError(f"non-integer field in {line!r}", lineno) from None
            nv = header[0]
            if not (1 <= u <= nv and 1 <= v <= nv):
                raise ParseError(f"vertex out of range 1..{nv} in {line!r}", lineno)
            if w < 1:
                raise ParseError(f"non-positive weight in {line!r}", lineno)
            if u == v:
                raise ParseError(f"self-loop in {line!r}", lineno)
            arcs.append((u - 1, v - 1, w))
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)
    if header is None:
        raise ParseError("missing problem line", lineno or None)
    if len(arcs) != header[1]:
        raise ParseError(f"header announces {header[1]} arcs, found {len(arcs)}", lineno)
    try:
        return Graph(header[0], arcs), 0
    except (UsageError, OverflowError) as exc:
        raise ParseError(str(exc), lineno) from exc


def to_dimacs(g: Graph) -> str:
    lines = [f"p sp {g.num_vertices} {g.m}"]
    lines.extend(f"a {u + 1} {v + 1} {w}" for u, v, w in sorted(g.edges()))
    return "\n".join(lines) + "\n"


# -- generators -------------------------------------------------------------------

FAMILIES = ("path", "star", "random", "lollipop", "grid", "diamond")


def _weight_fn(rng: random.Random, weights: tuple[int, int]):
    lo, hi = weights
    if not 1 <= lo <= hi:
        raise UsageError(f"invalid weight range {weights!r}")
    return lambda: rng.randint(lo, hi)


def _random_digraph(rng: random.Random, first: int, count: int, m: int, weight) -> list:
    """Random arcs over ``first .. first+count-1``: a spanning arborescence
    rooted at ``first`` plus extra distinct arcs, ``m`` arcs in total."""
    ids = list(range(first + 1, first + count))
    rng.shuffle(ids)
    order = [first] + ids
    arcs = {}
    for i in range(1, count):
        arcs[(order[rng.randrange(i)], order[i])] = None
    cap = count * (count - 1)
    extra = m - len(arcs)
    if extra > 0:
        if m > cap // 2:
            pool = [(u, v) for u in range(first, first + count)
                    for v in range(first, first + count) if u != v and (u, v) not in arcs]
            for pair in rng.sample(pool, extra):
                arcs[pair] = None
        else:
            while len(arcs) < m:
                u = first + rng.randrange(count)
                v = first + rng.randrange(count)
                if u != v:
                    arcs.setdefault((u, v), None)
    return [(u, v, weight()) for u, v in arcs]


def gen_family(family: str, *, seed: int = 0, weights: tuple[int, int] = DEFAULT_WEIGHTS,
               **params: int) -> tuple[Graph, int]:
    """Build a deterministic graph from a named family; the source is vertex 0.

    ``n`` counts non-source vertices throughout:

    - ``path(n)``: chain 0 -> 1 -> ... -> n
    - ``star(n)``: 0 -> i for i in 1..n
    - ``random(n, m)``: n+1 vertices, m distinct arcs, every vertex reachable
    - ``lollipop(p, q, m=None)``: a chain of p vertices feeding a random graph
      on q vertices with ``m`` arcs (default ``min(q(q-1), 32q)``)
    - ``grid(rows, cols)``: symmetric 4-neighbour grid rooted at a corner
    - ``diamond()``: 0 -> 1, 0 -> 2, 1 -> 3, 2 -> 3
    """
    rng = random.Random(seed)
    weight = _weight_fn(rng, weights)

    def need(name: str, lo: int = 1) -> int:
        if name not in params:
            raise UsageError(f"family {family!r} needs parameter {name!r}")
        value = params[name]
        if int(value) != value or value < lo:
            raise UsageError(f"parameter {name}={value!r} must be an integer >= {lo}")
        return int(value)

    if family == "path":
        n = need("n")
        return Graph(n + 1, [(i, i + 1, weight()) for i in range(n)]), 0
    if family == "star":
        n = need("n")
        return Graph(n + 1, [(0, i, weight()) for i in range(1, n + 1)]), 0
    if family == "random":
        n = need("n")
        m = need("m")
        if not n <= m <= n * (n + 1):
            raise UsageError(f"random graph needs n <= m <= n(n+1); got n={n}, m={m}")
        return Graph(n + 1, _random_digraph(rng, 0, n + 1, m, weight)), 0
    if family == "lollipop":
        p = need("p")
        q = need("q")
        m = params.get("m")
        m = min(q * (q - 1), 32 * q) if m is None else int(m)
        if not q - 1 <= m <= q * (q - 1):
            raise UsageError(f"lollipop head needs q-1 <= m <= q(q-1); got q={q}, m={m}")
        arcs = [(i, i + 1, weight()) for i in range(p)]
        arcs += _random_digraph(rng, p, q + 1, m + 1, weight) if q else []
        return Graph(p + q + 1, arcs), 0
    if family == "grid":
        rows = need("rows")
        cols = need("cols")
        if rows * cols < 2:
            raise UsageError("grid needs at least two cells")
        arcs = []
        for r in range(rows):
            for c in range(cols):
                u = r * cols + c
                if c + 1 < cols:
                    arcs += [(u, u + 1, weight()), (u + 1, u, weight())]
                if r + 1 < rows:
                    arcs += [(u, u + cols, weight()), (u + cols, u, weight())]
        return Graph(rows * cols, arcs), 0
    if family == "diamond":
        return Graph(4, [(0, 1, weight()), (0, 2, weight()), (1, 3, weight()), (2, 3, weight())]), 0
    raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


# -- validation -------------------------------------------------------------------


def shortest_distances(g: Graph, s: int) -> list[int | None]:
    """Plain heapq Dijkstra; ``None`` marks unreachable vertices."""
    dist: list[int | None] = [None] * g.num_vertices
    dist[s] = 0
    adj = g.adjacency
    pq = [(0, s)]
    done = [False] * g.num_vertices
    while pq:
        d, u = heapq.heappop(pq)
        if done[u]:
            continue
        done[u] = True
        for v, w, _ in adj[u]:
            nd = d + w
            dv = dist[v]
            if dv is None or nd < dv:
                dist[v] = nd
                heapq.heappush(pq, (nd, v))
    return dist


@dataclass
class ValidationReport:
    unreachable: list[int] = field(default_factory=list)
    duplicate_distances: list[list[int]] = field(default_factory=list)

    @property
    def reachable(self) -> bool:
        return not self.unreachable

    @property
    def distinct(self) -> bool:
        return not self.duplicate_distances

    @property
    def ok(self) -> bool:
        return self.reachable and self.distinct


def validate(g: Graph, s: int) -> ValidationReport:
    """Report unreachable vertices and groups of equidistant vertices."""
    if not 0 <= s < g.num_vertices:
        raise UsageError(f"source {s} outside 0..{g.num_vertices - 1}")
    dist = shortest_distances(g, s)
    report = ValidationReport()
    groups: dict[int, list[int]] = {}
    for v, d in enumerate(dist):
        if d is None:
            report.unreachable.append(v)
        else:
            groups.setdefault(d, []).append(v)
    report.duplicate_distances = [vs for _, vs in sorted(groups.items()) if len(vs) > 1]
    return report


def hop_levels(g: Graph, s: int) -> list[int | None]:
    """BFS hop distance per vertex (``None`` if unreachable)."""
    level: list[int | None] = [None] * g.num_vertices
    level[s] = 0
    frontier = [s]
    adj = g.adjacency
    while frontier:
        nxt = []
        for u in frontier:
            lu = level[u] + 1
            for v, _, _ in adj[u]:
                if level[v] is None:
                    level[v] = lu
                    nxt.append(v)
        frontier = nxt
    return level

