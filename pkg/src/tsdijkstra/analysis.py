"""Exact small-instance oracles for the universal-optimality bounds.

A linearization of ``(G, s)`` is an ordering of ``V - {s}`` that some
positive weighting turns into the distance order.  Such orders are exactly
the ones where every vertex has an in-neighbour among ``{s}`` and the
vertices before it: Dijkstra can only push a vertex after popping an
in-neighbour, and conversely rank-difference weights on one witness arc per
vertex (with a large sentinel elsewhere) realise any such order.  The test
suite re-checks both directions instead of trusting this.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .bottleneck import compute_levels, forward_edge_counts
from .dijkstra import DijkstraTrace, sum_log_intervals
from .errors import CapacityError, UsageError
from .graph import Graph

EXACT_LIMIT = 20
# rational upper bound on log2(e) = 1.442695...
LOG2E_BOUND = Fraction(14427, 10000)


def _others(g: Graph, s: int) -> list[int]:
    return [v for v in range(g.num_vertices) if v != s]


def _check_perm(g: Graph, s: int, perm: Sequence[int]) -> None:
    if sorted(perm) != _others(g, s):
        raise UsageError("expected a permutation of the non-source vertices")


def is_linearization(g: Graph, s: int, perm: Sequence[int]) -> bool:
    _check_perm(g, s, perm)
    inn = g.in_neighbors()
    seen = {s}
    for v in perm:
        if not inn[v] & seen:
            return False
        seen.add(v)
    return True


def count_linearizations(g: Graph, s: int, limit: int = EXACT_LIMIT) -> int:
    """Exact number of linearizations by DP over vertex subsets.

    ``count(S)`` orders the vertex set ``S`` as a prefix: it sums
    ``count(S - {v})`` over every ``v`` in ``S`` with an in-neighbour in
    ``{s}`` or ``S - {v}``.
    """
    others = _others(g, s)
    n = len(others)
    if n > limit:
        raise CapacityError(f"exact count needs n <= {limit} (got {n}); sample instead")
    if n == 0:
        return 1
    bit = {v: i for i, v in enumerate(others)}
    inn = g.in_neighbors()
    in_mask = np.zeros(n, dtype=np.int64)
    from_src = np.zeros(n, dtype=bool)
    for v in others:
        for u in inn[v]:
            if u == s:
                from_src[bit[v]] = True
            else:
                in_mask[bit[v]] |= 1 << bit[u]
    full = 1 << n
    masks = np.arange(full, dtype=np.int64)
    popcount = np.zeros(full, dtype=np.int64)
    for i in range(n):
        popcount += (masks >> i) & 1
    # 20! < 2**63, so int64 cannot overflow below the limit
    count = np.zeros(full, dtype=np.int64)
    count[0] = 1
    layers = [masks[popcount == k] for k in range(n + 1)]
    for k in range(1, n + 1):
        layer = layers[k]
        acc = np.zeros(len(layer), dtype=np.int64)
        for i in range(n):
            has = (layer >> i) & 1 == 1
            rest = layer ^ (1 << i)
            ok = has & (from_src[i] | ((rest & in_mask[i]) != 0))
            acc += np.where(ok, count[np.where(ok, rest, 0)], 0)
        count[layer] = acc
    return int(count[full - 1])


def weights_for_order(g: Graph, s: int, perm: Sequence[int]) -> Graph:
    """Reweight ``g`` so that its distance order from ``s`` is ``perm``.

    Each vertex keeps one witness in-arc from ``s`` or an earlier vertex,
    weighted by the rank difference; all other arcs get ``n + 1``.
    """
    if not is_linearization(g, s, perm):
        raise UsageError("order is not a linearization of (g, s)")
    rank = {s: 0}
    rank.update((v, i + 1) for i, v in enumerate(perm))
    chosen: dict[int, int] = {}
    for ei, (u, v, _) in enumerate(g.edges()):
        if v != s and v not in chosen and rank[u] < rank[v]:
            chosen[v] = ei
    sentinel = g.num_vertices
    weights = [sentinel] * g.m
    for v, ei in chosen.items():
        u = g.edge(ei)[0]
        weights[ei] = rank[v] - rank[u]
    return g.with_weights(weights)


def realize_linearization(g: Graph, trace: DijkstraTrace, r: Mapping[int, float] | Sequence[float]) -> Graph:
    """Weights whose distance order is ``V - {s}`` sorted by ``r``.

    ``r[v]`` must lie in ``[pushed_at[v], popped_at[v]]`` and the values must
    be distinct.  Exploration-tree arcs get ``rank(r_child) - rank(r_parent)``
    and every other arc the sentinel ``n + 1``, so each vertex's distance
    equals its rank.
    """
    s = trace.source
    others = _others(g, s)
    vals = {v: r[v] for v in others}
    for v, x in vals.items():
        if not trace.pushed_at[v] <= x <= trace.popped_at[v]:
            raise UsageError(f"r[{v}] = {x} outside [{trace.pushed_at[v]}, {trace.popped_at[v]}]")
    if len(set(vals.values())) != len(vals):
        raise UsageError("r values must be distinct")
    rank = {s: 0}
    rank.update((v, i + 1) for i, v in enumerate(sorted(others, key=vals.__getitem__)))
    weights = [g.num_vertices] * g.m
    for v in others:
        ei = trace.parent_edge[v]
        u = trace.parent[v]
        w = rank[v] - rank[u]
        if w < 1:
            raise UsageError(f"tree arc ({u}, {v}) would get non-positive weight {w}")
        weights[ei] = w
    return g.with_weights(weights)


def interval_bound_holds(intervals: Sequence[tuple[int, int]], ell: int,
                         const: Fraction = LOG2E_BOUND) -> bool:
    """Exact test of ``sum log2(b - a) <= log2(ell) + const * n``.

    Raised to the power ``const.denominator`` both sides are integers.
    """
    n = len(intervals)
    prod = math.prod(b - a for a, b in intervals)
    den = const.denominator
    return prod ** den <= ell ** den << (const.numerator * n)


@dataclass
class BoundReport:
    n: int
    m: int
    d: int
    ell: int | None
    sum_log: float
    budget: float
    mf_paper_literal: int
    mf_tree_excluding: int
    comparisons: int
    level_product: int
    checks: dict[str, bool] = field(default_factory=dict)
    slack: dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def ratio(self) -> float | None:
        """``sum log2(b - a) / max(1, log2 ell)`` for trend inspection."""
        if self.ell is None:
            return None
        return self.sum_log / max(1.0, math.log2(self.ell))

    def to_dict(self) -> dict:
        out = asdict(self)
        out["ratio"] = self.ratio
        out["ok"] = self.ok
        return out

    CSV_FIELDS = ("n", "m", "d", "ell", "sum_log", "budget", "mf_paper_literal",
                  "mf_tree_excluding", "comparisons", "level_product", "ratio", "ok")

    def csv_row(self) -> list:
        d = self.to_dict()
        return [d[k] for k in self.CSV_FIELDS]

    def lines(self) -> list[str]:
        out = [f"n={self.n} m={self.m} d={self.d} ell={self.ell}"]
        lb = 2 ** (self.n - self.d) if self.n >= self.d else 1
        ell = "?" if self.ell is None else self.ell
        tag = "PASS" if self.checks.get("level_bound", True) else "FAIL"
        out.append(f"{tag} level bound: {lb} <= {self.level_product} <= {ell} "
                   "(2^(n-d) <= prod |L_i|! <= ell)")
        if "interval_bound" in self.checks:
            tag = "PASS" if self.checks["interval_bound"] else "FAIL"
            out.append(f"{tag} interval bound: sum log2(b-a) = {self.sum_log:.4f} <= "
                       f"log2 ell + n log2 e (slack {self.slack['interval_bound']:.4f})")
        if self.ratio is not None:
            out.append(f"info interval ratio: sum log2(b-a) / max(1, log2 ell) = {self.ratio:.4f}")
        return out


def check_bounds(g: Graph, s: int, trace: DijkstraTrace, limit: int = EXACT_LIMIT) -> BoundReport:
    if trace.source != s or len(trace.distance) != g.num_vertices:
        raise UsageError("trace does not belong to this graph and source")
    levels = compute_levels(g, s)
    n, d = g.num_vertices - 1, levels.depth
    ell = count_linearizations(g, s, limit) if n <= limit else None
    sum_log = sum_log_intervals(trace)
    mf = forward_edge_counts(g, s, trace)
    level_product = math.prod(math.factorial(len(lv)) for lv in levels.sets)
    report = BoundReport(
        n=n, m=g.m, d=d, ell=ell, sum_log=sum_log, budget=n + sum_log,
        mf_paper_literal=mf["paper-literal"], mf_tree_excluding=mf["tree-excluding"],
        comparisons=trace.counters.comparisons, level_product=level_product)
    lower = n < d or 2 ** (n - d) <= level_product
    report.checks["level_bound"] = lower and (ell is None or level_product <= ell)
    report.slack["level_bound"] = (math.log2(level_product) - max(0, n - d)
                                   if ell is None else math.log2(ell) - max(0, n - d))
    if ell is not None:
        report.checks["interval_bound"] = interval_bound_holds(trace.intervals(), ell)
        report.slack["interval_bound"] = math.log2(ell) + n * math.log2(math.e) - sum_log
    return report
