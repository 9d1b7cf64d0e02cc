"""Independent oracles and graph suites shared by the tests."""
from __future__ import annotations

import itertools
import random

from tsdijkstra.graph import Graph, gen_family


class ListPQ:
    """Linear-scan priority queue: every pop rescans all alive entries."""

    def __init__(self) -> None:
        self.keys: dict = {}

    def __len__(self) -> int:
        return len(self.keys)

    def push(self, element, key) -> None:
        assert element not in self.keys
        self.keys[element] = key

    def decrease_key(self, element, key) -> None:
        assert key <= self.keys[element]
        self.keys[element] = key

    def pop(self):
        k, e = min(zip(self.keys.values(), self.keys.keys()))
        del self.keys[e]
        return e, k


def random_ops(rng: random.Random, count: int, mix=(0.35, 0.3, 0.35), key_range: int = 10**6):
    """Operation script ``[("push", e, k) | ("dec", e, k) | ("pop",)]``.

    Decrease targets and new keys are resolved against a shadow copy so the
    script is valid for any correct heap.
    """
    alive: dict[int, int] = {}
    ids: list[int] = []
    pos: dict[int, int] = {}
    ops = []
    next_id = 0
    for _ in range(count):
        x = rng.random()
        if not alive or x < mix[0]:
            k = rng.randrange(key_range)
            ops.append(("push", next_id, k))
            alive[next_id] = k
            pos[next_id] = len(ids)
            ids.append(next_id)
            next_id += 1
        elif x < mix[0] + mix[1]:
            e = ids[rng.randrange(len(ids))]
            k = rng.randint(max(0, alive[e] - key_range // 10), alive[e])
            ops.append(("dec", e, k))
            alive[e] = k
        else:
            ops.append(("pop",))
            _, best = min(zip(alive.values(), alive.keys()))
            del alive[best]
            last = ids.pop()
            if last != best:
                ids[pos[best]] = last
                pos[last] = pos[best]
            del pos[best]
    return ops


def replay(heap, ops, after=None) -> list:
    """Apply ``ops`` to ``heap``; returns the (element, key) pop sequence."""
    handles = {}
    out = []
    for op in ops:
        if op[0] == "push":
            handles[op[1]] = heap.push(op[1], op[2])
        elif op[0] == "dec":
            h = handles[op[1]]
            heap.decrease_key(op[1] if isinstance(heap, ListPQ) else h, op[2])
        else:
            out.append(tuple(heap.pop()[:2]))
        if after is not None:
            after(heap)
    return out


def brute_force_linearizations(g: Graph, s: int) -> list[tuple[int, ...]]:
    """Enumerate permutations, keeping those where each vertex follows one
    of its in-neighbours (or the source)."""
    preds = [set() for _ in range(g.num_vertices)]
    for u, v, _ in g.edges():
        preds[v].add(u)
    others = [v for v in range(g.num_vertices) if v != s]
    found = []
    for perm in itertools.permutations(others):
        placed = {s}
        ok = True
        for v in perm:
            if not preds[v] & placed:
                ok = False
                break
            placed.add(v)
        if ok:
            found.append(perm)
    return found


def small_suite(count: int, seed: int, max_n: int = 10, weights=(1, 50)) -> list[tuple[Graph, int]]:
    """Random reachable digraphs with ``n`` (non-source vertices) in 1..max_n."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(1, max_n)
        m = rng.randint(n, min(n * (n + 1), 4 * n))
        out.append(gen_family("random", n=n, m=m, seed=rng.getrandbits(32), weights=weights))
    return out


ACCEPTANCE_LOG: list[str] = []


def report(number: int, ok: bool, detail: str) -> bool:
    """Print and remember one acceptance line; returns ``ok``."""
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    print(line)
    ACCEPTANCE_LOG.append(line)
    return ok
