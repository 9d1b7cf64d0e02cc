"""Timestamp-optimal heap.

A global clock ``t`` ticks after every push.  Elements live in Fibonacci
heaps tagged with half-open intervals of push times.  Bucket ``j`` holds one
or two such heaps whose intervals have length ``2**j``; lower buckets hold
younger intervals, so together the intervals tile ``[0, t)`` right to left
like the digits of a redundant binary counter.  Pushing adds a unit interval
to bucket 0 and carries whenever a bucket holds three heaps.

``minima[j]`` is the smallest key stored in bucket ``j`` and bit ``j`` of
``bits`` is set iff ``minima[j]`` is no larger than every minimum above it,
so the lowest set bit names the bucket holding the global minimum.

Costs: push and decrease-key are amortized O(1); popping an element pushed
at time ``a`` and popped at time ``b`` is amortized O(1 + log(b - a)),
because it sits in a bucket of index at most ``log2(b - a)``.
"""
from __future__ import annotations

import math
from typing import Any, Hashable, NamedTuple

from .errors import EmptyHeapError, InvariantViolation, UsageError
from .fib_heap import FibonacciHeap, HeapStats, Node

INF_KEY = (math.inf, math.inf)
MAX_BUCKETS = 63


class IntervalHeap:
    __slots__ = ("lo", "hi", "heap")

    def __init__(self, lo: int, hi: int, heap: FibonacciHeap) -> None:
        self.lo = lo
        self.hi = hi
        self.heap = heap

    def __repr__(self) -> str:
        return f"IntervalHeap([{self.lo}, {self.hi}), size={self.heap.size})"


class TsHandle:
    __slots__ = ("element", "pushed_at", "node")

    def __init__(self, element: Hashable, pushed_at: int, node: Node) -> None:
        self.element = element
        self.pushed_at = pushed_at
        self.node = node

    @property
    def alive(self) -> bool:
        return self.node.alive

    @property
    def key(self) -> Any:
        return self.node.key

    def __repr__(self) -> str:
        return f"TsHandle({self.element!r}, pushed_at={self.pushed_at}, alive={self.alive})"


class Popped(NamedTuple):
    element: Hashable
    key: Any
    pushed_at: int
    popped_at: int


def _lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class TimestampHeap:
    def __init__(self, stats: HeapStats | None = None) -> None:
        self.t = 0
        self.buckets: list[list[IntervalHeap]] = []
        self.minima: list[tuple] = []
        self.bits = 0
        self.stats = stats if stats is not None else HeapStats()
        self.wide_locates = 0
        self._alive: dict[Hashable, TsHandle] = {}

    def __len__(self) -> int:
        return len(self._alive)

    def __bool__(self) -> bool:
        return bool(self._alive)

    def __contains__(self, element: Hashable) -> bool:
        return element in self._alive

    def __repr__(self) -> str:
        return f"TimestampHeap(t={self.t}, size={len(self)}, buckets={len(self.buckets)})"

    def handle(self, element: Hashable) -> TsHandle:
        try:
            return self._alive[element]
        except KeyError:
            raise UsageError(f"element {element!r} is not in the heap") from None

    # -- suffix-minima bits ---------------------------------------------------

    def _refresh_bit(self, j: int) -> None:
        rest = self.bits >> (j + 1)
        if not rest:
            self.bits |= 1 << j
            return
        # k = next set bit above j
        k = j + (rest & -rest).bit_length()
        self.stats.comparisons += 1
        if self.minima[j] <= self.minima[k]:
            self.bits |= 1 << j
        else:
            self.bits &= ~(1 << j)

    def _bucket_min(self, j: int) -> tuple:
        best = INF_KEY
        for ih in self.buckets[j]:
            m = ih.heap.min
            if m is not None:
                if best is INF_KEY:
                    best = m._k
                else:
                    self.stats.comparisons += 1
                    if m._k < best:
                        best = m._k
        return best

    # -- operations -----------------------------------------------------------

    def push(self, element: Hashable, key: Any) -> TsHandle:
        if element in self._alive:
            raise UsageError(f"element {element!r} is already in the heap")
        stats = self.stats
        a = self.t
        self.t = a + 1
        # singleton heap built in place; same cost as FibonacciHeap.push
        fh = FibonacciHeap(stats, check_ids=False)
        fh.min = node = Node((key, element))
        fh.size = 1
        stats.steps += 1
        buckets, minima = self.buckets, self.minima
        if not buckets:
            buckets.append([])
            minima.append(INF_KEY)
        b0 = buckets[0]
        b0.append(IntervalHeap(a, a + 1, fh))
        stats.comparisons += 1
        k0 = node._k
        if k0 < minima[0]:
            minima[0] = k0
        else:
            k0 = minima[0]
        bits = self.bits
        rest = bits >> 1
        if not rest:
            self.bits = bits | 1
        else:
            stats.comparisons += 1
            if k0 <= minima[(rest & -rest).bit_length()]:
                self.bits = bits | 1
            else:
                self.bits = bits & ~1
        self._alive[element] = h = TsHandle(element, a, node)
        if len(b0) < 3:
            return h
        j = 0
        while len(buckets[j]) == 3:
            older, newer = buckets[j][0], buckets[j][1]
            del buckets[j][:2]
            merged = IntervalHeap(older.lo, newer.hi, older.heap.meld(newer.heap))
            if j + 1 == len(buckets):
                if len(buckets) >= MAX_BUCKETS:
                    raise OverflowError("timestamp clock exceeds the 63-bucket mask")
                buckets.append([])
                minima.append(INF_KEY)
            buckets[j + 1].append(merged)
            stats.steps += 1
            minima[j] = self._bucket_min(j)
            m = merged.heap.min
            if m is not None:
                stats.comparisons += 1
                if m._k < minima[j + 1]:
                    minima[j + 1] = m._k
            bits = self.bits
            for level in (j + 1, j):
                rest = bits >> (level + 1)
                if not rest:
                    bits |= 1 << level
                    continue
                stats.comparisons += 1
                if minima[level] <= minima[level + (rest & -rest).bit_length()]:
                    bits |= 1 << level
                else:
                    bits &= ~(1 << level)
            self.bits = bits
            j += 1
        return h

    def locate(self, handle: TsHandle) -> tuple[int, IntervalHeap]:
        """Return ``(bucket index, interval heap)`` holding ``handle``.

        Only a constant window of buckets around ``floor(log2(t - a))`` is
        inspected.
        """
        if not handle.node.alive or self._alive.get(handle.element) is not handle:
            raise UsageError(f"{handle!r} is not alive in this heap")
        a = handle.pushed_at
        guess = (self.t - a).bit_length() - 1
        top = len(self.buckets) - 1
        for j in range(max(0, guess - 2), min(guess + 1, top) + 1):
            for ih in self.buckets[j]:
                if ih.lo <= a < ih.hi:
                    if j < guess - 1:
                        self.wide_locates += 1
                    return j, ih
        raise InvariantViolation("locate", f"push time {a} not found near bucket {guess}")

    def decrease_key(self, handle: TsHandle, key: Any) -> None:
        # fast path: the element sits in bucket floor(log2(t - a)) or one below
        a = handle.pushed_at
        guess = (self.t - a).bit_length() - 1
        for j in (guess, guess - 1):
            if 0 <= j < len(self.buckets):
                for ih in self.buckets[j]:
                    if ih.lo <= a < ih.hi:
                        break
                else:
                    continue
                break
        else:
            j, ih = None, None
        if ih is None or not handle.node.alive or self._alive.get(handle.element) is not handle:
            j, ih = self.locate(handle)
        node = handle.node
        ih.heap.decrease_key(node, key)
        stats = self.stats
        minima = self.minima
        stats.comparisons += 1
        if not node._k < minima[j]:
            return
        minima[j] = node._k
        self._refresh_bit(j)
        if not (self.bits >> j) & 1:
            return
        below = self.bits & ((1 << j) - 1)
        while below:
            jj = below.bit_length() - 1
            stats.comparisons += 1
            if minima[j] < minima[jj]:
                self.bits &= ~(1 << jj)
                below &= ~(1 << jj)
                stats.steps += 1
            else:
                break

    def _min_heap_of(self, j: int) -> IntervalHeap:
        best = None
        for ih in self.buckets[j]:
            m = ih.heap.min
            if m is not None:
                if best is None:
                    best = ih
                else:
                    self.stats.comparisons += 1
                    if m._k < best.heap.min._k:
                        best = ih
        return best

    def peek(self) -> tuple[Hashable, Any]:
        if not self._alive:
            raise EmptyHeapError("peek on an empty heap")
        k = self.minima[_lowest_bit(self.bits)]
        return k[1], k[0]

    def pop(self) -> Popped:
        if not self._alive:
            raise EmptyHeapError("pop from an empty heap")
        stats = self.stats
        j = _lowest_bit(self.bits)
        ih = self._min_heap_of(j)
        element, key = ih.heap.pop()
        h = self._alive.pop(element)
        minima = self.minima
        minima[j] = self._bucket_min(j)
        # _refresh_bit for every level j..0, inlined: this loop is the pop cost
        bits = self.bits
        for level in range(j, -1, -1):
            rest = bits >> (level + 1)
            if not rest:
                bits |= 1 << level
                continue
            stats.comparisons += 1
            if minima[level] <= minima[level + (rest & -rest).bit_length()]:
                bits |= 1 << level
            else:
                bits &= ~(1 << level)
        self.bits = bits
        stats.steps += j + 1
        return Popped(element, key, h.pushed_at, self.t)

    # -- introspection ----------------------------------------------------------

    def layout(self) -> list[list[tuple[int, int]]]:
        """Intervals per bucket, oldest first."""
        return [[(ih.lo, ih.hi) for ih in bucket] for bucket in self.buckets]

    def check_invariants(self) -> None:
        """Full-scan check of the bucket structure; raises InvariantViolation."""
        buckets = self.buckets
        if len(self.minima) != len(buckets):
            raise InvariantViolation("minima", "minima array length differs from bucket count")
        intervals = []
        seen: dict[Hashable, int] = {}
        for j, bucket in enumerate(buckets):
            if len(bucket) > 2:
                raise InvariantViolation("bucket-capacity", f"bucket {j} holds {len(bucket)} heaps")
            if not bucket and j < len(buckets) - 1:
                raise InvariantViolation("bucket-capacity", f"inner bucket {j} is empty")
            for ih in bucket:
                if ih.hi - ih.lo != 1 << j:
                    raise InvariantViolation(
                        "interval-size", f"bucket {j} has interval [{ih.lo}, {ih.hi})")
                ih.heap.check()
                for node in ih.heap.nodes():
                    e = node.element
                    h = self._alive.get(e)
                    if h is None or h.node is not node:
                        raise InvariantViolation("membership", f"stray node {node!r} in bucket {j}")
                    if not ih.lo <= h.pushed_at < ih.hi:
                        raise InvariantViolation(
                            "membership",
                            f"{e!r} pushed at {h.pushed_at} stored in [{ih.lo}, {ih.hi})")
                    seen[e] = j
                intervals.append((ih.lo, ih.hi))
            for a, b in zip(bucket, bucket[1:]):
                if a.hi != b.lo:
                    raise InvariantViolation("interval-order", f"bucket {j} not oldest-first")
            if j > 0 and buckets[j - 1] and bucket:
                if min(ih.lo for ih in buckets[j - 1]) < max(ih.hi for ih in bucket):
                    raise InvariantViolation(
                        "interval-order", f"bucket {j - 1} not to the right of bucket {j}")
        if len(seen) != len(self._alive):
            missing = set(self._alive) - set(seen)
            raise InvariantViolation("membership", f"alive elements not stored: {sorted(missing)!r}")
        intervals.sort()
        pos = 0
        for lo, hi in intervals:
            if lo != pos:
                raise InvariantViolation("partition", f"gap or overlap at {pos} (next interval starts {lo})")
            pos = hi
        if pos != self.t:
            raise InvariantViolation("partition", f"intervals cover [0, {pos}) but t = {self.t}")
        for j, bucket in enumerate(buckets):
            keys = [ih.heap.min._k for ih in bucket if ih.heap.min is not None]
            want = min(keys) if keys else INF_KEY
            if self.minima[j] != want:
                raise InvariantViolation("minima", f"bucket {j}: stored {self.minima[j]!r}, actual {want!r}")
        for j in range(len(buckets)):
            want = all(self.minima[j] <= self.minima[k] for k in range(j + 1, len(buckets)))
            if bool((self.bits >> j) & 1) != want:
                raise InvariantViolation("suffix-min-bits", f"bit {j} should be {int(want)}")
        if self.bits >> len(buckets):
            raise InvariantViolation("suffix-min-bits", "bits set beyond the last bucket")
