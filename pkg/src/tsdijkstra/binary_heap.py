"""Indexed binary heap with decrease-key, instrumented like the other heaps.

Handles are the element ids themselves.  Swaps count as structural steps.
"""
from __future__ import annotations

from typing import Any, Hashable

from .errors import ContractError, EmptyHeapError, UsageError
from .fib_heap import HeapStats


class BinaryHeap:
    __slots__ = ("_heap", "_pos", "stats")

    def __init__(self, stats: HeapStats | None = None) -> None:
        self._heap: list[tuple] = []
        self._pos: dict[Hashable, int] = {}
        self.stats = stats if stats is not None else HeapStats()

    def __len__(self) -> int:
        return len(self._heap)

    def __bool__(self) -> bool:
        return bool(self._heap)

    def push(self, element: Hashable, key: Any) -> Hashable:
        if element in self._pos:
            raise UsageError(f"element {element!r} is already in the heap")
        self._heap.append((key, element))
        self._pos[element] = len(self._heap) - 1
        self._sift_up(len(self._heap) - 1)
        return element

    def peek(self) -> tuple[Hashable, Any]:
        if not self._heap:
            raise EmptyHeapError("peek on an empty heap")
        key, element = self._heap[0]
        return element, key

    def pop(self) -> tuple[Hashable, Any]:
        heap = self._heap
        if not heap:
            raise EmptyHeapError("pop from an empty heap")
        key, element = heap[0]
        last = heap.pop()
        del self._pos[element]
        if heap:
            heap[0] = last
            self._pos[last[1]] = 0
            self._sift_down(0)
        return element, key

    def decrease_key(self, element: Hashable, key: Any) -> None:
        i = self._pos.get(element)
        if i is None:
            raise UsageError(f"element {element!r} is not in the heap")
        k = (key, element)
        if k > self._heap[i]:
            raise ContractError(f"new key {key!r} exceeds current key {self._heap[i][0]!r}")
        self._heap[i] = k
        self._sift_up(i)

    def _sift_up(self, i: int) -> None:
        heap, pos, stats = self._heap, self._pos, self.stats
        item = heap[i]
        while i > 0:
            p = (i - 1) >> 1
            stats.comparisons += 1
            if item < heap[p]:
                heap[i] = heap[p]
                pos[heap[i][1]] = i
                stats.steps += 1
                i = p
            else:
                break
        heap[i] = item
        pos[item[1]] = i

    def _sift_down(self, i: int) -> None:
        heap, pos, stats = self._heap, self._pos, self.stats
        n = len(heap)
        item = heap[i]
        while True:
            c = 2 * i + 1
            if c >= n:
                break
            if c + 1 < n:
                stats.comparisons += 1
                if heap[c + 1] < heap[c]:
                    c += 1
            stats.comparisons += 1
            if heap[c] < item:
                heap[i] = heap[c]
                pos[heap[i][1]] = i
                stats.steps += 1
                i = c
            else:
                break
        heap[i] = item
        pos[item[1]] = i
