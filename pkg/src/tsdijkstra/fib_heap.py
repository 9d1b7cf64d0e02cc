"""Fibonacci heap with constant-time meld and instrumented structural steps.

Keys are ordered lexicographically as ``(key, element)`` so ties break on
the element id and every run is reproducible.  Every link, cut and
root-list splice bumps ``stats.steps``; every key comparison bumps
``stats.comparisons``.  Several heaps can share one :class:`HeapStats`
object, which is how the timestamp heap aggregates cost over its buckets.
"""
from __future__ import annotations

from typing import Any, Hashable, Iterator

from .errors import ContractError, EmptyHeapError, InvariantViolation, UsageError


class HeapStats:
    __slots__ = ("steps", "comparisons")

    def __init__(self) -> None:
        self.steps = 0
        self.comparisons = 0

    def __repr__(self) -> str:
        return f"HeapStats(steps={self.steps}, comparisons={self.comparisons})"


class Node:
    """Handle for one pushed element.

    A node stays the element's handle until it is popped; melding moves
    whole root lists and never copies nodes, so handles survive melds.
    """

    __slots__ = ("_k", "parent", "child", "left", "right", "degree", "mark", "alive")

    def __init__(self, k: tuple) -> None:
        self._k = k
        self.parent: Node | None = None
        self.child: Node | None = None
        self.left: Node = self
        self.right: Node = self
        self.degree = 0
        self.mark = False
        self.alive = True

    @property
    def key(self) -> Any:
        return self._k[0]

    @property
    def element(self) -> Hashable:
        return self._k[1]

    def __repr__(self) -> str:
        state = "" if self.alive else ", dead"
        return f"Node({self._k[1]!r}, key={self._k[0]!r}{state})"


def _ring(start: Node) -> list[Node]:
    out = [start]
    node = start.right
    while node is not start:
        out.append(node)
        node = node.right
    return out


class FibonacciHeap:
    """Meldable min-heap: O(1) push/meld/peek, amortized O(1) decrease-key,
    amortized O(log N) pop.

    ``check_ids`` keeps a directory of alive element ids to reject
    duplicates.  Melding two checked heaps merges the directories (linear
    in the smaller one); heaps owned by a timestamp heap run unchecked so
    meld stays constant time.
    """

    __slots__ = ("min", "size", "stats", "_alive")

    def __init__(self, stats: HeapStats | None = None, check_ids: bool = True) -> None:
        self.min: Node | None = None
        self.size = 0
        self.stats = stats if stats is not None else HeapStats()
        self._alive: dict | None = {} if check_ids else None

    def __len__(self) -> int:
        return self.size

    def __bool__(self) -> bool:
        return self.size > 0

    def __repr__(self) -> str:
        top = None if self.min is None else self.min._k
        return f"FibonacciHeap(size={self.size}, min={top!r})"

    # -- root list plumbing -------------------------------------------------

    def _add_root(self, node: Node) -> None:
        m = self.min
        node.left = m.left
        node.right = m
        m.left.right = node
        m.left = node
        self.stats.steps += 1

    # -- public operations --------------------------------------------------

    def push(self, element: Hashable, key: Any) -> Node:
        alive = self._alive
        if alive is not None:
            if element in alive:
                raise UsageError(f"element {element!r} is already in the heap")
        node = Node((key, element))
        if alive is not None:
            alive[element] = node
        self.size += 1
        stats = self.stats
        m = self.min
        if m is None:
            self.min = node
            stats.steps += 1
            return node
        self._add_root(node)
        stats.comparisons += 1
        if node._k < m._k:
            self.min = node
        return node

    def peek(self) -> tuple[Hashable, Any]:
        m = self.min
        if m is None:
            raise EmptyHeapError("peek on an empty heap")
        return m._k[1], m._k[0]

    def meld(self, other: FibonacciHeap) -> FibonacciHeap:
        """Absorb ``other`` into this heap and return this heap.

        ``other`` is left empty.  Both heaps should share their element-id
        space only if the ids are disjoint; checked heaps verify this.
        """
        if other is self:
            raise UsageError("cannot meld a heap with itself")
        if self._alive is not None and other._alive is not None:
            small, big = other._alive, self._alive
            if len(small) > len(big):
                small, big = big, small
            clash = next((e for e in small if e in big), None)
            if clash is not None:
                raise UsageError(f"element {clash!r} is present in both heaps")
            big.update(small)
            self._alive = big
        b = other.min
        if b is not None:
            a = self.min
            if a is None:
                self.min = b
            else:
                a_left = a.left
                b_left = b.left
                a_left.right = b
                b.left = a_left
                b_left.right = a
                a.left = b_left
                self.stats.steps += 1
                self.stats.comparisons += 1
                if b._k < a._k:
                    self.min = b
            self.size += other.size
        other.min = None
        other.size = 0
        other._alive = {} if other._alive is not None else None
        return self

    def decrease_key(self, node: Node, key: Any) -> None:
        if not node.alive:
            raise UsageError(f"{node!r} is not alive")
        k = (key, node._k[1])
        if k > node._k:
            raise ContractError(f"new key {key!r} exceeds current key {node._k[0]!r}")
        node._k = k
        stats = self.stats
        parent = node.parent
        if parent is not None:
            stats.comparisons += 1
            if k < parent._k:
                self._cut(node, parent)
                self._cascading_cut(parent)
        stats.comparisons += 1
        if k < self.min._k:
            self.min = node

    def pop(self) -> tuple[Hashable, Any]:
        z = self.min
        if z is None:
            raise EmptyHeapError("pop from an empty heap")
        stats = self.stats
        child = z.child
        if child is not None:
            for c in _ring(child):
                c.parent = None
                c.mark = False
                c.left = z.left
                c.right = z
                z.left.right = c
                z.left = c
                stats.steps += 1
            z.child = None
        stats.steps += 1
        if z.right is z:
            self.min = None
        else:
            start = z.right
            z.left.right = start
            start.left = z.left
            self._consolidate(start)
        z.left = z.right = z
        z.alive = False
        self.size -= 1
        if self._alive is not None:
            del self._alive[z._k[1]]
        return z._k[1], z._k[0]

    # -- internals ----------------------------------------------------------

    def _consolidate(self, start: Node) -> None:
        stats = self.stats
        roots = _ring(start)
        stats.steps += len(roots)
        # max degree <= log_phi(N) < 1.45 * log2(N) + 1
        table: list[Node | None] = [None] * (self.size.bit_length() * 3 // 2 + 3)
        for w in roots:
            x = w
            d = x.degree
            while table[d] is not None:
                y = table[d]
                stats.comparisons += 1
                if y._k < x._k:
                    x, y = y, x
                # _link(y, x), inlined
                y.left.right = y.right
                y.right.left = y.left
                y.parent = x
                c = x.child
                if c is None:
                    x.child = y
                    y.left = y.right = y
                else:
                    y.left = c.left
                    y.right = c
                    c.left.right = y
                    c.left = y
                x.degree = d + 1
                y.mark = False
                stats.steps += 1
                table[d] = None
                d += 1
            table[d] = x
        best = None
        for x in table:
            if x is not None:
                if best is None:
                    best = x
                else:
                    stats.comparisons += 1
                    if x._k < best._k:
                        best = x
        self.min = best

    def _cut(self, x: Node, y: Node) -> None:
        if x.right is x:
            y.child = None
        else:
            if y.child is x:
                y.child = x.right
            x.left.right = x.right
            x.right.left = x.left
        y.degree -= 1
        x.parent = None
        x.mark = False
        self._add_root(x)

    def _cascading_cut(self, y: Node) -> None:
        z = y.parent
        while z is not None:
            if not y.mark:
                y.mark = True
                return
            self._cut(y, z)
            y = z
            z = y.parent

    # -- introspection ------------------------------------------------------

    def nodes(self) -> Iterator[Node]:
        """Yield every alive node (roots first, then depth-first)."""
        if self.min is None:
            return
        stack = _ring(self.min)
        while stack:
            node = stack.pop()
            yield node
            if node.child is not None:
                stack.extend(_ring(node.child))

    def check(self) -> None:
        """Full-scan structural check; raises InvariantViolation."""
        if self.min is None:
            if self.size:
                raise InvariantViolation("size", f"empty root list but size={self.size}")
            return
        count = 0
        for node in self.nodes():
            count += 1
            if not node.alive:
                raise InvariantViolation("liveness", f"{node!r} reachable but dead")
            if node.parent is not None and node._k < node.parent._k:
                raise InvariantViolation("heap-order", f"{node!r} below {node.parent!r}")
            if node._k < self.min._k:
                raise InvariantViolation("min-handle", f"{node!r} smaller than min {self.min!r}")
            kids = 0 if node.child is None else len(_ring(node.child))
            if kids != node.degree:
                raise InvariantViolation("degree", f"{node!r} has {kids} children, degree {node.degree}")
        if self.min.parent is not None:
            raise InvariantViolation("min-handle", "min is not a root")
        if count != self.size:
            raise InvariantViolation("size", f"reachable={count} size={self.size}")
