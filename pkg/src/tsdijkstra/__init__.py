"""Timestamp-optimal heaps and universally optimal Dijkstra."""
from .errors import (
    CapacityError, ContractError, EmptyHeapError, InvariantViolation, ParseError,
    SSSPError, UnreachableError, UsageError,
)
from .fib_heap import FibonacciHeap, HeapStats
from .binary_heap import BinaryHeap
from .ts_heap import TimestampHeap
from .graph import Graph, from_dimacs, gen_family, to_dimacs, validate
from .dijkstra import DijkstraTrace, interval_budget, run, run_reference

__version__ = "0.1.0"
