"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: usage/parse problems exit with 2,
input-semantics problems (unreachable vertices) with 3 and internal
invariant violations with 4.
"""
from __future__ import annotations


class SSSPError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(SSSPError, ValueError):
    """A caller broke an operation's precondition."""


class ContractError(UsageError):
    """A key update would violate the heap contract (e.g. increase-key)."""


class EmptyHeapError(SSSPError, IndexError):
    """Pop or peek on a heap with no alive elements."""


class ParseError(UsageError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class UnreachableError(SSSPError, ValueError):
    def __init__(self, vertex: int, message: str | None = None):
        self.vertex = vertex
        super().__init__(message or f"vertex {vertex} is not reachable from the source")


class CapacityError(SSSPError, ValueError):
    """Exact computation requested on an instance that is too large."""


class InvariantViolation(SSSPError, AssertionError):
    def __init__(self, clause: str, detail: str = ""):
        self.clause = clause
        super().__init__(f"[{clause}] {detail}" if detail else f"[{clause}]")
