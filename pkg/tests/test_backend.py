from __future__ import annotations

import os
import subprocess
import sys

import pytest

from helpers import small_suite
from tsdijkstra import _backend, gen_family, run
from tsdijkstra.dijkstra import HEAP_KINDS
from tsdijkstra.errors import UsageError

compiled = pytest.mark.skipif("compiled" not in _backend.available(),
                              reason="Cython extension not built")

FIELDS = ("order", "distance", "pushed_at", "popped_at", "parent", "parent_edge", "counters")


def same_trace(a, b) -> bool:
    return all(getattr(a, f) == getattr(b, f) for f in FIELDS)


@compiled
@pytest.mark.parametrize("heap", HEAP_KINDS)
def test_parity_random_suite(heap):
    for g, s in small_suite(150, seed=99, max_n=60, weights=(1, 30)):
        assert same_trace(run(g, s, heap, backend="python"), run(g, s, heap, backend="compiled"))


@compiled
@pytest.mark.parametrize("family, params", [
    ("path", {"n": 3000}), ("star", {"n": 2000}), ("random", {"n": 2000, "m": 12000}),
    ("lollipop", {"p": 500, "q": 300}), ("grid", {"rows": 30, "cols": 40}),
])
@pytest.mark.parametrize("heap", HEAP_KINDS)
def test_parity_families(family, params, heap):
    g, s = gen_family(family, seed=4, **params)
    a = run(g, s, heap, backend="python")
    b = run(g, s, heap, backend="compiled")
    assert same_trace(a, b)
    assert (a.backend, b.backend) == ("python", "compiled")


def test_resolve():
    assert _backend.resolve("python") is None
    with pytest.raises(UsageError):
        _backend.resolve("fortran")
    assert _backend.DEFAULT in _backend.available()


def _default_backend(env_value: str) -> subprocess.CompletedProcess:
    env = dict(os.environ, SSSP_BACKEND=env_value)
    code = "from tsdijkstra import _backend; print(_backend.DEFAULT)"
    return subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)


def test_env_selects_python():
    out = _default_backend("python")
    assert out.returncode == 0 and out.stdout.strip() == "python"


def test_env_rejects_unknown():
    out = _default_backend("gpu")
    assert out.returncode != 0 and "SSSP_BACKEND" in out.stderr


@compiled
def test_env_compiled():
    out = _default_backend("compiled")
    assert out.stdout.strip() == "compiled"
