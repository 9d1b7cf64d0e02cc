from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import pytest

from helpers import brute_force_linearizations, small_suite
from tsdijkstra import Graph, gen_family, run, run_reference
from tsdijkstra.analysis import (LOG2E_BOUND, BoundReport, check_bounds, count_linearizations,
                                 interval_bound_holds, is_linearization, realize_linearization,
                                 weights_for_order)
from tsdijkstra.errors import CapacityError, UsageError

DIAMOND = Graph(4, [(0, 1, 3), (0, 2, 5), (1, 3, 4), (2, 3, 1)])
EXAMPLE = Graph(3, [(0, 1, 1), (0, 2, 5), (1, 2, 1)])


def test_is_linearization_examples():
    g, s = gen_family("path", n=2)
    assert is_linearization(g, s, [1, 2])
    assert not is_linearization(g, s, [2, 1])
    g, s = gen_family("star", n=3)
    assert all(is_linearization(g, s, p) for p in itertools.permutations([1, 2, 3]))
    good = [p for p in itertools.permutations([1, 2, 3]) if is_linearization(DIAMOND, 0, p)]
    assert len(good) == 4 and all(p[0] != 3 for p in good)
    with pytest.raises(UsageError):
        is_linearization(DIAMOND, 0, [1, 2])


def test_count_examples():
    for k in (1, 5, 12):
        assert count_linearizations(*gen_family("path", n=k)) == 1
    for k in (1, 3, 6):
        assert count_linearizations(*gen_family("star", n=k)) == math.factorial(k)
    assert count_linearizations(DIAMOND, 0) == 4
    assert count_linearizations(Graph(1), 0) == 1


def test_count_capacity():
    g, s = gen_family("star", n=21)
    with pytest.raises(CapacityError):
        count_linearizations(g, s)
    assert count_linearizations(*gen_family("star", n=20)) == math.factorial(20)


def test_dp_matches_enumeration_up_to_7():
    for g, s in small_suite(150, seed=77, max_n=7):
        assert count_linearizations(g, s) == len(brute_force_linearizations(g, s))


def test_characterization_sound_and_complete():
    rng = random.Random(12)
    for g, s in small_suite(25, seed=3, max_n=5):
        accepted = set(brute_force_linearizations(g, s))
        others = [v for v in range(g.num_vertices) if v != s]
        for perm in itertools.permutations(others):
            if perm in accepted:
                w = weights_for_order(g, s, perm)
                assert tuple(run_reference(w, s)[1][1:]) == perm
        # rejected orders never show up under random weightings
        for _ in range(1000 // max(1, len(accepted))):
            ws = [rng.randint(1, 1000) for _ in range(g.m)]
            order = tuple(run_reference(g.with_weights(ws), s)[1][1:])
            assert order in accepted


def test_weights_for_order_rejects_non_linearization():
    g, s = gen_family("path", n=2)
    with pytest.raises(UsageError):
        weights_for_order(g, s, [2, 1])


def test_realize_identity_on_unit_intervals():
    g, s = gen_family("path", n=6, seed=2)
    tr = run(g, s)
    r = {v: tr.pushed_at[v] + 0.5 for v in range(1, 7)}
    w = realize_linearization(g, tr, r)
    assert run_reference(w, s)[1] == tr.order


def test_realize_example_reverses_order():
    tr = run(EXAMPLE, 0)
    assert tr.intervals() == [(1, 3), (2, 3)]
    w = realize_linearization(EXAMPLE, tr, {1: 2.5, 2: 2.1})
    assert run_reference(w, 0)[1] == [0, 2, 1]
    # ranks b=1, a=2: tree arcs s->a = 2, s->b = 1; a->b gets the sentinel n + 1
    assert [x for _, _, x in w.edges()] == [2, 1, 3]


def test_realize_errors():
    tr = run(EXAMPLE, 0)
    with pytest.raises(UsageError):
        realize_linearization(EXAMPLE, tr, {1: 0.5, 2: 2.1})
    with pytest.raises(UsageError):
        realize_linearization(EXAMPLE, tr, {1: 2.5, 2: 2.5})


def sample_r(tr, rng):
    while True:
        r = {v: rng.uniform(a, b) for v, (a, b) in enumerate(zip(tr.pushed_at, tr.popped_at))
             if v != tr.source}
        if len(set(r.values())) == len(r):
            return r


def test_realize_random_samples():
    rng = random.Random(6)
    for g, s in small_suite(40, seed=61, max_n=15):
        tr = run(g, s)
        for _ in range(5):
            r = sample_r(tr, rng)
            w = realize_linearization(g, tr, r)
            assert run_reference(w, s)[1][1:] == sorted(r, key=r.__getitem__)


def test_interval_bound_exact_arithmetic():
    assert LOG2E_BOUND == Fraction(14427, 10000)
    # prod = 8, n = 1: 8 <= 1 * 2^1.4427 is false; with ell = 4 it holds
    assert not interval_bound_holds([(0, 8)], 1)
    assert interval_bound_holds([(0, 8)], 4)
    # boundary: 2^1.4427 = 2.718 so prod 2 holds and prod 3 fails with ell = 1
    assert interval_bound_holds([(0, 2)], 1)
    assert not interval_bound_holds([(0, 3)], 1)


def test_check_bounds_star3():
    g, s = gen_family("star", n=3, seed=1)
    rep = check_bounds(g, s, run(g, s))
    assert (rep.n, rep.d, rep.ell, rep.level_product) == (3, 2, 6, 6)
    assert rep.ok
    assert any("2 <= 6 <= 6" in line for line in rep.lines())


def test_check_bounds_path_and_diamond():
    g, s = gen_family("path", n=8, seed=1)
    rep = check_bounds(g, s, run(g, s))
    assert rep.sum_log == 0 and rep.ell == 1 and rep.ok
    assert rep.mf_paper_literal == 8 and rep.mf_tree_excluding == 0
    tr = run(DIAMOND, 0)
    assert tr.intervals() == [(1, 3), (2, 4), (3, 4)]
    rep = check_bounds(DIAMOND, 0, tr)
    assert rep.ell == 4 and rep.sum_log == 2 and rep.ok
    assert rep.slack["interval_bound"] == pytest.approx(2 + 3 * math.log2(math.e) - 2)


def test_report_flags_recomputable():
    for g, s in small_suite(30, seed=8, max_n=9):
        rep = check_bounds(g, s, run(g, s))
        assert rep.checks["level_bound"] == (Fraction(2) ** (rep.n - rep.d) <= rep.level_product <= rep.ell)
        prod = math.prod(b - a for a, b in run(g, s).intervals())
        assert rep.checks["interval_bound"] == (prod ** 10000 <= rep.ell ** 10000 * 2 ** (14427 * rep.n))
        d = rep.to_dict()
        assert len(rep.csv_row()) == len(BoundReport.CSV_FIELDS)
        assert d["ok"] == rep.ok


def test_check_bounds_large_skips_ell():
    g, s = gen_family("random", n=40, m=120, seed=1)
    rep = check_bounds(g, s, run(g, s))
    assert rep.ell is None and "interval_bound" not in rep.checks and rep.checks["level_bound"]
    with pytest.raises(UsageError):
        check_bounds(g, 1, run(g, s))
