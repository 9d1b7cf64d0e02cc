"""``sssp`` command line: gen, run, verify, bench, analyze.

Exit codes: 0 success, 2 usage or parse error, 3 unreachable vertex,
4 invariant violation or failed verification check.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import _backend
from .analysis import EXACT_LIMIT, check_bounds
from .bottleneck import forward_edge_counts, run_compressed
from .dijkstra import (HEAP_KINDS, DijkstraTrace, bellman_ford, interval_budget, run,
                       run_reference, sum_log_intervals)
from .errors import CapacityError, InvariantViolation, SSSPError, UnreachableError, UsageError
from .graph import FAMILIES, Graph, from_dimacs, gen_family, to_dimacs
from .ts_heap import TimestampHeap

log = logging.getLogger("tsdijkstra")

EXIT_OK, EXIT_USAGE, EXIT_UNREACHABLE, EXIT_INVARIANT = 0, 2, 3, 4
ALGOS = ("plain", "compressed")
FORMATS = ("human", "json", "csv")
GEN_PARAMS = ("n", "m", "p", "q", "rows", "cols")

RUN_KEYS = ("graph", "n", "m", "source", "heap", "algorithm", "backend", "distance_digest",
            "order_digest", "interval_budget", "sum_log_intervals", "comparisons",
            "counters", "wall_ns")
BENCH_HEADER = ("graph,n,m,heap,algo,rep,wall_ns,pops,pushes,decrease_keys,"
                "structural_steps,comparisons,budget,order_digest")


@dataclass
class RunConfig:
    subcommand: str
    graph: str | None = None
    family: str | None = None
    params: dict[str, int] = field(default_factory=dict)
    seed: int = 0
    source: int | None = None
    heaps: tuple[str, ...] = ("timestamp",)
    algos: tuple[str, ...] = ("plain",)
    fmt: str = "human"
    reps: int = 1
    backend: str | None = None
    jobs: int = 1

    def __post_init__(self) -> None:
        if (self.graph is None) == (self.family is None):
            raise UsageError("give exactly one of --graph or --family")
        if self.reps < 1:
            raise UsageError(f"--reps must be >= 1 (got {self.reps})")
        if self.jobs < 1:
            raise UsageError(f"--jobs must be >= 1 (got {self.jobs})")

    @property
    def label(self) -> str:
        if self.graph is not None:
            return Path(self.graph).name
        inner = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.family}({inner})"

    def load(self) -> tuple[Graph, int]:
        if self.graph is not None:
            with open(self.graph, encoding="utf-8") as fh:
                g, s = from_dimacs(fh)
        else:
            g, s = gen_family(self.family, seed=self.seed, **self.params)
        if self.source is not None:
            if not 0 <= self.source < g.num_vertices:
                raise UsageError(f"--source {self.source} outside 0..{g.num_vertices - 1}")
            s = self.source
        return g, s


def execute(g: Graph, s: int, heap: str, algo: str, backend: str | None = None) -> DijkstraTrace:
    if algo == "compressed":
        return run_compressed(g, s, heap)
    return run(g, s, heap, backend=backend)


def run_report(cfg: RunConfig, g: Graph, trace: DijkstraTrace) -> dict:
    return {
        "graph": cfg.label,
        "n": g.n,
        "m": g.m,
        "source": trace.source,
        "heap": trace.heap,
        "algorithm": trace.algorithm,
        "backend": trace.backend,
        "distance_digest": trace.distance_digest(),
        "order_digest": trace.order_digest(),
        "interval_budget": interval_budget(trace),
        "sum_log_intervals": sum_log_intervals(trace),
        "comparisons": trace.counters.comparisons,
        "counters": vars(trace.counters).copy(),
        "wall_ns": trace.wall_ns,
    }


def bench_row(cfg: RunConfig, g: Graph, trace: DijkstraTrace, rep: int) -> list:
    c = trace.counters
    return [cfg.label, g.n, g.m, trace.heap, trace.algorithm, rep, trace.wall_ns, c.pops,
            c.pushes, c.decrease_keys, c.heap_steps, c.comparisons,
            f"{interval_budget(trace):.6f}", trace.order_digest()]


# -- subcommands ------------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> int:
    if args.family is None:
        raise UsageError("gen needs --family")
    g, _ = gen_family(args.family, seed=args.seed, **_params(args))
    text = to_dimacs(g)
    if args.out is None:
        sys.stdout.write(text)
        print(f"{g.num_vertices} vertices, {g.m} arcs", file=sys.stderr)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}: {g.num_vertices} vertices, {g.m} arcs")
    return EXIT_OK


def cmd_run(cfg: RunConfig) -> int:
    g, s = cfg.load()
    best = None
    for _ in range(cfg.reps):
        trace = execute(g, s, cfg.heaps[0], cfg.algos[0], cfg.backend)
        if best is None or trace.wall_ns < best.wall_ns:
            best = trace
    report = run_report(cfg, g, best)
    out = sys.stdout
    if cfg.fmt == "json":
        json.dump(report, out, sort_keys=False)
        out.write("\n")
    elif cfg.fmt == "csv":
        out.write(BENCH_HEADER + "\n")
        csv.writer(out, lineterminator="\n").writerow(bench_row(cfg, g, best, 0))
    else:
        for key in RUN_KEYS:
            if key == "counters":
                for name, value in report["counters"].items():
                    out.write(f"  {name}: {value}\n")
            else:
                out.write(f"{key}: {report[key]}\n")
    return EXIT_OK


class _CheckedTimestampHeap(TimestampHeap):
    """Runs the full structural check after every operation."""

    def push(self, element, key):
        h = super().push(element, key)
        self.check_invariants()
        return h

    def decrease_key(self, handle, key):
        super().decrease_key(handle, key)
        self.check_invariants()

    def pop(self):
        out = super().pop()
        self.check_invariants()
        return out


def _checked_heap_run(g: Graph, s: int) -> list[int]:
    h = _CheckedTimestampHeap()
    dist: list = [None] * g.num_vertices
    handles: list = [None] * g.num_vertices
    dist[s] = 0
    handles[s] = h.push(s, 0)
    order = []
    while h:
        u, du = h.pop()[:2]
        handles[u] = None
        order.append(u)
        for v, w, _ in g.adjacency[u]:
            nd = du + w
            if dist[v] is None:
                dist[v] = nd
                handles[v] = h.push(v, nd)
            elif handles[v] is not None and nd < dist[v]:
                dist[v] = nd
                h.decrease_key(handles[v], nd)
    return order


CHECKED_LIMIT = 2000
BELLMAN_FORD_LIMIT = 5000


def cmd_verify(cfg: RunConfig) -> int:
    g, s = cfg.load()
    ref_dist, ref_order = run_reference(g, s)
    results: list[tuple[bool, str]] = []
    if g.num_vertices <= BELLMAN_FORD_LIMIT:
        results.append((bellman_ford(g, s) == ref_dist, "reference distances match Bellman-Ford"))
    traces = {}
    for heap in HEAP_KINDS:
        for algo in ALGOS:
            tr = execute(g, s, heap, algo, cfg.backend)
            traces[heap, algo] = tr
            ok = tr.distance == ref_dist and tr.order == ref_order
            results.append((ok, f"{algo} Dijkstra with {heap} heap matches reference order and distances"))
    for backend in _backend.available():
        if backend != (cfg.backend or _backend.DEFAULT):
            other = run(g, s, "timestamp", backend=backend)
            base = traces["timestamp", "plain"]
            same = (other.order == base.order and other.pushed_at == base.pushed_at
                    and other.counters == base.counters)
            results.append((same, f"{backend} backend trace identical to default backend"))
    if g.num_vertices <= CHECKED_LIMIT:
        results.append((_checked_heap_run(g, s) == ref_order,
                        "timestamp heap structure valid after every operation"))
    lines = [("PASS" if ok else "FAIL") + " " + text for ok, text in results]
    trace = traces["timestamp", "plain"]
    if g.n <= EXACT_LIMIT:
        report = check_bounds(g, s, trace)
        lines.extend(report.lines())
        results.extend((ok, name) for name, ok in report.checks.items())
    else:
        lines.append(f"skip exact linearization checks: n = {g.n} > {EXACT_LIMIT}")
    failed = sum(not ok for ok, _ in results)
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    if cfg.fmt == "json":
        print(json.dumps({"graph": cfg.label, "passed": len(results) - failed,
                          "failed": failed, "lines": lines}))
    else:
        print("\n".join(lines))
    return EXIT_OK if failed == 0 else EXIT_INVARIANT


def _bench_cell(cfg: RunConfig, heap: str, algo: str, rep: int) -> list:
    g, s = cfg.load()
    return bench_row(cfg, g, execute(g, s, heap, algo, cfg.backend), rep)


def cmd_bench(cfg: RunConfig) -> int:
    cells = [(h, a, r) for h in cfg.heaps for a in cfg.algos for r in range(cfg.reps)]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            futures = [pool.submit(_bench_cell, cfg, *cell) for cell in cells]
            rows = [f.result() for f in futures]
    else:
        g, s = cfg.load()
        rows = [bench_row(cfg, g, execute(g, s, h, a, cfg.backend), r) for h, a, r in cells]
    out = sys.stdout
    if cfg.fmt == "json":
        names = BENCH_HEADER.split(",")
        json.dump([dict(zip(names, row)) for row in rows], out)
        out.write("\n")
    else:
        out.write(BENCH_HEADER + "\n")
        csv.writer(out, lineterminator="\n").writerows(rows)
    return EXIT_OK


def cmd_analyze(cfg: RunConfig) -> int:
    g, s = cfg.load()
    trace = run(g, s, cfg.heaps[0], backend=cfg.backend)
    if g.n > EXACT_LIMIT:
        log.info("n = %d exceeds %d: linearization count skipped", g.n, EXACT_LIMIT)
    try:
        report = check_bounds(g, s, trace)
    except CapacityError as exc:  # pragma: no cover - guarded above
        raise UsageError(str(exc)) from exc
    if cfg.fmt == "json":
        print(json.dumps(report.to_dict()))
    elif cfg.fmt == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(report.CSV_FIELDS)
        w.writerow(report.csv_row())
    else:
        print("\n".join(report.lines()))
        print(f"forward arcs: {forward_edge_counts(g, s, trace)}")
    return EXIT_OK if report.ok else EXIT_INVARIANT


# -- argument parsing ---------------------------------------------------------------


def _params(args: argparse.Namespace) -> dict[str, int]:
    return {k: getattr(args, k) for k in GEN_PARAMS if getattr(args, k) is not None}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sssp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_args(p: argparse.ArgumentParser, file_ok: bool = True) -> None:
        if file_ok:
            p.add_argument("--graph", help="DIMACS-sp file")
        p.add_argument("--family", choices=FAMILIES)
        for name in GEN_PARAMS:
            p.add_argument(f"--{name}", type=int)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("gen", help="write a generated graph as DIMACS-sp")
    graph_args(p, file_ok=False)
    p.add_argument("--out", help="output path (default: stdout)")

    for name, text in (("run", "run one configuration and report"),
                       ("verify", "oracle equivalence and bound checks"),
                       ("bench", "CSV rows per heap, algorithm and repetition"),
                       ("analyze", "exact linearization count and bound report")):
        p = sub.add_parser(name, help=text)
        graph_args(p)
        p.add_argument("--source", type=int, help="0-based source vertex (default 0)")
        many = name == "bench"
        p.add_argument("--heap", choices=HEAP_KINDS + (("all",) if many else ()),
                       default="all" if many else "timestamp")
        p.add_argument("--algo", choices=ALGOS + (("all",) if many else ()), default="plain")
        formats = ("csv", "json") if many else FORMATS
        p.add_argument("--format", choices=formats, default=formats[0], dest="fmt")
        p.add_argument("--reps", type=int, default=1)
        p.add_argument("--backend", choices=("python", "compiled"))
        p.add_argument("--jobs", type=int, default=1, help="parallel bench cells")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    heap, algo = args.heap, args.algo
    return RunConfig(
        subcommand=args.command, graph=args.graph, family=args.family, params=_params(args),
        seed=args.seed, source=args.source,
        heaps=HEAP_KINDS if heap == "all" else (heap,),
        algos=ALGOS if algo == "all" else (algo,),
        fmt=args.fmt, reps=args.reps, backend=args.backend, jobs=args.jobs)


def _setup_logging() -> None:
    level = os.environ.get("SSSP_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            return cmd_gen(args)
        cfg = _config(args)
        log.debug("backend %s, config %s", cfg.backend or _backend.DEFAULT, cfg)
        return {"run": cmd_run, "verify": cmd_verify, "bench": cmd_bench,
                "analyze": cmd_analyze}[args.command](cfg)
    except UnreachableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNREACHABLE
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (UsageError, CapacityError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc.filename or ''}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_USAGE
    except SSSPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
