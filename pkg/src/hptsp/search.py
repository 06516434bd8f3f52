"""Exhaustive solvers for the hashed-route problem plus the classic-TSP baseline.

solve_hptsp scans all v! routes and keeps the lexicographically smallest
digest; there is no pruning to be had, which is the whole point of the
construction, so the optimisation form always pays the full factorial.  The
decision form may stop at the first digest <= m.  Work is partitioned across
processes by contiguous rank ranges; the merge is a minimum under a total
order (digest, then rank), so the result is identical for any worker count.

The branch-and-bound TSP solver exists as the contrast: for plain tour cost a
partial route's accumulated cost already bounds every completion, so whole
subtrees are discarded without being examined -- exactly the local
information the hashed variant denies.
"""

from __future__ import annotations

import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import factorial

from . import engine
from .errors import CapacityError
from .instances import Instance, generate_random_instance
from .routes import MAX_ENUM_V, Digest, Route, rank_to_route

# v! route hashes: 13! is hours of desk time, 14! is days.  Raisable per call.
DEFAULT_MAX_V = 13


@dataclass(frozen=True)
class SolveResult:
    best_route: Route
    best_digest: Digest
    routes_examined: int
    wall_time: float  # seconds
    decision: bool  # best digest <= m


@dataclass(frozen=True)
class TspResult:
    best_tour: Route
    best_cost: int
    nodes_expanded: int
    nodes_pruned: int


def _guard(v: int, max_v: int, force: bool) -> None:
    if v > MAX_ENUM_V:
        raise CapacityError(f"v={v} exceeds the hard enumeration cap (v <= {MAX_ENUM_V})")
    if v > max_v and not force:
        raise CapacityError(
            f"v={v} means {v}! route hashes; raise max_v or pass force=True to confirm"
        )


def _scan_task(args):
    instance, start, stop, batch = args
    return engine.scan_range(instance, start, stop, batch)


def solve_hptsp(
    instance: Instance,
    workers: int = 1,
    *,
    max_v: int = DEFAULT_MAX_V,
    force: bool = False,
    batch: int = 16384,
) -> SolveResult:
    """Scan all v! routes; return the minimum-digest route (ties to low rank)."""
    v = instance.v
    _guard(v, max_v, force)
    if workers < 1:
        raise ValueError("workers must be at least 1")
    total = factorial(v)
    t0 = time.perf_counter()
    if workers == 1 or total <= 2 * batch:
        best = engine.scan_range(instance, 0, total, batch)
    else:
        if engine.vectorizable(instance):
            engine.suffix_template(min(v, engine.MAX_SUFFIX))  # build before fork
        bounds = [total * i // workers for i in range(workers + 1)]
        tasks = [
            (instance, a, b, batch)
            for a, b in zip(bounds, bounds[1:])
            if a < b
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = [r for r in pool.map(_scan_task, tasks) if r is not None]
        best = min(parts)
    wall = time.perf_counter() - t0
    digest_bytes, rank = best
    return SolveResult(
        best_route=rank_to_route(rank, v),
        best_digest=Digest(digest_bytes),
        routes_examined=total,
        wall_time=wall,
        decision=digest_bytes <= instance.m_bytes,
    )


def decide_hptsp(
    instance: Instance,
    *,
    max_v: int = DEFAULT_MAX_V,
    force: bool = False,
    batch: int = 16384,
) -> bool:
    """True iff some route's digest is <= m.  May stop at the first witness."""
    v = instance.v
    _guard(v, max_v, force)
    return engine.first_rank_at_most(instance, 0, factorial(v), batch) is not None


def first_witness(
    instance: Instance,
    *,
    max_v: int = DEFAULT_MAX_V,
    force: bool = False,
    batch: int = 16384,
) -> Route | None:
    """The lowest-rank route whose digest is <= m, or None (decision + witness)."""
    v = instance.v
    _guard(v, max_v, force)
    rank = engine.first_rank_at_most(instance, 0, factorial(v), batch)
    return None if rank is None else rank_to_route(rank, v)


def solve_tsp_branch_and_bound(
    instance: Instance, *, max_v: int = DEFAULT_MAX_V, force: bool = False
) -> TspResult:
    """Exact minimum-cost closed tour via depth-first branch and bound.

    A partial route is cut as soon as its accumulated cost meets the best
    complete tour seen so far (weights are non-negative, so extensions cannot
    recover).  The start vertex is fixed at 0: every closed tour's cost is
    invariant under rotation, so the minimum over (v-1)! suffixes equals the
    minimum over all v! directed routes.
    """
    v = instance.v
    _guard(v, max_v, force)
    cost = instance.cost
    best_cost = None
    best_order = None
    expanded = 0
    pruned = 0
    path = [0]
    used = [False] * v
    used[0] = True

    def dfs(acc: int) -> None:
        nonlocal best_cost, best_order, expanded, pruned
        expanded += 1
        if len(path) == v:
            total = acc + cost(path[-1], 0)
            if best_cost is None or total < best_cost:
                best_cost = total
                best_order = tuple(path)
            return
        last = path[-1]
        for nxt in range(v):
            if used[nxt]:
                continue
            extended = acc + cost(last, nxt)
            if best_cost is not None and extended >= best_cost:
                pruned += 1
                continue
            used[nxt] = True
            path.append(nxt)
            dfs(extended)
            path.pop()
            used[nxt] = False

    dfs(0)
    return TspResult(
        best_tour=Route.from_order(best_order),
        best_cost=best_cost,
        nodes_expanded=expanded,
        nodes_pruned=pruned,
    )


@dataclass(frozen=True)
class BenchRecord:
    v: int
    wall_time_ms: float
    routes_examined: int
    routes_per_second: float


BENCH_CSV_HEADER = "v,wall_time_ms,routes_examined,routes_per_second"

# Millisecond-scale solves are noisy one at a time; keep sampling until this
# much measured time has accumulated (or the sample cap is hit), then take
# the median.  Large v fills the window with the first sample.
_MIN_TIMED_WINDOW = 0.1
_MAX_SAMPLES = 200


def scaling_benchmark(
    v_range: tuple[int, int],
    seed: int = 0,
    *,
    workers: int = 1,
    repeats: int = 3,
    weight_range: tuple[int, int] = (1, 9),
) -> list[BenchRecord]:
    """Time solve_hptsp on one random instance per v (median over samples).

    The factorial-growth evidence: consecutive wall-time ratios land near
    v+1 because per-route work is dominated by hashing one short message.
    At least `repeats` samples are taken per v, more if they are so quick
    that a single sample would be noise-dominated.
    """
    lo, hi = v_range
    if not (6 <= lo <= hi <= 12):
        raise ValueError(f"v_range must lie within [6, 12], got [{lo}, {hi}]")
    records = []
    for v in range(lo, hi + 1):
        instance = generate_random_instance(v, weight_range, seed=seed + v)
        times = []
        elapsed = 0.0
        while len(times) < repeats or (elapsed < _MIN_TIMED_WINDOW and len(times) < _MAX_SAMPLES):
            wall = solve_hptsp(instance, workers=workers).wall_time
            times.append(wall)
            elapsed += wall
        wall = statistics.median(times)
        total = factorial(v)
        records.append(
            BenchRecord(
                v=v,
                wall_time_ms=wall * 1000.0,
                routes_examined=total,
                routes_per_second=total / wall,
            )
        )
    return records


def bench_csv_rows(records) -> list[str]:
    rows = [BENCH_CSV_HEADER]
    for r in records:
        rows.append(f"{r.v},{r.wall_time_ms:.3f},{r.routes_examined},{r.routes_per_second:.1f}")
    return rows
