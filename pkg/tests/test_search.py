"""Exhaustive solver, decision form, parallel determinism, TSP baseline."""

import hashlib
import itertools
from math import factorial

import pytest

from hptsp import (
    CapacityError,
    decide_hptsp,
    first_witness,
    generate_random_instance,
    make_example_instance,
    route_labels,
    scaling_benchmark,
    solve_hptsp,
    solve_tsp_branch_and_bound,
)
from hptsp.engine import scan_range, vectorizable
from hptsp.golden import MINIMUM_DIGEST
from hptsp.search import bench_csv_rows


def _oracle_min(instance):
    """Independent brute force: itertools + hashlib, no package machinery."""
    v = instance.v
    labels, costs = instance.labels, instance.costs
    backend = {"sha1": hashlib.sha1, "sha256": hashlib.sha256}[instance.hash_id]
    best = None
    for rank, perm in enumerate(itertools.permutations(range(v))):
        s = "".join(labels[perm[i]] + str(costs[perm[i]][perm[(i + 1) % v]]) for i in range(v))
        d = backend(s.encode()).digest()
        if best is None or (d, rank) < best:
            best = (d, rank)
    return best


def test_example_solution(example):
    result = solve_hptsp(example)
    assert route_labels(example, result.best_route) == "DCAB"
    assert result.best_digest.hex() == MINIMUM_DIGEST
    assert result.routes_examined == 24
    assert result.decision  # m equals the minimum digest
    assert result.wall_time > 0


def test_solver_matches_oracle_uniform():
    instance = generate_random_instance(6, (1, 9), seed=2)
    assert vectorizable(instance)
    digest, rank = _oracle_min(instance)
    result = solve_hptsp(instance)
    assert result.best_digest.data == digest
    assert result.best_route.rank == rank


def test_solver_matches_oracle_non_uniform():
    # mixed 1-3 digit weights force the scalar route walk
    instance = generate_random_instance(6, (5, 120), seed=8)
    assert not vectorizable(instance)
    digest, rank = _oracle_min(instance)
    result = solve_hptsp(instance)
    assert result.best_digest.data == digest
    assert result.best_route.rank == rank


def test_solver_matches_oracle_directed():
    instance = generate_random_instance(6, (1, 9), seed=18, directed=True)
    assert vectorizable(instance)
    digest, rank = _oracle_min(instance)
    result = solve_hptsp(instance)
    assert result.best_digest.data == digest
    assert result.best_route.rank == rank


def test_solver_matches_oracle_wide_labels():
    """Two-character labels still take the vector path (uniform widths)."""
    from hptsp import Instance

    base = generate_random_instance(5, (1, 9), seed=30)
    instance = Instance(("AX", "BX", "CX", "DX", "EX"), base.costs)
    assert vectorizable(instance)
    digest, rank = _oracle_min(instance)
    result = solve_hptsp(instance)
    assert result.best_digest.data == digest
    assert result.best_route.rank == rank


def test_solver_matches_oracle_sha256():
    instance = generate_random_instance(5, (1, 9), seed=21, hash_id="sha256")
    digest, rank = _oracle_min(instance)
    result = solve_hptsp(instance)
    assert result.best_digest.data == digest
    assert result.best_route.rank == rank
    assert len(result.best_digest.data) == 32


def test_worker_count_does_not_change_result():
    instance = generate_random_instance(8, (1, 9), seed=14)
    single = solve_hptsp(instance, workers=1)
    multi = solve_hptsp(instance, workers=8)
    assert single.best_route == multi.best_route
    assert single.best_digest == multi.best_digest
    assert single.routes_examined == multi.routes_examined == factorial(8)


def test_worker_count_does_not_change_result_scalar_engine():
    # non-uniform weights keep the scan on the scalar path inside each worker
    instance = generate_random_instance(6, (5, 120), seed=15)
    assert not vectorizable(instance)
    single = solve_hptsp(instance, workers=1)
    multi = solve_hptsp(instance, workers=2)
    assert (single.best_route, single.best_digest) == (multi.best_route, multi.best_digest)


def test_scan_range_pieces_agree_with_full():
    instance = generate_random_instance(6, (1, 9), seed=4)
    total = factorial(6)
    full = scan_range(instance, 0, total)
    pieces = [scan_range(instance, a, min(a + 97, total)) for a in range(0, total, 97)]
    assert min(p for p in pieces if p) == full
    assert scan_range(instance, 5, 5) is None


def test_decide_example(example):
    assert decide_hptsp(example)  # m is the minimum digest itself
    assert not decide_hptsp(example.replace_m("00" * 20))
    assert decide_hptsp(example.replace_m("ff" * 20))


def test_decide_agrees_with_solve():
    """decide equals the solver's decision field on 50 random instances, V <= 8."""
    import random as _random

    rng = _random.Random(77)
    for trial in range(50):
        v = rng.choice([4, 5, 6, 7, 8])
        instance = generate_random_instance(v, (1, 9), seed=rng.randrange(2**31))
        probe = solve_hptsp(instance)
        m = [probe.best_digest.hex(), "00" * 20, "ff" * 20][trial % 3]
        with_m = instance.replace_m(m)
        assert decide_hptsp(with_m) == solve_hptsp(with_m).decision, (trial, v, m)


def test_first_witness_is_lowest_rank(example):
    # m = ff...f accepts everything, so the witness must be rank 0
    instance = example.replace_m("ff" * 20)
    assert first_witness(instance).rank == 0
    # m = minimum digest: the only witness is DCAB
    witness = first_witness(example)
    assert route_labels(example, witness) == "DCAB"
    assert first_witness(example.replace_m("00" * 20)) is None


def test_capacity_guard():
    instance = generate_random_instance(14, (1, 9), seed=0)
    with pytest.raises(CapacityError):
        solve_hptsp(instance)
    with pytest.raises(CapacityError):
        decide_hptsp(instance)
    with pytest.raises(ValueError):
        solve_hptsp(make_example_instance(), workers=0)


def test_tsp_example_minimum(example):
    # oracle: sum the edges of every directed tour
    best = min(
        sum(example.cost(p[i], p[(i + 1) % 4]) for i in range(4))
        for p in itertools.permutations(range(4))
    )
    assert best == 10
    result = solve_tsp_branch_and_bound(example)
    assert result.best_cost == 10
    tour = result.best_tour.order
    assert sum(example.cost(tour[i], tour[(i + 1) % 4]) for i in range(4)) == 10


def test_tsp_abdc_is_suboptimal(example):
    idx = {lab: i for i, lab in enumerate(example.labels)}
    tour = [idx[c] for c in "ABDC"]
    cost = sum(example.cost(tour[i], tour[(i + 1) % 4]) for i in range(4))
    assert cost == 1 + 6 + 3 + 5 == 15
    assert cost > solve_tsp_branch_and_bound(example).best_cost


def test_tsp_equal_weights_all_tours_optimal():
    v, w = 5, 7
    costs = tuple(tuple(0 if i == j else w for j in range(v)) for i in range(v))
    from hptsp import Instance

    instance = Instance(tuple("ABCDE"), costs)
    result = solve_tsp_branch_and_bound(instance)
    assert result.best_cost == v * w
    # spot-check: any tour has the same cost
    for perm in itertools.islice(itertools.permutations(range(v)), 10):
        assert sum(instance.cost(perm[i], perm[(i + 1) % v]) for i in range(v)) == v * w


def test_tsp_matches_brute_force_on_random_instances():
    for seed in range(50):
        v = 4 + seed % 5  # 4..8
        instance = generate_random_instance(v, (1, 50), seed=seed, directed=seed % 2 == 0)
        oracle = min(
            sum(instance.cost(p[i], p[(i + 1) % v]) for i in range(v))
            for p in itertools.permutations(range(v))
        )
        result = solve_tsp_branch_and_bound(instance)
        assert result.best_cost == oracle


def test_tsp_prunes_on_non_degenerate_instances():
    for seed in range(5):
        instance = generate_random_instance(6, (1, 50), seed=100 + seed)
        result = solve_tsp_branch_and_bound(instance)
        assert result.nodes_pruned > 0
        assert result.nodes_expanded > 0


def test_hptsp_never_prunes_vs_tsp_baseline():
    """The structural contrast: the digest search touches all v! routes while
    the cost search provably discards some."""
    instance = generate_random_instance(7, (1, 50), seed=55)
    assert solve_hptsp(instance.replace_m("f" * 40)).routes_examined == factorial(7)
    uniform = generate_random_instance(7, (1, 9), seed=55)
    assert solve_hptsp(uniform).routes_examined == factorial(7)
    assert solve_tsp_branch_and_bound(instance).nodes_pruned > 0


def test_scaling_benchmark_smoke():
    records = scaling_benchmark((6, 8), seed=3, repeats=2)
    assert [r.v for r in records] == [6, 7, 8]
    assert [r.routes_examined for r in records] == [factorial(6), factorial(7), factorial(8)]
    assert records[0].wall_time_ms < records[1].wall_time_ms < records[2].wall_time_ms
    # per-route work is dominated by hashing one short message, so the
    # throughput stays within a small band across v
    rps = [r.routes_per_second for r in records]
    assert max(rps) / min(rps) < 5
    rows = bench_csv_rows(records)
    assert rows[0] == "v,wall_time_ms,routes_examined,routes_per_second"
    assert len(rows) == 4


def test_scaling_benchmark_range_guard():
    with pytest.raises(ValueError):
        scaling_benchmark((5, 7))
    with pytest.raises(ValueError):
        scaling_benchmark((7, 13))
