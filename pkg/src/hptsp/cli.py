"""Command-line entry point.

One subcommand per operation; exit code 0 on success, 1 when the domain says
no (certificate rejected, no route at or below m, reference-table mismatch),
2 on usage or file-format problems.  Subcommands that produce data write CSV
to --out and, next to it, a PNG rendering of the same numbers; summaries go
to stdout.  CSV headers:

    sac          bit_index,flip_rate
    leak         feature,target,correlation,p_value_chance,sample_size,v
    census       bucket,count
    extend-demo  route,split,extended_digest,direct_digest,full_digest,extended_equals_direct,extended_equals_full
    bench        v,wall_time_ms,routes_examined,routes_per_second
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import golden
from .errors import HptspError
from .experiments import (
    FEATURES,
    TARGET_DIGEST,
    TARGET_TSP_COST,
    bucket_census,
    leak_test,
    length_extension_demo,
    sac_test,
)
from .hashes import digest as hash_digest
from .instances import (
    generate_random_instance,
    load_instance,
    make_example_instance,
    save_instance,
)
from .routes import encode_route, enumerate_routes, route_labels
from .search import (
    bench_csv_rows,
    first_witness,
    scaling_benchmark,
    solve_hptsp,
    solve_tsp_branch_and_bound,
)
from .verify import certificate_for, load_certificate, save_certificate, verify


def _write_csv(out: str, rows: list[str]) -> Path:
    path = Path(out)
    path.write_text("\n".join(rows) + "\n", encoding="utf-8")
    return path


def _figure_path(out: str) -> Path:
    return Path(out).with_suffix(".png")


def _instance_from_args(args) -> "Instance":
    if getattr(args, "example", False):
        return make_example_instance()
    if args.instance:
        return load_instance(args.instance)
    if getattr(args, "v", None):
        return generate_random_instance(args.v, (args.wmin, args.wmax), seed=args.seed)
    raise HptspError("no instance given; pass --instance PATH (or --example / --v N)")


def cmd_table(args) -> int:
    instance = make_example_instance()
    expected = golden.table_by_route()
    mismatches = []
    best = None
    for route in enumerate_routes(instance.v):
        labels = route_labels(instance, route)
        encoded = encode_route(instance, route).data
        hexdig = hash_digest(instance.hash_id, encoded).hex()
        print(f"{labels}  {encoded.decode('ascii')}  {hexdig}")
        want_full, want_digest = expected[labels]
        if encoded.decode("ascii") != want_full or hexdig != want_digest:
            mismatches.append((labels, encoded.decode("ascii"), hexdig))
        if best is None or hexdig < best[0]:
            best = (hexdig, labels)
    print(f"minimum: {best[1]} {best[0]}")
    if mismatches:
        for labels, full, hexdig in mismatches:
            print(f"mismatch: {labels} {full} {hexdig}", file=sys.stderr)
        return 1
    return 0


def cmd_gen(args) -> int:
    if args.example:
        instance = make_example_instance()
    else:
        instance = generate_random_instance(
            args.v, (args.wmin, args.wmax), seed=args.seed,
            directed=args.directed, hash_id=args.hash,
        )
        if args.m:
            instance = instance.replace_m(args.m)
    if args.out:
        save_instance(instance, args.out)
        print(f"wrote {args.out} (v={instance.v}, hash={instance.hash_id})")
    else:
        import json

        print(json.dumps(instance.to_dict(), indent=2))
    return 0


def cmd_solve(args) -> int:
    instance = _instance_from_args(args)
    result = solve_hptsp(instance, workers=args.workers, force=args.force)
    labels = route_labels(instance, result.best_route)
    print(f"{labels} {result.best_digest.hex()} {result.routes_examined} routes")
    print(f"wall time: {result.wall_time:.3f} s, digest <= m: {'yes' if result.decision else 'no'}")
    if args.cert_out:
        save_certificate(instance, certificate_for(instance, result.best_route), args.cert_out)
        print(f"wrote certificate {args.cert_out}")
    return 0


def cmd_decide(args) -> int:
    instance = _instance_from_args(args)
    witness = first_witness(instance, force=args.force)
    if witness is None:
        print("no route <= m")
        return 1
    print(f"witness: {route_labels(instance, witness)} (rank {witness.rank})")
    return 0


def cmd_verify(args) -> int:
    instance = _instance_from_args(args)
    certificate = load_certificate(instance, args.cert)
    report = verify(instance, certificate)
    if report.accepted:
        print(f"accepted (digest {report.digest.hex()}, {report.step_count} steps)")
        return 0
    print(f"rejected: {report.failure_reason} ({report.step_count} steps)")
    return 1


def cmd_tsp(args) -> int:
    instance = _instance_from_args(args)
    result = solve_tsp_branch_and_bound(instance)
    labels = route_labels(instance, result.best_tour)
    print(f"{labels} cost {result.best_cost}")
    print(f"nodes expanded: {result.nodes_expanded}, pruned: {result.nodes_pruned}")
    return 0


def cmd_sac(args) -> int:
    report = sac_test(args.hash, args.trials, args.input_len, seed=args.seed)
    lo = min(report.per_output_bit_rates)
    hi = max(report.per_output_bit_rates)
    print(
        f"mean flip rate {report.mean_flip_rate:.4f} "
        f"+/- {report.confidence_halfwidth:.4f} (99%), "
        f"per-bit range [{lo:.3f}, {hi:.3f}], {report.trials} trials"
    )
    if args.out:
        rows = ["bit_index,flip_rate"]
        rows += [f"{i},{r:.6f}" for i, r in enumerate(report.per_output_bit_rates)]
        path = _write_csv(args.out, rows)
        from .plotting import save_sac_plot

        save_sac_plot(report, _figure_path(args.out))
        print(f"wrote {path} and {_figure_path(args.out)}")
    return 0


def cmd_leak(args) -> int:
    instance = _instance_from_args(args)
    features = list(FEATURES) if args.feature == "all" else [args.feature]
    reports = [
        leak_test(instance, f, seed=args.seed, target=args.target, shuffles=args.shuffles)
        for f in features
    ]
    if args.control:
        reports.append(
            leak_test(
                instance,
                "first-edge-cost",
                seed=args.seed,
                target=TARGET_TSP_COST,
                shuffles=args.shuffles,
            )
        )
    for r in reports:
        print(
            f"{r.feature_name} vs {r.target}: correlation {r.correlation:+.4f}, "
            f"p {r.p_value_chance:.4g}, n {r.sample_size}"
        )
    if args.out:
        rows = ["feature,target,correlation,p_value_chance,sample_size,v"]
        rows += [
            f"{r.feature_name},{r.target},{r.correlation:.6f},{r.p_value_chance:.6g},"
            f"{r.sample_size},{r.v}"
            for r in reports
        ]
        path = _write_csv(args.out, rows)
        from .plotting import save_leak_plot

        save_leak_plot(reports, _figure_path(args.out))
        print(f"wrote {path} and {_figure_path(args.out)}")
    return 0


def cmd_extend_demo(args) -> int:
    instance = _instance_from_args(args)
    report = length_extension_demo(instance)
    n = len(report.rows)
    print(
        f"{n} routes: resumed digest == glue-padded digest for all: "
        f"{report.all_match_direct}; resumed digest == full-route digest for any: "
        f"{not report.none_match_full}"
    )
    if args.out:
        rows = [
            "route,split,extended_digest,direct_digest,full_digest,"
            "extended_equals_direct,extended_equals_full"
        ]
        rows += [
            f"{r.route},{r.split},{r.extended_hex},{r.direct_hex},{r.full_hex},"
            f"{r.extended_equals_direct},{r.extended_equals_full}"
            for r in report.rows
        ]
        path = _write_csv(args.out, rows)
        print(f"wrote {path}")
    return 0


def cmd_census(args) -> int:
    instance = _instance_from_args(args)
    report = bucket_census(instance, args.prefix_bits)
    nonzero = sum(1 for c in report.counts if c)
    print(
        f"{sum(report.counts)} routes over {len(report.counts)} buckets "
        f"({nonzero} occupied), mean occupancy {report.mean_occupancy:.2f}, "
        f"chi2 {report.chi_square:.2f}, p {report.p_value:.4g}"
    )
    if args.out:
        rows = ["bucket,count"]
        rows += [f"{i},{c}" for i, c in enumerate(report.counts)]
        path = _write_csv(args.out, rows)
        from .plotting import save_census_plot

        save_census_plot(report, _figure_path(args.out))
        print(f"wrote {path} and {_figure_path(args.out)}")
    return 0


def cmd_bench(args) -> int:
    records = scaling_benchmark(
        (args.vmin, args.vmax), seed=args.seed, workers=args.workers, repeats=args.repeats
    )
    prev = None
    for r in records:
        line = (
            f"v={r.v}: {r.wall_time_ms:.1f} ms, {r.routes_examined} routes, "
            f"{r.routes_per_second:.0f} routes/s"
        )
        if prev is not None:
            line += f", T(v)/T(v-1) = {r.wall_time_ms / prev:.2f}"
        prev = r.wall_time_ms
        print(line)
    if args.out:
        path = _write_csv(args.out, bench_csv_rows(records))
        from .plotting import save_bench_plot

        save_bench_plot(records, _figure_path(args.out))
        print(f"wrote {path} and {_figure_path(args.out)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="PRNG seed (default 0)")
    common.add_argument("--workers", type=int, default=1, help="parallel workers (default 1)")
    common.add_argument("--out", type=str, default=None, help="CSV output path; a PNG goes next to it")

    inst = argparse.ArgumentParser(add_help=False)
    inst.add_argument("--instance", type=str, default=None, help="instance JSON path")
    inst.add_argument("--example", action="store_true", help="use the bundled 4-city example")
    inst.add_argument("--v", type=int, default=None, help="generate a random instance with v vertices")
    inst.add_argument("--wmin", type=int, default=1, help="minimum edge weight (with --v)")
    inst.add_argument("--wmax", type=int, default=9, help="maximum edge weight (with --v)")

    parser = argparse.ArgumentParser(
        prog="hptsp",
        description="hashed-path TSP: exhaustive digest-order search and experiments",
        epilog=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="print and check the 24-row example table")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("gen", parents=[common], help="generate an instance file")
    p.add_argument("--v", type=int, default=4, help="vertex count (default 4)")
    p.add_argument("--wmin", type=int, default=1)
    p.add_argument("--wmax", type=int, default=9)
    p.add_argument("--directed", action="store_true", help="draw an asymmetric cost matrix")
    p.add_argument("--hash", type=str, default="sha1", help="registered hash id (default sha1)")
    p.add_argument("--m", type=str, default=None, help="decision bound (lowercase hex)")
    p.add_argument("--example", action="store_true", help="emit the bundled 4-city example")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", parents=[common, inst], help="exhaustive minimum-digest search")
    p.add_argument("--force", action="store_true", help="lift the v <= 13 size guard")
    p.add_argument("--cert-out", type=str, default=None, help="write the winning certificate here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("decide", parents=[common, inst], help="is any route's digest <= m?")
    p.add_argument("--force", action="store_true", help="lift the v <= 13 size guard")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("verify", parents=[common, inst], help="check a certificate file")
    p.add_argument("--cert", type=str, required=True, help="certificate JSON path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tsp", parents=[common, inst], help="classic min-cost tour (branch and bound)")
    p.set_defaults(func=cmd_tsp)

    p = sub.add_parser("sac", parents=[common], help="single-bit avalanche measurement")
    p.add_argument("--hash", type=str, default="sha1", help="registered hash id (default sha1)")
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--input-len", type=int, default=64, help="random input length in bytes")
    p.set_defaults(func=cmd_sac)

    p = sub.add_parser("leak", parents=[common, inst], help="partial-information rank correlation")
    p.add_argument(
        "--feature", type=str, default="all", choices=list(FEATURES) + ["all"],
        help="partial-information feature (default: all)",
    )
    p.add_argument(
        "--target", type=str, default=TARGET_DIGEST, choices=[TARGET_DIGEST, TARGET_TSP_COST],
        help="ordering to correlate against (default digest)",
    )
    p.add_argument("--shuffles", type=int, default=1000, help="permutation-test reshuffles")
    p.add_argument(
        "--control", action="store_true",
        help="also run first-edge-cost against classic tour-cost order",
    )
    p.set_defaults(func=cmd_leak)

    p = sub.add_parser(
        "extend-demo", parents=[common, inst],
        help="resume-from-digest demonstration over all routes",
    )
    p.set_defaults(func=cmd_extend_demo)

    p = sub.add_parser("census", parents=[common, inst], help="bucket digests by leading bits")
    p.add_argument("--prefix-bits", type=int, default=8, help="bucket width in bits (1..16)")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("bench", parents=[common], help="factorial scaling measurement")
    p.add_argument("--vmin", type=int, default=7)
    p.add_argument("--vmax", type=int, default=10)
    p.add_argument("--repeats", type=int, default=3, help="timed repeats per v (median kept)")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HptspError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
