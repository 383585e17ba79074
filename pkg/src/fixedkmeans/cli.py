"""Command-line front end: fixed-size clustering, seating plans, benchmarks.

All commands are deterministic for a fixed seed (timings aside). Failures
exit with code 2 and a single-line diagnostic on stderr.
"""

import argparse
import json
import os
import secrets
import sys
import time

import numpy as np

from . import clustering, datasets, hungarian, seatplan
from .clustering import RunConfig

SEED_ENV_VAR = "FIXEDKMEANS_SEED"
EXIT_ERROR = 2


def _add_common_flags(parser, default_restarts):
    parser.add_argument("--sizes", required=True,
                        help="comma-separated cluster sizes, e.g. 4,4,5,6,3")
    parser.add_argument("--seed", type=int, default=None,
                        help=f"RNG seed (default: ${SEED_ENV_VAR} or {clustering.DEFAULT_SEED})")
    parser.add_argument("--random-seed", action="store_true",
                        help="draw the seed from OS entropy instead of the fixed default")
    parser.add_argument("--restarts", type=int, default=default_restarts,
                        help="independent restarts, best result kept (default: %(default)s)")
    parser.add_argument("--max-iter", type=int, default=clustering.DEFAULT_MAX_ITER,
                        help="iteration cap per run (default: %(default)s)")
    parser.add_argument("--out", default="out",
                        help="output directory (default: %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fixedkmeans",
        description="k-means with exact per-cluster sizes, plus a seating planner",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cluster = sub.add_parser("cluster", help="cluster a points file with fixed cluster sizes")
    p_cluster.add_argument("points_file", help="one point per line, whitespace- or comma-separated")
    _add_common_flags(p_cluster, default_restarts=clustering.DEFAULT_RESTARTS)

    p_plan = sub.add_parser("seatplan", help="compute a seating plan from a compatibility CSV")
    p_plan.add_argument("matrix_file", help="CSV with a guest-name header row and column")
    _add_common_flags(p_plan, default_restarts=seatplan.SEATPLAN_RESTARTS)
    p_plan.add_argument("--mds-tol", type=float, default=clustering.DEFAULT_MDS_TOL,
                        help="eigenvalue retention tolerance for the embedding (default: %(default)s)")

    p_bench = sub.add_parser("bench", help="time the assignment step and full runs on synthetic data")
    p_bench.add_argument("--n", default="100,200,400,800",
                         help="comma-separated dataset sizes (default: %(default)s)")
    p_bench.add_argument("--dim", type=int, default=2, help="data dimension (default: %(default)s)")
    p_bench.add_argument("--k", type=int, default=8,
                         help="cluster count, clamped to n (default: %(default)s)")
    p_bench.add_argument("--sizes-mode", choices=["balanced"], default="balanced",
                         help="how cluster sizes are derived from n (default: %(default)s)")
    p_bench.add_argument("--repeats", type=int, default=3,
                         help="timing repeats per size, minimum kept (default: %(default)s)")
    p_bench.add_argument("--seed", type=int, default=None)
    p_bench.add_argument("--random-seed", action="store_true")
    p_bench.add_argument("--out", default=None,
                         help="optional directory for a machine-readable timing report")
    return parser


def _resolve_seed(args) -> int:
    if args.random_seed:
        return secrets.randbits(63)
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"{SEED_ENV_VAR}={env!r} is not an integer") from None
    return clustering.DEFAULT_SEED


def _parse_sizes(raw):
    try:
        sizes = [int(tok) for tok in raw.split(",") if tok.strip()]
    except ValueError:
        raise ValueError(f"--sizes: expected comma-separated integers, got {raw!r}") from None
    if not sizes:
        raise ValueError(f"--sizes: expected comma-separated integers, got {raw!r}")
    return sizes


def load_points_file(path) -> np.ndarray:
    """Parse a points file: one point per line, '#' starts a comment."""
    rows = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.replace(",", " ").split()
            try:
                values = [float(tok) for tok in tokens]
            except ValueError:
                bad = next(tok for tok in tokens if not _is_float(tok))
                raise ValueError(f"{path} line {lineno}: {bad!r} is not a number") from None
            rows.append((lineno, values))
    if not rows:
        raise ValueError(f"{path}: no points found")
    dim = len(rows[0][1])
    for lineno, values in rows:
        if len(values) != dim:
            raise ValueError(f"{path} line {lineno}: expected {dim} coordinates, got {len(values)}")
    return np.array([values for _, values in rows])


def _is_float(token) -> bool:
    try:
        float(token)
        return True
    except ValueError:
        return False


def _write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _cmd_cluster(args) -> int:
    seed = _resolve_seed(args)
    sizes = _parse_sizes(args.sizes)
    config = RunConfig(seed=seed, restarts=args.restarts, max_iter=args.max_iter)
    points = load_points_file(args.points_file)
    clustering.check_sizes(sizes, len(points))

    result = clustering.cluster_multi_restart(points, sizes, config)

    os.makedirs(args.out, exist_ok=True)
    with open(os.path.join(args.out, "partition.txt"), "w") as fh:
        for i, label in enumerate(result.labels):
            fh.write(f"{i} {label}\n")
    with open(os.path.join(args.out, "centroids.txt"), "w") as fh:
        for centroid in result.centroids:
            fh.write(" ".join(repr(float(x)) for x in centroid) + "\n")
    _write_json(os.path.join(args.out, "summary.json"), {
        "command": "cluster",
        "n": len(points),
        "k": len(sizes),
        "sizes": sizes,
        "mse": result.mse,
        "iterations": result.iterations,
        "converged": result.converged,
        "restarts": result.restarts_used,
        "seed": seed,
    })
    print(f"mse={result.mse!r} iterations={result.iterations} restarts={result.restarts_used} "
          f"seed={seed} out={args.out}")
    return 0


def _cmd_seatplan(args) -> int:
    seed = _resolve_seed(args)
    sizes = _parse_sizes(args.sizes)
    config = RunConfig(seed=seed, restarts=args.restarts, max_iter=args.max_iter,
                       mds_tol=args.mds_tol)
    matrix, guests = seatplan.load_compatibility_csv(args.matrix_file)

    result = seatplan.plan(matrix, guests, sizes, config)

    os.makedirs(args.out, exist_ok=True)
    with open(os.path.join(args.out, "plan.txt"), "w") as fh:
        fh.write(seatplan.format_plan_text(result))
    _write_json(os.path.join(args.out, "plan.json"), seatplan.plan_to_dict(result))
    print(f"tables={len(result.tables)} mse={result.mse!r} embedding_dim={result.embedding_dim} "
          f"seed={seed} out={args.out}")
    return 0


def _cmd_bench(args) -> int:
    seed = _resolve_seed(args)
    try:
        ns = [int(tok) for tok in args.n.split(",") if tok.strip()]
    except ValueError:
        raise ValueError(f"--n: expected comma-separated integers, got {args.n!r}") from None
    if not ns or any(n < 1 for n in ns):
        raise ValueError(f"--n: sizes must be positive integers, got {args.n!r}")
    if args.repeats < 1:
        raise ValueError(f"--repeats must be >= 1, got {args.repeats}")

    hungarian.solve([[0.0, 1.0], [1.0, 0.0]])  # warm the compiled kernel out of the timings

    rows = []
    for n in ns:
        k = max(1, min(args.k, n))
        points = datasets.gaussian_mixture(n, dim=args.dim, components=k, seed=seed)
        sizes = clustering.balanced_sizes(n, k)
        layout = clustering.build_layout(sizes)
        rng = clustering._restart_rng(seed, 0)
        centroids = points[rng.choice(n, size=k, replace=False)]

        assign_time = min(
            _timed(lambda: clustering.assignment_step(points, centroids, layout))
            for _ in range(args.repeats)
        )
        config = RunConfig(seed=seed, restarts=1)
        total_time, result = _timed_result(lambda: clustering.cluster(points, sizes, config))
        rows.append({"n": n, "k": k, "assign_seconds": assign_time,
                     "total_seconds": total_time, "iterations": result.iterations})

    if len(ns) >= 2:
        logs_n = np.log([row["n"] for row in rows])
        logs_t = np.log([max(row["assign_seconds"], 1e-9) for row in rows])
        exponent = float(np.polyfit(logs_n, logs_t, 1)[0])
    else:
        exponent = float("nan")

    print(f"{'n':>8} {'k':>4} {'assign_s':>12} {'total_s':>12} {'iters':>6}")
    for row in rows:
        print(f"{row['n']:>8} {row['k']:>4} {row['assign_seconds']:>12.6f} "
              f"{row['total_seconds']:>12.6f} {row['iterations']:>6}")
    print(f"assignment-step growth exponent: {exponent:.3f}")

    if args.out:
        os.makedirs(args.out, exist_ok=True)
        _write_json(os.path.join(args.out, "bench.json"),
                    {"rows": rows, "exponent": exponent, "seed": seed, "dim": args.dim})
    return 0


def _timed(fn) -> float:
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def _timed_result(fn):
    start = time.perf_counter()
    result = fn()
    return time.perf_counter() - start, result


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"cluster": _cmd_cluster, "seatplan": _cmd_seatplan, "bench": _cmd_bench}
    try:
        return handlers[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
