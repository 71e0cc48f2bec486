"""Command-line interface: ``uot1d {solve,generate,verify,bench}``.

Exit codes: 0 success, 2 usage or parse error, 3 infeasible instance,
4 oracle size guard exceeded, 5 cost line mismatch, 6 infeasible flow.
"""

from __future__ import annotations

import argparse
import csv
import statistics
import sys
import time

from . import __version__
from .encoding import check_monotonic, check_no_hole, decode
from .errors import InfeasibleError, InstanceError, OracleGuardError
from .fast import FastStats, solve, solve_fast
from .formats import (
    ParseError,
    format_instance,
    format_solution,
    parse_instance,
    parse_solution,
    read_text,
)
from .generate import random_raw_instance
from .instance import CostModel, Instance, build_instance
from .reference import BaselineStats, solve_mincostflow_oracle, solve_ssp_baseline

EXIT_PARSE = 2
EXIT_INFEASIBLE = 3
EXIT_GUARD = 4
EXIT_COST_MISMATCH = 5
EXIT_BAD_FLOW = 6

SOLVERS = {
    "fast": solve,
    "baseline": solve_ssp_baseline,
    "oracle": solve_mincostflow_oracle,
}

BENCH_FIELDS = [
    "size", "n", "m", "algorithm", "repeats", "median_s", "min_s", "decode_s",
    "iterations", "iteration_bound", "sink_events", "delta_events", "delta_bound",
    "cost", "status",
]


class CLIError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load_instance(path: str, model: CostModel, stdin) -> Instance:
    try:
        raw = parse_instance(read_text(path, stdin))
    except ParseError as exc:
        raise CLIError(EXIT_PARSE, f"{path}: {exc}") from None
    except (OSError, UnicodeDecodeError) as exc:
        raise CLIError(EXIT_PARSE, f"{path}: {exc}") from None
    try:
        return build_instance(raw.sources, raw.sinks, model)
    except InfeasibleError as exc:
        raise CLIError(EXIT_INFEASIBLE, f"{path}: {exc}") from None
    except InstanceError as exc:
        raise CLIError(EXIT_PARSE, f"{path}: {exc}") from None


def cmd_solve(args, out, stdin) -> int:
    inst = _load_instance(args.input, CostModel.from_name(args.cost_model), stdin)
    try:
        flow = SOLVERS[args.algorithm](inst)
    except OracleGuardError as exc:
        raise CLIError(EXIT_GUARD, str(exc)) from None
    triples = inst.expand_flow(flow.triples) if args.output == "flows" else None
    out.write(format_solution(flow.total_cost, triples))
    return 0


def cmd_generate(args, out, stdin) -> int:
    try:
        sources, sinks = random_raw_instance(
            args.seed, args.n, args.m, args.coord_max, args.mass_max, args.factor
        )
    except ValueError as exc:
        raise CLIError(EXIT_PARSE, str(exc)) from None
    comment = (
        f"seed={args.seed} n={args.n} m={args.m} coord_max={args.coord_max} "
        f"mass_max={args.mass_max} factor={args.factor}"
    )
    out.write(format_instance(sources, sinks, comment))
    return 0


def verify_solution(raw, model: CostModel, claimed: int, triples) -> dict:
    """Check a solution against raw (unmerged) instance data."""
    problems = []
    n, m = len(raw.sources), len(raw.sinks)
    row = [0] * n
    col = [0] * m
    for i, j, x in triples:
        if i >= n or j >= m:
            problems.append(f"index ({i + 1}, {j + 1}) out of range")
            continue
        if x <= 0:
            problems.append(f"non-positive amount at ({i + 1}, {j + 1})")
        row[i] += x
        col[j] += x
    for i, (got, (_, want)) in enumerate(zip(row, raw.sources)):
        if got != want:
            problems.append(f"source {i + 1} ships {got}, supply is {want}")
    for j, (got, (_, cap)) in enumerate(zip(col, raw.sinks)):
        if got > cap:
            problems.append(f"sink {j + 1} receives {got}, demand is {cap}")
    report = {"feasible": not problems, "problems": problems, "claimed": claimed}
    if problems:
        return report
    report["cost"] = sum(
        model(raw.sources[i][0] - raw.sinks[j][0]) * x for i, j, x in triples
    )
    inst = build_instance(raw.sources, raw.sinks, model)
    src_node = _node_of(inst.source_map)
    snk_node = _node_of(inst.sink_map)
    merged = {}
    for i, j, x in triples:
        key = (src_node[i], snk_node[j])
        merged[key] = merged.get(key, 0) + x
    merged = [(i, j, x) for (i, j), x in merged.items()]
    report["monotonic"] = check_monotonic(merged)
    report["no_hole"] = report["monotonic"] and check_no_hole(inst, merged)
    return report


def _node_of(index_map) -> dict[int, int]:
    node = {}
    for g in range(len(index_map.starts) - 1):
        for k in index_map.order[index_map.starts[g]:index_map.starts[g + 1]]:
            node[k] = g
    return node


def cmd_verify(args, out, stdin) -> int:
    model = CostModel.from_name(args.cost_model)
    try:
        raw = parse_instance(read_text(args.instance, stdin))
        claimed, triples = parse_solution(read_text(args.solution, stdin))
    except ParseError as exc:
        raise CLIError(EXIT_PARSE, str(exc)) from None
    except (OSError, UnicodeDecodeError) as exc:
        raise CLIError(EXIT_PARSE, str(exc)) from None
    try:
        build_instance(raw.sources, raw.sinks, model)
    except InfeasibleError as exc:
        raise CLIError(EXIT_INFEASIBLE, str(exc)) from None
    except InstanceError as exc:
        raise CLIError(EXIT_PARSE, str(exc)) from None
    report = verify_solution(raw, model, claimed, triples)
    yes = {True: "yes", False: "no"}
    out.write(f"feasible {yes[report['feasible']]}\n")
    for msg in report["problems"]:
        out.write(f"problem {msg}\n")
    if not report["feasible"]:
        return EXIT_BAD_FLOW
    out.write(f"cost {report['cost']} claimed {claimed}\n")
    out.write(f"monotonic {yes[report['monotonic']]}\n")
    out.write(f"no_hole {yes[report['no_hole']]}\n")
    return 0 if report["cost"] == claimed else EXIT_COST_MISMATCH


def run_bench(
    sizes,
    repeats: int = 3,
    seed: int = 0,
    algorithms=("fast",),
    baseline_max: int = 2000,
    factor: float = 1.5,
) -> list[dict]:
    """Time each algorithm on one seeded n = m = size instance per size.

    For ``fast`` the timed call is ``solve_fast`` (encoding plus cost); the
    linear decode to an explicit flow is timed separately as ``decode_s``.
    Costs of algorithms run on the same instance are cross-checked.
    """
    rows = []
    for size in sizes:
        sources, sinks = random_raw_instance(
            (seed, size), size, size, coord_max=10 * size, mass_max=10, factor=factor
        )
        inst = build_instance(sources, sinks)
        n, m = inst.n, inst.m
        costs = {}
        for algo in algorithms:
            row = dict.fromkeys(BENCH_FIELDS, "")
            row.update(size=size, n=n, m=m, algorithm=algo, repeats=repeats)
            try:
                times = []
                if algo == "fast":
                    solve_fast(inst)  # untimed warm-up, also triggers JIT compilation
                    for _ in range(repeats):
                        stats = FastStats()
                        t0 = time.perf_counter()
                        enc, cost = solve_fast(inst, stats=stats)
                        times.append(time.perf_counter() - t0)
                    t0 = time.perf_counter()
                    flow = decode(inst, enc)
                    row["decode_s"] = f"{time.perf_counter() - t0:.6f}"
                    if flow.total_cost != cost:
                        raise RuntimeError("decoded cost differs from tracked cost")
                    row.update(iterations=stats.iterations, sink_events=stats.sink_events,
                               delta_events=stats.delta_events,
                               iteration_bound=max(3 * m + n - 4, 0),
                               delta_bound=max(n + m - 3, 0))
                elif algo == "baseline" and max(n, m) > baseline_max:
                    row["status"] = "skipped"
                    rows.append(row)
                    continue
                else:
                    for _ in range(repeats):
                        bstats = BaselineStats()
                        t0 = time.perf_counter()
                        if algo == "baseline":
                            cost = solve_ssp_baseline(inst, stats=bstats).total_cost
                        else:
                            cost = solve_mincostflow_oracle(inst).total_cost
                        times.append(time.perf_counter() - t0)
                    if algo == "baseline":
                        row["iterations"] = bstats.sends
                row.update(median_s=f"{statistics.median(times):.6f}",
                           min_s=f"{min(times):.6f}", cost=cost)
                costs[algo] = cost
                row["status"] = "ok" if len(set(costs.values())) == 1 else "cost-mismatch"
            except OracleGuardError:
                row["status"] = "skipped"
            except Exception as exc:  # per-cell failures are reported, not fatal
                row["status"] = f"error: {exc}"
            rows.append(row)
    return rows


def cmd_bench(args, out, stdin) -> int:
    if not args.sizes:
        raise CLIError(EXIT_PARSE, "bench needs at least one size")
    rows = run_bench(args.sizes, args.repeats, args.seed, args.algorithms,
                     args.baseline_max, args.factor)
    if args.format == "csv":
        writer = csv.DictWriter(out, fieldnames=BENCH_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    else:
        cols = ["size", "algorithm", "median_s", "min_s", "decode_s", "iterations",
                "iteration_bound", "sink_events", "delta_events", "delta_bound", "status"]
        table = [cols] + [[str(r[c]) for c in cols] for r in rows]
        widths = [max(len(line[k]) for line in table) for k in range(len(cols))]
        for line in table:
            out.write("  ".join(cell.rjust(w) for cell, w in zip(line, widths)).rstrip() + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uot1d", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("input", help="instance file, or - for stdin")
    p.add_argument("--algorithm", choices=sorted(SOLVERS), default="fast")
    p.add_argument("--cost-model", choices=["l1", "squared"], default="l1")
    p.add_argument("--output", choices=["cost", "flows"], default="flows")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("generate", help="write a random instance file")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--coord-max", type=int, default=100)
    p.add_argument("--mass-max", type=int, default=10)
    p.add_argument("--factor", type=float, default=1.5,
                   help="total demand is at least ceil(factor * total supply)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="check a solution file against an instance file")
    p.add_argument("instance")
    p.add_argument("solution")
    p.add_argument("--cost-model", choices=["l1", "squared"], default="l1")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time solvers on seeded instances")
    p.add_argument("--sizes", type=int, nargs="+", default=[10_000, 100_000, 1_000_000])
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--algorithms", nargs="+", choices=sorted(SOLVERS), default=["fast"])
    p.add_argument("--baseline-max", type=int, default=2000,
                   help="skip the baseline when n or m exceeds this")
    p.add_argument("--factor", type=float, default=1.5)
    p.add_argument("--format", choices=["csv", "table"], default="csv")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None, out=None, stdin=None) -> int:
    out = out if out is not None else sys.stdout
    stdin = stdin if stdin is not None else sys.stdin
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out, stdin)
    except CLIError as exc:
        print(f"uot1d: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
