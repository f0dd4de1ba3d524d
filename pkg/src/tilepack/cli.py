"""Command-line front end: solve, verify, gen, and bench subcommands.

Exit codes: 0 success, 2 a solver refused its size/state budget, 1 any
other error (bad files, bad flags, failed verification).  Machine-readable
errors go to stderr as ``error: <Kind>: <detail>``.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys

from .bench import (
    DEFAULT_ORDERS,
    sweep_exp2,
    sweep_exp3,
    sweep_lowerbound,
    write_csv,
    write_points,
)
from .core import BoundExceeded, Instance, Objective, align_placement, metrics, verify
from .exact import (
    CapExceeded,
    STATE_CAP_ENV,
    SolveResult,
    brute_force,
    dp_doubling,
    dp_general,
    dp_single_type,
)
from .files import (
    FormatError,
    load_instance,
    load_placement,
    save_instance,
    save_placement,
    write_instance,
)
from .generators import (
    BudgetExceeded,
    CliqueGraph,
    CoupledTask,
    SidonSearchFailed,
    gen_clique_reduction,
    gen_coupled_tasks,
    gen_experiment_three,
    gen_experiment_two,
    gen_inapprox_gadget,
    gen_lower_bound,
    gen_random,
    gen_ziegler_adversary,
)
from .heuristics import ORDER_KINDS, OrderStrategy, objective_value, solve_greedy

OBJECTIVE_FLAGS = {"length": Objective.MIN_LENGTH, "maxshift": Objective.MIN_MAX_SHIFT}


def _state_cap(args) -> int | None:
    if args.state_cap is not None:
        return args.state_cap
    env = os.environ.get(STATE_CAP_ENV)
    return int(env) if env else None


def _apply_objective(inst: Instance, flag: str | None, padded: int | None) -> Instance:
    if flag is None and padded is None:
        return inst
    objective = OBJECTIVE_FLAGS[flag] if flag else inst.objective
    if padded is None:
        padded = inst.padded_length
    if objective is Objective.MIN_MAX_SHIFT and padded is None:
        padded = inst.max_tile_length
    return dataclasses.replace(inst, objective=objective, padded_length=padded)


def cmd_solve(args) -> int:
    inst = load_instance(args.instance)
    inst = _apply_objective(inst, args.objective, args.padded)
    cap = _state_cap(args)

    if args.algo == "dp":
        result = dp_general(inst, state_cap=cap)
    elif args.algo == "dp1":
        if len({t.shape.shape_key for t in inst.types}) != 1:
            raise ValueError("--algo dp1 needs a single tile type")
        shape = inst.types[0].shape
        result = dp_single_type(
            inst.tile_count,
            shape,
            inst.objective,
            padded_length=inst.padded_length,
            state_cap=cap,
        )
    elif args.algo == "doubling":
        if len({t.shape.shape_key for t in inst.types}) != 1:
            raise ValueError("--algo doubling needs a single tile type")
        if inst.objective is not Objective.MIN_LENGTH:
            raise ValueError("--algo doubling only solves the length objective")
        result = dp_doubling(inst.tile_count, inst.types[0].shape, state_cap=cap)
    elif args.algo == "brute":
        result = brute_force(
            inst,
            offset_cap=args.offset_cap,
            max_offset=args.offset_cap if args.offset_cap is not None else 16,
        )
    elif args.algo == "greedy":
        strat = (
            OrderStrategy("random", restarts=args.restarts, seed=args.seed)
            if args.order == "random"
            else OrderStrategy(args.order)
        )
        placement = solve_greedy(inst, strat)
        result = SolveResult(objective_value(placement, inst.objective), placement)
    else:
        raise ValueError(f"unknown algorithm {args.algo!r}")

    value = result.value
    if result.placement is not None:
        bad = [v for v in verify(result.placement, inst) if not isinstance(v, BoundExceeded)]
        if bad:
            raise RuntimeError(f"solver produced an invalid witness: {bad}")
        value = objective_value(result.placement, inst.objective)
        if value != result.value:
            raise RuntimeError(
                f"witness value {value} disagrees with reported {result.value}"
            )
        if args.witness:
            save_placement(align_placement(result.placement, inst), args.witness)
    elif args.witness:
        print("note: value-only algorithm, no witness written", file=sys.stderr)

    if result.stats is not None:
        print(
            f"states={result.stats.states_created}"
            f" peak_level={result.stats.peak_level_states}"
            f" live_levels={result.stats.max_live_levels}",
            file=sys.stderr,
        )
    if inst.bound is not None:
        status = "satisfied" if value <= inst.bound else "exceeded"
        print(f"bound {inst.bound}: {status}", file=sys.stderr)
    print(value)
    return 0


def cmd_verify(args) -> int:
    inst = load_instance(args.instance)
    placement = load_placement(args.witness, inst)
    violations = verify(placement, inst)
    structural = [v for v in violations if not isinstance(v, BoundExceeded)]
    if not structural:
        m = metrics(placement, inst)
        print(
            f"trimmed_length={m.trimmed_length} max_shift={m.max_shift}"
            f" max_end={m.max_end} hole_count={m.hole_count}"
        )
    if violations:
        for v in violations:
            print(f"violation: {v}")
        return 1
    print("ok")
    return 0


def _parse_edges(text: str) -> frozenset[tuple[int, int]]:
    edges = set()
    if text:
        for part in text.split(","):
            u, _, v = part.partition("-")
            a, b = int(u), int(v)
            edges.add((min(a, b), max(a, b)))
    return frozenset(edges)


def _parse_tasks(texts) -> list[CoupledTask]:
    tasks = []
    for text in texts:
        a, gap, b = (int(x) for x in text.split(":"))
        tasks.append(CoupledTask(a, b, gap))
    return tasks


def cmd_gen(args) -> int:
    if args.family == "lowerbound":
        inst, _ = gen_lower_bound(args.delta)
    elif args.family == "ziegler":
        inst = gen_ziegler_adversary(args.delta)
    elif args.family == "exp2":
        inst, _ = gen_experiment_two(args.c, args.g, args.n)
    elif args.family == "exp3":
        inst, _ = gen_experiment_three(args.c, args.g, args.n)
    elif args.family == "coupled":
        if not args.task:
            raise ValueError("coupled family needs at least one --task a:gap:b")
        if args.makespan is None:
            raise ValueError("coupled family needs --makespan")
        inst = gen_coupled_tasks(_parse_tasks(args.task), args.makespan)
    elif args.family == "clique":
        graph = CliqueGraph(args.vertices, _parse_edges(args.edges), args.k)
        inst = gen_clique_reduction(graph)
    elif args.family == "gap":
        base = load_instance(args.base)
        inst = gen_inapprox_gadget(base, args.delta, args.rho)
    elif args.family == "random":
        inst = gen_random(
            args.seed,
            args.n,
            (args.min_len, args.max_len),
            (args.min_density, args.max_density),
        )
    else:
        raise ValueError(f"unknown family {args.family!r}")

    if args.output:
        save_instance(inst, args.output)
    else:
        sys.stdout.write(write_instance(inst))
    return 0


def cmd_bench(args) -> int:
    orders = args.orders.split(",") if args.orders else list(DEFAULT_ORDERS)
    for order in orders:
        if order not in ORDER_KINDS:
            raise ValueError(f"unknown ordering {order!r}")
    def sweep_values(text: str) -> list[int]:
        return [int(x) for x in text.split(",") if x.strip()]

    if args.family == "exp2":
        rows = sweep_exp2(
            args.c, args.g, sweep_values(args.n_list), args.seed, args.restarts, orders
        )
    elif args.family == "exp3":
        rows = sweep_exp3(
            sweep_values(args.c_list), args.g, args.n, args.seed, args.restarts, orders
        )
    elif args.family == "lowerbound":
        rows = sweep_lowerbound(sweep_values(args.delta_list), args.seed, args.restarts, orders)
    else:
        raise ValueError(f"unknown bench family {args.family!r}")
    write_csv(rows, args.output)
    if args.points:
        write_points(rows, args.points)
    if args.plot:
        from .plotting import render_bench_figure

        render_bench_figure(rows, args.plot)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tilepack",
        description="Solvers and benchmarks for one-dimensional tile packing.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve an instance file")
    p_solve.add_argument("instance")
    p_solve.add_argument(
        "--algo",
        choices=("dp", "dp1", "doubling", "brute", "greedy"),
        default="dp",
    )
    p_solve.add_argument("--objective", choices=tuple(OBJECTIVE_FLAGS))
    p_solve.add_argument("--padded", type=int, help="padded length for maxshift")
    p_solve.add_argument("--state-cap", type=int, dest="state_cap")
    p_solve.add_argument("--offset-cap", type=int, dest="offset_cap")
    p_solve.add_argument("--order", choices=ORDER_KINDS, default="none")
    p_solve.add_argument("--restarts", type=int, default=10)
    p_solve.add_argument("--seed", type=int)
    p_solve.add_argument("--witness", help="write the witness placement here")
    p_solve.set_defaults(func=cmd_solve)

    p_verify = sub.add_parser("verify", help="check a witness against an instance")
    p_verify.add_argument("instance")
    p_verify.add_argument("witness")
    p_verify.set_defaults(func=cmd_verify)

    p_gen = sub.add_parser("gen", help="generate an instance file")
    p_gen.add_argument(
        "--family",
        required=True,
        choices=(
            "lowerbound",
            "ziegler",
            "exp2",
            "exp3",
            "coupled",
            "clique",
            "gap",
            "random",
        ),
    )
    p_gen.add_argument("--delta", type=int, default=4)
    p_gen.add_argument("--c", type=int, default=2)
    p_gen.add_argument("--g", type=int, default=3)
    p_gen.add_argument("--n", type=int, default=6)
    p_gen.add_argument("--task", action="append", help="coupled task as a:gap:b")
    p_gen.add_argument("--makespan", type=int)
    p_gen.add_argument("--vertices", type=int, default=3)
    p_gen.add_argument("--edges", default="", help="clique edges as 0-1,1-2")
    p_gen.add_argument("--k", type=int, default=1)
    p_gen.add_argument("--base", help="base instance file for the gap family")
    p_gen.add_argument("--rho", type=int, default=1)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--min-len", type=int, default=1, dest="min_len")
    p_gen.add_argument("--max-len", type=int, default=6, dest="max_len")
    p_gen.add_argument("--min-density", type=float, default=0.2, dest="min_density")
    p_gen.add_argument("--max-density", type=float, default=1.0, dest="max_density")
    p_gen.add_argument("-o", "--output")
    p_gen.set_defaults(func=cmd_gen)

    p_bench = sub.add_parser("bench", help="run a greedy benchmark sweep")
    p_bench.add_argument("--family", required=True, choices=("exp2", "exp3", "lowerbound"))
    p_bench.add_argument("--c", type=int, default=3)
    p_bench.add_argument("--g", type=int, default=3)
    p_bench.add_argument("--n", type=int, default=12)
    p_bench.add_argument("--n-list", default="4,8,12", dest="n_list")
    p_bench.add_argument("--c-list", default="2,3,4,6", dest="c_list")
    p_bench.add_argument("--delta-list", default="4,5,6,7", dest="delta_list")
    p_bench.add_argument("--orders", help="comma-separated subset of orderings")
    p_bench.add_argument("--seed", type=int, required=True)
    p_bench.add_argument("--restarts", type=int, default=10)
    p_bench.add_argument("-o", "--output", required=True)
    p_bench.add_argument("--points", help="write plot coordinates here")
    p_bench.add_argument("--plot", help="render a figure here (png/pdf)")
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CapExceeded, BudgetExceeded) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (FormatError, SidonSearchFailed, OSError, ValueError, RuntimeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
