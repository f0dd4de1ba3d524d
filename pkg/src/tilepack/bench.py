"""Benchmark sweeps over the experiment families, with CSV output.

Each sweep point builds one instance and runs every requested ordering of
the greedy solver on it.  Reported values are never taken from the solver:
the emitted placement is re-verified and re-measured.  Rows are sorted by
(family, parameters, algo, order, seed) before writing so concurrent or
re-ordered execution cannot change the file.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from pathlib import Path

from .core import Instance, Objective, metrics
from .heuristics import ORDER_KINDS, OrderStrategy, solve_greedy
from .generators import gen_experiment_three, gen_experiment_two, gen_lower_bound

CSV_HEADER = "family,param_c,param_g,param_delta,n,algo,order,seed,objective,value,runtime_ms,status"

DEFAULT_ORDERS = ORDER_KINDS


@dataclass(frozen=True)
class BenchRow:
    family: str
    param_c: int | None
    param_g: int | None
    param_delta: int | None
    n: int | None
    algo: str
    order: str
    seed: int
    objective: str
    value: int | None
    runtime_ms: int
    status: str

    def csv(self) -> str:
        def cell(v):
            return "" if v is None else str(v)

        return ",".join(
            cell(v)
            for v in (
                self.family,
                self.param_c,
                self.param_g,
                self.param_delta,
                self.n,
                self.algo,
                self.order,
                self.seed,
                self.objective,
                self.value,
                self.runtime_ms,
                self.status,
            )
        )

    @property
    def sweep_x(self) -> int:
        """The swept parameter: n for exp2, c for exp3, delta for lowerbound."""
        if self.family == "exp3":
            assert self.param_c is not None
            return self.param_c
        if self.family == "lowerbound":
            assert self.param_delta is not None
            return self.param_delta
        assert self.n is not None
        return self.n


def _sort_key(row: BenchRow):
    none_low = lambda v: -1 if v is None else v
    return (
        row.family,
        none_low(row.param_c),
        none_low(row.param_g),
        none_low(row.param_delta),
        none_low(row.n),
        row.algo,
        row.order,
        row.seed,
    )


def _measure_point(
    inst: Instance,
    family: str,
    params: dict,
    orders,
    seed: int,
    restarts: int,
) -> list[BenchRow]:
    rows = []
    for order in orders:
        common = dict(
            family=family,
            param_c=params.get("c"),
            param_g=params.get("g"),
            param_delta=params.get("delta"),
            n=params.get("n"),
            algo="greedy",
            order=order,
            seed=seed,
            objective=str(inst.objective),
        )
        started = time.monotonic()
        try:
            if order == "random":
                strat = OrderStrategy("random", restarts=restarts, seed=seed)
            else:
                strat = OrderStrategy(order)
            placement = solve_greedy(inst, strat)
            measured = metrics(placement, inst)
            if inst.objective is Objective.MIN_LENGTH:
                value = measured.trimmed_length
            else:
                value = measured.max_shift
            elapsed = int((time.monotonic() - started) * 1000)
            rows.append(BenchRow(value=value, runtime_ms=elapsed, status="ok", **common))
        except Exception as exc:  # per-point failures land in the CSV
            elapsed = int((time.monotonic() - started) * 1000)
            rows.append(
                BenchRow(
                    value=None,
                    runtime_ms=elapsed,
                    status=f"error:{type(exc).__name__}",
                    **common,
                )
            )
    return rows


def sweep_exp2(
    c: int,
    g: int,
    n_values,
    seed: int,
    restarts: int = 10,
    orders=DEFAULT_ORDERS,
) -> list[BenchRow]:
    rows = []
    for n in n_values:
        inst, _ = gen_experiment_two(c, g, n)
        rows += _measure_point(inst, "exp2", {"c": c, "g": g, "n": n}, orders, seed, restarts)
    return sorted(rows, key=_sort_key)


def sweep_exp3(
    c_values,
    g: int,
    n: int,
    seed: int,
    restarts: int = 10,
    orders=DEFAULT_ORDERS,
) -> list[BenchRow]:
    rows = []
    for c in c_values:
        inst, _ = gen_experiment_three(c, g, n)
        rows += _measure_point(inst, "exp3", {"c": c, "g": g, "n": n}, orders, seed, restarts)
    return sorted(rows, key=_sort_key)


def sweep_lowerbound(
    delta_values,
    seed: int,
    restarts: int = 10,
    orders=DEFAULT_ORDERS,
) -> list[BenchRow]:
    rows = []
    for delta in delta_values:
        inst, _ = gen_lower_bound(delta)
        rows += _measure_point(
            inst, "lowerbound", {"delta": delta, "n": inst.tile_count}, orders, seed, restarts
        )
    return sorted(rows, key=_sort_key)


def rows_to_csv(rows) -> str:
    return "\n".join([CSV_HEADER] + [r.csv() for r in rows]) + "\n"


def write_csv(rows, path: str | Path) -> None:
    Path(path).write_text(rows_to_csv(rows), encoding="utf-8")


def rows_to_points(rows) -> str:
    """Per-point plot coordinates: one ``family,x,order,value`` line per ok row."""
    lines = ["family,x,order,value"]
    for row in rows:
        if row.status != "ok":
            continue
        lines.append(f"{row.family},{row.sweep_x},{row.order},{row.value}")
    return "\n".join(lines) + "\n"


def write_points(rows, path: str | Path) -> None:
    Path(path).write_text(rows_to_points(rows), encoding="utf-8")
