"""Leftmost-fit greedy placement with pluggable tile orderings.

The classic heuristic: walk the tile queue, dropping each tile at the
smallest offset where its numerals meet no occupied cell.  Orderings either
leave the queue alone, stable-sort it by numeral count or density, or try
several seeded shuffles and keep the best result.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .core import Instance, Objective, Placement, Tile, trim

ORDER_KINDS = ("none", "incfreq", "decfreq", "incdens", "decdens", "random")
DEFAULT_RESTARTS = 10


@dataclass(frozen=True)
class OrderStrategy:
    kind: str
    restarts: int = DEFAULT_RESTARTS
    seed: int | None = None

    def __post_init__(self):
        if self.kind not in ORDER_KINDS:
            raise ValueError(f"unknown ordering {self.kind!r}; choose from {ORDER_KINDS}")
        if self.kind == "random":
            if self.restarts < 1:
                raise ValueError("random ordering needs at least one restart")
            if self.seed is None:
                raise ValueError("random ordering needs an explicit seed")


def leftmost_fit(tiles: Sequence[Tile]) -> Placement:
    """Place each tile at the smallest collision-free offset, in queue order."""
    if not tiles:
        raise ValueError("tile queue is empty")
    occ = 0
    starts = []
    for tile in tiles:
        mask = tile.mask
        s = 0
        while (occ >> s) & mask:
            s += 1
        occ |= mask << s
        starts.append(s)
    return Placement(tuple(tiles), tuple(starts))


def fisher_yates(items: Sequence, rng: random.Random) -> list:
    """Seed-stable shuffle (explicit swaps, independent of library internals)."""
    out = list(items)
    for i in range(len(out) - 1, 0, -1):
        j = rng.randrange(i + 1)
        out[i], out[j] = out[j], out[i]
    return out


def objective_value(p: Placement, objective: Objective) -> int:
    if objective is Objective.MIN_LENGTH:
        return trim(p).length_raw
    return p.max_shift


def order_tiles(tiles: Sequence[Tile], strat: OrderStrategy) -> list[Tile]:
    """Apply a deterministic ordering; sorts are stable so ties keep queue order."""
    if strat.kind == "none":
        return list(tiles)
    if strat.kind == "incfreq":
        return sorted(tiles, key=lambda t: t.numeral_count)
    if strat.kind == "decfreq":
        return sorted(tiles, key=lambda t: t.numeral_count, reverse=True)
    if strat.kind == "incdens":
        return sorted(tiles, key=lambda t: t.density)
    if strat.kind == "decdens":
        return sorted(tiles, key=lambda t: t.density, reverse=True)
    raise ValueError(f"order_tiles cannot apply {strat.kind!r}")


def solve_greedy(inst: Instance, strat: OrderStrategy) -> Placement:
    """Leftmost-fit after ordering the instance queue by ``strat``.

    The random strategy runs ``restarts`` independent shuffles (restart ``k``
    is seeded with ``"<seed>:<k>"``, so results are reproducible and restarts
    are order-independent) and keeps the placement with the best objective
    value, first-found winning ties.
    """
    tiles = inst.flatten()
    if strat.kind != "random":
        return leftmost_fit(order_tiles(tiles, strat))
    best: Placement | None = None
    best_value = None
    for k in range(strat.restarts):
        rng = random.Random(f"{strat.seed}:{k}")
        p = leftmost_fit(fisher_yates(tiles, rng))
        value = objective_value(p, inst.objective)
        if best_value is None or value < best_value:
            best, best_value = p, value
    assert best is not None
    return best
