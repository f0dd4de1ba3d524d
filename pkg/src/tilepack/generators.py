"""Deterministic instance builders: adversarial families, experiment inputs,
hardness-reduction gadgets, and seeded random instances.

Every generator returns plain :class:`~tilepack.core.Instance` data; type
lines are emitted in queue order (count-1 lines where the queue order is part
of the construction), so writing the instance to a file and solving it with
the greedy ``none`` ordering replays the intended queue.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass
from typing import Sequence

from .core import (
    Instance,
    Objective,
    Tile,
    TileType,
    instance_from_tiles,
)
from .heuristics import leftmost_fit

logger = logging.getLogger(__name__)


class BudgetExceeded(RuntimeError):
    """Construction refused: parameters past the intended desk scale."""


class SidonSearchFailed(RuntimeError):
    """No difference-distinct base set found inside the allowed range."""


def periodic_tile(gap: int, repeats: int) -> Tile:
    """``(# . ^gap)^repeats #``: a numeral every ``gap + 1`` cells."""
    return Tile.from_offsets(i * (gap + 1) for i in range(repeats + 1))


def gen_lower_bound(delta: int) -> tuple[Instance, tuple[Tile, ...]]:
    """Adversarial two-type family on which leftmost-fit is far from optimal.

    ``delta - 1`` period-``delta - 1`` tiles (X) and ``delta`` period-``delta``
    tiles (Y), queued alternately Y, X, Y, X, ...  The co-prime periods force
    the greedy strategy to nearly concatenate the tiles, while grouping each
    type densely yields a gap-free (hence optimal) placement.
    Returns the instance and the alternating queue.
    """
    if delta < 4:
        raise ValueError("family needs delta >= 4")
    x_tile = periodic_tile(delta - 2, delta + 1)
    y_tile = periodic_tile(delta - 1, delta)
    queue_shapes = []
    for i in range(delta):
        queue_shapes.append(y_tile)
        if i < delta - 1:
            queue_shapes.append(x_tile)
    inst = instance_from_tiles(queue_shapes)
    return inst, inst.flatten()


def gen_ziegler_adversary(delta: int) -> Instance:
    """Same adversary with tile lengths scaled so that sorting by descending
    numeral count recreates the alternating order: tile ``X_x`` repeats its
    period ``2x + 1`` times and ``Y_y`` repeats ``2y`` times, giving the
    strictly interleaved numeral counts 2x+2 and 2y+1."""
    if delta < 4:
        raise ValueError("family needs delta >= 4")
    tiles = [periodic_tile(delta - 2, 2 * x + 1) for x in range(1, delta - 1)]
    tiles += [periodic_tile(delta - 1, 2 * y) for y in range(1, delta)]
    return instance_from_tiles(tiles)


def experiment_tiles(c: int, g: int) -> tuple[Tile, Tile]:
    """The two equal-length, equal-count tile shapes of the first experiment.

    X puts a numeral every ``g + 1`` cells; Y spaces them every ``g`` cells
    and ends with a single numeral ``c`` cells after its periodic part.  Both
    have length ``c * (g + 1) + 1`` and ``c + 1`` numerals, so every stable
    sorting strategy leaves an X,Y,... queue untouched.
    """
    if c < 2 or g < 2:
        raise ValueError("experiment tiles need c >= 2 and g >= 2")
    x_tile = Tile.from_offsets(i * (g + 1) for i in range(c + 1))
    y_tile = Tile.from_offsets([i * g for i in range(c)] + [c * g + c])
    assert x_tile.length == y_tile.length == c * (g + 1) + 1
    assert x_tile.numeral_count == y_tile.numeral_count == c + 1
    return x_tile, y_tile


def gen_experiment_two(c: int, g: int, n: int) -> tuple[Instance, tuple[Tile, ...]]:
    """First experiment family: ``n/2`` X and Y tiles queued alternately."""
    if n < 2 or n % 2:
        raise ValueError("n must be a positive even tile count")
    x_tile, y_tile = experiment_tiles(c, g)
    queue = [x_tile, y_tile] * (n // 2)
    inst = instance_from_tiles(queue)
    return inst, inst.flatten()


def hole_runs(occupancy: int) -> list[tuple[int, int]]:
    """Maximal runs of unoccupied cells inside the occupied span: (start, length)."""
    if occupancy == 0:
        return []
    hi = occupancy.bit_length()
    lo = (occupancy & -occupancy).bit_length() - 1
    runs = []
    i = lo
    while i < hi:
        if (occupancy >> i) & 1:
            i += 1
            continue
        j = i
        while j < hi and not (occupancy >> j) & 1:
            j += 1
        runs.append((i, j - i))
        i = j
    return runs


def gen_experiment_three(c: int, g: int, n: int) -> tuple[Instance, tuple[Tile, ...]]:
    """Second experiment family: X, Y, a third sparse type Z, plus fillers.

    Z stretches ``c(g - 2) + 2gc + 3`` cells with only three numerals.  The
    filler tiles are solid runs covering exactly the holes left by
    leftmost-fit on the X,Y,Z,... queue, so the queue as given (fillers last)
    packs with no holes at all: the minimal solution has no holes and the
    as-given order achieves it, while shuffled orders rarely do.
    """
    if g < 3:
        raise ValueError("third tile type needs g >= 3")
    if n < 3 or n % 3:
        raise ValueError("n must be a positive multiple of 3")
    x_tile, y_tile = experiment_tiles(c, g)
    z_tile = Tile.from_offsets([0, c * (g - 2) + 1, c * (g - 2) + 2 * g * c + 2])
    if z_tile.numeral_count != x_tile.numeral_count:
        logger.info(
            "experiment-three Z tile has %d numerals vs %d for X and Y",
            z_tile.numeral_count,
            x_tile.numeral_count,
        )
    base = [x_tile, y_tile, z_tile] * (n // 3)
    layout = leftmost_fit(base)
    fillers = [
        Tile.from_offsets(range(length)) for _start, length in hole_runs(layout.occupancy)
    ]
    inst = instance_from_tiles(base + fillers)
    return inst, inst.flatten()


@dataclass(frozen=True)
class CoupledTask:
    """Two busy periods of ``a`` and ``b`` slots, exactly ``gap`` slots apart."""

    a: int
    b: int
    gap: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError("sub-task lengths must be positive")
        if self.gap < 0:
            raise ValueError("gap must be non-negative")

    def tile(self) -> Tile:
        busy = list(range(self.a)) + list(
            range(self.a + self.gap, self.a + self.gap + self.b)
        )
        return Tile.from_offsets(busy)


def gen_coupled_tasks(tasks: Sequence[CoupledTask], makespan: int) -> Instance:
    """Single-machine coupled-task scheduling as a length-decision instance."""
    if not tasks:
        raise ValueError("need at least one task")
    return instance_from_tiles(
        [task.tile() for task in tasks], bound=makespan
    )


@dataclass(frozen=True)
class CliqueGraph:
    vertex_count: int
    edges: frozenset[tuple[int, int]]
    k: int

    def __post_init__(self):
        if self.vertex_count < 1:
            raise ValueError("graph needs at least one vertex")
        if not 1 <= self.k <= self.vertex_count:
            raise ValueError("clique size must be within the vertex range")
        for u, v in self.edges:
            if not (0 <= u < v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) must satisfy 0 <= u < v < vertex count")


def check_sidon(values: Sequence[int]) -> bool:
    """All pair sums distinct and all triple sums distinct (with repetition)."""
    vals = list(values)
    pair_sums = set()
    for i, a in enumerate(vals):
        for b in vals[i:]:
            s = a + b
            if s in pair_sums:
                return False
            pair_sums.add(s)
    triple_sums = set()
    for i, a in enumerate(vals):
        for j in range(i, len(vals)):
            for b in vals[j:]:
                s = a + vals[j] + b
                if s in triple_sums:
                    return False
                triple_sums.add(s)
    return True


def sidon_b3_set(size: int, limit: int) -> list[int]:
    """Greedy smallest-feasible integers with distinct pair and triple sums.

    Raises SidonSearchFailed if the set cannot be completed below ``limit``.
    The result is re-checked directly; the greedy rule is not trusted.
    """
    chosen: list[int] = []
    pair_sums: set[int] = set()
    triple_sums: set[int] = set()
    candidate = 0
    while len(chosen) < size:
        if candidate >= limit:
            raise SidonSearchFailed(
                f"no {size}-element difference-distinct set below {limit}"
            )
        new_pairs = {candidate + b for b in chosen} | {2 * candidate}
        ok = len(new_pairs) == len(chosen) + 1 and not (new_pairs & pair_sums)
        if ok:
            all_pairs = pair_sums | new_pairs
            new_triples = {candidate + s for s in all_pairs}
            ok = not (new_triples & triple_sums)
        if ok:
            chosen.append(candidate)
            pair_sums |= new_pairs
            triple_sums |= new_triples
        candidate += 1
    if not check_sidon(chosen):
        raise SidonSearchFailed("greedy base set failed the direct sum check")
    return chosen


def clique_shift_bound(vertex_count: int) -> int:
    """Shift budget used by the clique reduction: 2^(3*ceil(log2 v))."""
    if vertex_count == 1:
        return 1
    return 2 ** (3 * math.ceil(math.log2(vertex_count)))


def gen_clique_reduction(graph: CliqueGraph, max_vertices: int = 6) -> Instance:
    """Clique decision as a single-type max-shift decision instance.

    Distinct-sum base integers ``b_i`` turn edges into the difference set
    ``F = {b_i - b_j}``; the tile spaces the complement values ``2*rho``
    apart so that two copies of it tolerate exactly the shifts in ``F``.
    ``k`` copies then admit pairwise collision-free shifts within ``rho``
    iff the graph has a ``k``-clique.
    """
    if graph.vertex_count > max_vertices:
        raise BudgetExceeded(
            f"clique reduction capped at {max_vertices} vertices "
            f"(got {graph.vertex_count})"
        )
    rho = clique_shift_bound(graph.vertex_count)
    base = sidon_b3_set(graph.vertex_count, rho)
    diffs = {abs(base[u] - base[v]) for u, v in graph.edges}
    complement = [d for d in range(1, rho + 1) if d not in diffs]
    offsets = []
    for u, comp in enumerate(complement):
        offsets.append(2 * u * rho)
        offsets.append(2 * u * rho + comp)
    tile = Tile.from_offsets(offsets)
    return Instance(
        (TileType(tile, graph.k),),
        Objective.MIN_MAX_SHIFT,
        bound=rho,
        padded_length=2 * rho * len(complement),
    )


def small_differences(offsets: Sequence[int], limit: int) -> set[int]:
    """All pairwise differences of ``offsets`` that are <= ``limit``."""
    vals = sorted(offsets)
    out: set[int] = set()
    for i, a in enumerate(vals):
        for b in vals[i + 1:]:
            d = b - a
            if d > limit:
                break
            out.add(d)
    return out


def disjoint_shifts_exist(tile: Tile, copies: int, rho: int) -> bool:
    """Decision: can ``copies`` translates of the tile within shift ``rho``
    be made pairwise collision-free?

    Exhaustive search over shift sets, normalised to smallest shift 0 (any
    solution stays one after subtracting its minimum).  Two translates
    collide iff their shift difference is a pairwise difference of the
    numeral offsets, so candidates beyond 0 are exactly the non-differences.
    """
    if copies == 1:
        return True
    forbidden = small_differences(sorted(tile.numerals), rho)
    candidates = [d for d in range(1, rho + 1) if d not in forbidden]

    def extend(chosen: list[int], remaining: list[int]) -> bool:
        if len(chosen) == copies:
            return True
        for idx, cand in enumerate(remaining):
            if all(abs(cand - c) not in forbidden for c in chosen[1:]):
                if extend(chosen + [cand], remaining[idx + 1:]):
                    return True
        return False

    return extend([0], candidates)


def gen_inapprox_gadget(base: Instance, delta: int, rho: int) -> Instance:
    """Doubling gadget: every base tile becomes ``T . ^delta T`` and a guard
    tile ``# .^rho #^delta .^rho #`` is added; the decision bound is the
    guard's length, which the doubled tiles can only meet by hiding inside
    the guard's wildcard gaps."""
    if delta < base.max_tile_length:
        raise ValueError("delta must be at least the longest base tile")
    if rho < 1:
        raise ValueError("rho must be positive")
    types = []
    for ttype in base.types:
        shape = ttype.shape
        doubled = Tile.from_offsets(
            set(shape.numerals) | {o + shape.length + delta for o in shape.numerals}
        )
        types.append(TileType(doubled, ttype.count))
    guard = Tile.from_offsets(
        {0} | set(range(rho + 1, rho + delta + 1)) | {2 * rho + delta + 1}
    )
    types.append(TileType(guard, 1))
    return Instance(tuple(types), Objective.MIN_LENGTH, bound=2 * rho + delta + 2)


def gen_random(
    seed: int,
    n: int,
    length_range: tuple[int, int] = (1, 6),
    density_range: tuple[float, float] = (0.2, 1.0),
    objective: Objective = Objective.MIN_LENGTH,
) -> Instance:
    """Seeded random trimmed tiles; equal shapes merge into one type."""
    if n < 1:
        raise ValueError("need at least one tile")
    lo, hi = length_range
    if not 1 <= lo <= hi:
        raise ValueError("bad length range")
    rng = random.Random(seed)
    tiles = []
    for _ in range(n):
        length = rng.randint(lo, hi)
        if length == 1:
            tiles.append(Tile.from_offsets([0]))
            continue
        density = rng.uniform(*density_range)
        interior = (i for i in range(1, length - 1) if rng.random() < density)
        tiles.append(Tile.from_offsets({0, length - 1} | set(interior)))
    order: list[Tile] = []
    counts: dict = {}
    for tile in tiles:
        key = tile.shape_key
        if key not in counts:
            counts[key] = 0
            order.append(tile)
        counts[key] += 1
    types = tuple(TileType(t, counts[t.shape_key]) for t in order)
    padded = max(t.length for t in tiles) if objective is Objective.MIN_MAX_SHIFT else None
    return Instance(types, objective, padded_length=padded)
