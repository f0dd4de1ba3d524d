"""Exact solvers: suffix-window dynamic programs and a brute-force oracle.

All programs share one idea: a partial placement only interacts with future
tiles through the occupancy of its last ``w`` cells (``w`` = longest tile),
because a tile added later never needs to start more than ``w`` cells before
the current right frontier.  States therefore pair a *window* (w-bit
occupancy of the frontier) with how many tiles of each type were used (a
Parikh vector); the stored value is the best length achieved for that state.

Window bookkeeping, precisely: a state's value ``lam`` is the span of the
partial placement, anchored so its first occupied cell is cell 0 and its
last occupied cell is cell ``lam - 1``.  The window covers cells
``[lam - w .. lam - 1]``; when ``lam < w`` the leading window cells lie
before the anchor and are kept empty.  Adding a tile at window offset
``shift``:

* its absolute start is ``lam - w + shift``;
* if that is negative the tile sticks out to the left of the anchor, so the
  whole placement re-anchors and the new span is ``max(w - shift, t)`` for a
  tile of effective length ``t`` (growth bookkeeping that ignored this would
  undercount, crediting the tile with cells that do not exist);
* otherwise the span grows by ``max(0, shift + t - w)``.

Both objectives run through the same engine.  For the max-shift objective
every tile is treated as right-padded to the instance's common length ``L``,
so each insertion's padded end lands exactly on the new frontier; the
maximum start then always equals ``span - L`` and minimising the span
minimises the maximum shift.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .core import (
    BoundExceeded,
    Instance,
    Objective,
    Placement,
    Tile,
    TileType,
    align_placement,
    trim,
    verify,
)
from .heuristics import leftmost_fit, objective_value

DEFAULT_STATE_CAP = 1 << 20
MAX_WINDOW_BITS = 20
DOUBLING_MAX_TILE_LENGTH = 6  # 16**6 == 2**24 potential boundary pairs
STATE_CAP_ENV = "TILEPACK_STATE_CAP"


class CapExceeded(RuntimeError):
    """A solver refused to run past its configured state or size budget."""

    def __init__(self, message: str, state_count: int | None = None):
        if state_count is not None:
            message = f"{message} (states so far: {state_count})"
        super().__init__(message)
        self.state_count = state_count


@dataclass
class DPStats:
    states_created: int = 0
    peak_level_states: int = 0
    max_live_levels: int = 0
    levels: int = 0


@dataclass(frozen=True)
class SolveResult:
    value: int
    placement: Placement | None
    stats: DPStats | None = None


def resolve_state_cap(state_cap: int | None) -> int:
    if state_cap is not None:
        return state_cap
    env = os.environ.get(STATE_CAP_ENV)
    if env:
        return int(env)
    return DEFAULT_STATE_CAP


def _canonical_types(inst: Instance) -> list[tuple[Tile, int]]:
    """Types with equal shapes merged (counts summed), first-seen order."""
    order: list[Tile] = []
    counts: dict[tuple[int, frozenset[int]], int] = {}
    for ttype in inst.types:
        key = ttype.shape.shape_key
        if key not in counts:
            counts[key] = 0
            order.append(ttype.shape)
        counts[key] += ttype.count
    return [(shape, counts[shape.shape_key]) for shape in order]


def _dp_run(inst: Instance, state_cap: int | None, want_witness: bool):
    """Shared level-by-level fill.  Returns (value, chain, stats).

    ``chain`` lists (type_index, window_shift) insertions in placement order,
    or None when no witness was requested.  Only the current and previous
    level's value tables are alive at any point; the parent log used for
    witness reconstruction is kept separately and can be disabled.
    """
    cap = resolve_state_cap(state_cap)
    types = _canonical_types(inst)
    kinds = len(types)
    n = inst.tile_count

    if inst.objective is Objective.MIN_MAX_SHIFT:
        padded = inst.padded_length
        assert padded is not None
        eff = [padded] * kinds
    else:
        eff = [shape.length for shape, _ in types]
    w = max(eff)
    if w > MAX_WINDOW_BITS:
        raise CapExceeded(
            f"window of {w} cells exceeds the {MAX_WINDOW_BITS}-bit state limit"
        )

    masks = [shape.mask for shape, _ in types]
    target = tuple(count for _, count in types)
    stats = DPStats(levels=n)

    # parent log: (level, parikh, window) -> (type_idx, shift, prev_window)
    parents: dict = {}

    level: dict = {}
    for i in range(kinds):
        parikh = tuple(1 if j == i else 0 for j in range(kinds))
        window = masks[i] << (w - eff[i])
        key = (parikh, window)
        if key not in level or eff[i] < level[key]:
            level[key] = eff[i]
            if want_witness:
                parents[(1, parikh, window)] = (i, None, None)
    stats.states_created += len(level)
    stats.peak_level_states = max(stats.peak_level_states, len(level))
    stats.max_live_levels = 1

    for depth in range(1, n):
        nxt: dict = {}
        stats.max_live_levels = max(stats.max_live_levels, 2)
        for (parikh, window), lam in level.items():
            for i in range(kinds):
                if parikh[i] >= target[i]:
                    continue
                mask = masks[i]
                t = eff[i]
                parikh2 = parikh[:i] + (parikh[i] + 1,) + parikh[i + 1:]
                for shift in range(w + 1):
                    if (window >> shift) & mask:
                        continue
                    grow = shift + t - w
                    if grow > 0:
                        new_window = (window | (mask << shift)) >> grow
                    else:
                        grow = 0
                        new_window = window | (mask << shift)
                    if lam >= w - shift:
                        lam2 = lam + grow
                    else:
                        lam2 = max(w - shift, t)
                    key = (parikh2, new_window)
                    old = nxt.get(key)
                    if old is None or lam2 < old:
                        nxt[key] = lam2
                        if want_witness:
                            parents[(depth + 1, parikh2, new_window)] = (i, shift, window)
        stats.states_created += len(nxt)
        stats.peak_level_states = max(stats.peak_level_states, len(nxt))
        if stats.states_created > cap:
            raise CapExceeded(
                f"state budget of {cap} exhausted at level {depth + 1}",
                state_count=stats.states_created,
            )
        level = nxt

    best = None
    best_window = None
    for (parikh, window), lam in level.items():
        assert parikh == target
        if best is None or (lam, window) < (best, best_window):
            best, best_window = lam, window
    assert best is not None

    chain = None
    if want_witness:
        chain = []
        parikh, window = target, best_window
        for depth in range(n, 0, -1):
            i, shift, prev_window = parents[(depth, parikh, window)]
            chain.append((i, shift))
            if depth > 1:
                parikh = parikh[:i] + (parikh[i] - 1,) + parikh[i + 1:]
                window = prev_window
        chain.reverse()
    return best, chain, stats, types, eff, w


def _replay_chain(chain, types, eff, w) -> Placement:
    """Rebuild the witness placement by applying the recorded insertions."""
    tiles: list[Tile] = []
    starts: list[int] = []
    lam = 0
    for i, shift in chain:
        shape = types[i][0]
        t = eff[i]
        if shift is None:  # first tile anchors the placement
            tiles.append(shape.relabel(1))
            starts.append(0)
            lam = t
            continue
        a = lam - w + shift
        if a >= 0:
            starts.append(a)
            lam += max(0, shift + t - w)
        else:
            starts = [s - a for s in starts]
            starts.append(0)
            lam = max(w - shift, t)
        tiles.append(shape.relabel(len(tiles) + 1))
    return Placement(tuple(tiles), tuple(starts))


def dp_general(
    inst: Instance,
    state_cap: int | None = None,
    want_witness: bool = True,
) -> SolveResult:
    """Optimal value (and a verifying witness) for any instance.

    Length objective: minimum trimmed placement length using all tiles.
    Max-shift objective: minimum over placements of the maximum start.
    """
    lam, chain, stats, types, eff, w = _dp_run(inst, state_cap, want_witness)
    if inst.objective is Objective.MIN_MAX_SHIFT:
        value = lam - inst.padded_length
    else:
        value = lam
    placement = None
    if chain is not None:
        placement = align_placement(_replay_chain(chain, types, eff, w), inst)
        assert not [
            v for v in verify(placement, inst) if not isinstance(v, BoundExceeded)
        ], "DP witness failed verification"
        assert objective_value(placement, inst.objective) == value, (
            "DP witness does not realise the reported value"
        )
    return SolveResult(value, placement, stats)


def dp_single_type(
    n: int,
    t: Tile,
    objective: Objective = Objective.MIN_LENGTH,
    padded_length: int | None = None,
    state_cap: int | None = None,
    want_witness: bool = True,
) -> SolveResult:
    """Optimal placement of ``n`` copies of one tile.

    One-type specialisation of the window DP (states collapse to
    count x window).  For the max-shift objective the common padded length
    defaults to the tile's own length.
    """
    if n < 1:
        raise ValueError("need at least one tile")
    if objective is Objective.MIN_MAX_SHIFT and padded_length is None:
        padded_length = t.length
    inst = Instance((TileType(t, n),), objective, padded_length=padded_length)
    return dp_general(inst, state_cap=state_cap, want_witness=want_witness)


def _doubling_join(left: dict, right: dict, ell: int, full: int) -> dict:
    """Concatenate two boundary tables at every overlap shift.

    Entries are keyed ``(first_window, last_window, min(interior, ell))``
    where ``interior`` is the span minus ``ell``; the value is the minimal
    interior.  The clamped interior rides along in the key because, for
    spans shorter than two windows, the composed boundary windows pick up
    cells from both halves and depend on exactly how short the left or right
    half is.
    """
    by_first: dict[int, list] = {}
    for (fw, lw, dcap), interior in right.items():
        by_first.setdefault(fw, []).append((lw, dcap, interior))
    out: dict = {}
    for (fw_a, lw_a, dcap_a), int_a in left.items():
        for s in range(ell + 1):
            frontier = lw_a >> s
            for fw_b, entries in by_first.items():
                if frontier & fw_b:
                    continue
                for lw_b, dcap_b, int_b in entries:
                    interior = int_a + s + int_b
                    fw = fw_a | ((fw_b << min(dcap_a + s, ell)) & full)
                    lw = lw_b | (lw_a >> min(s + dcap_b, ell))
                    key = (fw, lw, min(interior, ell))
                    old = out.get(key)
                    if old is None or interior < old:
                        out[key] = interior
    return out


def _doubling_extend(prefix: dict, block: dict, ell: int) -> dict:
    """Join a prefix table (keyed by last window only) with a power-of-two block."""
    by_first: dict[int, list] = {}
    for (fw, lw, dcap), interior in block.items():
        by_first.setdefault(fw, []).append((lw, dcap, interior))
    out: dict = {}
    for (lw_a, dcap_a), int_a in prefix.items():
        for s in range(ell + 1):
            frontier = lw_a >> s
            for fw_b, entries in by_first.items():
                if frontier & fw_b:
                    continue
                for lw_b, dcap_b, int_b in entries:
                    interior = int_a + s + int_b
                    lw = lw_b | (lw_a >> min(s + dcap_b, ell))
                    key = (lw, min(interior, ell))
                    old = out.get(key)
                    if old is None or interior < old:
                        out[key] = interior
    return out


def _marginal(block: dict) -> dict:
    out: dict = {}
    for (_fw, lw, dcap), interior in block.items():
        key = (lw, dcap)
        old = out.get(key)
        if old is None or interior < old:
            out[key] = interior
    return out


def dp_doubling(n: int, t: Tile, state_cap: int | None = None) -> SolveResult:
    """Minimum-length value for ``n`` same-type tiles by block doubling.

    Builds tables of placements of 2^e tiles keyed by the occupancy of their
    first and last windows, doubles e, then stitches blocks following the
    binary expansion of ``n``.  Value-only; agrees with ``dp_single_type``.
    """
    if n < 1:
        raise ValueError("need at least one tile")
    cap = resolve_state_cap(state_cap)
    ell = t.length
    if ell > DOUBLING_MAX_TILE_LENGTH:
        raise CapExceeded(
            f"tile length {ell} exceeds the doubling-table limit of "
            f"{DOUBLING_MAX_TILE_LENGTH}"
        )
    full = (1 << ell) - 1
    stats = DPStats()

    levels = [{(t.mask, t.mask, 0): 0}]
    while (1 << len(levels)) <= n:
        nxt = _doubling_join(levels[-1], levels[-1], ell, full)
        stats.states_created += len(nxt)
        stats.peak_level_states = max(stats.peak_level_states, len(nxt))
        if stats.states_created > cap:
            raise CapExceeded(
                "state budget exhausted while doubling",
                state_count=stats.states_created,
            )
        levels.append(nxt)
    stats.levels = len(levels)

    bits = [e for e in range(len(levels)) if (n >> e) & 1]
    prefix = _marginal(levels[bits[0]])
    for e in bits[1:]:
        prefix = _doubling_extend(prefix, levels[e], ell)
        stats.states_created += len(prefix)
        if stats.states_created > cap:
            raise CapExceeded(
                "state budget exhausted while combining blocks",
                state_count=stats.states_created,
            )
    value = min(prefix.values()) + ell
    return SolveResult(value, None, stats)


def brute_force(
    inst: Instance,
    offset_cap: int | None = None,
    max_tiles: int = 7,
    max_offset: int = 16,
) -> SolveResult:
    """Exhaustive search over per-tile offsets in ``[0..offset_cap]``.

    Ground-truth oracle for tiny instances.  The search is branch-and-bound
    over the full offset grid (bounding never discards an improving
    placement, so the result is exact within the cap).  Guards: at most
    ``max_tiles`` tiles and ``offset_cap <= max_offset``; tests raise the
    guards explicitly when they need a wider oracle.
    """
    tiles = inst.flatten()
    n = len(tiles)
    if n > max_tiles:
        raise CapExceeded(f"{n} tiles exceed the brute-force guard of {max_tiles}")

    baseline = leftmost_fit(tiles)
    best_value = objective_value(baseline, inst.objective)
    min_len = min(t.length for t in tiles)
    if offset_cap is None:
        if inst.objective is Objective.MIN_LENGTH:
            offset_cap = max(0, best_value - min_len)
        else:
            offset_cap = best_value
    if offset_cap > max_offset:
        raise CapExceeded(
            f"offset cap {offset_cap} exceeds the brute-force guard of {max_offset}"
        )

    minlength = inst.objective is Objective.MIN_LENGTH
    best_starts = list(baseline.starts)
    # same-shape occurrences are interchangeable: force non-decreasing starts
    shape_prev = []
    last_by_shape: dict = {}
    for idx, tile in enumerate(tiles):
        shape_prev.append(last_by_shape.get(tile.shape_key))
        last_by_shape[tile.shape_key] = idx

    lengths = [t.length for t in tiles]
    starts = [0] * n
    nodes = 0

    def dfs(idx: int, occ: int, lo: int, hi: int, max_start: int):
        nonlocal best_value, best_starts, nodes
        if idx == n:
            value = (hi - lo) if minlength else max_start
            if value < best_value:
                best_value = value
                best_starts = starts.copy()
            return
        mask = tiles[idx].mask
        length = lengths[idx]
        floor = 0 if shape_prev[idx] is None else starts[shape_prev[idx]]
        for s in range(floor, offset_cap + 1):
            if not minlength and max(max_start, s) >= best_value:
                break
            if (occ >> s) & mask:
                continue
            lo2 = s if idx == 0 else min(lo, s)
            hi2 = s + length if idx == 0 else max(hi, s + length)
            if minlength and hi2 - lo2 >= best_value:
                continue
            nodes += 1
            starts[idx] = s
            dfs(idx + 1, occ | (mask << s), lo2, hi2, max(max_start, s))

    dfs(0, 0, 0, 0, 0)
    witness = Placement(tuple(tiles), tuple(best_starts))
    if minlength:
        witness = trim(witness)
    stats = DPStats(states_created=nodes)
    assert objective_value(witness, inst.objective) == best_value
    return SolveResult(best_value, witness, stats)
