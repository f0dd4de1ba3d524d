"""Data model for one-dimensional tile packing.

A *tile* is a trimmed partial string over one symbol: some cells hold a
numeral, the rest are wildcards.  Tiles are written ``#..#`` (``#`` numeral,
``.`` wildcard) and always start and end with a numeral.  A *placement*
assigns each tile occurrence a start offset so that no two numerals land on
the same cell; wildcards overlap freely.  The two objectives are the trimmed
placement length and the maximum start offset.

Cells map to bits: bit ``j`` of an occupancy integer is cell ``j``, so
"tile fits at offset s" is a shift-and-mask test on arbitrary-size ints.
All types here are immutable; the operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Sequence, Union

NUMERAL_CHAR = "#"
WILDCARD_CHAR = "."


class TileError(ValueError):
    """Invalid tile data or tile text."""


class EmptyInput(TileError):
    pass


class UntrimmedTile(TileError):
    """Tile text with a leading or trailing wildcard."""


class BadCharacter(TileError):
    pass


class InvalidPlacement(ValueError):
    """Raised when metrics are requested for a structurally broken placement."""


def _mask_from_offsets(offsets, length: int) -> int:
    buf = bytearray((length + 7) // 8)
    for o in offsets:
        buf[o >> 3] |= 1 << (o & 7)
    return int.from_bytes(buf, "little")


@dataclass(frozen=True)
class Tile:
    """Trimmed partial string: cell offsets in ``numerals`` are occupied.

    ``label`` is the numeral symbol used when rendering placements; it never
    affects solving (only the occupied cells matter).
    """

    length: int
    numerals: frozenset[int]
    label: int = 0

    def __post_init__(self):
        if self.length < 1:
            raise TileError(f"tile length must be positive, got {self.length}")
        if not self.numerals:
            raise TileError("tile must contain at least one numeral")
        if min(self.numerals) < 0 or max(self.numerals) >= self.length:
            raise TileError("numeral offset out of range")
        if 0 not in self.numerals or (self.length - 1) not in self.numerals:
            raise UntrimmedTile("tile must start and end with a numeral")

    @cached_property
    def mask(self) -> int:
        return _mask_from_offsets(self.numerals, self.length)

    @property
    def numeral_count(self) -> int:
        return len(self.numerals)

    @property
    def density(self) -> Fraction:
        return Fraction(len(self.numerals), self.length)

    @property
    def shape_key(self) -> tuple[int, frozenset[int]]:
        """Tile-type identity: two tiles share a type iff the keys are equal."""
        return (self.length, self.numerals)

    def pattern(self) -> str:
        return "".join(
            NUMERAL_CHAR if i in self.numerals else WILDCARD_CHAR
            for i in range(self.length)
        )

    def relabel(self, label: int) -> "Tile":
        return Tile(self.length, self.numerals, label)

    @classmethod
    def from_offsets(cls, offsets, label: int = 0) -> "Tile":
        offs = frozenset(offsets)
        if not offs:
            raise EmptyInput("no numeral offsets given")
        return cls(max(offs) + 1, offs, label)


def parse_tile(text: str, label: int = 0) -> Tile:
    """Parse ``#``/``.`` tile text; rejects empty and untrimmed input."""
    if not text:
        raise EmptyInput("empty tile text")
    bad = set(text) - {NUMERAL_CHAR, WILDCARD_CHAR}
    if bad:
        raise BadCharacter(f"tile text may only contain '#' and '.', got {sorted(bad)!r}")
    if text[0] == WILDCARD_CHAR or text[-1] == WILDCARD_CHAR:
        raise UntrimmedTile(f"tile text must start and end with '#': {text!r}")
    numerals = frozenset(i for i, ch in enumerate(text) if ch == NUMERAL_CHAR)
    return Tile(len(text), numerals, label)


def fits_at(occupancy: int, tile: Tile, start: int) -> bool:
    """True iff no numeral of ``tile`` shifted to ``start`` hits an occupied cell.

    Cells beyond the current occupancy are free; the placement grows as needed.
    """
    if start < 0:
        raise ValueError("start offset must be non-negative")
    return (occupancy >> start) & tile.mask == 0


def insertion_offsets(occupancy: int, tile: Tile, max_offset: int) -> list[int]:
    """All offsets in ``[0..max_offset]`` at which the tile fits."""
    if max_offset < 0:
        raise ValueError("max_offset must be non-negative")
    mask = tile.mask
    return [s for s in range(max_offset + 1) if (occupancy >> s) & mask == 0]


@dataclass(frozen=True)
class SuffixState:
    """Fixed-width occupancy window: bit ``j`` set means cell ``j`` occupied.

    Used both as a general partial string (for merging) and as the
    right-frontier window of a growing placement, where leading cells that
    precede the actual content are kept empty.
    """

    width: int
    bits: int = 0

    def __post_init__(self):
        if self.width < 0:
            raise ValueError("width must be non-negative")
        if not 0 <= self.bits < (1 << self.width):
            raise ValueError("bits out of range for width")

    @classmethod
    def from_pattern(cls, text: str) -> "SuffixState":
        bad = set(text) - {NUMERAL_CHAR, WILDCARD_CHAR}
        if bad:
            raise BadCharacter(f"pattern may only contain '#' and '.', got {sorted(bad)!r}")
        bits = _mask_from_offsets(
            (i for i, ch in enumerate(text) if ch == NUMERAL_CHAR), max(len(text), 1)
        )
        return cls(len(text), bits)

    def render(self) -> str:
        return "".join(
            NUMERAL_CHAR if (self.bits >> i) & 1 else WILDCARD_CHAR
            for i in range(self.width)
        )


class MergeResult(NamedTuple):
    state: SuffixState
    shift: int
    growth: int


def merge_set(a: SuffixState, b: Tile) -> list[MergeResult]:
    """All gap-free superpositions of partial string ``a`` and tile ``b``.

    One result per shift ``s`` in ``[0..a.width]`` at which no cell carries a
    numeral of both operands.  The merged string spans
    ``max(a.width, b.length + s)`` cells; ``growth`` is how far it extends
    past ``a``.  Never empty: shift ``a.width`` (plain concatenation) always
    qualifies.
    """
    out = []
    for s in range(a.width + 1):
        if (a.bits >> s) & b.mask:
            continue
        width = max(a.width, b.length + s)
        out.append(
            MergeResult(
                SuffixState(width, a.bits | (b.mask << s)), s, width - a.width
            )
        )
    return out


class Objective(Enum):
    MIN_LENGTH = "minlength"
    MIN_MAX_SHIFT = "minmaxshift"

    @classmethod
    def parse(cls, text: str) -> "Objective":
        for obj in cls:
            if obj.value == text:
                return obj
        raise ValueError(f"unknown objective {text!r}")

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class TileType:
    """A tile shape with a multiplicity.  The shape's label is erased."""

    shape: Tile
    count: int

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("tile type count must be positive")
        if self.shape.label != 0:
            object.__setattr__(self, "shape", self.shape.relabel(0))


@dataclass(frozen=True)
class Instance:
    """A multiset of tiles plus an objective.

    ``types`` is an ordered list; the flattened tile order (each type expanded
    ``count`` times, in list order) is the canonical queue for greedy solvers.
    Entries with equal shapes are allowed and are treated as one semantic tile
    type by solvers.  ``padded_length`` is required for the max-shift
    objective: all tiles are conceptually right-padded with wildcards to that
    common length.
    """

    types: tuple[TileType, ...]
    objective: Objective = Objective.MIN_LENGTH
    bound: int | None = None
    padded_length: int | None = None

    def __post_init__(self):
        if not self.types:
            raise ValueError("instance needs at least one tile type")
        if self.bound is not None and self.bound < 0:
            raise ValueError("bound must be non-negative")
        if self.objective is Objective.MIN_MAX_SHIFT:
            if self.padded_length is None:
                raise ValueError("minmaxshift instances need padded_length")
            if self.padded_length < self.max_tile_length:
                raise ValueError("padded_length shorter than the longest tile")

    @property
    def tile_count(self) -> int:
        return sum(t.count for t in self.types)

    @property
    def max_tile_length(self) -> int:
        return max(t.shape.length for t in self.types)

    @property
    def total_numerals(self) -> int:
        return sum(t.shape.numeral_count * t.count for t in self.types)

    def flatten(self) -> tuple[Tile, ...]:
        """Tile occurrences in queue order, labelled 1..n by position."""
        tiles = []
        for ttype in self.types:
            for _ in range(ttype.count):
                tiles.append(ttype.shape.relabel(len(tiles) + 1))
        return tuple(tiles)


def instance_from_tiles(
    tiles: Sequence[Tile],
    objective: Objective = Objective.MIN_LENGTH,
    bound: int | None = None,
    padded_length: int | None = None,
) -> Instance:
    """Instance with one count-1 type per tile, preserving queue order."""
    return Instance(
        tuple(TileType(t, 1) for t in tiles), objective, bound, padded_length
    )


@dataclass(frozen=True)
class Placement:
    """Tile occurrences with their start offsets.  Collisions are allowed in
    the object (``verify`` reports them); occupancy is the union of cells."""

    tiles: tuple[Tile, ...]
    starts: tuple[int, ...]

    def __post_init__(self):
        if len(self.tiles) != len(self.starts):
            raise ValueError("tiles and starts differ in length")
        if any(s < 0 for s in self.starts):
            raise ValueError("start offsets must be non-negative")

    @cached_property
    def occupancy(self) -> int:
        occ = 0
        for tile, start in zip(self.tiles, self.starts):
            occ |= tile.mask << start
        return occ

    @property
    def length_raw(self) -> int:
        return max(
            (t.length + s for t, s in zip(self.tiles, self.starts)), default=0
        )

    @property
    def max_shift(self) -> int:
        return max(self.starts, default=0)

    def collisions(self) -> list[int]:
        """Cells claimed by more than one numeral, ascending."""
        seen = 0
        collided = 0
        for tile, start in zip(self.tiles, self.starts):
            m = tile.mask << start
            collided |= seen & m
            seen |= m
        out = []
        cell = 0
        while collided:
            if collided & 1:
                out.append(cell)
            collided >>= 1
            cell += 1
        return out

    def render(self) -> str:
        """Placement string over the trimmed span; ``.`` marks a hole."""
        if not self.tiles:
            return ""
        cells: dict[int, int] = {}
        for tile, start in zip(self.tiles, self.starts):
            for o in tile.numerals:
                cells[start + o] = tile.label
        lo, hi = min(cells), max(cells)
        labels = [str(cells.get(i, WILDCARD_CHAR)) for i in range(lo, hi + 1)]
        if all(len(tok) == 1 for tok in labels):
            return "".join(labels)
        return " ".join(labels)


def align_placement(p: Placement, inst: Instance) -> Placement:
    """Reorder (tile, start) pairs to the instance's queue order.

    Same-shape occurrences are interchangeable, so starts are handed out to
    queue positions shape by shape, preserving their recorded order.  The
    occupied cells are unchanged; only the pairing (and the labels used for
    rendering) moves.  Raises on a tile-multiset mismatch.
    """
    pool: dict[tuple[int, frozenset[int]], list[int]] = {}
    for tile, start in zip(p.tiles, p.starts):
        pool.setdefault(tile.shape_key, []).append(start)
    tiles = inst.flatten()
    starts = []
    for tile in tiles:
        queue = pool.get(tile.shape_key)
        if not queue:
            raise ValueError(f"placement lacks a tile of shape {tile.pattern()}")
        starts.append(queue.pop(0))
    leftover = [key for key, queue in pool.items() if queue]
    if leftover:
        raise ValueError("placement has tiles not present in the instance")
    return Placement(tiles, tuple(starts))


def trim(p: Placement) -> Placement:
    """Shift all starts so the first occupied cell is cell 0.  Idempotent."""
    if not p.tiles:
        return p
    lo = min(p.starts)
    if lo == 0:
        return p
    return Placement(p.tiles, tuple(s - lo for s in p.starts))


@dataclass(frozen=True)
class Collision:
    cell: int


@dataclass(frozen=True)
class MissingTile:
    pattern: str
    missing: int


@dataclass(frozen=True)
class ExtraTile:
    pattern: str
    extra: int


@dataclass(frozen=True)
class BoundExceeded:
    metric: str
    value: int
    bound: int


Violation = Union[Collision, MissingTile, ExtraTile, BoundExceeded]


def _shape_counts(tiles) -> dict[tuple[int, frozenset[int]], int]:
    counts: dict[tuple[int, frozenset[int]], int] = {}
    for t in tiles:
        counts[t.shape_key] = counts.get(t.shape_key, 0) + 1
    return counts


def verify(p: Placement, inst: Instance) -> list[Violation]:
    """Structured check of a placement against an instance.

    Empty list means the placement is valid: every tile occurrence appears
    exactly once, no two numerals share a cell, and (decision mode) the
    objective metric respects the bound.
    """
    out: list[Violation] = []
    want = _shape_counts(inst.flatten())
    have = _shape_counts(p.tiles)
    for key, count in sorted(want.items(), key=lambda kv: (kv[0][0], sorted(kv[0][1]))):
        got = have.get(key, 0)
        if got < count:
            out.append(MissingTile(Tile(key[0], key[1]).pattern(), count - got))
    for key, got in sorted(have.items(), key=lambda kv: (kv[0][0], sorted(kv[0][1]))):
        count = want.get(key, 0)
        if got > count:
            out.append(ExtraTile(Tile(key[0], key[1]).pattern(), got - count))
    for cell in p.collisions():
        out.append(Collision(cell))
    if inst.bound is not None and not out:
        if inst.objective is Objective.MIN_LENGTH:
            name, value = "trimmed_length", trim(p).length_raw
        else:
            name, value = "max_shift", p.max_shift
        if value > inst.bound:
            out.append(BoundExceeded(name, value, inst.bound))
    return out


def verify_ok(p: Placement, inst: Instance) -> bool:
    return not verify(p, inst)


@dataclass(frozen=True)
class Metrics:
    trimmed_length: int
    max_shift: int
    max_end: int
    hole_count: int


def metrics(p: Placement, inst: Instance) -> Metrics:
    """Objective metrics of a valid placement.

    Raises InvalidPlacement on collisions or a tile-multiset mismatch; a
    violated decision bound is reported by ``verify``, not here.
    """
    bad = [v for v in verify(p, inst) if not isinstance(v, BoundExceeded)]
    if bad:
        raise InvalidPlacement(f"placement does not verify: {bad}")
    trimmed = trim(p)
    span = trimmed.length_raw
    return Metrics(
        trimmed_length=span,
        max_shift=p.max_shift,
        max_end=p.length_raw,
        hole_count=span - p.occupancy.bit_count(),
    )


def is_no_holes_certificate(p: Placement) -> bool:
    """True iff the trimmed placement has no unoccupied interior cell.

    A gap-free placement occupies exactly one cell per numeral, so its
    trimmed length equals the instance's total numeral count and no shorter
    placement of the same tiles can exist: this is an optimality certificate
    for the length objective.
    """
    if not p.tiles:
        return True
    trimmed = trim(p)
    return trimmed.length_raw == p.occupancy.bit_count()
