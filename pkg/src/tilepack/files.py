"""Text formats for instances and placements.

Instance file (UTF-8, line based)::

    ; anything after a semicolon is a comment
    objective=minlength bound=7
    2 #..#
    1 #.#

The header names the objective and optional ``bound=R`` / ``padded=L``
integers (``padded`` is required for ``minmaxshift``).  Every following
non-comment line declares ``<count> <pattern>`` tile types; line order is
the queue order used by greedy solvers.

Placement file: one ``start=<s>`` line per tile occurrence, in the same
queue order, preceded by a comment carrying the rendered placement.
"""

from __future__ import annotations

from pathlib import Path

from .core import (
    Instance,
    Objective,
    Placement,
    TileType,
    parse_tile,
)

COMMENT_CHAR = ";"


class FormatError(ValueError):
    """Malformed instance or placement text; carries the offending line."""

    def __init__(self, message: str, lineno: int | None = None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(COMMENT_CHAR, 1)[0].strip()
        if line:
            yield lineno, line


def parse_instance(text: str) -> Instance:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty instance file")
    lineno, header = lines[0]
    objective = None
    bound = None
    padded = None
    for token in header.split():
        if "=" not in token:
            raise FormatError(f"bad header token {token!r}", lineno)
        key, value = token.split("=", 1)
        if key == "objective":
            try:
                objective = Objective.parse(value)
            except ValueError as exc:
                raise FormatError(str(exc), lineno) from exc
        elif key in ("bound", "padded"):
            try:
                num = int(value)
            except ValueError as exc:
                raise FormatError(f"{key} must be an integer, got {value!r}", lineno) from exc
            if key == "bound":
                bound = num
            else:
                padded = num
        else:
            raise FormatError(f"unknown header key {key!r}", lineno)
    if objective is None:
        raise FormatError("header must set objective=minlength|minmaxshift", lineno)

    types = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"expected '<count> <pattern>', got {line!r}", lineno)
        try:
            count = int(parts[0])
        except ValueError as exc:
            raise FormatError(f"count must be an integer, got {parts[0]!r}", lineno) from exc
        if count < 1:
            raise FormatError(f"count must be positive, got {count}", lineno)
        try:
            shape = parse_tile(parts[1])
        except ValueError as exc:
            raise FormatError(f"bad tile pattern {parts[1]!r}: {exc}", lineno) from exc
        types.append(TileType(shape, count))
    if not types:
        raise FormatError("instance file declares no tiles")
    try:
        return Instance(tuple(types), objective, bound, padded)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def write_instance(inst: Instance) -> str:
    header = f"objective={inst.objective}"
    if inst.bound is not None:
        header += f" bound={inst.bound}"
    if inst.padded_length is not None:
        header += f" padded={inst.padded_length}"
    lines = [header]
    for ttype in inst.types:
        lines.append(f"{ttype.count} {ttype.shape.pattern()}")
    return "\n".join(lines) + "\n"


def parse_placement(text: str, inst: Instance) -> Placement:
    starts = []
    for lineno, line in _content_lines(text):
        if not line.startswith("start="):
            raise FormatError(f"expected 'start=<offset>', got {line!r}", lineno)
        try:
            start = int(line[len("start="):])
        except ValueError as exc:
            raise FormatError(f"bad start offset in {line!r}", lineno) from exc
        if start < 0:
            raise FormatError(f"start offset must be non-negative, got {start}", lineno)
        starts.append(start)
    tiles = inst.flatten()
    if len(starts) != len(tiles):
        raise FormatError(
            f"instance has {len(tiles)} tiles but placement file has {len(starts)} starts"
        )
    return Placement(tiles, tuple(starts))


def write_placement(p: Placement) -> str:
    lines = [f"{COMMENT_CHAR} placement: {p.render()}"]
    lines.extend(f"start={s}" for s in p.starts)
    return "\n".join(lines) + "\n"


def load_instance(path: str | Path) -> Instance:
    return parse_instance(Path(path).read_text(encoding="utf-8"))


def save_instance(inst: Instance, path: str | Path) -> None:
    Path(path).write_text(write_instance(inst), encoding="utf-8")


def load_placement(path: str | Path, inst: Instance) -> Placement:
    return parse_placement(Path(path).read_text(encoding="utf-8"), inst)


def save_placement(p: Placement, path: str | Path) -> None:
    Path(path).write_text(write_placement(p), encoding="utf-8")
