"""Region constructors: rectangles, modified rectangles, all small disk
regions and seeded random disk regions."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .grid import Cell, Region, is_disk, is_disk_cells, normalize

MAX_ENUMERATION_AREA = 12


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    a: int | None = None
    b: int | None = None
    area: int | None = None
    seed: int | None = None
    max_area: int | None = None

    def build(self) -> Region | list[Region]:
        if self.kind == "rect":
            return rect(self.a, self.b)
        if self.kind == "modified_rect":
            return modified_rect(self.a, self.b)
        if self.kind == "random_disk":
            return random_disk_region(self.area, self.seed or 0)
        if self.kind == "all_disks":
            return all_disk_regions(self.max_area)
        raise ValueError(f"unknown family kind {self.kind!r}")


def rect(a: int, b: int) -> Region:
    """``a`` rows by ``b`` columns."""
    if a < 1 or b < 1:
        raise ValueError("rectangle sides must be >= 1")
    return Region(frozenset((r, c) for r in range(a) for c in range(b)))


def modified_rect(a: int, b: int) -> Region:
    """``a`` x ``b`` rectangle minus its upper-left and lower-right cells."""
    if a < 2 or b < 2:
        raise ValueError("modified rectangle needs a, b >= 2")
    return Region(rect(a, b).cells - {(a - 1, 0), (0, b - 1)})


def iter_fixed_polyominoes(max_area: int) -> Iterator[tuple[Cell, ...]]:
    """Every fixed polyomino of area <= ``max_area`` exactly once (Redelmeier).

    Each is yielded as a tuple of cells in ``(row, col)`` order with its least
    cell at ``(0, 0)``.
    """
    if max_area < 1:
        return
    width = 2 * max_area + 1
    # cell (r, c) -> r * width + c + max_area; valid iff code >= max_area
    floor = max_area
    poly: list[int] = []
    seen = {floor}

    def decode(code: int) -> Cell:
        r, c = divmod(code, width)
        return (r, c - max_area)

    def rec(untried: list[int]) -> Iterator[tuple[Cell, ...]]:
        untried = list(untried)
        while untried:
            cell = untried.pop()
            poly.append(cell)
            yield tuple(sorted(decode(x) for x in poly))
            if len(poly) < max_area:
                new = [nb for nb in (cell + 1, cell - 1, cell + width, cell - width)
                       if nb >= floor and nb not in seen]
                seen.update(new)
                yield from rec(untried + new)
                seen.difference_update(new)
            poly.pop()

    yield from rec([floor])


def iter_disk_regions(max_area: int) -> Iterator[tuple[Cell, ...]]:
    for cells in iter_fixed_polyominoes(max_area):
        if len(cells) < 7 or is_disk_cells(cells):
            yield cells


def all_disk_regions(max_area: int) -> list[Region]:
    """All disk polyominoes up to translation, ordered by (area, cells)."""
    if max_area > MAX_ENUMERATION_AREA:
        raise ValueError(f"max_area is capped at {MAX_ENUMERATION_AREA}")
    found = sorted(iter_disk_regions(max_area), key=lambda cells: (len(cells), cells))
    return [Region(frozenset(cells)) for cells in found]


def random_disk_region(area: int, seed: int, max_tries: int = 1000) -> Region:
    """Grow a region one uniformly chosen adjacent cell at a time until it is a disk."""
    if area < 1:
        raise ValueError("area must be >= 1")
    rng = random.Random(seed)
    for _ in range(max_tries):
        cells = {(0, 0)}
        while len(cells) < area:
            frontier = sorted({
                (r + dr, c + dc)
                for r, c in cells
                for dr, dc in ((1, 0), (-1, 0), (0, 1), (0, -1))
            } - cells)
            cells.add(rng.choice(frontier))
        region = Region(normalize(cells))
        if is_disk(region):
            return region
    raise RuntimeError(f"no disk region of area {area} after {max_tries} tries")
