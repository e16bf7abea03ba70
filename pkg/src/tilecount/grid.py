"""Cells, tiles, regions, placements and tilings on the square lattice.

A cell is a ``(row, col)`` pair of integers; rows grow northward and columns
grow eastward.  Everything here is immutable and hashable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

Cell = tuple[int, int]

_NEIGHBOURS = ((1, 0), (-1, 0), (0, 1), (0, -1))


class TilingError(ValueError):
    """Raised when a placement list is not a tiling of the claimed region."""


def normalize(cells: Iterable[Cell]) -> frozenset[Cell]:
    """Translate ``cells`` so that the minimum row and minimum column are 0."""
    cells = frozenset(cells)
    if not cells:
        raise ValueError("empty cell set")
    r0 = min(r for r, _ in cells)
    c0 = min(c for _, c in cells)
    return frozenset((r - r0, c - c0) for r, c in cells)


def translate(cells: Iterable[Cell], offset: Cell) -> frozenset[Cell]:
    dr, dc = offset
    return frozenset((r + dr, c + dc) for r, c in cells)


def bounding_box(cells: Iterable[Cell]) -> tuple[int, int, int, int]:
    """Return ``(min_row, min_col, max_row, max_col)``."""
    cells = list(cells)
    if not cells:
        raise ValueError("empty cell set")
    rows = [r for r, _ in cells]
    cols = [c for _, c in cells]
    return min(rows), min(cols), max(rows), max(cols)


def is_connected(cells: Iterable[Cell]) -> bool:
    cells = set(cells)
    if not cells:
        return False
    start = next(iter(cells))
    seen = {start}
    stack = [start]
    while stack:
        r, c = stack.pop()
        for dr, dc in _NEIGHBOURS:
            nb = (r + dr, c + dc)
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cells)


def has_pinch(cells: Iterable[Cell]) -> bool:
    """True if some lattice vertex has its four cells alternating in/out diagonally."""
    cells = frozenset(cells)
    corners = set()
    for r, c in cells:
        corners.update(((r, c), (r + 1, c), (r, c + 1), (r + 1, c + 1)))
    for vr, vc in corners:
        sw = (vr - 1, vc - 1) in cells
        se = (vr - 1, vc) in cells
        nw = (vr, vc - 1) in cells
        ne = (vr, vc) in cells
        if sw == ne and se == nw and sw != se:
            return True
    return False


def is_disk_cells(cells: Iterable[Cell]) -> bool:
    """Disk test via the Euler characteristic of the closed cell union.

    For a 4-connected polyomino ``V - E + F = 1 - b1`` and both holes and
    pinch vertices create independent 1-cycles, so the union is a disk
    exactly when ``V - E + F == 1``.
    """
    cells = frozenset(cells)
    if not cells or not is_connected(cells):
        return False
    shared = 0
    corners = set()
    for r, c in cells:
        if (r, c + 1) in cells:
            shared += 1
        if (r + 1, c) in cells:
            shared += 1
        corners.update(((r, c), (r + 1, c), (r, c + 1), (r + 1, c + 1)))
    faces = len(cells)
    return len(corners) - (4 * faces - shared) + faces == 1


def is_disk_cells_direct(cells: Iterable[Cell]) -> bool:
    """Connected, complement connected in the padded box, and no pinch vertex."""
    cells = frozenset(cells)
    if not cells or not is_connected(cells):
        return False
    r0, c0, r1, c1 = bounding_box(cells)
    outside = {
        (r, c)
        for r in range(r0 - 1, r1 + 2)
        for c in range(c0 - 1, c1 + 2)
        if (r, c) not in cells
    }
    if not is_connected(outside):
        return False
    return not has_pinch(cells)


@dataclass(frozen=True)
class Tile:
    cells: frozenset[Cell]
    index: int
    name: str = ""

    def __post_init__(self) -> None:
        if not self.cells:
            raise ValueError("empty cell set")
        if normalize(self.cells) != self.cells:
            raise ValueError(f"tile {self.name or self.index} is not normalized")
        if not is_disk_cells(self.cells):
            raise ValueError(f"tile {self.name or self.index} is not a disk")

    @property
    def area(self) -> int:
        return len(self.cells)

    @property
    def min_cell(self) -> Cell:
        """Lexicographically least ``(row, col)`` cell."""
        return min(self.cells)

    @property
    def height(self) -> int:
        return max(r for r, _ in self.cells) + 1

    @property
    def width(self) -> int:
        return max(c for _, c in self.cells) + 1

    def at(self, offset: Cell) -> frozenset[Cell]:
        return translate(self.cells, offset)


@dataclass(frozen=True)
class TileSet:
    tiles: tuple[Tile, ...]

    def __post_init__(self) -> None:
        for pos, tile in enumerate(self.tiles, start=1):
            if tile.index != pos:
                raise ValueError(f"tile indices must be 1..n in order, got {tile.index} at {pos}")
        if len({t.cells for t in self.tiles}) != len(self.tiles):
            raise ValueError("duplicate tiles in tile set")

    @classmethod
    def from_cells(cls, shapes: Sequence[Iterable[Cell]], names: Sequence[str] | None = None) -> TileSet:
        names = list(names) if names is not None else [f"t{i}" for i in range(1, len(shapes) + 1)]
        return cls(tuple(
            Tile(normalize(shape), i, name)
            for i, (shape, name) in enumerate(zip(shapes, names), start=1)
        ))

    def __len__(self) -> int:
        return len(self.tiles)

    def __iter__(self) -> Iterator[Tile]:
        return iter(self.tiles)

    def tile(self, index: int) -> Tile:
        """Tile by 1-based index."""
        if not 1 <= index <= len(self.tiles):
            raise IndexError(f"tile index {index} out of range 1..{len(self.tiles)}")
        return self.tiles[index - 1]

    @property
    def areas(self) -> tuple[int, ...]:
        return tuple(t.area for t in self.tiles)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(t.name for t in self.tiles)

    def subset(self, indices: Iterable[int]) -> TileSet:
        """Re-indexed sub tile set keeping the original tile names."""
        chosen = sorted(set(indices))
        return TileSet.from_cells([self.tile(i).cells for i in chosen], [self.tile(i).name for i in chosen])

    def index_of(self, name: str) -> int:
        for tile in self.tiles:
            if tile.name == name:
                return tile.index
        raise KeyError(name)


@dataclass(frozen=True)
class Region:
    cells: frozenset[Cell]

    def __post_init__(self) -> None:
        if not self.cells:
            raise ValueError("empty cell set")

    @classmethod
    def of(cls, cells: Iterable[Cell]) -> Region:
        return cls(frozenset(cells))

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cell: object) -> bool:
        return cell in self.cells

    @property
    def area(self) -> int:
        return len(self.cells)

    @property
    def bbox(self) -> tuple[int, int, int, int]:
        return bounding_box(self.cells)

    def translated(self, offset: Cell) -> Region:
        return Region(translate(self.cells, offset))

    def normalized(self) -> Region:
        return Region(normalize(self.cells))

    def key(self) -> tuple[Cell, ...]:
        """Sorted cell tuple of the normalized region; equal iff translates."""
        return tuple(sorted(normalize(self.cells)))


class Placement(NamedTuple):
    tile_index: int
    offset: Cell

    def cells(self, tileset: TileSet) -> frozenset[Cell]:
        return tileset.tile(self.tile_index).at(self.offset)


@dataclass(frozen=True)
class Tiling:
    placements: tuple[Placement, ...]

    @classmethod
    def of(cls, placements: Iterable[Placement], tileset: TileSet) -> Tiling:
        """Build a tiling with placements in canonical order."""

        def key(p: Placement):
            return (min(p.cells(tileset)), p.tile_index)

        return cls(tuple(sorted((Placement(p[0], tuple(p[1])) for p in placements), key=key)))

    def __len__(self) -> int:
        return len(self.placements)

    def __iter__(self) -> Iterator[Placement]:
        return iter(self.placements)

    def covered(self, tileset: TileSet) -> list[Cell]:
        out: list[Cell] = []
        for p in self.placements:
            out.extend(p.cells(tileset))
        return out

    def translated(self, offset: Cell, tileset: TileSet) -> Tiling:
        dr, dc = offset
        return Tiling.of((Placement(p.tile_index, (p.offset[0] + dr, p.offset[1] + dc)) for p in self), tileset)


def check_tiling(tiling: Tiling, region: Region, tileset: TileSet) -> None:
    """Raise :class:`TilingError` unless ``tiling`` partitions ``region``."""
    seen: set[Cell] = set()
    for p in tiling:
        for cell in p.cells(tileset):
            if cell in seen:
                raise TilingError(f"cell {cell} covered twice")
            if cell not in region.cells:
                raise TilingError(f"cell {cell} outside region")
            seen.add(cell)
    if len(seen) != len(region.cells):
        missing = sorted(region.cells - seen)
        raise TilingError(f"{len(missing)} cells uncovered, first {missing[0]}")


def is_valid_tiling(tiling: Tiling, region: Region, tileset: TileSet) -> bool:
    try:
        check_tiling(tiling, region, tileset)
    except TilingError:
        return False
    return True


def is_disk(region: Region) -> bool:
    """Connected, hole free and without pinch vertices."""
    return is_disk_cells(region.cells)


def placements(tile: Tile, region: Region) -> list[Placement]:
    """All translations of ``tile`` inside ``region``, sorted by offset."""
    anchor_r, anchor_c = tile.min_cell
    cells = region.cells
    out = []
    for r, c in cells:
        off = (r - anchor_r, c - anchor_c)
        if all((tr + off[0], tc + off[1]) in cells for tr, tc in tile.cells):
            out.append(Placement(tile.index, off))
    out.sort(key=lambda p: p.offset)
    return out


def ribbon_cells(signature: str) -> frozenset[Cell]:
    if any(ch not in "01" for ch in signature):
        raise ValueError(f"ribbon signature must be a bit string, got {signature!r}")
    r = c = 0
    cells = [(0, 0)]
    for bit in signature:
        if bit == "0":
            c += 1
        else:
            r += 1
        cells.append((r, c))
    return frozenset(cells)


def ribbon_tile(signature: str) -> Tile:
    """Ribbon tile from its step signature (``0`` east, ``1`` north).

    The index within ``T_n`` is the signature read as a binary number plus one.
    """
    index = int(signature, 2) + 1 if signature else 1
    return Tile(ribbon_cells(signature), index, f"t{index}")


def ribbon_set(n: int) -> TileSet:
    if not 2 <= n <= 8:
        raise ValueError(f"ribbon tile size must be in 2..8, got {n}")
    return TileSet(tuple(ribbon_tile(format(k, f"0{n - 1}b")) for k in range(2 ** (n - 1))))


def dominoes() -> TileSet:
    return ribbon_set(2)


def monomino() -> TileSet:
    return TileSet.from_cells([{(0, 0)}], ["t1"])


# indices into ribbon_set(4)
S_INDICES = (2, 3, 5, 8)
NON_S_INDICES = (1, 4, 6, 7)


def s_tiles() -> TileSet:
    """The tetromino subset ``{t2, t3, t5, t8}`` of ``T_4``."""
    return ribbon_set(4).subset(S_INDICES)


def parse_grid(text: str) -> frozenset[Cell]:
    """Parse ``#``/``.`` art; the first non-blank line is the northmost row."""
    lines = [line.rstrip() for line in text.splitlines()]
    while lines and not lines[0].strip():
        lines.pop(0)
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ValueError("empty cell set")
    cells = set()
    top = len(lines) - 1
    for i, line in enumerate(lines):
        for c, ch in enumerate(line):
            if ch == "#":
                cells.add((top - i, c))
            elif ch not in ". ":
                raise ValueError(f"unexpected character {ch!r} in grid")
    if not cells:
        raise ValueError("empty cell set")
    return frozenset(cells)


def format_grid(cells: Iterable[Cell], labels: dict[Cell, str] | None = None) -> str:
    """Render cells as text, northmost row first."""
    cells = frozenset(cells)
    r0, c0, r1, c1 = bounding_box(cells)
    lines = []
    for r in range(r1, r0 - 1, -1):
        row = []
        for c in range(c0, c1 + 1):
            if (r, c) in cells:
                row.append(labels.get((r, c), "#") if labels else "#")
            else:
                row.append(".")
        lines.append("".join(row))
    return "\n".join(lines)


def format_tiling(tiling: Tiling, tileset: TileSet) -> str:
    """Grid with each cell labelled by the letter of its placement."""
    alphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"
    labels = {}
    for k, p in enumerate(tiling):
        ch = alphabet[k % len(alphabet)]
        for cell in p.cells(tileset):
            labels[cell] = ch
    return format_grid(labels, labels)
