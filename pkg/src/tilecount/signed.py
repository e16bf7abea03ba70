"""Signed tilings: integer-weighted placements summing to 1 on a region and
0 elsewhere in a finite window.

Non-existence is only ever reported relative to the window searched.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

from .grid import (
    NON_S_INDICES,
    S_INDICES,
    Cell,
    Placement,
    Region,
    Tiling,
    TileSet,
    bounding_box,
    ribbon_set,
    s_tiles,
)
from .invariants import PeriodicColoring, coloring_tile_values
from .lattice import solve_linear_integer
from .solver import EnumerationBudget, enumerate_tilings, parity_search


@dataclass(frozen=True)
class SignedTiling:
    terms: tuple[tuple[Placement, int], ...]
    window: frozenset[Cell]

    def weights(self, tileset: TileSet) -> dict[Cell, int]:
        sums: dict[Cell, int] = defaultdict(int)
        for p, w in self.terms:
            for cell in p.cells(tileset):
                sums[cell] += w
        return sums

    @property
    def max_weight(self) -> int:
        return max((abs(w) for _, w in self.terms), default=0)


def window_cells(region: Region, pad: int) -> list[Cell]:
    r0, c0, r1, c1 = region.bbox
    return [(r, c) for r in range(r0 - pad, r1 + pad + 1) for c in range(c0 - pad, c1 + pad + 1)]


def _placements_in(window: frozenset[Cell], tileset: TileSet) -> list[Placement]:
    r0, c0, r1, c1 = bounding_box(window)
    out = []
    for tile in tileset:
        for r in range(r0, r1 + 1):
            for c in range(c0, c1 + 1):
                if all((r + dr, c + dc) in window for dr, dc in tile.cells):
                    out.append(Placement(tile.index, (r, c)))
    return out


def signed_solve(region: Region, tileset: TileSet, pad: int | None = None) -> SignedTiling | None:
    """A signed tiling of ``region`` using placements inside the padded box."""
    if pad is None:
        pad = max(max(t.height, t.width) for t in tileset)
    if pad < 0:
        raise ValueError("pad must be >= 0")
    cells = window_cells(region, pad)
    window = frozenset(cells)
    cols = _placements_in(window, tileset)
    row_of = {cell: i for i, cell in enumerate(cells)}
    a = [[0] * len(cols) for _ in cells]
    for j, p in enumerate(cols):
        for cell in p.cells(tileset):
            a[row_of[cell]][j] = 1
    b = [1 if cell in region.cells else 0 for cell in cells]
    if not cols:
        return None
    w = solve_linear_integer(a, b)
    if w is None:
        return None
    terms = tuple((p, x) for p, x in zip(cols, w) if x)
    return SignedTiling(terms, window)


def verify_signed(st: SignedTiling, region: Region, tileset: TileSet) -> bool:
    """Recompute cell sums: 1 on every region cell, 0 on every other cell."""
    sums = st.weights(tileset)
    for cell in set(st.window) | set(sums) | set(region.cells):
        want = 1 if cell in region.cells else 0
        if sums.get(cell, 0) != want:
            return False
    return True


def from_tiling(tiling: Tiling, region: Region) -> SignedTiling:
    """An ordinary tiling as a signed tiling with all weights +1."""
    return SignedTiling(tuple((p, 1) for p in tiling), frozenset(region.cells))


def coloring_value(st: SignedTiling, coloring: PeriodicColoring, tileset: TileSet) -> int | None:
    """Weighted sum of tile colour values mod m, if the coloring is tile invariant."""
    values = coloring_tile_values(coloring, tileset)
    if values is None:
        return None
    return sum(w * values[p.tile_index - 1] for p, w in st.terms) % coloring.modulus


@lru_cache(maxsize=None)
def tile_decomposition(t4_index: int, pad: int = 2) -> SignedTiling | None:
    """Signed tiling of ``T_4`` tile ``t4_index`` (at the origin) by ``S``."""
    tile = ribbon_set(4).tile(t4_index)
    return signed_solve(Region(tile.cells), s_tiles(), pad)


def odd_implies_signed(region: Region, budget: EnumerationBudget | None = None, pad: int = 2,
                       require_odd: bool = True) -> SignedTiling | None:
    """Signed tiling of ``region`` by ``S`` built from an odd ``T_4`` tiling.

    Tiles of the odd tiling that lie in ``S`` keep weight +1; every other
    tile is replaced by a translate of its signed decomposition over ``S``.
    With ``require_odd=False`` the first ``T_4`` tiling of any parity is used.
    """
    t4 = ribbon_set(4)
    if require_odd:
        odd = parity_search(region, t4, NON_S_INDICES, True, budget)
    else:
        result = enumerate_tilings(region, t4, EnumerationBudget(1, budget.max_nodes if budget else None))
        odd = result.tilings[0] if result.tilings else None
    if odd is None:
        return None
    weights: dict[Placement, int] = defaultdict(int)
    window = set(region.cells)
    for p in odd:
        if p.tile_index in S_INDICES:
            weights[Placement(S_INDICES.index(p.tile_index) + 1, p.offset)] += 1
            continue
        sub = tile_decomposition(p.tile_index, pad)
        if sub is None:
            return None
        dr, dc = p.offset
        for q, w in sub.terms:
            weights[Placement(q.tile_index, (q.offset[0] + dr, q.offset[1] + dc))] += w
        window.update((r + dr, c + dc) for r, c in sub.window)
    terms = tuple(sorted((p, w) for p, w in weights.items() if w))
    return SignedTiling(terms, frozenset(window))
