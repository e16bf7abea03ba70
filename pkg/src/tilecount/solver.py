"""Exact-cover tiling search.

Cells of the region are numbered in ``(row, col)`` order and a state is the
bitmask of covered cells.  Search always branches on the least uncovered
cell, so any placement that can cover it has it as its own least cell; the
candidates per cell are tried in tile-index order.  States proven to have no
completion are remembered, which prunes repeated dead ends without changing
the order in which tilings are produced.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Iterable, Iterator

from .grid import Cell, Placement, Region, Tiling, TileSet

sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class EnumerationBudget:
    max_tilings: int | None = None
    max_nodes: int | None = None

    def __post_init__(self) -> None:
        for name in ("max_tilings", "max_nodes"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class EnumerationResult:
    tilings: list[Tiling]
    exhausted: bool

    def __len__(self) -> int:
        return len(self.tilings)


def _area_reachable(area: int, tile_areas: Iterable[int]) -> bool:
    sizes = sorted(set(tile_areas))
    ok = [False] * (area + 1)
    ok[0] = True
    for k in range(1, area + 1):
        ok[k] = any(s <= k and ok[k - s] for s in sizes)
    return ok[area]


class ExactCover:
    """Placement candidates of one (region, tile set) pair."""

    def __init__(self, cells: Iterable[Cell], tileset: TileSet):
        self.tileset = tileset
        self.order: list[Cell] = sorted(cells)
        self.n_cells = len(self.order)
        self.full = (1 << self.n_cells) - 1
        index = {cell: i for i, cell in enumerate(self.order)}
        shapes = []
        for tile in tileset:
            mr, mc = tile.min_cell
            shapes.append((tile.index, mr, mc, [(r - mr, c - mc) for r, c in tile.cells]))
        # candidates[i]: (tile_index, offset, mask) whose least cell is cell i
        self.candidates: list[list[tuple[int, Cell, int]]] = []
        for r, c in self.order:
            row = []
            for tidx, mr, mc, deltas in shapes:
                mask = 0
                for dr, dc in deltas:
                    j = index.get((r + dr, c + dc))
                    if j is None:
                        break
                    mask |= 1 << j
                else:
                    row.append((tidx, (r - mr, c - mc), mask))
            self.candidates.append(row)
        self.dead: set[int] = set()
        self.feasible_area = _area_reachable(self.n_cells, tileset.areas)
        self.nodes = 0
        self.max_nodes: int | None = None

    def _tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExceeded(f"search exceeded {self.max_nodes} nodes")

    def exists(self, covered: int = 0) -> bool:
        if covered == self.full:
            return True
        free = ~covered & self.full
        i = (free & -free).bit_length() - 1
        dead = self.dead
        for _, _, mask in self.candidates[i]:
            if mask & covered:
                continue
            nxt = covered | mask
            if nxt in dead:
                continue
            self._tick()
            if self.exists(nxt):
                return True
            dead.add(nxt)
        return False

    def solutions(self, covered: int = 0) -> Iterator[tuple[tuple[int, Cell], ...]]:
        if covered == self.full:
            yield ()
            return
        free = ~covered & self.full
        i = (free & -free).bit_length() - 1
        dead = self.dead
        for tidx, off, mask in self.candidates[i]:
            if mask & covered:
                continue
            nxt = covered | mask
            if nxt in dead:
                continue
            self._tick()
            found = False
            for rest in self.solutions(nxt):
                found = True
                yield ((tidx, off),) + rest
            if not found:
                dead.add(nxt)

    def count_vectors(self) -> list[tuple[int, ...]]:
        """Distinct count vectors of all tilings, in first-occurrence order.

        The order matches the order in which :meth:`solutions` first produces
        each vector.
        """
        n = len(self.tileset)
        memo: dict[int, list[tuple[int, ...]]] = {self.full: [(0,) * n]}
        counts: dict[int, int] = {self.full: 1}

        def visit(covered: int) -> list[tuple[int, ...]]:
            got = memo.get(covered)
            if got is not None:
                return got
            free = ~covered & self.full
            i = (free & -free).bit_length() - 1
            out: list[tuple[int, ...]] = []
            seen: set[tuple[int, ...]] = set()
            total = 0
            for tidx, _, mask in self.candidates[i]:
                if mask & covered:
                    continue
                nxt = covered | mask
                self._tick()
                sub = visit(nxt)
                total += counts[nxt]
                k = tidx - 1
                for v in sub:
                    w = v[:k] + (v[k] + 1,) + v[k + 1:]
                    if w not in seen:
                        seen.add(w)
                        out.append(w)
            memo[covered] = out
            counts[covered] = total
            return out

        if not self.feasible_area:
            self.tiling_count = 0
            return []
        result = visit(0)
        self.tiling_count = counts[0]
        return result

    def tiling(self, raw: Iterable[tuple[int, Cell]]) -> Tiling:
        # raw solutions are already in canonical order: least cells increase
        return Tiling(tuple(Placement(t, off) for t, off in raw))


def is_tileable(region: Region, tileset: TileSet) -> bool:
    return decide_tileable(region, tileset) is True


def decide_tileable(region: Region, tileset: TileSet, max_nodes: int | None = None) -> bool | None:
    """Tileability, or ``None`` if the node budget ran out."""
    problem = ExactCover(region.cells, tileset)
    if not problem.feasible_area:
        return False
    problem.max_nodes = max_nodes
    try:
        return problem.exists()
    except BudgetExceeded:
        return None


def iter_tilings(region: Region, tileset: TileSet) -> Iterator[Tiling]:
    problem = ExactCover(region.cells, tileset)
    if not problem.feasible_area:
        return
    for raw in problem.solutions():
        yield problem.tiling(raw)


def enumerate_tilings(region: Region, tileset: TileSet, budget: EnumerationBudget | None = None) -> EnumerationResult:
    """All tilings in search order; ``exhausted`` is False if a cap was hit."""
    budget = budget or EnumerationBudget()
    problem = ExactCover(region.cells, tileset)
    if not problem.feasible_area:
        return EnumerationResult([], True)
    problem.max_nodes = budget.max_nodes
    out: list[Tiling] = []
    gen = problem.solutions()
    try:
        for raw in gen:
            if budget.max_tilings is not None and len(out) >= budget.max_tilings:
                return EnumerationResult(out, False)
            out.append(problem.tiling(raw))
    except BudgetExceeded:
        return EnumerationResult(out, False)
    finally:
        gen.close()
    return EnumerationResult(out, True)


def count_vector(tiling: Tiling, n: int) -> tuple[int, ...]:
    counts = [0] * n
    for p in tiling:
        counts[p.tile_index - 1] += 1
    return tuple(counts)


def tiling_count_vectors(region: Region, tileset: TileSet, max_nodes: int | None = None) -> tuple[list[tuple[int, ...]], int]:
    """Distinct count vectors over all tilings and the number of tilings.

    Raises :class:`BudgetExceeded` if ``max_nodes`` is exceeded.
    """
    problem = ExactCover(region.cells, tileset)
    problem.max_nodes = max_nodes
    vectors = problem.count_vectors()
    return vectors, problem.tiling_count


def parity_search(region: Region, tileset: TileSet, marked: Iterable[int], want_odd: bool,
                  budget: EnumerationBudget | None = None) -> Tiling | None:
    """First tiling whose number of marked tiles has the requested parity."""
    marked = frozenset(marked)
    bad = marked - set(range(1, len(tileset) + 1))
    if bad:
        raise ValueError(f"marked indices out of range: {sorted(bad)}")
    budget = budget or EnumerationBudget()
    problem = ExactCover(region.cells, tileset)
    if not problem.feasible_area:
        return None
    problem.max_nodes = budget.max_nodes
    seen = 0
    gen = problem.solutions()
    try:
        for raw in gen:
            hits = sum(1 for t, _ in raw if t in marked)
            if (hits % 2 == 1) == want_odd:
                return problem.tiling(raw)
            seen += 1
            if budget.max_tilings is not None and seen >= budget.max_tilings:
                return None
    except BudgetExceeded:
        return None
    finally:
        gen.close()
    return None
