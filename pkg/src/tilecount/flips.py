"""Two-tile local moves ("2-flips") and flip graphs on tiling spaces."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .grid import Cell, Placement, Region, Tiling, TileSet, check_tiling, normalize
from .solver import EnumerationBudget, enumerate_tilings, iter_tilings


@dataclass(frozen=True)
class MoveTemplate:
    """Two distinct two-tile tilings of the same normalized shape."""

    shape: frozenset[Cell]
    side_a: tuple[Placement, ...]
    side_b: tuple[Placement, ...]

    def other(self, side: tuple[Placement, ...]) -> tuple[Placement, ...]:
        return self.side_b if side == self.side_a else self.side_a


def _shift(placements, offset):
    dr, dc = offset
    return tuple(Placement(p.tile_index, (p.offset[0] + dr, p.offset[1] + dc)) for p in placements)


def move_templates(tileset: TileSet) -> list[MoveTemplate]:
    """All 2-flips of the tile set, up to translation."""
    shapes: set[frozenset[Cell]] = set()
    for a in tileset:
        for b in tileset:
            # b placed anywhere touching or overlapping the box of a at origin
            for dr in range(-b.height, a.height + 1):
                for dc in range(-b.width, a.width + 1):
                    cb = b.at((dr, dc))
                    if cb & a.cells:
                        continue
                    shapes.add(normalize(a.cells | cb))
    templates = []
    for shape in sorted(shapes, key=lambda s: (len(s), sorted(s))):
        region = Region(shape)
        two = [t.placements for t in iter_tilings(region, tileset) if len(t) == 2]
        if len(two) < 2:
            continue
        two.sort()
        for i in range(len(two)):
            for j in range(i + 1, len(two)):
                templates.append(MoveTemplate(shape, two[i], two[j]))
    for tpl in templates:
        for side in (tpl.side_a, tpl.side_b):
            check_tiling(Tiling(side), Region(tpl.shape), tileset)
    return templates


def _find_side(tiling: Tiling, side: tuple[Placement, ...], offset: Cell) -> bool:
    present = set(tiling.placements)
    return all(p in present for p in _shift(side, offset))


def apply_move(tiling: Tiling, template: MoveTemplate, offset: Cell, tileset: TileSet) -> Tiling | None:
    """Swap the template side found at ``offset`` for the other side."""
    for side in (template.side_a, template.side_b):
        if _find_side(tiling, side, offset):
            drop = set(_shift(side, offset))
            kept = [p for p in tiling if p not in drop]
            return Tiling.of(kept + list(_shift(template.other(side), offset)), tileset)
    return None


def neighbours(tiling: Tiling, templates: list[MoveTemplate], tileset: TileSet) -> list[Tiling]:
    """Every tiling one template application away."""
    present = set(tiling.placements)
    out = []
    for tpl in templates:
        for side in (tpl.side_a, tpl.side_b):
            first = side[0]
            for p in tiling:
                if p.tile_index != first.tile_index:
                    continue
                off = (p.offset[0] - first.offset[0], p.offset[1] - first.offset[1])
                moved = _shift(side, off)
                if all(q in present for q in moved[1:]):
                    drop = set(moved)
                    kept = [q for q in tiling if q not in drop]
                    out.append(Tiling.of(kept + list(_shift(tpl.other(side), off)), tileset))
    return out


@dataclass
class FlipGraph:
    nodes: list[Tiling]
    edges: set[tuple[int, int]]
    connected: bool | None
    exhausted: bool = True

    @property
    def status(self) -> str:
        if not self.exhausted:
            return "inconclusive"
        return "connected" if self.connected else "disconnected"

    def components(self) -> int:
        parent = list(range(len(self.nodes)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            parent[find(a)] = find(b)
        return len({find(i) for i in range(len(self.nodes))})


def flip_graph(region: Region, tileset: TileSet, templates: list[MoveTemplate] | None = None,
               budget: EnumerationBudget | None = None) -> FlipGraph:
    result = enumerate_tilings(region, tileset, budget)
    if not result.exhausted:
        return FlipGraph(result.tilings, set(), None, exhausted=False)
    if templates is None:
        templates = move_templates(tileset)
    nodes = result.tilings
    index = {t.placements: i for i, t in enumerate(nodes)}
    edges: set[tuple[int, int]] = set()
    for i, t in enumerate(nodes):
        for nb in neighbours(t, templates, tileset):
            j = index.get(nb.placements)
            if j is None:
                raise RuntimeError("flip produced a tiling outside the enumeration")
            if i != j:
                edges.add((min(i, j), max(i, j)))
    if not nodes:
        return FlipGraph(nodes, edges, True)
    adj: dict[int, list[int]] = {i: [] for i in range(len(nodes))}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return FlipGraph(nodes, edges, len(seen) == len(nodes))
