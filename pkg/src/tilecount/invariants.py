"""Tile invariants: linear functionals on tile counts, periodic colorings,
tiling corpora and the empirical tile counting group."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .grid import Cell, Region, Tiling, TileSet, is_disk_cells
from .lattice import GroupShape, hermite_normal_form, quotient_shape
from .regions import iter_fixed_polyominoes
from .solver import BudgetExceeded, EnumerationBudget, ExactCover, count_vector, enumerate_tilings

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class InvariantFunctional:
    coeffs: tuple[int, ...]
    modulus: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if self.modulus < 0 or self.modulus == 1:
            raise ValueError("modulus must be 0 (integers) or >= 2")

    def __call__(self, counts: Sequence[int]) -> int:
        if len(counts) != len(self.coeffs):
            raise ValueError(f"functional has {len(self.coeffs)} coefficients, got {len(counts)} counts")
        value = sum(a * b for a, b in zip(self.coeffs, counts))
        return value % self.modulus if self.modulus else value

    def annihilates(self, diff: Sequence[int]) -> bool:
        value = sum(a * b for a, b in zip(self.coeffs, diff))
        return value % self.modulus == 0 if self.modulus else value == 0

    def __str__(self) -> str:
        body = ", ".join(map(str, self.coeffs))
        return f"({body})" + (f" mod {self.modulus}" if self.modulus else " over Z")


def conway_lagarias_functional() -> InvariantFunctional:
    """``b3 - b2`` for ``T_3``."""
    return InvariantFunctional((0, -1, 1, 0))


def pak_muchnik_functional() -> InvariantFunctional:
    """``b2 + b4 - b5 - b7`` for ``T_4``."""
    return InvariantFunctional((0, 1, 0, 1, -1, 0, -1, 0))


def height_functional() -> InvariantFunctional:
    """``b2 + b3 + b5 + b8 mod 2`` for ``T_4``: parity of tiles from ``S``."""
    return InvariantFunctional((0, 1, 1, 0, 1, 0, 0, 1), 2)


@dataclass(frozen=True)
class PeriodicColoring:
    """Cell ``(r, c)`` gets ``weights[r % p][c % q] mod modulus``."""

    weights: tuple[tuple[int, ...], ...]
    modulus: int

    def __post_init__(self) -> None:
        w = tuple(tuple(int(x) for x in row) for row in self.weights)
        if not w or not w[0] or any(len(row) != len(w[0]) for row in w):
            raise ValueError("coloring weights must be a non-empty rectangular grid")
        if self.modulus < 2:
            raise ValueError("coloring modulus must be >= 2")
        object.__setattr__(self, "weights", w)

    @property
    def period(self) -> tuple[int, int]:
        return len(self.weights), len(self.weights[0])

    def color(self, cell: Cell) -> int:
        p, q = self.period
        return self.weights[cell[0] % p][cell[1] % q] % self.modulus

    def value(self, cells: Iterable[Cell]) -> int:
        return sum(self.color(c) for c in cells) % self.modulus

    def shifted(self, rows: int = 0, cols: int = 0) -> PeriodicColoring:
        """The coloring moved ``rows`` north and ``cols`` east."""
        p, q = self.period
        w = tuple(
            tuple(self.weights[(r - rows) % p][(c - cols) % q] for c in range(q))
            for r in range(p)
        )
        return PeriodicColoring(w, self.modulus)

    @classmethod
    def parse(cls, text: str) -> PeriodicColoring:
        """Modulus on the first line, then the weight grid, northmost row first."""
        lines = [line.split() for line in text.splitlines() if line.strip()]
        if len(lines) < 2 or len(lines[0]) != 1:
            raise ValueError("coloring file needs a modulus line and at least one weight row")
        modulus = int(lines[0][0])
        grid = [[int(x) for x in row] for row in lines[1:]]
        return cls(tuple(tuple(row) for row in reversed(grid)), modulus)


def swath_coloring() -> PeriodicColoring:
    """Horizontal swaths colored 0, 1, 2, 3 going north, modulo 4."""
    return PeriodicColoring(((0,), (1,), (2,), (3,)), 4)


def coloring_tile_values(coloring: PeriodicColoring, tileset: TileSet) -> tuple[int, ...] | None:
    """Color sum of each tile if it is the same at every placement, else None."""
    p, q = coloring.period
    out = []
    for tile in tileset:
        values = {coloring.value(tile.at((dr, dc))) for dr in range(p) for dc in range(q)}
        if len(values) != 1:
            return None
        out.append(values.pop())
    return tuple(out)


def coloring_functional(coloring: PeriodicColoring, tileset: TileSet) -> InvariantFunctional | None:
    values = coloring_tile_values(coloring, tileset)
    if values is None:
        return None
    return InvariantFunctional(values, coloring.modulus)


@dataclass(frozen=True)
class InvariantReport:
    """Outcome of checking a functional on one region.

    ``status`` is one of ``constant``, ``counterexample``, ``vacuous`` (no
    tiling) or ``inconclusive`` (enumeration budget ran out).
    """

    status: str
    value: int | None = None
    counterexample: tuple | None = None
    counter_values: tuple[int, int] | None = None
    tilings: int = 0

    @property
    def ok(self) -> bool:
        return self.status == "constant"


def evaluate_vectors(f: InvariantFunctional, vectors: Sequence[Sequence[int]]) -> InvariantReport:
    if not vectors:
        return InvariantReport("vacuous")
    first = vectors[0]
    v0 = f(first)
    for v in vectors[1:]:
        value = f(v)
        if value != v0:
            return InvariantReport("counterexample", None, (tuple(first), tuple(v)), (v0, value), len(vectors))
    return InvariantReport("constant", v0, None, None, len(vectors))


def verify_functional(f: InvariantFunctional, region: Region, tileset: TileSet,
                      budget: EnumerationBudget | None = None) -> InvariantReport:
    """Evaluate ``f`` on the count vector of every tiling of ``region``."""
    if len(f.coeffs) != len(tileset):
        raise ValueError("functional length does not match the tile set")
    result = enumerate_tilings(region, tileset, budget)
    if not result.exhausted:
        return InvariantReport("inconclusive", tilings=len(result.tilings))
    if not result.tilings:
        return InvariantReport("vacuous")
    n = len(tileset)
    first: Tiling = result.tilings[0]
    v0 = f(count_vector(first, n))
    for t in result.tilings[1:]:
        value = f(count_vector(t, n))
        if value != v0:
            return InvariantReport("counterexample", None, (first, t), (v0, value), len(result.tilings))
    return InvariantReport("constant", v0, None, None, len(result.tilings))


@dataclass(frozen=True)
class CorpusEntry:
    region: Region
    vectors: tuple[tuple[int, ...], ...]
    tiling_count: int

    @property
    def key(self) -> tuple[Cell, ...]:
        return self.region.key()


@dataclass
class Corpus:
    """Tileable regions with the distinct count vectors of all their tilings.

    ``vectors[0]`` is the count vector of the first tiling in search order.
    """

    n_tiles: int
    entries: list[CorpusEntry] = field(default_factory=list)
    params: dict = field(default_factory=dict)
    excluded: list[Region] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def describe(self) -> str:
        bits = [f"{k}={v}" for k, v in sorted(self.params.items())]
        bits.append(f"regions={len(self.entries)}")
        bits.append(f"tilings={sum(e.tiling_count for e in self.entries)}")
        if self.excluded:
            bits.append(f"excluded={len(self.excluded)}")
        return ", ".join(bits)

    def merged(self, other: Corpus) -> Corpus:
        """Union of two corpora over the same tile set, deduplicated by region."""
        if other.n_tiles != self.n_tiles:
            raise ValueError("corpora over different tile sets")
        by_key = {e.key: e for e in self.entries}
        for e in other.entries:
            by_key.setdefault(e.key, e)
        entries = sorted(by_key.values(), key=lambda e: (e.region.area, e.key))
        params = dict(self.params)
        params.update({f"merged.{k}": v for k, v in other.params.items()})
        return Corpus(self.n_tiles, entries, params, self.excluded + other.excluded)


def _analyse(cells: Sequence[Cell], tileset: TileSet, max_nodes: int | None, need_disk: bool):
    """Return ``(vectors, count)``, None if untileable, or "budget"."""
    problem = ExactCover(cells, tileset)
    if not problem.feasible_area:
        return None
    problem.max_nodes = max_nodes
    try:
        if not problem.exists():
            return None
        if need_disk and not is_disk_cells(cells):
            return None
        problem.dead.clear()
        problem.nodes = 0
        vectors = problem.count_vectors()
    except BudgetExceeded:
        return "budget"
    return vectors, problem.tiling_count


def _analyse_chunk(args):
    chunk, tileset, max_nodes = args
    return [(cells, _analyse(cells, tileset, max_nodes, True)) for cells in chunk]


def _chunks(iterable, size):
    chunk = []
    for item in iterable:
        chunk.append(item)
        if len(chunk) == size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def build_corpus(tileset: TileSet, max_area: int, extras: Iterable[Region] = (),
                 max_nodes: int | None = None, jobs: int = 1) -> Corpus:
    """All tileable disk regions of area <= ``max_area`` plus tileable extras."""
    areas = tileset.areas
    results: dict[tuple[Cell, ...], CorpusEntry] = {}
    excluded: list[Region] = []

    def keep(cells, outcome):
        if outcome is None:
            return
        region = Region(frozenset(cells))
        if outcome == "budget":
            log.warning("enumeration budget exhausted, excluding region of area %d", len(cells))
            excluded.append(region)
            return
        vectors, count = outcome
        results[region.key()] = CorpusEntry(region, tuple(vectors), count)

    g = math.gcd(*areas)
    candidates = (cells for cells in iter_fixed_polyominoes(max_area) if len(cells) % g == 0)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            work = ((chunk, tileset, max_nodes) for chunk in _chunks(candidates, 5000))
            for batch in pool.map(_analyse_chunk, work):
                for cells, outcome in batch:
                    keep(cells, outcome)
    else:
        for cells in candidates:
            keep(cells, _analyse(cells, tileset, max_nodes, True))

    n_extras = 0
    for region in extras:
        n_extras += 1
        if region.key() not in results:
            cells = sorted(region.cells)
            keep(cells, _analyse(cells, tileset, max_nodes, False))

    entries = sorted(results.values(), key=lambda e: (e.region.area, e.key))
    params = {"max_area": max_area, "extras": n_extras, "tiles": len(tileset)}
    return Corpus(len(tileset), entries, params, excluded)


def corpus_from_regions(tileset: TileSet, regions: Iterable[Region], max_nodes: int | None = None) -> Corpus:
    """Corpus over an explicit region list; untileable regions are skipped."""
    results: dict[tuple[Cell, ...], CorpusEntry] = {}
    excluded = []
    count = 0
    for region in regions:
        count += 1
        outcome = _analyse(sorted(region.cells), tileset, max_nodes, False)
        if outcome == "budget":
            excluded.append(region)
        elif outcome is not None:
            results.setdefault(region.key(), CorpusEntry(region, tuple(outcome[0]), outcome[1]))
    entries = sorted(results.values(), key=lambda e: (e.region.area, e.key))
    return Corpus(len(tileset), entries, {"regions_given": count, "tiles": len(tileset)}, excluded)


def verify_on_corpus(f: InvariantFunctional, corpus: Corpus) -> list[tuple[CorpusEntry, InvariantReport]]:
    return [(entry, evaluate_vectors(f, entry.vectors)) for entry in corpus]


def difference_rows(corpus: Corpus) -> list[tuple[int, ...]]:
    """Distinct nonzero ``b(alpha) - b(alpha_0)`` over all regions, sorted."""
    rows = set()
    for entry in corpus:
        base = entry.vectors[0]
        for v in entry.vectors[1:]:
            rows.add(tuple(a - b for a, b in zip(v, base)))
    rows.discard((0,) * corpus.n_tiles)
    return sorted(rows)


def counting_group(corpus: Corpus, n: int | None = None) -> GroupShape:
    """``Z^n`` modulo the span of all tiling-difference vectors in the corpus."""
    n = corpus.n_tiles if n is None else n
    if not corpus.entries:
        raise ValueError("empty corpus")
    return quotient_shape(hermite_normal_form(difference_rows(corpus)), n)
