"""Which modified rectangles ``M(a, b)`` the tetromino set ``S`` tiles.

Tilings here are always indexed by ``T_4`` (so ``S`` tiles carry indices
2, 3, 5, 8); tilings found with the four-tile set ``s_tiles()`` are lifted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .grid import (
    NON_S_INDICES,
    S_INDICES,
    Placement,
    Region,
    Tiling,
    check_tiling,
    ribbon_set,
    s_tiles,
)
from .regions import modified_rect
from .solver import EnumerationBudget, decide_tileable, iter_tilings, parity_search

T4 = ribbon_set(4)
VERTICAL_BAR = 8
STEP_TILE = 3


def predicate(a: int, b: int) -> bool:
    """Closed-form answer: ``a = 2 mod 4`` and ``b`` odd, or ``a`` odd and ``ab = 2 mod 8``."""
    if a <= 1 or b <= 1:
        raise ValueError("M(a, b) needs a, b > 1")
    return (a % 4 == 2 and b % 2 == 1) or (a % 2 == 1 and (a * b) % 8 == 2)


def lift(tiling: Tiling) -> Tiling:
    """Re-index a tiling by ``s_tiles()`` into ``T_4`` indices."""
    return Tiling.of((Placement(S_INDICES[p.tile_index - 1], p.offset) for p in tiling), T4)


def non_s_count(tiling: Tiling) -> int:
    return sum(1 for p in tiling if p.tile_index in NON_S_INDICES)


def first_s_tiling(region: Region) -> Tiling | None:
    for t in iter_tilings(region, s_tiles()):
        return lift(t)
    return None


@dataclass(frozen=True)
class ClassificationEntry:
    a: int
    b: int
    predicted: bool
    solved: bool | None  # None: search budget ran out

    @property
    def agree(self) -> bool:
        return self.solved is not None and self.predicted == self.solved


@dataclass
class ClassificationReport:
    entries: list[ClassificationEntry] = field(default_factory=list)

    @property
    def agreed(self) -> int:
        return sum(e.agree for e in self.entries)

    @property
    def inconclusive(self) -> int:
        return sum(e.solved is None for e in self.entries)

    @property
    def all_agree(self) -> bool:
        return bool(self.entries) and self.agreed == len(self.entries)

    def table(self) -> str:
        a_vals = sorted({e.a for e in self.entries})
        b_vals = sorted({e.b for e in self.entries})
        cell = {(e.a, e.b): e for e in self.entries}
        lines = ["a\\b " + " ".join(f"{b:>3}" for b in b_vals)]
        for a in a_vals:
            marks = []
            for b in b_vals:
                e = cell[(a, b)]
                if e.solved is None:
                    marks.append("  ?")
                elif not e.agree:
                    marks.append("  !")
                else:
                    marks.append("  T" if e.solved else "  .")
            lines.append(f"{a:>3} " + " ".join(marks))
        lines.append(f"agree {self.agreed}/{len(self.entries)}, inconclusive {self.inconclusive}")
        return "\n".join(lines)


def verify_range(a_max: int, b_max: int, max_nodes: int | None = None) -> ClassificationReport:
    """Compare :func:`predicate` with exact search for all ``2 <= a, b <= max``."""
    s = s_tiles()
    report = ClassificationReport()
    for a in range(2, a_max + 1):
        for b in range(2, b_max + 1):
            solved = decide_tileable(modified_rect(a, b), s, max_nodes)
            report.entries.append(ClassificationEntry(a, b, predicate(a, b), solved))
    return report


def _dims(tiling: Tiling) -> tuple[int, int]:
    cells = tiling.covered(T4)
    a = max(r for r, _ in cells) + 1
    b = max(c for _, c in cells) + 1
    return a, b


def extend_rows(tiling: Tiling, a: int | None = None, b: int | None = None) -> Tiling:
    """Tiling of ``M(a, b)`` to tiling of ``M(a + 4, b)`` with ``b`` vertical bars."""
    if a is None or b is None:
        a, b = _dims(tiling)
    check_tiling(tiling, modified_rect(a, b), T4)
    added = [Placement(VERTICAL_BAR, (a - 1, 0))]
    added += [Placement(VERTICAL_BAR, (a, c)) for c in range(1, b)]
    out = Tiling.of(list(tiling) + added, T4)
    check_tiling(out, modified_rect(a + 4, b), T4)
    return out


def band_region(a: int, b: int) -> Region:
    """``M(a, b + 8)`` minus ``M(a, b)``: eight full columns, shifted one cell."""
    cells = {(r, c) for r in range(a) for c in range(b, b + 8)}
    cells.discard((0, b + 7))
    cells.add((0, b - 1))
    return Region(frozenset(cells))


@lru_cache(maxsize=None)
def band_tiling(a: int) -> Tiling:
    """Tiling by ``S`` of the band added by :func:`extend_cols`, at column 0."""
    region = band_region(a, 1)
    found = first_s_tiling(region)
    if found is None:
        raise RuntimeError(f"band for a={a} is not tileable by S")
    return found


def extend_cols(tiling: Tiling, a: int | None = None, b: int | None = None) -> Tiling:
    """Tiling of ``M(a, b)`` to tiling of ``M(a, b + 8)``."""
    if a is None or b is None:
        a, b = _dims(tiling)
    if a < 2:
        raise ValueError("extend_cols needs a >= 2")
    check_tiling(tiling, modified_rect(a, b), T4)
    band = band_tiling(a).translated((0, b - 1), T4)
    out = Tiling.of(list(tiling) + list(band), T4)
    check_tiling(out, modified_rect(a, b + 8), T4)
    return out


def extend_strip(tiling: Tiling, b: int | None = None) -> Tiling:
    """Tiling of ``M(2, b)`` to ``M(2, b + 2)`` by one more step tile."""
    if b is None:
        a, b = _dims(tiling)
        if a != 2:
            raise ValueError("extend_strip needs a tiling of M(2, b)")
    check_tiling(tiling, modified_rect(2, b), T4)
    out = Tiling.of(list(tiling) + [Placement(STEP_TILE, (0, b - 1))], T4)
    check_tiling(out, modified_rect(2, b + 2), T4)
    return out


BASE_CASES = ((2, 3), (5, 2), (3, 6))


@lru_cache(maxsize=None)
def base_tiling(a: int, b: int) -> Tiling:
    found = first_s_tiling(modified_rect(a, b))
    if found is None:
        raise RuntimeError(f"S does not tile M({a},{b})")
    return found


def construct(a: int, b: int) -> Tiling | None:
    """Explicit ``S`` tiling of ``M(a, b)`` from base cases and extensions."""
    if not predicate(a, b):
        return None
    if a % 4 == 2:
        t, bb = base_tiling(2, 3), 3
        while bb < b:
            t = extend_strip(t, bb)
            bb += 2
        aa = 2
    elif a % 4 == 1:
        t, aa, bb = base_tiling(5, 2), 5, 2
    else:
        t, aa, bb = base_tiling(3, 6), 3, 6
    while bb < b:
        t = extend_cols(t, aa, bb)
        bb += 8
    while aa < a:
        t = extend_rows(t, aa, bb)
        aa += 4
    check_tiling(t, modified_rect(a, b), T4)
    return t


def odd_tiling_bases(budget: EnumerationBudget | None = None) -> dict[tuple[int, int], Tiling | None]:
    """Odd ``T_4`` tilings of ``M(5, 6)`` and ``M(3, 2)``."""
    return {
        (a, b): parity_search(modified_rect(a, b), T4, NON_S_INDICES, True, budget)
        for a, b in ((5, 6), (3, 2))
    }
