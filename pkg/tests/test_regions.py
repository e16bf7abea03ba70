from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import grown_polyominoes, naive_is_disk
from tilecount.grid import is_disk, normalize
from tilecount.regions import (
    FamilySpec,
    all_disk_regions,
    iter_fixed_polyominoes,
    modified_rect,
    random_disk_region,
    rect,
)

# fixed polyomino counts by area (OEIS A001168)
FIXED_COUNTS = [1, 2, 6, 19, 63, 216, 760, 2725, 9910]

RANDOM_20_7 = [(0, 2), (1, 0), (1, 2), (1, 3), (1, 4), (2, 0), (2, 1), (2, 2), (2, 3), (3, 2),
               (4, 2), (4, 3), (5, 0), (5, 1), (5, 2), (5, 3), (6, 2), (6, 3), (6, 4), (7, 2)]


def test_rect_examples():
    assert rect(1, 1).cells == {(0, 0)}
    assert rect(2, 3).area == 6
    assert rect(4, 4).area == 16
    with pytest.raises(ValueError):
        rect(0, 3)


def test_modified_rect_examples():
    assert modified_rect(2, 3).cells == {(0, 0), (0, 1), (1, 1), (1, 2)}
    m22 = modified_rect(2, 2)
    assert m22.area == 2 and not is_disk(m22)
    with pytest.raises(ValueError):
        modified_rect(1, 5)


@given(st.integers(2, 15), st.integers(2, 15))
def test_modified_rect_properties(a, b):
    m, r = modified_rect(a, b), rect(a, b)
    assert m.area == a * b - 2
    assert m.cells < r.cells and len(r.cells - m.cells) == 2
    assert r.cells - m.cells == {(a - 1, 0), (0, b - 1)}
    assert is_disk(m) == ((a, b) != (2, 2))


def test_fixed_polyomino_counts():
    counts = Counter(len(p) for p in iter_fixed_polyominoes(9))
    assert [counts[k] for k in range(1, 10)] == FIXED_COUNTS


def test_fixed_polyominoes_match_growth_oracle():
    ours = {normalize(p) for p in iter_fixed_polyominoes(7)}
    layers = grown_polyominoes(7)
    assert ours == set().union(*layers.values())
    assert sum(1 for _ in iter_fixed_polyominoes(7)) == len(ours)
    for p in iter_fixed_polyominoes(7):
        assert min(p) == (0, 0)


def test_all_disk_regions_examples():
    assert len(all_disk_regions(2)) == 3
    assert len(all_disk_regions(3)) == 9
    assert all(is_disk(r) for r in all_disk_regions(6))
    assert all_disk_regions(4) == all_disk_regions(4)
    with pytest.raises(ValueError):
        all_disk_regions(13)


def test_all_disk_regions_match_oracle():
    layers = grown_polyominoes(6)
    expect = sum(1 for k in layers for p in layers[k] if naive_is_disk(p))
    assert len(all_disk_regions(6)) == expect
    # the only non-disk heptominoes: the four fixed copies of the holed 3x3 minus a corner
    assert len(all_disk_regions(7)) == sum(FIXED_COUNTS[:7]) - 4


def test_random_disk_region():
    assert random_disk_region(1, 3).cells == {(0, 0)}
    assert random_disk_region(15, 11) == random_disk_region(15, 11)
    r = random_disk_region(20, 7)
    assert is_disk(r) and r.area == 20
    assert sorted(r.cells) == RANDOM_20_7
    with pytest.raises(ValueError):
        random_disk_region(0, 1)


@given(st.integers(1, 40), st.integers(0, 10**6))
def test_random_disk_region_is_disk(area, seed):
    r = random_disk_region(area, seed)
    assert r.area == area and is_disk(r) and naive_is_disk(r.cells)


def test_family_spec():
    assert FamilySpec("rect", 2, 3).build() == rect(2, 3)
    assert FamilySpec("modified_rect", 3, 4).build() == modified_rect(3, 4)
    assert FamilySpec("random_disk", area=20, seed=7).build() == random_disk_region(20, 7)
    assert len(FamilySpec("all_disks", max_area=3).build()) == 9
    with pytest.raises(ValueError):
        FamilySpec("spiral").build()
