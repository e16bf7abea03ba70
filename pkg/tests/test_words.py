import pytest
from hypothesis import given
from hypothesis import strategies as st

from tilecount.grid import Region, TileSet, dominoes, monomino, ribbon_set
from tilecount.regions import random_disk_region, rect
from tilecount.words import (
    Word,
    boundary_word,
    commutator,
    cyclically_equal,
    exponent_sums,
    parse_word,
    presentation,
)

letters = st.lists(st.sampled_from(["x", "X", "y", "Y"]), max_size=16).map("".join)

TROMINO_RELATORS = ["[y,x^3]", "(yx)^2y^{-2}x^{-2}", "y^2x^2(y^{-1}x^{-1})^2", "[y^3,x]"]
TETROMINO_RELATORS = {
    1: "[y,x^4]",
    2: "yx^2yxy^{-2}x^{-3}",
    3: "yxyx^2y^{-1}x^{-1}y^{-1}x^{-2}",
    8: "[y^4,x]",
}


def test_word_reduction_and_syntax():
    assert str(Word.parse("xXyyY")) == "y"
    assert str(Word.parse("")) == ""
    assert Word.parse("xyXY") == commutator(Word.parse("x"), Word.parse("y"))
    assert Word.parse("yxxYXX").pretty() == "y x^2 y^-1 x^-2"
    assert Word.parse("").pretty() == "1"
    with pytest.raises(ValueError):
        Word.parse("xz")


def test_parse_word_forms():
    assert str(parse_word("[y,x^2]")) == "yxxYXX"
    assert str(parse_word("(yx)^2")) == "yxyx"
    assert str(parse_word("x^{-3}")) == "XXX"
    assert str(parse_word("y^-1")) == "Y"
    with pytest.raises(ValueError):
        parse_word("[x,y")


@given(letters, letters)
def test_group_laws(a, b):
    u, v = Word.parse(a), Word.parse(b)
    assert str(u * u.inverse()) == ""
    assert (u * v).inverse() == v.inverse() * u.inverse()
    assert exponent_sums(u * v) == tuple(p + q for p, q in zip(exponent_sums(u), exponent_sums(v)))
    assert exponent_sums(commutator(u, v)) == (0, 0)
    assert Word.parse(str(u)) == u


@given(letters, st.integers(0, 20))
def test_rotation_is_cyclic_equality(a, k):
    w = Word.parse(a).cyclically_reduced()
    assert cyclically_equal(w, w.rotate(k))


def test_cyclic_examples():
    assert cyclically_equal(parse_word("yx^3y^-1x^-3"), parse_word("x^3y^-1x^-3y"))
    assert cyclically_equal(Word.parse("xy"), Word.parse("yx"))
    assert not cyclically_equal(Word.parse("xy"), Word.parse("xY"))


def test_exponent_sums_examples():
    assert exponent_sums(parse_word("[y,x^3]")) == (0, 0)
    assert exponent_sums(Word.parse("xxy")) == (2, 1)
    assert exponent_sums(Word.parse("")) == (0, 0)


def test_boundary_word_examples():
    assert boundary_word(Region(frozenset({(0, 0), (0, 1)}))).pretty() == "y x^2 y^-1 x^-2"
    assert boundary_word(Region(ribbon_set(4).tile(2).cells)).pretty() == "y x^2 y x y^-2 x^-3"
    assert str(boundary_word(Region(frozenset({(0, 0)})))) == "yxYX"
    with pytest.raises(ValueError):
        boundary_word(Region(frozenset({(0, 0), (1, 1)})))


@given(st.integers(1, 30), st.integers(0, 10_000), st.integers(-5, 5), st.integers(-5, 5))
def test_boundary_word_properties(area, seed, dr, dc):
    region = random_disk_region(area, seed)
    w = boundary_word(region)
    assert exponent_sums(w) == (0, 0)
    assert w == boundary_word(region.translated((dr, dc)))
    # every boundary edge is traversed once: the word length is the perimeter
    cells = region.cells
    perimeter = sum((r + dr2, c + dc2) not in cells for r, c in cells
                    for dr2, dc2 in ((1, 0), (-1, 0), (0, 1), (0, -1)))
    assert len(w) == perimeter


def test_presentation_dominoes():
    pres = presentation(dominoes())
    assert [str(r) for r in pres.relators] == [str(parse_word("[y,x^2]")), str(parse_word("[y^2,x]"))]
    assert pres.pretty() == "< x, y | y x^2 y^-1 x^-2, y^2 x y^-2 x^-1 >"


def test_presentation_trominoes():
    pres = presentation(ribbon_set(3))
    assert list(pres.relators) == [parse_word(s) for s in TROMINO_RELATORS]
    assert str(pres) == "yxxxYXXX\nyxyxYYXX\nyyxxYXYX\nyyyxYYYX"


def test_presentation_tetrominoes():
    rels = presentation(ribbon_set(4)).relators
    for i, text in TETROMINO_RELATORS.items():
        assert rels[i - 1] == parse_word(text)
    assert [str(r) for r in rels] == [
        "yxxxxYXXXX", "yxxyxYYXXX", "yxyxxYXYXX", "yxyyxYYYXX",
        "yyxxxYXXYX", "yyxyxYYXYX", "yyyxxYXYYX", "yyyyxYYYYX",
    ]


def test_presentation_monomino():
    assert presentation(monomino()).relators == (commutator(Word.parse("y"), Word.parse("x")),)


@pytest.mark.parametrize("n", range(2, 7))
def test_ribbon_relators_are_balanced(n):
    for rel in presentation(ribbon_set(n)).relators:
        assert exponent_sums(rel) == (0, 0)


def test_presentation_rejects_rectangle_free_set():
    tiles = TileSet.from_cells([rect(2, 3).cells])
    assert str(presentation(tiles)) == "yyxxxYYXXX"
