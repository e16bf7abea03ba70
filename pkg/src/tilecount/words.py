"""Words in the free group on ``x`` and ``y``, boundary words and presentations.

Text syntax: ``x``, ``y`` are generators and ``X``, ``Y`` their inverses, so
``yxxYXX`` is the commutator ``[y, x^2]``.  :func:`parse_word` additionally
accepts power/commutator notation such as ``(yx)^2y^{-2}x^{-2}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .grid import Region, TileSet, is_disk

Letter = tuple[str, int]

_GENERATORS = ("x", "y")


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for gen, exp in letters:
        if out and out[-1][0] == gen and out[-1][1] == -exp:
            out.pop()
        else:
            out.append((gen, exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word; construction always reduces."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        for gen, exp in self.letters:
            if gen not in _GENERATORS or exp not in (1, -1):
                raise ValueError(f"bad letter {(gen, exp)!r}")
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def parse(cls, text: str) -> Word:
        return parse_word(text)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(g if e > 0 else g.upper() for g, e in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> Word:
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def inverse(self) -> Word:
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def cyclically_reduced(self) -> Word:
        letters = list(self.letters)
        while len(letters) >= 2 and letters[0][0] == letters[-1][0] and letters[0][1] == -letters[-1][1]:
            letters = letters[1:-1]
        return Word(tuple(letters))

    def rotate(self, k: int) -> Word:
        if not self.letters:
            return self
        k %= len(self.letters)
        return Word(self.letters[k:] + self.letters[:k])

    def pretty(self) -> str:
        """Render with run-length powers, e.g. ``y x^2 y^-1 x^-2``."""
        parts = []
        i = 0
        letters = self.letters
        while i < len(letters):
            j = i
            while j < len(letters) and letters[j] == letters[i]:
                j += 1
            gen, exp = letters[i]
            power = (j - i) * exp
            parts.append(gen if power == 1 else f"{gen}^{power}")
            i = j
        return " ".join(parts) if parts else "1"


def commutator(a: Word, b: Word) -> Word:
    """``[a, b] = a b a^-1 b^-1``."""
    return a * b * a.inverse() * b.inverse()


def exponent_sums(word: Word) -> tuple[int, int]:
    ex = sum(e for g, e in word.letters if g == "x")
    ey = sum(e for g, e in word.letters if g == "y")
    return ex, ey


def cyclically_equal(a: Word, b: Word) -> bool:
    a = a.cyclically_reduced()
    b = b.cyclically_reduced()
    if len(a) != len(b):
        return False
    if not a.letters:
        return True
    doubled = a.letters + a.letters
    n = len(b.letters)
    return any(doubled[k:k + n] == b.letters for k in range(len(a.letters)))


class _Parser:
    def __init__(self, text: str):
        self.text = "".join(text.split())
        self.pos = 0

    def error(self, msg: str) -> ValueError:
        return ValueError(f"{msg} at position {self.pos} in {self.text!r}")

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def word(self, stop: str) -> Word:
        out = Word()
        while self.peek() and self.peek() not in stop:
            out = out * self.item()
        return out

    def item(self) -> Word:
        ch = self.peek()
        if ch in ("x", "y"):
            self.pos += 1
            atom = Word(((ch, 1),))
        elif ch in ("X", "Y"):
            self.pos += 1
            atom = Word(((ch.lower(), -1),))
        elif ch == "(":
            self.pos += 1
            atom = self.word(")")
            self.take(")")
        elif ch == "[":
            self.pos += 1
            left = self.word(",")
            self.take(",")
            right = self.word("]")
            self.take("]")
            atom = commutator(left, right)
        else:
            raise self.error(f"unexpected {ch!r}")
        if self.peek() == "^":
            self.pos += 1
            atom = atom ** self.exponent()
        return atom

    def exponent(self) -> int:
        braced = self.peek() == "{"
        if braced:
            self.pos += 1
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        while self.peek().isdigit():
            self.pos += 1
        digits = self.text[start:self.pos]
        if digits in ("", "-"):
            raise self.error("expected exponent")
        if braced:
            self.take("}")
        return int(digits)


def parse_word(text: str) -> Word:
    """Parse letter syntax or power notation (``[y,x^2]``, ``(yx)^2y^{-2}``)."""
    parser = _Parser(text)
    out = parser.word("")
    if parser.pos != len(parser.text):
        raise parser.error("trailing input")
    return out


# unit steps as (d_col, d_row) vertex moves
_STEP_LETTER = {(0, 1): ("y", 1), (0, -1): ("y", -1), (1, 0): ("x", 1), (-1, 0): ("x", -1)}


def _boundary_edges(cells: frozenset) -> dict[tuple[int, int], tuple[int, int]]:
    """Map vertex -> next vertex along the boundary, interior kept on the right.

    Vertices are ``(x, y) = (col, row)`` lattice points.
    """
    nxt: dict[tuple[int, int], tuple[int, int]] = {}

    def add(a, b):
        if a in nxt:
            raise ValueError("boundary word requires disk region")
        nxt[a] = b

    for r, c in cells:
        if (r, c - 1) not in cells:
            add((c, r), (c, r + 1))
        if (r + 1, c) not in cells:
            add((c, r + 1), (c + 1, r + 1))
        if (r, c + 1) not in cells:
            add((c + 1, r + 1), (c + 1, r))
        if (r - 1, c) not in cells:
            add((c + 1, r), (c, r))
    return nxt


def boundary_word(region: Region) -> Word:
    """Clockwise boundary word from the SW corner of the least cell."""
    if not is_disk(region):
        raise ValueError("boundary word requires disk region")
    nxt = _boundary_edges(region.cells)
    r0, c0 = min(region.cells)
    start = (c0, r0)
    letters = []
    v = start
    while True:
        w = nxt[v]
        letters.append(_STEP_LETTER[(w[0] - v[0], w[1] - v[1])])
        v = w
        if v == start:
            break
    if len(letters) != len(nxt):
        raise ValueError("boundary word requires disk region")
    return Word(tuple(letters))


@dataclass(frozen=True)
class Presentation:
    relators: tuple[Word, ...]
    generators: tuple[str, ...] = _GENERATORS

    def __str__(self) -> str:
        return "\n".join(str(r) for r in self.relators)

    def pretty(self) -> str:
        body = ", ".join(r.pretty() for r in self.relators)
        return f"< x, y | {body} >"


def presentation(tileset: TileSet) -> Presentation:
    """Tile boundary group presentation; relator ``i`` is the word of tile ``i``."""
    return Presentation(tuple(boundary_word(Region(t.cells)) for t in tileset))
