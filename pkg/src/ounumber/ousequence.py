"""Words over {O, U} and their OU numbers.

A linear word ``X_1 ... X_m`` gets the OU number ``Φ = ½ Σ ε(X_i)`` where
``ε`` is +1 for an O in an even position or a U in an odd position and -1
otherwise. A cyclic word of even length gets ``|Φ|`` of any of its linear
representatives.

Values of Φ are exact :class:`HalfInteger` instances; no floats are involved.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Callable, Iterable, Sequence

from .errors import ParseError, RejectError, ValidationError


class Letter(enum.Enum):
    O = "O"
    U = "U"

    def flipped(self) -> "Letter":
        return Letter.U if self is Letter.O else Letter.O

    def __str__(self) -> str:
        return self.value


@total_ordering
@dataclass(frozen=True)
class HalfInteger:
    """An exact value ``doubled / 2``."""

    doubled: int

    @classmethod
    def of(cls, value) -> "HalfInteger":
        if isinstance(value, HalfInteger):
            return value
        frac = Fraction(value)
        if (2 * frac).denominator != 1:
            raise ValueError(f"{value!r} is not a half-integer")
        return cls(int(2 * frac))

    @property
    def is_integer(self) -> bool:
        return self.doubled % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.doubled, 2)

    def to_int(self) -> int:
        if not self.is_integer:
            raise ValueError(f"{self} is not an integer")
        return self.doubled // 2

    def __neg__(self) -> "HalfInteger":
        return HalfInteger(-self.doubled)

    def __abs__(self) -> "HalfInteger":
        return HalfInteger(abs(self.doubled))

    def __add__(self, other) -> "HalfInteger":
        return HalfInteger(self.doubled + HalfInteger.of(other).doubled)

    __radd__ = __add__

    def __sub__(self, other) -> "HalfInteger":
        return HalfInteger(self.doubled - HalfInteger.of(other).doubled)

    def __eq__(self, other) -> bool:
        if isinstance(other, HalfInteger):
            return self.doubled == other.doubled
        if isinstance(other, (int, Fraction)):
            return Fraction(self.doubled, 2) == other
        return NotImplemented

    def __lt__(self, other) -> bool:
        return self.as_fraction() < HalfInteger.of(other).as_fraction()

    def __hash__(self) -> int:
        return hash(Fraction(self.doubled, 2))

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.doubled // 2)
        return f"{self.doubled}/2"

    def __repr__(self) -> str:
        return f"HalfInteger({self})"


_TOKEN = re.compile(r"([OU])(?:\^(\d+))?")


def _parse_letters(text: str) -> tuple[Letter, ...]:
    text = "".join(text.split())
    letters: list[Letter] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"bad word literal at offset {pos}: {text!r}")
        count = int(m.group(2)) if m.group(2) is not None else 1
        letters.extend([Letter(m.group(1))] * count)
        pos = m.end()
    return tuple(letters)


@dataclass(frozen=True)
class OUSequence:
    """A linear word over {O, U}; positions are 1-based."""

    letters: tuple[Letter, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "OUSequence":
        return cls(_parse_letters(text))

    @classmethod
    def of(cls, letters: Iterable[Letter | str]) -> "OUSequence":
        return cls(tuple(Letter(x) if isinstance(x, str) else x for x in letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __str__(self) -> str:
        return "".join(x.value for x in self.letters)


class CyclicOUSequence:
    """A cyclic word of even length; equality is up to rotation only."""

    __slots__ = ("representative", "_canon")

    def __init__(self, representative: OUSequence | str | Sequence[Letter]):
        if isinstance(representative, str):
            representative = OUSequence.parse(representative)
        elif not isinstance(representative, OUSequence):
            representative = OUSequence.of(representative)
        if len(representative) % 2:
            raise ValidationError(
                f"cyclic words must have even length, got {len(representative)}"
            )
        self.representative = representative
        s = str(representative)
        self._canon = min((s[i:] + s[:i] for i in range(len(s))), default="")

    def __len__(self) -> int:
        return len(self.representative)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CyclicOUSequence):
            return NotImplemented
        return self._canon == other._canon

    def __hash__(self) -> int:
        return hash(self._canon)

    def __str__(self) -> str:
        return str(self.representative)

    def __repr__(self) -> str:
        return f"CyclicOUSequence('{self}')"

    def rotations(self) -> list[OUSequence]:
        rep = self.representative
        return [rotate_by(rep, i) for i in range(max(len(rep), 1))]


def sign(letter: Letter, position: int) -> int:
    if position < 1:
        raise ValueError("positions are 1-based")
    even = position % 2 == 0
    if (letter is Letter.O) == even:
        return 1
    return -1


def phi_linear(s: OUSequence) -> HalfInteger:
    return HalfInteger(sum(sign(x, i) for i, x in enumerate(s.letters, start=1)))


def phi_cyclic(w: CyclicOUSequence) -> int:
    return abs(phi_linear(w.representative)).to_int()


def reverse(s: OUSequence) -> OUSequence:
    return OUSequence(s.letters[::-1])


def rotate(s: OUSequence) -> OUSequence:
    """Move the initial letter to the end."""
    return rotate_by(s, 1)


def rotate_by(s: OUSequence, k: int) -> OUSequence:
    if not s.letters:
        return s
    k %= len(s)
    return OUSequence(s.letters[k:] + s.letters[:k])


def count_letters(s: OUSequence | CyclicOUSequence) -> tuple[int, int]:
    if isinstance(s, CyclicOUSequence):
        s = s.representative
    n_o = sum(1 for x in s.letters if x is Letter.O)
    return n_o, len(s) - n_o


def reduce_once(s: OUSequence, index: int) -> OUSequence:
    """Delete the equal pair at 1-based positions ``index, index + 1``."""
    if not 1 <= index < len(s):
        raise RejectError(f"no pair at position {index} in {s}")
    i = index - 1
    if s.letters[i] is not s.letters[i + 1]:
        raise RejectError(f"letters at {index},{index + 1} of {s} differ")
    return OUSequence(s.letters[:i] + s.letters[i + 2:])


def cyclic_reduction_sites(w: CyclicOUSequence) -> list[int]:
    """1-based positions ``i`` such that the cyclic pair (i, i+1) is OO or UU.

    Position ``m`` denotes the seam pair (last, first).
    """
    letters = w.representative.letters
    m = len(letters)
    if m < 2:
        return []
    sites = [i + 1 for i in range(m - 1) if letters[i] is letters[i + 1]]
    if m > 2 and letters[-1] is letters[0]:
        sites.append(m)
    return sites


def reduce_cyclic_at(w: CyclicOUSequence, index: int) -> CyclicOUSequence:
    letters = w.representative.letters
    m = len(letters)
    if index == m and m > 2:
        if letters[-1] is not letters[0]:
            raise RejectError(f"seam pair of {w} differs")
        return CyclicOUSequence(OUSequence(letters[1:-1]))
    return CyclicOUSequence(reduce_once(w.representative, index))


def reduce_full(
    w: CyclicOUSequence,
    choose: Callable[[list[int]], int] | None = None,
) -> CyclicOUSequence:
    """Reduce until no OO/UU pair remains, cyclically.

    By default the leftmost interior pair goes first and the seam pair last;
    ``choose`` picks a site from the applicable list instead (used to test
    that the result does not depend on the order).
    """
    while True:
        sites = cyclic_reduction_sites(w)
        if not sites:
            return w
        w = reduce_cyclic_at(w, sites[0] if choose is None else choose(sites))


def is_alternating(s: OUSequence | CyclicOUSequence) -> bool:
    if isinstance(s, CyclicOUSequence):
        return not cyclic_reduction_sites(s)
    return all(a is not b for a, b in zip(s.letters, s.letters[1:]))


def swap_ou_to_uo(w: CyclicOUSequence, index: int) -> CyclicOUSequence:
    """Replace the cyclic pair at (index, index+1 mod m), which must read OU, by UO."""
    letters = list(w.representative.letters)
    m = len(letters)
    if not 1 <= index <= m or m < 2:
        raise RejectError(f"no pair at position {index} in {w}")
    i, j = index - 1, index % m
    if not (letters[i] is Letter.O and letters[j] is Letter.U):
        raise RejectError(f"pair at {index} of {w} is not OU")
    letters[i], letters[j] = Letter.U, Letter.O
    return CyclicOUSequence(OUSequence(tuple(letters)))


def parse_word(text: str) -> OUSequence | CyclicOUSequence:
    """Parse a CLI word literal; a leading ``~`` marks a cyclic word."""
    text = text.strip()
    if text.startswith("~"):
        return CyclicOUSequence(OUSequence.parse(text[1:]))
    return OUSequence.parse(text)


def alternating(m: int, start: Letter = Letter.O) -> OUSequence:
    other = start.flipped()
    return OUSequence(tuple(start if i % 2 == 0 else other for i in range(m)))
