"""Group words over the generating symbols.

Symbols are ASCII tokens such as ``x_0``, ``xh_1``, ``pib_0`` or ``gamma_0``.
On input the underscore is optional (``x0`` reads as ``x_0``) and a letter may
carry an exponent: ``x0^-1``, ``x1^5``, ``C_0^-3``.
"""

import re
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from typing import NamedTuple

from app.core.errors import MalformedWord, UnknownSymbol

_SYMBOL_RE = re.compile(r"^([A-Za-z]+)_?(\d+)$")
_TOKEN_RE = re.compile(r"^([A-Za-z]+_?\d+)(?:\^(-?\d+))?$")
_IDENTITY_TOKENS = frozenset({"e", "1", "id"})


def canonical_symbol(token: str) -> str:
    """Normalize ``x0`` / ``x_0`` to ``x_0``.

    Raises:
        MalformedWord: If the token is not a family name followed by an index.
    """
    match = _SYMBOL_RE.match(token)
    if match is None:
        raise MalformedWord(f"bad generator symbol {token!r}")
    return f"{match.group(1)}_{int(match.group(2))}"


def split_symbol(symbol: str) -> tuple[str, int]:
    match = _SYMBOL_RE.match(symbol)
    if match is None:
        raise MalformedWord(f"bad generator symbol {symbol!r}")
    return match.group(1), int(match.group(2))


class Letter(NamedTuple):
    symbol: str
    exponent: int  # +1 or -1

    def inverse(self) -> "Letter":
        return Letter(self.symbol, -self.exponent)

    def __str__(self) -> str:
        return self.symbol if self.exponent == 1 else f"{self.symbol}^-1"


@dataclass(frozen=True)
class GroupWord:
    """A finite sequence of generator letters; its length is the letter count."""

    letters: tuple[Letter, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        """Parse a whitespace (or ``*``) separated word.

        Raises:
            MalformedWord: On any token that is not ``symbol`` or ``symbol^k``.
        """
        letters: list[Letter] = []
        for token in text.replace("*", " ").replace(".", " ").split():
            if token in _IDENTITY_TOKENS:
                continue
            match = _TOKEN_RE.match(token)
            if match is None:
                raise MalformedWord(f"bad word token {token!r}")
            symbol = canonical_symbol(match.group(1))
            power = int(match.group(2)) if match.group(2) is not None else 1
            sign = 1 if power > 0 else -1
            letters.extend(Letter(symbol, sign) for _ in range(abs(power)))
        return cls(tuple(letters))

    @classmethod
    def from_letters(cls, letters: Iterable[Letter]) -> "GroupWord":
        return cls(tuple(letters))

    @classmethod
    def power(cls, symbol: str, exponent: int) -> "GroupWord":
        """Return ``symbol^exponent`` spelled out letter by letter."""
        sign = 1 if exponent > 0 else -1
        return cls(tuple(Letter(symbol, sign) for _ in range(abs(exponent))))

    @classmethod
    def letter(cls, symbol: str, exponent: int = 1) -> "GroupWord":
        return cls((Letter(symbol, exponent),))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __add__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def __getitem__(self, item: slice) -> "GroupWord":
        return GroupWord(self.letters[item])

    def __bool__(self) -> bool:
        return bool(self.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple(letter.inverse() for letter in reversed(self.letters)))

    def free_reduce(self) -> "GroupWord":
        """Cancel adjacent ``s s^-1`` pairs until none remain."""
        stack: list[Letter] = []
        for letter in self.letters:
            if stack and stack[-1] == letter.inverse():
                stack.pop()
            else:
                stack.append(letter)
        return GroupWord(tuple(stack))

    def runs(self) -> list[tuple[str, int]]:
        """Group consecutive letters of the same symbol and sign."""
        out: list[tuple[str, int]] = []
        for symbol, exponent in self.letters:
            if out and out[-1][0] == symbol and (out[-1][1] > 0) == (exponent > 0):
                out[-1] = (symbol, out[-1][1] + exponent)
            else:
                out.append((symbol, exponent))
        return out

    def symbols(self) -> set[str]:
        return {letter.symbol for letter in self.letters}

    def __str__(self) -> str:
        parts = []
        for symbol, exponent in self.runs():
            parts.append(symbol if exponent == 1 else f"{symbol}^{exponent}")
        return " ".join(parts)


IDENTITY_WORD = GroupWord()


# Coordinate swap: symbol -> (mirror symbol, exponent sign)
_MIRROR: dict[str, tuple[str, int]] = {
    "x_0": ("y_0", 1),
    "x_1": ("y_1", 1),
    "Bh_0": ("gamma_0", 1),
    "xh_1": ("yh_1", 1),
    "C_0": ("C_0", -1),
}
for _i in range(2):
    _MIRROR[f"alpha_{_i}"] = (f"beta_{_i}", 1)
for _key, (_value, _sign) in list(_MIRROR.items()):
    _MIRROR.setdefault(_value, (_key, _sign))


def mirror_word(word: GroupWord) -> GroupWord:
    """Conjugate a word by the coordinate swap, letter by letter.

    Raises:
        UnknownSymbol: If a letter has no mirror partner in the generating set.
    """
    letters = []
    for symbol, exponent in word:
        if symbol not in _MIRROR:
            raise UnknownSymbol(f"{symbol} has no coordinate-swap partner")
        image, sign = _MIRROR[symbol]
        letters.append(Letter(image, exponent * sign))
    return GroupWord(tuple(letters))


def mirror_pairs() -> list[tuple[str, str, int]]:
    """List each mirror relation once as ``(symbol, partner, sign)``."""
    seen: set[str] = set()
    out = []
    for symbol, (image, sign) in sorted(_MIRROR.items()):
        if symbol in seen:
            continue
        seen.update({symbol, image})
        out.append((symbol, image, sign))
    return out
