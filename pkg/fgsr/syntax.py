"""
Text syntax for letters, words and Nielsen moves.

Generators are written ``x, y, z`` followed by ``a`` .. ``w``; an uppercase
symbol is the inverse of its lowercase one.  Moves are written ``R(a,b)``
(a ↦ ab), ``L(a,b)`` (a ↦ ba), ``I(a)`` and ``S(a,b)``, separated by
semicolons and applied left to right.
"""

from __future__ import annotations
import re
from typing import TYPE_CHECKING, Iterable

if TYPE_CHECKING:
    from .autom import NielsenMove

__all__ = ("SYMBOLS", "WordSyntaxError", "symbol", "format_word",
           "parse_word", "parse_letter", "parse_moves", "format_moves")

SYMBOLS = "xyz" + "abcdefghijklmnopqrstuvw"

_MOVE_RE = re.compile(r"^\s*([RLIS])\s*\(\s*([A-Za-z])\s*"
                      r"(?:,\s*([A-Za-z])\s*)?\)\s*$")


class WordSyntaxError(ValueError):
    """Raised when a word or move string cannot be parsed."""


def symbol(letter: int) -> str:
    index = abs(letter) - 1
    if not 0 <= index < len(SYMBOLS) or letter == 0:
        raise ValueError(f"Letter {letter} has no symbol")
    char = SYMBOLS[index]
    return char if letter > 0 else char.upper()


def format_word(word: Iterable[int]) -> str:
    return "".join(symbol(letter) for letter in word)


def parse_letter(char: str, n: int) -> int:
    index = SYMBOLS.find(char.lower())
    if index < 0:
        raise WordSyntaxError(f"Unknown letter {char!r}")
    if index >= n:
        raise WordSyntaxError(
            f"Letter {char!r} is generator {index + 1} but n = {n}")
    return index + 1 if char.islower() else -(index + 1)


def parse_word(text: str, n: int) -> tuple[int, ...]:
    """
    Parse a word, ignoring whitespace.  The result is not reduced.

    * `text`: letters such as ``"xyXY"``
    * `n`: rank of the free group
    """
    return tuple(parse_letter(c, n) for c in text if not c.isspace())


def parse_moves(text: str, n: int) -> tuple[NielsenMove, ...]:
    """Parse ``"R(x,y);I(y)"`` into a tuple of moves.  Empty text is the
    identity."""
    from .autom import MoveKind, NielsenMove

    moves = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        match = _MOVE_RE.match(chunk)
        if match is None:
            raise WordSyntaxError(f"Malformed move {chunk.strip()!r}")
        kind, first, second = match.groups()
        i = _generator(first, n)
        if kind == "I":
            if second is not None:
                raise WordSyntaxError(f"I() takes one generator: {chunk!r}")
            moves.append(NielsenMove(MoveKind.INVERT, i))
            continue
        if second is None:
            raise WordSyntaxError(f"{kind}() takes two generators: {chunk!r}")
        j = _generator(second, n)
        if i == j:
            raise WordSyntaxError(f"Move with equal generators: {chunk!r}")
        moves.append(NielsenMove(MoveKind(kind), i, j))
    return tuple(moves)


def format_moves(moves: Iterable[NielsenMove]) -> str:
    return ";".join(str(move) for move in moves)


def _generator(char: str, n: int) -> int:
    if not char.islower():
        raise WordSyntaxError(f"Moves take generators, not inverses: {char!r}")
    return parse_letter(char, n) - 1
