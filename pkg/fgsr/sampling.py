"""
Random words and automorphisms for verification campaigns.

Everything draws from a caller-supplied `random.Random`, so a campaign is
reproducible from its seed.
"""

from __future__ import annotations
from random import Random

from .autom import Automorphism, MoveKind, NielsenMove
from .words import Alphabet, CyclicWord, UWord, Word, canon_cyclic, \
    canon_uword

__all__ = ("random_reduced_word", "random_cyclic_word", "random_uword",
           "random_move", "random_moves", "random_automorphism")


def random_reduced_word(rng: Random, n: int, length: int) -> Word:
    letters = Alphabet(n).letters
    word: list[int] = []
    while len(word) < length:
        letter = rng.choice(letters)
        if not word or letter != -word[-1]:
            word.append(letter)
    return tuple(word)


def random_uword(rng: Random, n: int, length: int) -> UWord:
    return canon_uword(random_reduced_word(rng, n, length))


def random_cyclic_word(rng: Random, n: int, length: int) -> CyclicWord:
    """A uniformly drawn cyclically reduced word of the given length."""
    if length < 1:
        raise ValueError(f"Cyclic words need a positive length, got {length}")
    while True:
        word = random_reduced_word(rng, n, length)
        if length == 1 or word[0] != -word[-1]:
            return canon_cyclic(word)


def random_move(rng: Random, n: int) -> NielsenMove:
    kinds = list(MoveKind) if n > 1 else [MoveKind.INVERT]
    kind = rng.choice(kinds)
    if kind is MoveKind.INVERT:
        return NielsenMove(kind, rng.randrange(n))
    i, j = rng.sample(range(n), 2)
    return NielsenMove(kind, i, j)


def random_moves(rng: Random, n: int, count: int
                 ) -> tuple[NielsenMove, ...]:
    return tuple(random_move(rng, n) for _ in range(count))


def random_automorphism(rng: Random, n: int, count: int) -> Automorphism:
    return Automorphism(n, random_moves(rng, n, count))
