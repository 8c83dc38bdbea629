from random import Random

import pytest

from fgsr import Automorphism, Orientation, parse_moves, parse_word
from fgsr.words import canon_uword


def word(text: str, n: int = 3) -> tuple[int, ...]:
    return parse_word(text, n)


def uword(text: str, n: int = 3):
    return canon_uword(parse_word(text, n))


def auto(moves: str, n: int = 3) -> Automorphism:
    return Automorphism(n, parse_moves(moves, n))


@pytest.fixture
def sigma_yx():
    """Orient the u-words of yx and Yx as written (n = 2)."""
    return Orientation({word("yx", 2): word("yx", 2),
                        word("Yx", 2): word("Yx", 2)})


@pytest.fixture
def phi_xy():
    """x -> xy on F_3."""
    return auto("R(x,y)")


@pytest.fixture
def rng():
    return Random(20240601)
