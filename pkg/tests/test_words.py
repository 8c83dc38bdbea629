from itertools import product

import pytest
from hypothesis import given, strategies as st

from fgsr.sampling import random_cyclic_word
from fgsr.syntax import WordSyntaxError, format_word, parse_moves, parse_word
from fgsr.words import Alphabet, CyclicWord, Orientation, TrivialWordError, \
    admits_tvt, all_rotations_admit_tvt, cancellation, canon_cyclic, \
    canon_uword, cyclic_canon_map, cyclic_reduce, enumerate_basis, \
    free_reduce, hom_count_cyclic, hom_count_segment, inverse, is_reduced, \
    k_affixes, occurrences_cyclic, primitive_root

from .conftest import uword, word

reduced_words = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]),
                         max_size=12).map(free_reduce)


def test_free_reduce():
    assert free_reduce(word("xyYXx")) == word("x")
    assert free_reduce(word("xX")) == ()
    assert cancellation(word("xy"), word("YXz")) == 2


def test_cyclic_reduce():
    assert cyclic_reduce(word("Xyx")) == (word("x"), word("y"))
    with pytest.raises(TrivialWordError):
        cyclic_reduce(word("xX"))


def test_uword_canon():
    assert uword("YX") == uword("xy")
    assert uword("YX").canon == word("xy")
    assert uword("Yx").canon == word("Xy")
    assert len(uword("xyz")) == 3
    with pytest.raises(TrivialWordError):
        canon_uword(word("yY"))


def test_cyclic_canon():
    assert canon_cyclic(word("yx")).canon == word("xy")
    assert canon_cyclic(word("yxYX")) == canon_cyclic(word("xyXY"))
    assert canon_cyclic(word("zXyxZ")) == canon_cyclic(word("y"))
    cyc, shift, direction = cyclic_canon_map(word("YX"))
    assert cyc.canon == word("xy")
    assert direction == -1
    assert shift == 0


@given(reduced_words, st.integers(min_value=0, max_value=11))
def test_cyclic_canon_rotation_invariant(w, shift):
    _, core = cyclic_reduce(w) if w else ((), ())
    if not core:
        return
    shift %= len(core)
    rotated = core[shift:] + core[:shift]
    assert canon_cyclic(rotated) == canon_cyclic(core)
    assert canon_cyclic(inverse(rotated)) == canon_cyclic(core)


@given(reduced_words)
def test_inverse_cancels(w):
    assert free_reduce(w + inverse(w)) == ()


def test_hom_counts():
    assert hom_count_cyclic(uword("x"), canon_cyclic(word("xx"))) == 2
    assert hom_count_cyclic(uword("xx"), canon_cyclic(word("x"))) == 1
    assert hom_count_cyclic(uword("xy"), canon_cyclic(word("xyXY"))) == 1
    assert hom_count_cyclic(uword("x"), canon_cyclic(word("xyXY"))) == 2
    assert hom_count_segment(uword("xy"), uword("xyxy")) == 2
    assert hom_count_segment(uword("xyz"), uword("xy")) == 0
    found = occurrences_cyclic(uword("xy"), canon_cyclic(word("xyXY")))
    assert len(found) == 1


def test_primitive_root():
    assert primitive_root(canon_cyclic(word("xyxy"))) == \
        (canon_cyclic(word("xy")), 2)
    assert primitive_root(canon_cyclic(word("xxx"))) == \
        (canon_cyclic(word("x")), 3)
    w = canon_cyclic(word("xyXY"))
    assert primitive_root(w) == (w, 1)


def test_tvt_power_oracle():
    assert admits_tvt(word("xyx"))
    assert not admits_tvt(word("xy"))
    assert not admits_tvt(word("x"))
    for text in ("xyxy", "xx", "xyzxyz", "xYxY"):
        assert all_rotations_admit_tvt(canon_cyclic(word(text)))
    for text in ("x", "xyXY", "xxy", "xyz"):
        assert not all_rotations_admit_tvt(canon_cyclic(word(text)))


@given(reduced_words)
def test_power_oracle_matches_root(w):
    if not w or w[0] == -w[-1]:
        return
    cyc = canon_cyclic(w)
    assert all_rotations_admit_tvt(cyc) == (primitive_root(cyc)[1] > 1)


def test_power_oracle_exhaustive(rng):
    necklaces = set()
    for length in range(1, 9):
        for w in product(Alphabet(2).letters, repeat=length):
            if is_reduced(w) and (length == 1 or w[0] != -w[-1]):
                necklaces.add(canon_cyclic(w))
    assert canon_cyclic(word("xyxyxyxy", 2)) in necklaces
    sampled = {random_cyclic_word(rng, 2, rng.randint(9, 12))
               for _ in range(200)}
    for cyc in necklaces | sampled:
        root, power = primitive_root(cyc)
        assert all_rotations_admit_tvt(cyc) == (power > 1)
        assert len(root) * power == len(cyc)


def test_enumerate_basis():
    assert len(enumerate_basis(2, 1)) == 2
    assert len(enumerate_basis(2, 2)) == 6
    assert len(enumerate_basis(2, 3)) == 18
    assert len(enumerate_basis(3, 2)) == 15
    basis = enumerate_basis(2, 2)
    assert list(basis) == sorted(basis)
    assert basis[0] == uword("xx")
    assert len(set(basis)) == len(basis)


def test_k_affixes():
    left, right = k_affixes(uword("xyX"), 2)
    assert left.word == uword("xy") and left.pointing == "inward"
    assert right.word == uword("xY") and right.pointing == "inward"
    left, right = k_affixes(uword("xxx"), 2)
    assert left.pointing == "inward"
    assert right.pointing == "outward"
    with pytest.raises(ValueError):
        k_affixes(uword("xy"), 2)


def test_orientation():
    sigma = Orientation({word("yx", 2): word("yx", 2)})
    assert sigma(uword("XY")) == word("yx")
    assert sigma(uword("xy")) == word("xy")
    assert sigma == Orientation({uword("XY"): word("yx", 2)})
    assert len(sigma.overrides) == 1
    with pytest.raises(ValueError):
        Orientation({word("xy", 2): word("xY", 2)})
    with pytest.warns(UserWarning, match="default"):
        redundant = Orientation({word("xy", 2): word("xy", 2)})
    assert redundant == Orientation()


def test_syntax():
    assert parse_word("xyXY", 2) == (1, 2, -1, -2)
    assert format_word((1, -3, 4)) == "xZa"
    assert format_word(parse_word("zaB", 5)) == "zaB"
    with pytest.raises(WordSyntaxError):
        parse_word("xz", 2)
    with pytest.raises(WordSyntaxError):
        parse_word("x1", 2)
    moves = parse_moves("R(x,y); L(y,x);I(y);S(x,y)", 2)
    assert ";".join(str(m) for m in moves) == "R(x,y);L(y,x);I(y);S(x,y)"
    assert parse_moves("", 2) == ()
    for bad in ("R(x)", "I(x,y)", "Q(x,y)", "R(x,x)", "R(X,y)"):
        with pytest.raises(WordSyntaxError):
            parse_moves(bad, 2)


@given(reduced_words)
def test_syntax_round_trip(w):
    assert parse_word(format_word(w), 3) == w


def test_cyclic_word_power():
    assert canon_cyclic(word("xy")).power(2) == canon_cyclic(word("xyxy"))
    assert isinstance(canon_cyclic(word("x")), CyclicWord)
