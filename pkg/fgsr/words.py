"""
Reduced words, unoriented words (u-words) and cyclic words over the free
group alphabet, and the occurrence counting that realizes labeled graph
morphisms between them.

Letters are signed generator indices: ``i + 1`` is the generator ``x_i`` and
``-(i + 1)`` its inverse.  A word is a plain tuple of letters.  The letter
order is ``x1 < X1 < x2 < X2 < ...``.
"""

from __future__ import annotations
from typing import Iterable, Iterator, Literal, Mapping, NamedTuple, \
    Sequence
from warnings import warn

from .syntax import format_word
from .utils import FrozenDict, memoized

__all__ = ("Letter", "Word", "Alphabet", "TrivialWordError", "UWord",
           "CyclicWord", "AffixInfo", "Occurrence", "Orientation",
           "DEFAULT_ORIENTATION", "letter_key", "word_key", "inverse",
           "is_reduced", "free_reduce", "cancellation", "cyclic_reduce",
           "canon_uword", "canon_cyclic", "cyclic_canon_map",
           "least_rotation", "hom_count_segment", "hom_count_cyclic",
           "occurrences_cyclic", "cyclic_windows", "segment_windows",
           "k_affixes", "primitive_root", "admits_tvt",
           "all_rotations_admit_tvt", "enumerate_basis")

Letter = int
Word = tuple[int, ...]

End = Literal["left", "right"]
Pointing = Literal["inward", "outward"]


class TrivialWordError(ValueError):
    """Raised when an operation would produce the trivial word."""


class Alphabet(NamedTuple):
    """The letters of F_n together with their fixed order."""
    n: int

    @property
    def letters(self) -> tuple[int, ...]:
        if self.n < 1:
            raise ValueError(f"Rank must be positive, got {self.n}")
        return tuple(sign * (i + 1)
                     for i in range(self.n) for sign in (1, -1))

    def check(self, word: Iterable[int]) -> Word:
        word = tuple(word)
        for letter in word:
            if letter == 0 or abs(letter) > self.n:
                raise ValueError(
                    f"Letter {letter} is outside the alphabet of F_{self.n}")
        return word


def letter_key(letter: int) -> int:
    return 2 * (abs(letter) - 1) + (letter < 0)


def word_key(word: Iterable[int]) -> tuple[int, ...]:
    return tuple(letter_key(letter) for letter in word)


def _keyed(word: Iterable[int]) -> str:
    # One character per letter, ordered like the letters
    return "".join(chr(0x100 + letter_key(letter)) for letter in word)


def inverse(word: Sequence[int]) -> Word:
    return tuple(-letter for letter in reversed(word))


def is_reduced(word: Sequence[int]) -> bool:
    return all(a != -b for a, b in zip(word, word[1:]))


def free_reduce(letters: Iterable[int]) -> Word:
    """Return the freely reduced form of a letter sequence."""
    stack: list[int] = []
    for letter in letters:
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def cancellation(left: Sequence[int], right: Sequence[int]) -> int:
    """Number of letters that cancel at the junction of two reduced words."""
    count = 0
    bound = min(len(left), len(right))
    while count < bound and left[-1 - count] == -right[count]:
        count += 1
    return count


def cyclic_reduce(word: Iterable[int]) -> tuple[Word, Word]:
    """
    Split a word as ``t⁻¹ · core · t`` with `core` cyclically reduced and `t`
    maximal.  The input is freely reduced first.

    Returns `(t, core)`.
    """
    w = free_reduce(word)
    if not w:
        raise TrivialWordError("The trivial word has no cyclic core")
    size = len(w)
    i = 0
    while i < size - 1 - i and w[i] == -w[size - 1 - i]:
        i += 1
    return w[size - i:], w[i:size - i]


class UWord:
    """
    An unoriented reduced word, i.e. the class ``{w, w⁻¹}``.

    `canon` is the lexicographically least of the two orientations; it is
    also the identity of the u-word.  Orientation sections other than the
    default are applied through `Orientation`.
    """
    __slots__ = ("canon",)
    canon: Word

    def __init__(self, canon: Word) -> None:
        self.canon = canon

    def __len__(self) -> int:
        return len(self.canon)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, UWord) and self.canon == other.canon

    def __hash__(self) -> int:
        return hash(("u", self.canon))

    def __lt__(self, other: UWord) -> bool:
        return self.sort_key < other.sort_key

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return len(self.canon), word_key(self.canon)

    @property
    def orientations(self) -> tuple[Word, Word]:
        return self.canon, inverse(self.canon)

    def __repr__(self) -> str:
        return f"<{format_word(self.canon)}>"


class CyclicWord:
    """
    A cyclically reduced word up to rotation and inversion.

    `canon` is the least rotation among all rotations of the word and of
    its inverse.
    """
    __slots__ = ("canon",)
    canon: Word

    def __init__(self, canon: Word) -> None:
        self.canon = canon

    def __len__(self) -> int:
        return len(self.canon)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CyclicWord) and self.canon == other.canon

    def __hash__(self) -> int:
        return hash(("c", self.canon))

    def __lt__(self, other: CyclicWord) -> bool:
        return self.sort_key < other.sort_key

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return len(self.canon), word_key(self.canon)

    def power(self, exponent: int) -> CyclicWord:
        if exponent < 1:
            raise ValueError(f"Exponent must be positive, got {exponent}")
        return canon_cyclic(self.canon * exponent)

    def __repr__(self) -> str:
        return f"({format_word(self.canon)})"


class Occurrence(NamedTuple):
    """
    A labeled graph morphism from a u-word into a host.

    Reading `len(u)` letters of the host from `start` spells ``σ(u)`` when
    `dir` is ``+1`` and ``σ(u)⁻¹`` when it is ``-1``.  `wraps` counts how many
    times a cyclic host is wrapped around.
    """
    start: int
    dir: int = 1
    wraps: int = 0


class AffixInfo(NamedTuple):
    word: UWord
    end: End
    pointing: Pointing


class Orientation:
    """
    An orientation section σ choosing one representative for every u-word.

    The default picks the lexicographically least orientation.  `overrides`
    maps u-words (or words) to the orientation that should be used instead.
    """

    def __init__(self, overrides: Mapping[UWord | Sequence[int],
                                          Sequence[int]] | None = None
                 ) -> None:
        table: dict[UWord, Word] = {}
        for key, chosen in (overrides or {}).items():
            u = key if isinstance(key, UWord) else canon_uword(key)
            chosen = tuple(chosen)
            if chosen not in u.orientations:
                raise ValueError(f"{chosen} is not an orientation of {u}")
            if chosen == u.canon:
                warn(f"Override of {u} repeats the default orientation")
                continue
            table[u] = chosen
        self._table = FrozenDict(table)

    def __call__(self, u: UWord) -> Word:
        return self._table.get(u, u.canon)

    @property
    def overrides(self) -> FrozenDict:
        return self._table

    def points_inward(self, affix: Word, end: End) -> bool:
        """
        Whether the oriented `affix`, sitting at `end` of its host, points
        into the host under this section.
        """
        chosen = self(canon_uword(affix))
        if end == "left":
            return chosen == tuple(affix)
        return chosen != tuple(affix)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Orientation) and \
            dict(self._table) == dict(other._table)

    def __hash__(self) -> int:
        return hash(tuple(sorted((k.canon, v) for k, v in self._table.items())))

    def __repr__(self) -> str:
        return f"Orientation({len(self._table)} overrides)"


def canon_uword(word: Iterable[int]) -> UWord:
    """Return the u-word of a (freely reduced on the fly) nonempty word."""
    w = free_reduce(word)
    if not w:
        raise TrivialWordError("The trivial word is not a u-word")
    inv = inverse(w)
    return UWord(w if word_key(w) <= word_key(inv) else inv)


DEFAULT_ORIENTATION = Orientation()


def least_rotation(word: Sequence[int]) -> int:
    """
    Booth's algorithm: the start index of the lexicographically least
    rotation under the letter order.
    """
    s = _keyed(word) * 2
    failure = [-1] * len(s)
    k = 0
    for j in range(1, len(s)):
        sj = s[j]
        i = failure[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = failure[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            failure[j - k] = -1
        else:
            failure[j - k] = i + 1
    return k % max(len(word), 1)


def cyclic_canon_map(core: Sequence[int]) -> tuple[CyclicWord, int, int]:
    """
    Canonicalize a cyclically reduced word and report how to get there.

    Returns `(cyclic, shift, direction)` such that the canonical necklace is
    the rotation of `core` (direction ``+1``) or of ``core⁻¹`` (direction
    ``-1``) starting at index `shift`.
    """
    core = tuple(core)
    if not core:
        raise TrivialWordError("The trivial word is not a cyclic word")
    inv = inverse(core)
    fwd_shift, inv_shift = least_rotation(core), least_rotation(inv)
    fwd = core[fwd_shift:] + core[:fwd_shift]
    bwd = inv[inv_shift:] + inv[:inv_shift]
    if word_key(fwd) <= word_key(bwd):
        return CyclicWord(fwd), fwd_shift, 1
    return CyclicWord(bwd), inv_shift, -1


def canon_cyclic(word: Iterable[int]) -> CyclicWord:
    """Return the cyclic word of a word whose cyclic core is nontrivial."""
    _, core = cyclic_reduce(word)
    return cyclic_canon_map(core)[0]


def _count(pattern: Word, text: Word, starts: int) -> int:
    m = len(pattern)
    return sum(1 for i in range(starts) if text[i:i + m] == pattern)


def hom_count_segment(u: UWord, w: UWord) -> int:
    """|Hom(u, w)| for two u-words."""
    host, m = w.canon, len(u)
    if m > len(host):
        return 0
    starts = len(host) - m + 1
    fwd, bwd = u.orientations
    return _count(fwd, host, starts) + _count(bwd, host, starts)


def _unrolled(w: CyclicWord, extra: int) -> Word:
    size = len(w.canon)
    copies = 1 + (extra + size - 1) // size
    return (w.canon * (copies + 1))[:size + extra]


def hom_count_cyclic(u: UWord, w: CyclicWord) -> int:
    """|Hom(u, w)|: start positions on the necklace, wrapping as needed."""
    m = len(u)
    text = _unrolled(w, m - 1)
    fwd, bwd = u.orientations
    return _count(fwd, text, len(w)) + _count(bwd, text, len(w))


def occurrences_cyclic(u: UWord, w: CyclicWord) -> list[Occurrence]:
    m, size = len(u), len(w)
    text = _unrolled(w, m - 1)
    found = []
    for direction, pattern in zip((1, -1), u.orientations):
        for i in range(size):
            if text[i:i + m] == pattern:
                found.append(Occurrence(i, direction, (i + m - 1) // size))
    return found


def cyclic_windows(w: CyclicWord, k: int) -> Iterator[Word]:
    """The length-`k` words read forward from every necklace position."""
    text = _unrolled(w, k - 1)
    for i in range(len(w)):
        yield text[i:i + k]


def segment_windows(word: Sequence[int], k: int) -> Iterator[Word]:
    word = tuple(word)
    for i in range(len(word) - k + 1):
        yield word[i:i + k]


def k_affixes(w: UWord, k: int,
              orientation: Orientation = DEFAULT_ORIENTATION
              ) -> tuple[AffixInfo, AffixInfo]:
    """
    Both `k`-affixes of `w`, read off its canonical orientation, with their
    pointing under `orientation`.
    """
    if k < 1 or len(w) <= k:
        raise ValueError(f"A {k}-affix needs a host longer than {k}, "
                         f"got {w} of length {len(w)}")
    host = w.canon
    prefix, suffix = host[:k], host[-k:]
    return (
        AffixInfo(canon_uword(prefix), "left",
                  "inward" if orientation.points_inward(prefix, "left")
                  else "outward"),
        AffixInfo(canon_uword(suffix), "right",
                  "inward" if orientation.points_inward(suffix, "right")
                  else "outward"),
    )


def primitive_root(w: CyclicWord) -> tuple[CyclicWord, int]:
    """
    Write `w` as ``root ** l`` with `root` not a proper power, using the
    principal period of the canonical necklace.
    """
    s = _keyed(w.canon)
    period = (s + s).find(s, 1, -1)
    if period < 0:
        return w, 1
    return canon_cyclic(w.canon[:period]), len(s) // period


def admits_tvt(word: Sequence[int]) -> bool:
    """Whether ``word = t·v·t`` with `t` nonempty and `t`, `v` proper."""
    word = tuple(word)
    return any(word[:size] == word[-size:]
               for size in range(1, len(word) // 2 + 1))


def all_rotations_admit_tvt(w: CyclicWord) -> bool:
    word = w.canon
    return all(admits_tvt(word[i:] + word[:i]) for i in range(len(word)))


@memoized(capacity=64)
def enumerate_basis(n: int, k: int) -> tuple[UWord, ...]:
    """
    W_k: every u-word of length `k` over F_n, sorted by the letter order.
    There are ``n (2n-1)^(k-1)`` of them.
    """
    if n < 1 or k < 1:
        raise ValueError(f"Need n >= 1 and k >= 1, got n={n}, k={k}")
    letters = Alphabet(n).letters
    basis = []
    for word in _reduced_words(letters, k):
        if word_key(word) <= word_key(inverse(word)):
            basis.append(UWord(word))
    basis.sort()
    return tuple(basis)


def _reduced_words(letters: Sequence[int], k: int) -> Iterator[Word]:
    if k == 1:
        yield from ((letter,) for letter in letters)
        return
    for head in _reduced_words(letters, k - 1):
        for letter in letters:
            if letter != -head[-1]:
                yield head + (letter,)
