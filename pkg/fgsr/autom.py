"""
Automorphisms of F_n as sequences of elementary Nielsen moves.

A move list ``[m1, ..., ml]`` denotes ``φ = ml ∘ ... ∘ m1``: `m1` is applied
first.  The generator images are computed once and cached on the
`Automorphism`.
"""

from __future__ import annotations
from enum import Enum
from typing import Iterable, NamedTuple, Sequence, overload

from .syntax import symbol
from .words import Alphabet, CyclicWord, Word, canon_cyclic, free_reduce, \
    inverse

__all__ = ("MoveKind", "NielsenMove", "Automorphism", "NotAnAutomorphism",
           "make_automorphism", "invert", "apply", "compose", "decompose",
           "inner_twist")


class NotAnAutomorphism(ValueError):
    """Raised when generator images do not form a basis of F_n."""


class MoveKind(Enum):
    RIGHT_MULT = "R"
    LEFT_MULT = "L"
    INVERT = "I"
    SWAP = "S"


class NielsenMove(NamedTuple):
    """
    An elementary Nielsen move on 0-based generator indices.

    * ``RIGHT_MULT`` (i, j): x_i ↦ x_i x_j
    * ``LEFT_MULT`` (i, j): x_i ↦ x_j x_i
    * ``INVERT`` (i): x_i ↦ x_i⁻¹
    * ``SWAP`` (i, j): x_i ↔ x_j
    """
    kind: MoveKind
    i: int
    j: int | None = None

    def check(self, n: int) -> NielsenMove:
        indices = (self.i,) if self.kind is MoveKind.INVERT \
            else (self.i, self.j)
        for index in indices:
            if index is None or not 0 <= index < n:
                raise ValueError(f"Move {self} does not fit F_{n}")
        if self.kind is not MoveKind.INVERT and self.i == self.j:
            raise ValueError(f"Move {self} needs two distinct generators")
        return self

    def letter_image(self, letter: int) -> Word:
        gen = abs(letter) - 1
        match self.kind:
            case MoveKind.RIGHT_MULT if gen == self.i:
                image: Word = (self.i + 1, self.j + 1)  # type: ignore
            case MoveKind.LEFT_MULT if gen == self.i:
                image = (self.j + 1, self.i + 1)  # type: ignore
            case MoveKind.INVERT if gen == self.i:
                image = (-(self.i + 1),)
            case MoveKind.SWAP if gen in (self.i, self.j):
                other = self.j if gen == self.i else self.i
                image = (other + 1,)  # type: ignore
            case _:
                image = (gen + 1,)
        return image if letter > 0 else inverse(image)

    def __call__(self, word: Iterable[int]) -> Word:
        return free_reduce(
            x for letter in word for x in self.letter_image(letter))

    def inverse(self) -> tuple[NielsenMove, ...]:
        """The moves of the inverse automorphism, first-applied first."""
        if self.kind in (MoveKind.INVERT, MoveKind.SWAP):
            return (self,)
        conj = NielsenMove(MoveKind.INVERT, self.j)  # type: ignore
        return (conj, self, conj)

    @property
    def is_involution(self) -> bool:
        return self.kind in (MoveKind.INVERT, MoveKind.SWAP)

    def __str__(self) -> str:
        if self.kind is MoveKind.INVERT:
            return f"I({symbol(self.i + 1)})"
        return f"{self.kind.value}({symbol(self.i + 1)},{symbol(self.j + 1)})"  # type: ignore


class Automorphism:
    """
    An automorphism of F_n given by Nielsen moves.

    * `n`: rank of the free group
    * `moves`: the moves, first-applied first
    """
    __slots__ = ("n", "moves", "images")

    def __init__(self, n: int, moves: Iterable[NielsenMove] = ()) -> None:
        if n < 1:
            raise ValueError(f"Rank must be positive, got {n}")
        self.n = n
        self.moves: tuple[NielsenMove, ...] = tuple(
            move.check(n) for move in moves)
        images = [(g + 1,) for g in range(n)]
        for move in self.moves:
            images = [move(image) for image in images]
        self.images: tuple[Word, ...] = tuple(images)

    def letter_image(self, letter: int) -> Word:
        image = self.images[abs(letter) - 1]
        return image if letter > 0 else inverse(image)

    def concat_image(self, word: Iterable[int]) -> Word:
        """The letter images of `word` concatenated, without reduction."""
        return tuple(x for letter in word for x in self.letter_image(letter))

    @overload
    def __call__(self, word: CyclicWord) -> CyclicWord: ...
    @overload
    def __call__(self, word: Iterable[int]) -> Word: ...

    def __call__(self, word):
        if isinstance(word, CyclicWord):
            return canon_cyclic(self.concat_image(word.canon))
        return free_reduce(self.concat_image(word))

    @property
    def is_identity(self) -> bool:
        return all(image == (g + 1,) for g, image in enumerate(self.images))

    def then(self, other: Automorphism) -> Automorphism:
        """``other ∘ self``: apply `self` first."""
        if other.n != self.n:
            raise ValueError(f"Rank mismatch: {self.n} vs {other.n}")
        return Automorphism(self.n, self.moves + other.moves)

    def inverse(self) -> Automorphism:
        moves = []
        for move in reversed(self.moves):
            moves.extend(move.inverse())
        return Automorphism(self.n, moves)

    def same_images(self, other: Automorphism) -> bool:
        return self.n == other.n and self.images == other.images

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Automorphism) and self.n == other.n \
            and self.moves == other.moves

    def __hash__(self) -> int:
        return hash((self.n, self.moves))

    def __repr__(self) -> str:
        moves = ";".join(str(move) for move in self.moves)
        return f"Automorphism(n={self.n}, moves={moves!r})"


def make_automorphism(moves: Iterable[NielsenMove], n: int) -> Automorphism:
    return Automorphism(n, moves)


def invert(phi: Automorphism) -> Automorphism:
    return phi.inverse()


def apply(phi: Automorphism, w):
    """Apply `phi` to a reduced word or a cyclic word."""
    return phi(w)


def compose(phi: Automorphism, psi: Automorphism) -> Automorphism:
    """``φ ∘ ψ``: `psi` is applied first."""
    return psi.then(phi)


def inner_twist(phi: Automorphism, word: Sequence[int]) -> Automorphism:
    """
    Post-compose `phi` with conjugation ``g ↦ c⁻¹ g c`` by the word `word`.
    Cyclic words are unaffected by the twist.
    """
    moves = list(phi.moves)
    for letter in word:
        c = abs(letter) - 1
        inv = NielsenMove(MoveKind.INVERT, c)
        for g in range(phi.n):
            if g == c:
                continue
            right = NielsenMove(MoveKind.RIGHT_MULT, g, c)
            left = NielsenMove(MoveKind.LEFT_MULT, g, c)
            # g -> c^-e g c^e for the letter c^e
            if letter > 0:
                moves += [right, inv, left, inv]
            else:
                moves += [inv, right, inv, left]
    return Automorphism(phi.n, moves)


class _Step(NamedTuple):
    total: int
    order: tuple
    images: tuple[Word, ...]
    undo: tuple[NielsenMove, ...]


def _candidate_steps(images: Sequence[Word]) -> Iterable[_Step]:
    n = len(images)
    for kind_rank, kind in enumerate((MoveKind.RIGHT_MULT,
                                      MoveKind.LEFT_MULT)):
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for sign in (1, -1):
                    factor = images[j] if sign > 0 else inverse(images[j])
                    if kind is MoveKind.RIGHT_MULT:
                        new = free_reduce(images[i] + factor)
                    else:
                        new = free_reduce(factor + images[i])
                    if not new:
                        continue
                    updated = tuple(new if g == i else image
                                    for g, image in enumerate(images))
                    # Undoing x_i -> x_i x_j^s is x_i -> x_i x_j^-s
                    move = NielsenMove(kind, i, j)
                    conj = NielsenMove(MoveKind.INVERT, j)
                    undo = (move,) if sign < 0 else (conj, move, conj)
                    yield _Step(sum(map(len, updated)),
                                (kind_rank, i, j, -sign), updated, undo)


def _signed_permutation(images: Sequence[Word], n: int
                        ) -> tuple[NielsenMove, ...] | None:
    if any(len(image) != 1 for image in images):
        return None
    targets = [image[0] for image in images]
    if sorted(abs(t) for t in targets) != list(range(1, n + 1)):
        return None
    moves = [NielsenMove(MoveKind.INVERT, g)
             for g, t in enumerate(targets) if t < 0]
    current = list(range(n))
    for g, t in enumerate(targets):
        want = abs(t) - 1
        if current[g] != want:
            moves.append(NielsenMove(MoveKind.SWAP, current[g], want))
            current = [want if c == current[g] else
                       current[g] if c == want else c for c in current]
    return tuple(moves)


def decompose(images: Sequence[Sequence[int]]) -> tuple[NielsenMove, ...]:
    """
    Find Nielsen moves whose automorphism has exactly the given generator
    images.

    Greedy Nielsen reduction: repeatedly take the elementary multiplication
    that shortens the total image length most (ties broken on move kind, then
    indices), until the images form a signed permutation of the generators.
    """
    n = len(images)
    current = tuple(free_reduce(image) for image in images)
    for image in current:
        Alphabet(n).check(image)
        if not image:
            raise NotAnAutomorphism("An image is the trivial word")
    undo: list[tuple[NielsenMove, ...]] = []
    while True:
        best = min(_candidate_steps(current),
                   key=lambda step: (step.total, step.order), default=None)
        if best is None or best.total >= sum(map(len, current)):
            break
        current = best.images
        undo.append(best.undo)
    base = _signed_permutation(current, n)
    if base is None:
        raise NotAnAutomorphism(
            f"Nielsen reduction stalls at {[list(w) for w in current]}")
    moves: list[NielsenMove] = []
    for step in undo:
        moves.extend(step)
    result = tuple(moves) + base
    wanted = tuple(free_reduce(image) for image in images)
    if Automorphism(n, result).images != wanted:
        raise RuntimeError("Decomposition does not reproduce the images")
    return result
