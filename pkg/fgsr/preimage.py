"""
Ideal preimages and full sets.

For a u-word `u` and an automorphism φ, an ideal preimage is a base u-word
`v` together with an occurrence of `u` inside the reduced word ``φ(σ(v))``
that survives every extension of `v`.  A full set accounts for every
occurrence of `u` in every ``φ(w)`` exactly once, which gives the counting
identity

    |Hom(u, φ(w))| = Σ_{v ∈ S} |Hom(v, w)|

for all cyclic words `w`.  Full sets are built one Nielsen move at a time,
composed, and minimized by contracting full paradigms.

Occurrences are tracked through reduction by junction cancellation: the
image of a host is ``reduce(φ(prefix)) · reduce(φ(base)) · reduce(φ(suffix))``
and a tracked letter survives iff no junction cancellation reaches it.
"""

from __future__ import annotations
from collections import Counter
from random import Random
from typing import Iterable, Iterator, Literal, Mapping, NamedTuple, \
    Sequence

from .autom import Automorphism, MoveKind, NielsenMove
from .utils import FrozenDict, group_counts, memoized
from .words import Alphabet, CyclicWord, Occurrence, UWord, Word, \
    canon_uword, cancellation, cyclic_canon_map, cyclic_reduce, \
    free_reduce, hom_count_cyclic, inverse, is_reduced

__all__ = ("CERTIFICATION_DEPTH", "NotPreserved", "Embedding",
           "IdealPreimage", "FullSet", "AffixType", "classify_affix",
           "nielsen_full_set", "induced_embedding", "check_ideal_preimage",
           "compose_full_sets", "find_full_paradigms",
           "detect_full_paradigm", "minimize_full_set", "full_set",
           "weighted_count")

# At most one letter cancels at a junction of Nielsen move images, so two
# letters of context on each side see every cancellation pattern.
CERTIFICATION_DEPTH = 2


class NotPreserved(Exception):
    """Raised when a tracked occurrence cancels under an automorphism."""


class Embedding(NamedTuple):
    """An occurrence of ``σ(u)`` in the reduced word `host`."""
    host: Word
    occ: Occurrence


class IdealPreimage(NamedTuple):
    u: UWord
    base: UWord
    emb: Embedding

    @property
    def sort_key(self) -> tuple:
        return self.base.sort_key, self.emb.occ.start, self.emb.occ.dir


class AffixType(NamedTuple):
    """
    Row of the Nielsen move affix table.

    * `code`: 1..7
    * `limit`: the affix is the whole word (no letter other than x_j
      or its inverse was found)
    """
    code: int
    limit: bool = False


class FullSet:
    """
    A multiset of ideal preimages of `u` under `phi`.

    Elements are kept sorted by base word, then occurrence, so two equal
    multisets compare equal element by element.
    """
    __slots__ = ("u", "phi", "elements")

    def __init__(self, u: UWord, phi: Automorphism,
                 elements: Iterable[IdealPreimage]) -> None:
        self.u = u
        self.phi = phi
        self.elements: tuple[IdealPreimage, ...] = tuple(
            sorted(elements, key=lambda e: e.sort_key))

    def __iter__(self) -> Iterator[IdealPreimage]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def bases(self) -> FrozenDict:
        """Base words with multiplicities, i.e. S_{u,φ}."""
        return group_counts(e.base for e in self.elements)

    @property
    def max_base_length(self) -> int:
        return max((len(e.base) for e in self.elements), default=0)

    def weighted_count(self, w: CyclicWord) -> int:
        return weighted_count(self, w)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FullSet) and self.u == other.u \
            and self.phi.same_images(other.phi) \
            and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.u, self.phi.images, self.elements))

    def __repr__(self) -> str:
        return f"FullSet({self.u}, {len(self)} elements)"


def weighted_count(S: FullSet, w: CyclicWord) -> int:
    """Σ over the bases of `S` of |Hom(v, w)|."""
    return sum(hom_count_cyclic(e.base, w) for e in S.elements)


def _oriented(u: UWord, word: Word, host: Word, occ: Occurrence
              ) -> IdealPreimage:
    """
    Build the element for base `word`, whose image is `host`, flipping
    both to the canonical orientation of the base when needed.
    """
    base = canon_uword(word)
    if base.canon == word:
        return IdealPreimage(u, base, Embedding(host, occ))
    flipped = Occurrence(len(host) - occ.start - len(u), -occ.dir)
    return IdealPreimage(u, base, Embedding(inverse(host), flipped))


def _push(phi: Automorphism, host: Word, at: Occurrence, base_len: int,
          occ: Occurrence, u_len: int) -> tuple[Word, Occurrence]:
    """
    Follow an occurrence through ``reduce(φ(host))``.

    `at` locates the base inside `host`; `occ` locates ``σ(u)`` inside
    ``reduce(φ(σ(base)))``.  Returns the reduced image of `host` and the
    occurrence of ``σ(u)`` in it.
    """
    if at.dir < 0:
        image, found = _push(phi, inverse(host),
                             Occurrence(len(host) - at.start - base_len),
                             base_len, occ, u_len)
        return inverse(image), Occurrence(len(image) - found.start - u_len,
                                          -found.dir)
    stop = at.start + base_len
    pre = phi(host[:at.start])
    mid = phi(host[at.start:stop])
    post = phi(host[stop:])
    lo, hi = occ.start, occ.start + u_len
    if hi > len(mid):
        raise RuntimeError(f"Occurrence {occ} exceeds the image {mid}")
    k1 = cancellation(pre, mid)
    if k1 > lo:
        raise NotPreserved(f"Left junction cancels into the occurrence {occ}")
    left = pre[:len(pre) - k1] + mid[k1:]
    start = len(pre) - 2 * k1 + lo
    k2 = cancellation(left, post)
    if start + u_len > len(left) - k2:
        raise NotPreserved(f"Right junction cancels into the occurrence {occ}")
    return left[:len(left) - k2] + post[k2:], Occurrence(start, occ.dir)


def _occurrences(u: UWord, host: Word) -> Iterator[Occurrence]:
    m = len(u)
    for start in range(len(host) - m + 1):
        window = host[start:start + m]
        for direction, pattern in zip((1, -1), u.orientations):
            if window == pattern:
                yield Occurrence(start, direction)


def _identity_element(u: UWord) -> IdealPreimage:
    return IdealPreimage(u, u, Embedding(u.canon, Occurrence(0, 1)))


def classify_affix(word: Sequence[int] | UWord,
                   end: Literal["left", "right"],
                   move: NielsenMove) -> AffixType:
    """
    Classify one end of `word` for a multiplication move ``x_i ↦ x_i x_j``
    (``x_i ↦ x_j x_i`` is classified on the mirrored word).

    The end is read from the outermost letter inward, skipping the run of
    x_j^±1 letters; the ends are those of `word` as given (a `UWord` is
    read in its canonical orientation).
    """
    oriented = tuple(word.canon if isinstance(word, UWord) else word)
    if move.kind is MoveKind.LEFT_MULT:
        oriented = oriented[::-1]
        end = "left" if end == "right" else "right"
    elif move.kind is not MoveKind.RIGHT_MULT:
        raise ValueError(f"Only multiplication moves have affix types: {move}")
    a, b = move.i + 1, move.j + 1  # type: ignore[operator]
    seq = oriented if end == "right" else inverse(oriented)
    run = 0
    while run < len(seq) and abs(seq[-1 - run]) == b:
        run += 1
    if run == len(seq):
        return AffixType(3 if seq[-1] == b else 6, True)
    z = seq[-1 - run]
    if run == 0:
        return AffixType(2 if z == a else 1)
    if seq[-1] == b:
        if z == a:
            return AffixType(4 if run == 1 else 5)
        return AffixType(3)
    return AffixType(7 if z == a else 6)


def _end_options(affix: AffixType, a: int, b: int, letters: Sequence[int]
                 ) -> list[tuple[int, Word, int]]:
    """
    Ways to complete one end of ``φ⁻¹(w)`` for ``a ↦ ab``, by the table row
    of that end of `w`.

    Each option is `(drop, append, extra)`: drop `drop` letters of the core,
    append `append`, and the image then carries `extra` letters beyond `w`.
    """
    if affix.code == 2:
        return [(1, (), 1)]
    if affix.code in (3, 4, 5):
        return [(0, (q,), 2 if q == a else 1)
                for q in letters if q not in (-a, -b)]
    if affix.code in (6, 7):
        return [(0, (), 0), (1, (-a,), 1)]
    return [(0, (), 0)]


def _right_mult_windows(w: Word, move: NielsenMove, n: int
                        ) -> list[tuple[Word, Word, int]]:
    a, b = move.i + 1, move.j + 1  # type: ignore[operator]
    core = w
    for step in move.inverse():
        core = step(core)
    letters = Alphabet(n).letters
    left = _end_options(classify_affix(w, "left", move), a, b, letters)
    right = _end_options(classify_affix(w, "right", move), a, b, letters)
    found = []
    for ldrop, lapp, lextra in left:
        for rdrop, rapp, rextra in right:
            if ldrop + rdrop > len(core):
                raise RuntimeError(f"Affix rewrites overlap on {core}")
            v = inverse(lapp) + core[ldrop:len(core) - rdrop] + rapp
            image = move(v)
            if not is_reduced(v) or len(image) != lextra + len(w) + rextra \
                    or image[lextra:lextra + len(w)] != w:
                raise RuntimeError(f"Base {v} does not carry {w} at {lextra}")
            found.append((v, image, lextra))
    return found


def _move_windows(w: Word, move: NielsenMove, n: int
                  ) -> list[tuple[Word, Word, int]]:
    """
    Every `(v, reduce(move(v)), start)` whose image carries `w` at `start`
    as an ideal occurrence.
    """
    if move.is_involution:
        return [(move(w), w, 0)]
    if move.kind is MoveKind.LEFT_MULT:
        # Reversal without inversion turns x_i -> x_j x_i into x_i -> x_i x_j
        mirror = NielsenMove(MoveKind.RIGHT_MULT, move.i, move.j)
        return [(v[::-1], image[::-1], len(image) - start - len(w))
                for v, image, start in _right_mult_windows(w[::-1], mirror, n)]
    return _right_mult_windows(w, move, n)


@memoized(capacity=16384)
def nielsen_full_set(u: UWord, move: NielsenMove, n: int) -> FullSet:
    """The minimal full set of `u` under a single Nielsen move."""
    move.check(n)
    elements = [_oriented(u, v, image, Occurrence(start, 1))
                for v, image, start in _move_windows(u.canon, move, n)]
    return FullSet(u, Automorphism(n, (move,)), elements)


def _induced_cyclic(ip: IdealPreimage, phi: Automorphism, host: CyclicWord,
                    at: Occurrence) -> Embedding:
    size, base_len, m = len(host), len(ip.base), len(ip.u)
    copies = 3 + 2 * (base_len // size + 1)
    word = host.canon * copies
    start = (copies // 2) * size + at.start
    image, occ = _push(phi, word, Occurrence(start, at.dir), base_len,
                       ip.emb.occ, m)
    # reduce(φ(h^c)) = t⁻¹ core^c t
    tail, core = cyclic_reduce(phi(host.canon))
    cyc, shift, direction = cyclic_canon_map(core)
    period = len(core)
    pos = (occ.start - len(tail)) % period
    if direction > 0:
        found, sign = (pos - shift) % period, occ.dir
    else:
        found, sign = ((period - pos - m) - shift) % period, -occ.dir
    return Embedding(cyc.canon,
                     Occurrence(found, sign, (found + m - 1) // period))


def _check_at(host: Word, at: Occurrence, base: UWord, cyclic: bool) -> None:
    size = len(base)
    text = host * (2 + size // max(len(host), 1)) if cyclic else host
    window = text[at.start:at.start + size]
    want = base.canon if at.dir > 0 else inverse(base.canon)
    if window != want:
        raise ValueError(f"{base} does not occur in the host at {at}")


def induced_embedding(ip: IdealPreimage, phi: Automorphism,
                      host: UWord | CyclicWord | Sequence[int],
                      at: Occurrence) -> Embedding:
    """
    The embedding of `ip.u` in ``φ(host)`` induced by the occurrence `at` of
    `ip.base` in `host`.

    Raises `NotPreserved` if any tracked letter cancels.
    """
    if isinstance(host, CyclicWord):
        _check_at(host.canon, at, ip.base, True)
        return _induced_cyclic(ip, phi, host, at)
    word = host.canon if isinstance(host, UWord) else tuple(host)
    _check_at(word, at, ip.base, False)
    image, occ = _push(phi, word, at, len(ip.base), ip.emb.occ, len(ip.u))
    return Embedding(image, occ)


def _tails(letters: Sequence[int], last: int, depth: int
           ) -> Iterator[Word]:
    yield ()
    if depth == 0:
        return
    for letter in letters:
        if letter != -last:
            for rest in _tails(letters, letter, depth - 1):
                yield (letter,) + rest


def check_ideal_preimage(ip: IdealPreimage, phi: Automorphism,
                         depth: int = CERTIFICATION_DEPTH) -> bool:
    """
    Whether the embedding of `ip` survives every reduced extension of its
    base by up to `depth` letters on each side.
    """
    base = ip.base.canon
    m = len(ip.u)
    window = ip.emb.host[ip.emb.occ.start:ip.emb.occ.start + m]
    want = ip.u.canon if ip.emb.occ.dir > 0 else inverse(ip.u.canon)
    if phi(base) != ip.emb.host or window != want:
        return False
    letters = Alphabet(phi.n).letters
    prefixes = [inverse(t) for t in _tails(letters, -base[0], depth)]
    suffixes = list(_tails(letters, base[-1], depth))
    for prefix in prefixes:
        for suffix in suffixes:
            try:
                _push(phi, prefix + base + suffix, Occurrence(len(prefix)),
                      len(base), ip.emb.occ, m)
            except NotPreserved:
                return False
    return True


def compose_full_sets(outer: FullSet, inner: Mapping[UWord, FullSet],
                      inner_phi: Automorphism | None = None) -> FullSet:
    """
    Combine a full set of `u` under ψ₁ with full sets of its bases under ψ₂
    into a full set of `u` under ``ψ₁ ∘ ψ₂`` (not minimized).
    """
    psi1 = outer.phi
    if inner_phi is None:
        inner_phi = next((s.phi for s in inner.values()),
                         Automorphism(psi1.n))
    m = len(outer.u)
    elements = []
    for e in outer:
        for f in inner[e.base]:
            try:
                host, occ = _push(psi1, f.emb.host, f.emb.occ, len(e.base),
                                  e.emb.occ, m)
            except NotPreserved as err:
                raise RuntimeError(
                    f"{e} does not survive inside {f}") from err
            elements.append(IdealPreimage(outer.u, f.base,
                                          Embedding(host, occ)))
    return FullSet(outer.u, inner_phi.then(psi1), elements)


def _extension_family(u: UWord, phi: Automorphism, v: Word,
                      occ: Occurrence, letters: Sequence[int]
                      ) -> list[IdealPreimage] | None:
    family = []
    for x in letters:
        if x == -v[-1]:
            continue
        ext = v + (x,)
        try:
            image, found = _push(phi, ext, Occurrence(0), len(v), occ, len(u))
        except NotPreserved:
            return None
        family.append(_oriented(u, ext, image, found))
    return family


def find_full_paradigms(S: FullSet) -> Iterator[
        tuple[tuple[IdealPreimage, ...], IdealPreimage]]:
    """
    Yield every full paradigm of `S` as `(members, contraction)`.

    A paradigm is the family of one-letter extensions ``v·x`` of a word `v`
    whose embeddings all come from one embedding of `u` in ``φ(v)``; the
    contraction is that single ideal preimage of `u` with base `v`.
    Right extensions of the canonical orientation come before left ones.
    """
    phi, u = S.phi, S.u
    letters = Alphabet(phi.n).letters
    available = Counter(S.elements)
    seen: set[Word] = set()
    for e in S.elements:
        if len(e.base) < 2:
            continue
        for oriented in e.base.orientations:
            v = oriented[:-1]
            if v in seen:
                continue
            seen.add(v)
            host = phi(v)
            for occ in _occurrences(u, host):
                family = _extension_family(u, phi, v, occ, letters)
                if family is None:
                    continue
                need = Counter(family)
                if all(available[x] >= c for x, c in need.items()):
                    yield tuple(family), _oriented(u, v, host, occ)


def detect_full_paradigm(S: FullSet) -> tuple[tuple[IdealPreimage, ...],
                                              IdealPreimage] | None:
    return next(find_full_paradigms(S), None)


def minimize_full_set(S: FullSet, rng: Random | None = None) -> FullSet:
    """
    Contract full paradigms until none is left.

    Without `rng` the first paradigm found is contracted each round; with
    `rng` a random one is picked.  The result does not depend on the order.
    """
    elements = list(S.elements)
    while True:
        current = FullSet(S.u, S.phi, elements)
        if rng is None:
            choice = detect_full_paradigm(current)
        else:
            options = list(find_full_paradigms(current))
            choice = rng.choice(options) if options else None
        if choice is None:
            return current
        members, contraction = choice
        for member in members:
            elements.remove(member)
        elements.append(contraction)


@memoized(capacity=16384)
def full_set(u: UWord, phi: Automorphism) -> FullSet:
    """
    The unique minimal full set of `u` under `phi`.

    The outermost move is resolved first; each base it produces is then
    resolved under the remaining moves, and the composite is minimized.
    """
    if not phi.moves:
        return FullSet(u, phi, [_identity_element(u)])
    rest = Automorphism(phi.n, phi.moves[:-1])
    outer = nielsen_full_set(u, phi.moves[-1], phi.n)
    inner = {base: full_set(base, rest) for base in outer.bases}
    return minimize_full_set(compose_full_sets(outer, inner, rest))
