"""
The module tower: subword-count vectors, the affix maps between levels,
their integer kernel and cokernel, and lifting kernel vectors back to
integer combinations of cyclic words by gluing.
"""

from __future__ import annotations
from typing import Any, Iterable, Iterator, Mapping, Sequence, Tuple, \
    TypeVar

from .linalg import integer_kernel, invariant_factors
from .syntax import format_word
from .utils import FrozenDict, memoized
from .words import DEFAULT_ORIENTATION, Alphabet, CyclicWord, \
    Orientation, UWord, Word, canon_cyclic, canon_uword, cyclic_windows, \
    enumerate_basis, free_reduce, inverse, k_affixes, primitive_root, \
    segment_windows

__all__ = ("Combination", "VectorK", "HatVector", "ZCElement", "IntMatrix",
           "SameOrientation", "NotInKernel", "pi_k", "p_matrices",
           "boundary_matrix", "p_chain", "kernel_and_coker", "parity",
           "hat_boundary", "image_preimage", "glue", "self_glue", "unroll",
           "lift", "zc_canonicalize", "separating_level")

C = TypeVar("C", bound="Combination")


class SameOrientation(ValueError):
    """Raised when a gluing would join two affixes pointing the same way."""


class NotInKernel(ValueError):
    """Raised when lifting a vector outside ker(p_left - p_right)."""


class Combination:
    """
    A finitely supported integer combination of words.

    Zero coefficients are dropped on construction; the terms are frozen.
    """
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Any, int] | Iterable[tuple[Any, int]]
                 = ()) -> None:
        acc: dict = {}
        items = terms.items() if hasattr(terms, "items") else terms
        for key, value in items:
            acc[key] = acc.get(key, 0) + value
        self.terms = FrozenDict({k: v for k, v in acc.items() if v})

    def _like(self: C, terms: Mapping[Any, int] | Iterable[tuple[Any, int]]
              ) -> C:
        return type(self)(terms)

    def _check_compatible(self, other: Combination) -> None:
        if type(other) is not type(self):
            raise TypeError(f"Cannot combine {type(self).__name__} "
                            f"with {type(other).__name__}")

    def __getitem__(self, key: Any) -> int:
        return self.terms.get(key, 0)

    def __iter__(self) -> Iterator:
        return iter(sorted(self.terms, key=lambda w: w.sort_key))

    def items(self) -> list[tuple[Any, int]]:
        return [(key, self.terms[key]) for key in self]

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self: C, other: C) -> C:
        self._check_compatible(other)
        return self._like([*self.terms.items(), *other.terms.items()])

    def __neg__(self: C) -> C:
        return self._like((k, -v) for k, v in self.terms.items())

    def __sub__(self: C, other: C) -> C:
        return self + (-other)

    def __mul__(self: C, factor: int) -> C:
        return self._like((k, factor * v) for k, v in self.terms.items())

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return type(other) is type(self) and \
            dict(self.terms) == dict(other.terms)  # type: ignore

    def __hash__(self) -> int:
        return hash((type(self).__name__, frozenset(self.terms.items())))

    def total(self) -> int:
        return sum(self.terms.values())

    def positive_part(self: C) -> C:
        return self._like((k, v) for k, v in self.terms.items() if v > 0)

    def negative_part(self: C) -> C:
        """The nonnegative `v⁻` with ``self == positive_part() - v⁻``."""
        return self._like((k, -v) for k, v in self.terms.items() if v < 0)

    def to_json(self) -> dict[str, int]:
        return {format_word(key.canon): value for key, value in self.items()}

    def __repr__(self) -> str:
        body = " + ".join(f"{v}{k!r}" for k, v in self.items())
        return f"{type(self).__name__}({body or '0'})"


class VectorK(Combination):
    """An element of M_k: u-words of length exactly `k`."""
    __slots__ = ("k",)

    def __init__(self, k: int, terms: Mapping[UWord, int]
                 | Iterable[tuple[UWord, int]] = ()) -> None:
        super().__init__(terms)
        self.k = k
        for key in self.terms:
            if len(key) != k:
                raise ValueError(f"{key} does not belong to level {k}")

    def _like(self, terms):
        return VectorK(self.k, terms)

    def _check_compatible(self, other: Combination) -> None:
        super()._check_compatible(other)
        if other.k != self.k:  # type: ignore[attr-defined]
            raise ValueError(f"Level mismatch: {self.k} vs "
                             f"{other.k}")  # type: ignore[attr-defined]

    def __eq__(self, other: object) -> bool:
        return super().__eq__(other) and self.k == other.k  # type: ignore

    def __hash__(self) -> int:
        return hash((self.k, super().__hash__()))


class HatVector(Combination):
    """An element of M̂_k: u-words of length at least `k`."""
    __slots__ = ("k",)

    def __init__(self, k: int, terms: Mapping[UWord, int]
                 | Iterable[tuple[UWord, int]] = ()) -> None:
        super().__init__(terms)
        self.k = k
        for key in self.terms:
            if len(key) < k:
                raise ValueError(f"{key} is shorter than {k}")

    def _like(self, terms):
        return HatVector(self.k, terms)

    def _check_compatible(self, other: Combination) -> None:
        super()._check_compatible(other)
        if other.k != self.k:  # type: ignore[attr-defined]
            raise ValueError(f"Level mismatch: {self.k} vs "
                             f"{other.k}")  # type: ignore[attr-defined]

    def __eq__(self, other: object) -> bool:
        return super().__eq__(other) and self.k == other.k  # type: ignore

    def __hash__(self) -> int:
        return hash((self.k, super().__hash__()))


class ZCElement(Combination):
    """An element of Z[C]: a combination of cyclic words."""
    __slots__ = ()


class IntMatrix:
    """
    A sparse integer matrix with u-word bases on both sides.

    * `rows`: the target basis (a W_l)
    * `cols`: the source basis (a W_k)
    * `entries`: `{(row, col): value}` without zeros
    """
    __slots__ = ("rows", "cols", "entries", "_row_index", "_col_index",
                 "_by_row")

    def __init__(self, rows: Sequence[UWord], cols: Sequence[UWord],
                 entries: Mapping[Tuple[int, int], int]) -> None:
        self.rows = tuple(rows)
        self.cols = tuple(cols)
        for (i, j) in entries:
            if not (0 <= i < len(self.rows) and 0 <= j < len(self.cols)):
                raise ValueError(f"Entry ({i}, {j}) is outside the bases")
        self.entries = FrozenDict({ij: v for ij, v in entries.items() if v})
        self._row_index = {u: i for i, u in enumerate(self.rows)}
        self._col_index = {w: j for j, w in enumerate(self.cols)}
        self._by_row: dict[int, dict[int, int]] = {}
        for (i, j), v in self.entries.items():
            self._by_row.setdefault(i, {})[j] = v

    @classmethod
    def identity(cls, basis: Sequence[UWord]) -> IntMatrix:
        return cls(basis, basis, {(i, i): 1 for i in range(len(basis))})

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def __getitem__(self, index: tuple[int, int]) -> int:
        return self.entries.get(index, 0)

    def entry(self, row: UWord, col: UWord) -> int:
        return self[self._row_index[row], self._col_index[col]]

    def row(self, u: UWord) -> dict[int, int]:
        """The nonzero entries of the row of `u`, keyed by column index."""
        return dict(self._by_row.get(self._row_index[u], {}))

    def columns(self) -> list[dict[int, int]]:
        cols: list[dict[int, int]] = [{} for _ in self.cols]
        for (i, j), v in self.entries.items():
            cols[j][i] = v
        return cols

    def to_dense(self) -> list[list[int]]:
        dense = [[0] * len(self.cols) for _ in self.rows]
        for (i, j), v in self.entries.items():
            dense[i][j] = v
        return dense

    def _combine(self, other: IntMatrix, sign: int) -> IntMatrix:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("Matrices over different bases")
        acc = dict(self.entries)
        for ij, v in other.entries.items():
            acc[ij] = acc.get(ij, 0) + sign * v
        return IntMatrix(self.rows, self.cols, acc)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        return self._combine(other, 1)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self._combine(other, -1)

    def __matmul__(self, other):
        if isinstance(other, VectorK):
            return self.apply(other)
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"Cannot multiply {self.shape} by {other.shape}")
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (i, j), v in other.entries.items():
            by_row.setdefault(i, []).append((j, v))
        acc: dict[tuple[int, int], int] = {}
        for (i, mid), v in self.entries.items():
            for j, w in by_row.get(mid, ()):
                acc[i, j] = acc.get((i, j), 0) + v * w
        return IntMatrix(self.rows, other.cols, acc)

    def apply(self, v: VectorK) -> VectorK:
        level = len(self.rows[0]) if self.rows else 0
        indexed: dict[int, int] = {}
        for w, c in v.terms.items():
            if w not in self._col_index:
                raise ValueError(f"{w} is not in the column basis")
            indexed[self._col_index[w]] = c
        acc: dict[UWord, int] = {}
        for (i, j), value in self.entries.items():
            if j in indexed:
                u = self.rows[i]
                acc[u] = acc.get(u, 0) + value * indexed[j]
        return VectorK(level, acc)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntMatrix) and self.rows == other.rows \
            and self.cols == other.cols \
            and dict(self.entries) == dict(other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def to_json(self) -> dict[str, list]:
        return {
            "rows": [format_word(u.canon) for u in self.rows],
            "cols": [format_word(w.canon) for w in self.cols],
            "entries": [[i, j, v] for (i, j), v in sorted(
                self.entries.items())],
        }

    def __repr__(self) -> str:
        return f"IntMatrix({self.shape[0]}x{self.shape[1]})"


def pi_k(host: CyclicWord | UWord | ZCElement | HatVector | Sequence[int],
         k: int) -> VectorK:
    """
    Count the length-`k` u-words in `host`.

    Cyclic words wrap around; u-words and plain words are read as segments
    (π̂_k).  Combinations are handled linearly.
    """
    if k < 1:
        raise ValueError(f"Level must be at least 1, got {k}")
    if isinstance(host, (ZCElement, HatVector)):
        total = VectorK(k)
        for word, coefficient in host.terms.items():
            total = total + coefficient * pi_k(word, k)
        return total
    if isinstance(host, CyclicWord):
        windows: Iterable[Word] = cyclic_windows(host, k)
    elif isinstance(host, UWord):
        windows = segment_windows(host.canon, k)
    else:
        windows = segment_windows(free_reduce(host), k)
    return VectorK(k, ((canon_uword(window), 1) for window in windows))


@memoized(capacity=128)
def p_matrices(n: int, k: int,
               orientation: Orientation = DEFAULT_ORIENTATION
               ) -> tuple[IntMatrix, IntMatrix]:
    """
    The affix maps ``p_left, p_right: M_k -> M_{k-1}``.

    `p_left` collects the (k-1)-affixes of each word that read into it under
    `orientation`, `p_right` the other ones.  Every column of
    ``p_left + p_right`` sums to 2.
    """
    if k < 2:
        raise ValueError(f"Affix maps need k >= 2, got {k}")
    rows, cols = enumerate_basis(n, k - 1), enumerate_basis(n, k)
    index = {u: i for i, u in enumerate(rows)}
    left: dict[tuple[int, int], int] = {}
    right: dict[tuple[int, int], int] = {}
    for j, w in enumerate(cols):
        affixes = k_affixes(w, k - 1, orientation)
        if affixes[0].word == affixes[1].word \
                and affixes[0].pointing == affixes[1].pointing == "outward":
            raise RuntimeError(f"{w} has two outward copies of one affix")
        for affix in affixes:
            side = left if affix.pointing == "inward" else right
            key = (index[affix.word], j)
            side[key] = side.get(key, 0) + 1
    return IntMatrix(rows, cols, left), IntMatrix(rows, cols, right)


def boundary_matrix(n: int, k: int,
                    orientation: Orientation = DEFAULT_ORIENTATION
                    ) -> IntMatrix:
    left, right = p_matrices(n, k, orientation)
    return left - right


@memoized(capacity=256)
def p_chain(n: int, k: int, l: int,
            orientation: Orientation = DEFAULT_ORIENTATION) -> IntMatrix:
    """``p_{k,l}``: the composite of `p_left` from level `k` down to `l`."""
    if not 1 <= l <= k:
        raise ValueError(f"Need 1 <= l <= k, got k={k}, l={l}")
    result = IntMatrix.identity(enumerate_basis(n, k))
    for level in range(k, l, -1):
        result = p_matrices(n, level, orientation)[0] @ result
    return result


def kernel_and_coker(n: int, k: int,
                     orientation: Orientation = DEFAULT_ORIENTATION
                     ) -> tuple[list[VectorK], list[int]]:
    """
    A saturated integer basis of ker(p_left - p_right) on M_k and the Smith
    invariant factors of the map.

    For ``n >= 2`` the map is onto up to a single factor of 2; that is
    checked along with the parity of every column image.
    """
    D = boundary_matrix(n, k, orientation)
    columns = D.columns()
    for j, column in enumerate(columns):
        if sum(column.values()) % 2:
            raise RuntimeError(f"Odd parity on the image of {D.cols[j]}")
    kernel, rank = integer_kernel(columns, len(D.rows))
    invariants = invariant_factors(D.to_dense(), len(D.cols))
    if len(invariants) != rank:
        raise RuntimeError(f"Rank {rank} disagrees with {invariants}")
    if n >= 2 and (rank != len(D.rows)
                   or [f for f in invariants if f != 1] != [2]):
        raise RuntimeError(f"Unexpected cokernel for n={n}, k={k}: "
                           f"rank {rank}, invariants {invariants}")
    basis = [VectorK(k, {D.cols[j]: v for j, v in vec.items()})
             for vec in kernel]
    return basis, invariants


def parity(v: Combination) -> int:
    """λ: the sum of the coefficients."""
    return v.total()


def _signed_ends(word: Word, k: int, orientation: Orientation
                 ) -> tuple[tuple[UWord, int], tuple[UWord, int]]:
    prefix, suffix = word[:k - 1], word[len(word) - k + 1:]
    return (
        (canon_uword(prefix),
         1 if orientation.points_inward(prefix, "left") else -1),
        (canon_uword(suffix),
         1 if orientation.points_inward(suffix, "right") else -1),
    )


def hat_boundary(h: HatVector | VectorK,
                 orientation: Orientation = DEFAULT_ORIENTATION) -> VectorK:
    """
    ``(p_left - p_right)^`` on M̂_k: each word contributes its two
    (k-1)-affixes with sign +1 when they read inward and -1 otherwise.
    Interior affixes cancel, so this agrees with
    ``(p_left - p_right) · π̂_k``.
    """
    if h.k < 2:
        raise ValueError(f"Hat boundary needs k >= 2, got {h.k}")
    acc: dict[UWord, int] = {}
    for word, coefficient in h.terms.items():
        for u, sign in _signed_ends(word.canon, h.k, orientation):
            acc[u] = acc.get(u, 0) + sign * coefficient
    return VectorK(h.k - 1, acc)


def _preimage_word(first: tuple[int, UWord], second: tuple[int, UWord],
                   n: int, orientation: Orientation) -> Word:
    (e1, u1), (e2, u2) = first, second
    prefix = orientation(u1) if e1 > 0 else inverse(orientation(u1))
    suffix = inverse(orientation(u2)) if e2 > 0 else orientation(u2)
    for x in Alphabet(n).letters:
        if x != -prefix[-1] and x != -suffix[0]:
            return prefix + (x,) + suffix
    raise ValueError(f"No reduced bridge letter in F_{n}")


def image_preimage(s: VectorK, n: int,
                   orientation: Orientation = DEFAULT_ORIENTATION
                   ) -> HatVector:
    """
    A nonnegative preimage of ``s = ε₁ū₁ + ε₂ū₂`` under the hat boundary:
    the single word ``P·x·Q`` whose affixes point as the signs ask.
    """
    units = [(1 if c > 0 else -1, u) for u, c in s.items()
             for _ in range(abs(c))]
    if len(units) != 2:
        raise ValueError(f"{s} is not a sum of two signed basis words")
    word = _preimage_word(units[0], units[1], n, orientation)
    return HatVector(s.k + 1, {canon_uword(word): 1})


def glue(a: UWord, b: UWord | None, t: UWord) -> UWord | CyclicWord:
    """
    Glue `a` and `b` along the affix `t`: an orientation of `a` ends with
    an orientation ``T`` of `t` and an orientation of `b` starts with the
    same ``T``.  With `b` None this is `self_glue`.
    """
    if b is None:
        return self_glue(a, t)
    size = len(t)
    found = False
    for A in a.orientations:
        for T in t.orientations:
            if A[len(A) - size:] != T:
                continue
            for B in b.orientations:
                if B[:size] == inverse(T):
                    found = True
                elif B[:size] == T:
                    return canon_uword(A + B[size:])
    if found:
        raise SameOrientation(f"{a} and {b} both point along {t}")
    raise ValueError(f"{t} is not an affix of both {a} and {b}")


def self_glue(w: UWord, t: UWord) -> CyclicWord:
    """
    Glue `w` to itself along `t`: an orientation of `w` starts and ends
    with the same orientation of `t`.  Overlapping affixes are allowed.
    """
    size = len(t)
    if len(w) <= size:
        raise ValueError(f"{w} is too short to glue along {t}")
    found = False
    for W in w.orientations:
        for T in t.orientations:
            if W[:size] != T:
                continue
            if W[len(W) - size:] == T:
                return canon_cyclic(W[:len(W) - size])
            if W[len(W) - size:] == inverse(T):
                found = True
    if found:
        raise SameOrientation(f"The ends of {w} both point along {t}")
    raise ValueError(f"{t} is not an affix at both ends of {w}")


def unroll(v: CyclicWord, u: UWord) -> UWord:
    """
    The segment `w` starting and ending with ``σ(u)`` that self-glues
    along `u` back into `v`.
    """
    size, m = len(v), len(u)
    for host in (v.canon, inverse(v.canon)):
        text = host * (2 + (size + m) // size)
        for start in range(size):
            if text[start:start + m] == u.canon:
                return canon_uword(text[start:start + size + m])
    raise ValueError(f"{u} is not a subword of {v}")


def _close_components(h: HatVector, orientation: Orientation) -> ZCElement:
    """Glue the words of a nonnegative boundary-free `h` into cycles."""
    k = h.k
    parts: list[UWord] = []
    for word, count in h.items():
        if count < 0:
            raise ValueError(f"Negative coefficient on {word}")
        parts.extend([word] * count)
    parts.sort()
    while True:
        ends = [_signed_ends(p.canon, k, orientation) for p in parts]
        target = next((i for i, (left, right) in enumerate(ends)
                       if left[0] != right[0] or left[1] != -right[1]),
                      None)
        if target is None:
            break
        affix, sign = ends[target][0]
        partner = next((j for j, pair in enumerate(ends) if j != target
                        and (affix, -sign) in pair), None)
        if partner is None:
            raise RuntimeError(f"No partner for {affix} on {parts[target]}")
        glued = glue(parts[target], parts[partner], affix)
        parts = [p for i, p in enumerate(parts) if i not in (target, partner)]
        parts.append(glued)  # type: ignore[arg-type]
        parts.sort()
    return ZCElement((self_glue(p, ends[i][0][0]), 1)
                     for i, p in enumerate(parts))


def lift(v: VectorK, orientation: Orientation = DEFAULT_ORIENTATION
         ) -> ZCElement:
    """
    An integer combination `z` of cyclic words with ``π_k(z) == v``.

    The negative and positive parts are padded with the same nonnegative
    boundary fillers so both become kernel vectors, then each is glued into
    cyclic words.
    """
    k = v.k
    if k < 2:
        raise ValueError(f"Lifting needs k >= 2, got {k}")
    if hat_boundary(HatVector(k, v.terms), orientation):
        raise NotInKernel(f"{v} is not in the kernel of p_left - p_right")
    if not v:
        return ZCElement()
    n = max(2, max(abs(x) for w in v.terms for x in w.canon))
    plus, minus = v.positive_part(), v.negative_part()
    residue = -hat_boundary(HatVector(k, plus.terms), orientation)
    units = [(1 if c > 0 else -1, u) for u, c in residue.items()
             for _ in range(abs(c))]
    if len(units) % 2:
        raise RuntimeError("Boundary residue has odd parity")
    filler = HatVector(k, (
        (canon_uword(_preimage_word(units[i], units[i + 1], n, orientation)),
         1) for i in range(0, len(units), 2)))
    z = _close_components(HatVector(k, plus.terms) + filler, orientation) \
        - _close_components(HatVector(k, minus.terms) + filler, orientation)
    if pi_k(z, k) != v:
        raise RuntimeError(f"Lift of {v} does not reproduce it")
    return z


def zc_canonicalize(z: ZCElement) -> ZCElement:
    """Rewrite every ``root**l`` as ``l * root`` and collect terms."""
    acc: dict[CyclicWord, int] = {}
    for w, coefficient in z.terms.items():
        root, power = primitive_root(w)
        acc[root] = acc.get(root, 0) + power * coefficient
    return ZCElement(acc)


def separating_level(z: ZCElement) -> int | None:
    """
    A level at which `z` is visible, or None when `z` is in the kernel of
    every π_k.
    """
    canonical = zc_canonicalize(z)
    if not canonical:
        return None
    top = max(len(w) for w in canonical.terms)
    for k in range(top, 2 * top + 2):
        if pi_k(canonical, k):
            return k
    raise RuntimeError(f"No level up to {2 * top + 1} separates {z}")
