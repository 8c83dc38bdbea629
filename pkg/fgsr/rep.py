"""
Matrix towers of automorphisms.

Level `k` of the tower of φ is an integer matrix ``φ_k: M_{m_k} -> M_k``
with ``φ_k · π_{m_k}(w) == π_k(φ(w))`` for every cyclic word `w`; row `u`
is assembled from the minimal full set of `u` under φ.
"""

from __future__ import annotations
from random import Random
from typing import Any, Callable, Iterable, Literal, NamedTuple, Union
from warnings import warn

from .autom import Automorphism, compose
from .preimage import full_set, weighted_count
from .sampling import random_cyclic_word
from .syntax import format_word, symbol
from .utils import memoized
from .words import DEFAULT_ORIENTATION, CyclicWord, Orientation, \
    canon_cyclic, enumerate_basis, hom_count_cyclic
from .zmodule import IntMatrix, VectorK, ZCElement, kernel_and_coker, lift, \
    p_chain, p_matrices, pi_k, separating_level

__all__ = ("RepMatrix", "Tower", "ProductTower", "VerificationReport",
           "VERIFY_MODES", "raw_m", "m_k_of", "phi_matrix", "compose_towers",
           "verify_identities", "verify_counting", "verify_kernel",
           "distinguish", "tower_valuation", "tower_norm", "default_probes")

VERIFY_MODES = ("defining", "tower", "composition")
Mode = Literal["defining", "tower", "composition"]

#: Default depth of towers built without an explicit bound
DEFAULT_BOUND = 3


class RepMatrix(NamedTuple):
    """``φ_k`` with rows W_k and columns W_{m_k}."""
    k: int
    m_k: int
    mat: IntMatrix
    phi: Automorphism

    def act(self, w: CyclicWord) -> VectorK:
        return self.mat @ pi_k(w, self.m_k)

    def to_json(self) -> dict[str, Any]:
        return {"k": self.k, "m_k": self.m_k, **self.mat.to_json()}


class VerificationReport(NamedTuple):
    mode: str
    passed: bool
    trials: int
    counterexample: Any = None
    detail: str = ""

    def to_json(self) -> dict[str, Any]:
        example = self.counterexample
        if isinstance(example, CyclicWord):
            example = format_word(example.canon)
        return {"mode": self.mode, "passed": self.passed,
                "trials": self.trials, "counterexample": example,
                "detail": self.detail}


@memoized(capacity=4096)
def raw_m(phi: Automorphism, k: int) -> int:
    """The longest base word over the full sets of all of W_k."""
    return max(full_set(u, phi).max_base_length
               for u in enumerate_basis(phi.n, k))


def m_k_of(phi: Automorphism, k: int) -> int:
    """
    The source level of ``φ_k``: the running maximum of `raw_m` over the
    levels up to `k`, so that ``m_{k-1} <= m_k`` always holds.
    """
    if k < 1:
        raise ValueError(f"Level must be at least 1, got {k}")
    raw = [raw_m(phi, j) for j in range(1, k + 1)]
    envelope = max(raw)
    if envelope > raw[-1]:
        warn(f"m_{k} raised from {raw[-1]} to {envelope} for {phi!r}")
    return envelope


@memoized(capacity=256)
def phi_matrix(phi: Automorphism, k: int,
               orientation: Orientation = DEFAULT_ORIENTATION) -> RepMatrix:
    n, m = phi.n, m_k_of(phi, k)
    rows, cols = enumerate_basis(n, k), enumerate_basis(n, m)
    acc: dict[tuple[int, int], int] = {}
    for i, u in enumerate(rows):
        for v, mult in full_set(u, phi).bases.items():
            chain = p_chain(n, m, len(v), orientation)
            for j, value in chain.row(v).items():
                acc[i, j] = acc.get((i, j), 0) + mult * value
    return RepMatrix(k, m, IntMatrix(rows, cols, acc), phi)


class Tower:
    """
    The levels of one automorphism, built on demand.

    * `phi`: the automorphism
    * `bound`: how deep comparisons go by default
    * `orientation`: section used by the affix maps inside each level
    """

    def __init__(self, phi: Automorphism, bound: int = DEFAULT_BOUND,
                 orientation: Orientation = DEFAULT_ORIENTATION) -> None:
        self.phi = phi
        self.bound = bound
        self.orientation = orientation

    def level(self, k: int) -> RepMatrix:
        return phi_matrix(self.phi, k, self.orientation)

    def m(self, k: int) -> int:
        return m_k_of(self.phi, k)

    def act(self, k: int, w: CyclicWord) -> VectorK:
        return self.level(k).act(w)

    def __repr__(self) -> str:
        return f"Tower({self.phi!r}, bound={self.bound})"


class ProductTower:
    """The level-wise composite ``φ_k ∘ ψ_{m_k^φ}`` of two towers."""

    def __init__(self, outer: Tower, inner: AnyTower) -> None:
        if outer.phi.n != inner.phi.n:
            raise ValueError(f"Rank mismatch: {outer.phi.n} vs {inner.phi.n}")
        self.outer = outer
        self.inner = inner
        self.phi = compose(outer.phi, inner.phi)
        self.bound = min(outer.bound, inner.bound)

    def act(self, k: int, w: CyclicWord) -> VectorK:
        return self.outer.level(k).mat @ self.inner.act(self.outer.m(k), w)

    def __repr__(self) -> str:
        return f"ProductTower({self.outer!r}, {self.inner!r})"


AnyTower = Union[Tower, ProductTower]


def compose_towers(outer: Tower, inner: AnyTower) -> ProductTower:
    return ProductTower(outer, inner)


def default_probes(n: int, seed: int = 0, count: int = 8,
                   max_length: int = 6) -> list[CyclicWord]:
    """Generators, their pairwise products and seeded random cyclic words."""
    probes = [canon_cyclic((g,)) for g in range(1, n + 1)]
    probes += [canon_cyclic((g, h)) for g in range(1, n + 1)
               for h in range(g + 1, n + 1)]
    rng = Random(seed)
    probes += [random_cyclic_word(rng, n, rng.randint(2, max_length))
               for _ in range(count)]
    return probes


def tower_valuation(a: AnyTower, b: AnyTower,
                    probes: Iterable[CyclicWord] | None = None,
                    bound: int | None = None) -> int | None:
    """
    The first level at which `a` and `b` act differently on the probes, or
    None if they agree up to `bound`.
    """
    if a.phi.n != b.phi.n:
        raise ValueError(f"Rank mismatch: {a.phi.n} vs {b.phi.n}")
    bound = min(a.bound, b.bound) if bound is None else bound
    words = default_probes(a.phi.n) if probes is None else list(probes)
    for k in range(1, bound + 1):
        for w in words:
            if a.act(k, w) != b.act(k, w):
                return k
    return None


def tower_norm(a: AnyTower, b: AnyTower,
               probes: Iterable[CyclicWord] | None = None,
               bound: int | None = None) -> float:
    """``2**-V`` where `V` is the deepest level on which `a` and `b` agree."""
    level = tower_valuation(a, b, probes, bound)
    return 0.0 if level is None else 2.0 ** -(level - 1)


def _defining_check(phi: Automorphism, psi: Automorphism | None, k: int,
                    orientation: Orientation
                    ) -> Callable[[CyclicWord], tuple[VectorK, VectorK]]:
    rep = phi_matrix(phi, k, orientation)
    return lambda w: (rep.act(w), pi_k(phi(w), k))


def _tower_check(phi: Automorphism, psi: Automorphism | None, k: int,
                 orientation: Orientation
                 ) -> Callable[[CyclicWord], tuple[VectorK, VectorK]]:
    if k < 2:
        raise ValueError(f"The tower identity needs k >= 2, got {k}")
    top = phi_matrix(phi, k, orientation)
    low = phi_matrix(phi, k - 1, orientation)
    p_k = p_matrices(phi.n, k, orientation)[0]
    chain = p_chain(phi.n, top.m_k, low.m_k, orientation)

    def check(w: CyclicWord) -> tuple[VectorK, VectorK]:
        probe = pi_k(w, top.m_k)
        return p_k @ (top.mat @ probe), low.mat @ (chain @ probe)
    return check


def _composition_check(phi: Automorphism, psi: Automorphism | None, k: int,
                       orientation: Orientation
                       ) -> Callable[[CyclicWord], tuple[VectorK, VectorK]]:
    if psi is None:
        raise ValueError("The composition identity needs a second automorphism")
    n = phi.n
    outer = phi_matrix(phi, k, orientation)
    inner = phi_matrix(psi, outer.m_k, orientation)
    joint = phi_matrix(compose(phi, psi), k, orientation)
    top = max(joint.m_k, inner.m_k)
    to_joint = p_chain(n, top, joint.m_k, orientation)
    to_inner = p_chain(n, top, inner.m_k, orientation)

    def check(w: CyclicWord) -> tuple[VectorK, VectorK]:
        probe = pi_k(w, top)
        return (joint.mat @ (to_joint @ probe),
                outer.mat @ (inner.mat @ (to_inner @ probe)))
    return check


_CHECKS = {
    "defining": _defining_check,
    "tower": _tower_check,
    "composition": _composition_check,
}


def verify_identities(phi: Automorphism, psi: Automorphism | None = None,
                      k: int = 1, mode: Mode = "defining", trials: int = 20,
                      seed: int = 0, max_length: int = 8,
                      orientation: Orientation = DEFAULT_ORIENTATION
                      ) -> VerificationReport:
    """
    Check one tower identity exactly on `trials` random cyclic words.

    * ``defining``: ``φ_k π_{m_k}(w) == π_k(φ(w))``
    * ``tower``: ``p_k φ_k π_{m_k}(w) == φ_{k-1} p_{m_k,m_{k-1}} π_{m_k}(w)``
    * ``composition``: ``(φψ)_k`` against ``φ_k ψ_{m_k^φ}``, both fed from a
      common level

    The first failing word is returned as the counterexample.
    """
    if mode not in _CHECKS:
        raise ValueError(f"Unknown mode {mode!r}, expected one of "
                         f"{VERIFY_MODES}")
    if psi is not None and psi.n != phi.n:
        raise ValueError(f"Rank mismatch: {phi.n} vs {psi.n}")
    check = _CHECKS[mode](phi, psi, k, orientation)
    rng = Random(seed)
    for trial in range(trials):
        w = random_cyclic_word(rng, phi.n, rng.randint(1, max_length))
        lhs, rhs = check(w)
        if lhs != rhs:
            return VerificationReport(mode, False, trial + 1, w,
                                      f"{lhs!r} != {rhs!r}")
    return VerificationReport(mode, True, trials)


def verify_counting(phi: Automorphism, k: int = 2, trials: int = 20,
                    seed: int = 0, max_length: int = 8) -> VerificationReport:
    """``|Hom(u, φ(w))| == Σ_{v ∈ S_{u,φ}} |Hom(v, w)|`` on random pairs."""
    rng = Random(seed)
    basis = enumerate_basis(phi.n, k)
    for trial in range(trials):
        u = rng.choice(basis)
        w = random_cyclic_word(rng, phi.n, rng.randint(1, max_length))
        lhs = hom_count_cyclic(u, phi(w))
        rhs = weighted_count(full_set(u, phi), w)
        if lhs != rhs:
            return VerificationReport("counting", False, trial + 1, w,
                                      f"{u!r}: {lhs} != {rhs}")
    return VerificationReport("counting", True, trials)


def verify_kernel(n: int, k: int) -> VerificationReport:
    """
    Rank and invariant factors of ``p_left - p_right`` on M_k, and a lift
    of every kernel basis vector.
    """
    basis, invariants = kernel_and_coker(n, k)
    expected = n * (2 * n - 2) * (2 * n - 1) ** (k - 2)
    detail = f"rank {len(basis)}, invariants {invariants}"
    if len(basis) != expected:
        return VerificationReport("kernel", False, 0, None,
                                  f"{detail}, expected rank {expected}")
    for trial, v in enumerate(basis):
        z = lift(v)
        if pi_k(z, k) != v:
            return VerificationReport("kernel", False, trial + 1, v.to_json(),
                                      f"{detail}, lift gives {z!r}")
    return VerificationReport("kernel", True, len(basis), None, detail)


def distinguish(phi: Automorphism, psi: Automorphism, k_max: int = 4
                ) -> tuple[int, int] | None:
    """
    The first level `k` and generator index `g` with
    ``π_k(φ(x_g)) != π_k(ψ(x_g))`` as cyclic words, or None.

    None is inconclusive; a warning is issued when the cyclic images do
    differ but no level up to `k_max` tells them apart.
    """
    if phi.n != psi.n:
        raise ValueError(f"Rank mismatch: {phi.n} vs {psi.n}")
    pairs = [(canon_cyclic(a), canon_cyclic(b))
             for a, b in zip(phi.images, psi.images)]
    for k in range(1, k_max + 1):
        for g, (a, b) in enumerate(pairs):
            if pi_k(a, k) != pi_k(b, k):
                if a == b:
                    raise RuntimeError(f"Equal cyclic words {a} differ at {k}")
                return k, g
    for g, (a, b) in enumerate(pairs):
        if a != b:
            level = separating_level(ZCElement({a: 1, b: -1}))
            warn(f"{symbol(g + 1)} has images {a} and {b}, first separated "
                 f"at level {level} beyond k_max={k_max}")
            break
    return None
