import pytest

from fgsr.sampling import random_cyclic_word, random_reduced_word
from fgsr.words import canon_cyclic, canon_uword, enumerate_basis, inverse
from fgsr.zmodule import HatVector, IntMatrix, NotInKernel, \
    SameOrientation, VectorK, ZCElement, boundary_matrix, glue, \
    hat_boundary, image_preimage, kernel_and_coker, lift, p_chain, \
    p_matrices, parity, pi_k, self_glue, separating_level, unroll, \
    zc_canonicalize

from .conftest import uword, word


def cyc(text: str):
    return canon_cyclic(word(text))


def vec(k: int, **terms: int) -> VectorK:
    return VectorK(k, {uword(text): value for text, value in terms.items()})


def test_pi_k():
    w = cyc("xyXY")
    assert pi_k(w, 1) == vec(1, x=2, y=2)
    assert pi_k(w, 2) == vec(2, xy=1, yX=1, XY=1, Yx=1)
    assert pi_k(w, 2) == vec(2, xy=1, xY=1, XY=1, Xy=1)
    assert pi_k(w, 3) == vec(3, xyX=1, yXY=1, XYx=1, Yxy=1)
    # windows longer than the necklace wrap around
    assert pi_k(cyc("x"), 3) == vec(3, xxx=1)
    assert pi_k(uword("xyx"), 2) == vec(2, xy=1, yx=1)
    assert pi_k(word("xyYx"), 1) == vec(1, x=2)
    with pytest.raises(ValueError):
        pi_k(w, 0)


def test_pi_k_linear():
    z = ZCElement({cyc("xy"): 2, cyc("x"): -1})
    assert pi_k(z, 1) == vec(1, x=1, y=2)
    assert pi_k(ZCElement(), 2) == VectorK(2)


def test_combinations():
    a, b = vec(2, xy=1, xx=2), vec(2, xy=-1, yy=1)
    assert a + b == vec(2, xx=2, yy=1)
    assert a - a == VectorK(2)
    assert not (a - a)
    assert 3 * b == vec(2, xy=-3, yy=3)
    assert (a + b).total() == 3
    assert b.positive_part() == vec(2, yy=1)
    assert b.negative_part() == vec(2, xy=1)
    assert a.to_json() == {"xx": 2, "xy": 1}
    assert parity(pi_k(cyc("xyzXz"), 3)) == 5
    with pytest.raises(ValueError):
        VectorK(2, {uword("x"): 1})
    with pytest.raises(ValueError):
        a + vec(1, x=1)
    with pytest.raises(TypeError):
        a + HatVector(2, a.terms)
    with pytest.raises(ValueError):
        HatVector(3, {uword("xy"): 1})


def test_int_matrix():
    basis = enumerate_basis(2, 1)
    eye = IntMatrix.identity(basis)
    assert eye @ eye == eye
    assert eye.shape == (2, 2)
    assert eye @ vec(1, x=3) == vec(1, x=3)
    assert (eye + eye).to_dense() == [[2, 0], [0, 2]]
    assert not dict((eye - eye).entries)
    assert eye.to_json() == {"rows": ["x", "y"], "cols": ["x", "y"],
                             "entries": [[0, 0, 1], [1, 1, 1]]}
    with pytest.raises(ValueError):
        IntMatrix(basis, basis, {(2, 0): 1})
    with pytest.raises(ValueError):
        eye @ IntMatrix.identity(enumerate_basis(2, 2))


def test_int_matrix_rows():
    left, _ = p_matrices(3, 3)
    for i, u in enumerate(left.rows):
        expected = {j: v for (r, j), v in left.entries.items() if r == i}
        assert left.row(u) == expected
        assert sum(left.row(u).values()) == sum(
            left.entry(u, w) for w in left.cols)
    basis = enumerate_basis(2, 1)
    sparse = IntMatrix(basis, basis, {(1, 0): 4})
    assert sparse.row(basis[0]) == {}
    row = sparse.row(basis[1])
    row[0] = 7
    assert sparse.row(basis[1]) == {0: 4}


def test_p_column_sums():
    for n, k in ((2, 2), (2, 3), (3, 2), (3, 3)):
        left, right = p_matrices(n, k)
        both = left + right
        for column in both.columns():
            assert sum(column.values()) == 2


def test_p_left_table(sigma_yx):
    left, right = p_matrices(2, 3, sigma_yx)
    expected = {
        "xx": ("xxx", "xxy", "xxY"),
        "yy": ("yyy", "yyx", "yyX"),
        "xy": ("xyy", "xyx", "xyX"),
        "yx": ("yxx", "yxy", "yxY"),
        "Yx": ("Yxx", "YxY", "Yxy"),
        "xY": ("yyX", "XyX", "xyX"),
    }
    cols = ("xxx", "yyy", "xxy", "xxY", "yxx", "Yxx", "yyx", "yyX", "xyy",
            "Xyy", "yxy", "YxY", "xyx", "XyX", "yxY", "Yxy", "xyX", "Xyx")
    assert {uword(c) for c in cols} == set(enumerate_basis(2, 3))
    assert {uword(r) for r in expected} == set(enumerate_basis(2, 2))
    for row, ones in expected.items():
        for col in cols:
            want = 1 if col in ones else 0
            assert left.entry(uword(row), uword(col)) == want, (row, col)
    assert len(left.entries) == 18
    assert sum(right.entries.values()) == 18


def test_p_left_on_cyclic_words(sigma_yx):
    for sigma in (None, sigma_yx):
        for text in ("xyXY", "xxyXyy", "xYYx", "y"):
            w = cyc(text)
            for k in (2, 3, 4):
                args = (2, k) if sigma is None else (2, k, sigma)
                left = p_matrices(*args)[0]
                assert left @ pi_k(w, k) == pi_k(w, k - 1)
    assert p_chain(2, 3, 1) @ pi_k(cyc("xyXY"), 3) == vec(1, x=2, y=2)
    assert p_chain(2, 2, 2) == IntMatrix.identity(enumerate_basis(2, 2))
    with pytest.raises(ValueError):
        p_chain(2, 2, 3)


@pytest.mark.parametrize("n, k, rank", [(2, 2, 4), (2, 3, 12), (3, 2, 12)])
def test_kernel_rank(n, k, rank):
    basis, invariants = kernel_and_coker(n, k)
    assert len(basis) == rank
    assert [f for f in invariants if f != 1] == [2]
    D = boundary_matrix(n, k)
    for v in basis:
        assert D @ v == VectorK(k - 1)


def test_kernel_small_invariants(sigma_yx):
    basis, invariants = kernel_and_coker(2, 2)
    assert invariants == [1, 2]
    basis, invariants = kernel_and_coker(2, 3, sigma_yx)
    assert len(basis) == 12
    assert len(invariants) == 6


def test_hat_boundary():
    for text in ("xyXYx", "xxyz", "yZZx"):
        u = uword(text)
        for k in (2, 3):
            assert hat_boundary(HatVector(k, {u: 1})) == \
                boundary_matrix(3, k) @ pi_k(u, k)
    # a cyclic word has no boundary
    assert not hat_boundary(pi_k(cyc("xyzXz"), 3))
    with pytest.raises(ValueError):
        hat_boundary(HatVector(1, {uword("x"): 1}))


def test_image_preimage(sigma_yx):
    for s in (vec(1, x=1, y=-1), vec(1, x=2), vec(2, xy=-1, Yx=1)):
        h = image_preimage(s, 2)
        assert hat_boundary(h) == s
        assert image_preimage(s, 2, sigma_yx) is not None
    s = vec(2, xy=1, yx=1)
    assert hat_boundary(image_preimage(s, 2, sigma_yx), sigma_yx) == s
    with pytest.raises(ValueError):
        image_preimage(vec(1, x=1), 2)


def test_glue():
    assert glue(uword("xyX"), uword("yXY"), uword("yX")) == uword("xyXY")
    assert glue(uword("xyXYxy"), None, uword("xy")) == cyc("xyXY")
    assert self_glue(uword("xyXYxy"), uword("xy")) == cyc("xyXY")
    assert self_glue(uword("xxx"), uword("xx")) == cyc("x")
    with pytest.raises(SameOrientation):
        glue(uword("xy"), uword("Xy"), uword("y"))
    with pytest.raises(ValueError):
        glue(uword("xy"), uword("zx"), uword("z"))
    with pytest.raises(ValueError):
        self_glue(uword("xy"), uword("xy"))


@pytest.mark.parametrize("v, u, w", [
    ("xyXY", "xy", "xyXYxy"),
    ("x", "xx", "xxx"),
    ("xy", "x", "xyx"),
])
def test_unroll(v, u, w):
    assert unroll(cyc(v), uword(u)) == uword(w)
    assert self_glue(uword(w), uword(u)) == cyc(v)


def test_unroll_long_window():
    v, u = cyc("yzyZ"), uword("ZyzyZyz")
    w = unroll(v, u)
    assert len(w) == 11
    assert self_glue(w, u) == v
    w = unroll(cyc("xy"), uword("xyxyx"))
    assert w == uword("xyxyxyx")
    assert self_glue(w, uword("xyxyx")) == cyc("xy")


def test_unroll_missing():
    with pytest.raises(ValueError):
        unroll(cyc("xy"), uword("z"))


def test_gluing_counts(rng):
    for _ in range(200):
        n = rng.choice((2, 3))
        whole = random_reduced_word(rng, n, rng.randint(3, 10))
        size = rng.randint(1, len(whole) - 2)
        i = rng.randint(1, len(whole) - 1 - size)
        a, b = canon_uword(whole[:i + size]), canon_uword(whole[i:])
        t = canon_uword(whole[i:i + size])
        glued = glue(a, b, t)
        assert len(glued) == len(whole)
        for k in range(1, size + 2):
            assert pi_k(glued, k) == pi_k(a, k) + pi_k(b, k) - pi_k(t, k)
        assert not pi_k(t, size + 1)


def test_self_gluing_counts(rng):
    overlaps = 0
    for _ in range(200):
        n = rng.choice((2, 3))
        v = random_cyclic_word(rng, n, rng.randint(1, 8))
        size = len(v)
        m = rng.randint(1, 2 * size + 1)
        host = v.canon if rng.random() < 0.5 else inverse(v.canon)
        start = rng.randrange(size)
        u = canon_uword((host * (3 + m // size))[start:start + m])
        w = unroll(v, u)
        assert len(w) == size + m
        assert self_glue(w, u) == v
        assert pi_k(w, m + 1) == pi_k(v, m + 1)
        overlaps += len(w) <= 2 * m
    assert overlaps


def test_lift():
    assert lift(vec(2, xx=1)) == ZCElement({cyc("x"): 1})
    assert lift(vec(2, xY=1, Xy=1)) == ZCElement({cyc("xY"): 1})
    assert lift(VectorK(2)) == ZCElement()
    z = lift(vec(2, xx=1, yy=-1))
    assert z == ZCElement({cyc("x"): 1, cyc("y"): -1})
    with pytest.raises(NotInKernel):
        lift(vec(2, xy=1))
    with pytest.raises(ValueError):
        lift(vec(1, x=1))


@pytest.mark.parametrize("n, k", [(2, 2), (2, 3), (3, 2)])
def test_lift_kernel_basis(n, k):
    basis, _ = kernel_and_coker(n, k)
    for v in basis:
        assert pi_k(lift(v), k) == v
    total = sum(basis[1:], basis[0])
    assert pi_k(lift(total), k) == total


def test_lift_sigma(sigma_yx):
    basis, _ = kernel_and_coker(2, 3, sigma_yx)
    for v in basis:
        assert pi_k(lift(v, sigma_yx), 3) == v


def test_zc_canonicalize():
    z = ZCElement({cyc("xy"): 2, cyc("xyxy"): -1})
    assert zc_canonicalize(z) == ZCElement()
    assert zc_canonicalize(ZCElement({cyc("xxx"): 1})) == \
        ZCElement({cyc("x"): 3})
    z = ZCElement({cyc("xYxY"): 1, cyc("yx"): 1})
    assert zc_canonicalize(z) == ZCElement({cyc("xY"): 2, cyc("xy"): 1})


def test_separating_level():
    assert separating_level(ZCElement({cyc("xx"): 1, cyc("x"): -2})) is None
    assert separating_level(ZCElement({cyc("x"): 1, cyc("y"): -1})) == 1
    z = ZCElement({cyc("xy"): 1, cyc("x"): -1, cyc("y"): -1})
    assert separating_level(z) == 2
    # the search starts at the longest word
    z = ZCElement({cyc("xxyy"): 1, cyc("xyxy"): -1})
    assert separating_level(z) == 4
