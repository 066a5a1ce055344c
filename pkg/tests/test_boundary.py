"""The boundary operator and its per-block matrices."""

import random
from fractions import Fraction

import pytest

from schouten.boundary import (
    WeightEscapeError,
    boundary,
    boundary_matrix,
    left_action,
    matrix_to_text,
)
from schouten.chains import (
    Chain,
    canonicalize_word,
    chain_to_vector,
    enumerate_basis,
    weight_signature,
)
from schouten.multivector import MultiVector, bidegree, g_degree, schouten_bracket


def random_gen(rng, n, max_beta=3):
    alpha = tuple(sorted(rng.sample(range(1, n + 1), rng.randint(1, n))))
    beta = [0] * n
    for _ in range(rng.randint(0, max_beta)):
        beta[rng.randrange(n)] += 1
    return alpha, tuple(beta)


def random_word(rng, n, m, max_beta=3):
    while True:
        sign, word = canonicalize_word([random_gen(rng, n, max_beta) for _ in range(m)])
        if sign:
            return word


# --- base cases --------------------------------------------------------------


def test_boundary_of_generator_is_zero():
    c = Chain.from_word(2, [((1,), (1, 0))])
    assert boundary(c).is_zero()


def test_boundary_of_pair_is_bracket():
    """d(A ^^ B) = [A, B], against the multivector bracket directly."""
    rng = random.Random(61)
    for _ in range(120):
        n = rng.randint(2, 3)
        ga, gb = random_gen(rng, n), random_gen(rng, n)
        sign, word = canonicalize_word([ga, gb])
        if sign == 0:
            continue
        A = MultiVector(n, {ga: Fraction(1)})
        B = MultiVector(n, {gb: Fraction(1)})
        # the canonical word is sign * (ga ^^ gb), so d(word) = sign * [A, B]
        expect = sign * Chain.from_multivector(schouten_bracket(A, B))
        assert boundary(Chain(n, {word: Fraction(1)})) == expect


def test_boundary_squares_to_zero_random_words():
    rng = random.Random(67)
    for _ in range(80):
        n = rng.randint(2, 3)
        m = rng.randint(2, 5)
        word = random_word(rng, n, m)
        c = Chain(n, {word: Fraction(1)})
        assert boundary(boundary(c)).is_zero()


def test_boundary_preserves_double_weight():
    rng = random.Random(71)
    for _ in range(60):
        n = rng.randint(2, 3)
        m = rng.randint(2, 4)
        word = random_word(rng, n, m)
        sig = weight_signature(word)
        d = boundary(Chain(n, {word: Fraction(1)}))
        for out in d.terms:
            assert weight_signature(out) == (sig[0] - 1, sig[1], sig[2])


def test_boundary_linear():
    rng = random.Random(73)
    n = 2
    w1 = random_word(rng, n, 3)
    w2 = random_word(rng, n, 3)
    a = Chain(n, {w1: Fraction(2, 3)})
    b = Chain(n, {w2: Fraction(-1, 5)})
    assert boundary(a + b) == boundary(a) + boundary(b)
    assert boundary(7 * a) == 7 * boundary(a)


# --- left action -------------------------------------------------------------


def test_left_action_matches_recursion():
    """d(A0 ^^ rest) = -A0 ^^ d(rest) + A0 . rest, with the action public."""
    rng = random.Random(79)
    from schouten.chains import multivector_wedge_word
    for _ in range(60):
        n = rng.randint(2, 3)
        m = rng.randint(2, 4)
        word = random_word(rng, n, m)
        head, tail = word[0], word[1:]
        A0 = MultiVector(n, {head: Fraction(1)})
        lhs = boundary(Chain(n, {word: Fraction(1)}))
        minus = Chain(n, {})
        if len(tail) >= 2:
            for tw, tc in boundary(Chain(n, {tail: Fraction(1)})).terms.items():
                minus = minus + tc * multivector_wedge_word(A0, tw)
        rhs = -1 * minus + left_action(A0, tail)
        assert lhs == rhs


def test_left_action_rejects_mixed_degree():
    from schouten.multivector import MixedDegreeError
    mixed = (MultiVector.coordinate_field(2, 1)
             + MultiVector.monomial(2, 1, (0, 0), (1, 2)))
    with pytest.raises(MixedDegreeError):
        left_action(mixed, (((1,), (1, 0)),))


# --- explicit low-arity formula ----------------------------------------------


def test_boundary_of_triple_against_pairwise_formula():
    """Unrolled recursion: d(A^^B^^C) = -A^^[B,C] + [A,B]^^C + (-1)^{ab} B^^[A,C]."""
    rng = random.Random(83)
    for _ in range(60):
        n = rng.randint(2, 3)
        word = random_word(rng, n, 3)
        ga, gb, gc = word
        A = MultiVector(n, {ga: Fraction(1)})
        B = MultiVector(n, {gb: Fraction(1)})
        C = MultiVector(n, {gc: Fraction(1)})
        a, b = g_degree(ga), g_degree(gb)

        def pair(M, sgn, left=None, right=None):
            # wedge each monomial of M with the fixed factor, order kept
            out = Chain(n, {})
            for key, coeff in M.terms.items():
                raw = [left, key] if left is not None else [key, right]
                s, nw = canonicalize_word(raw)
                if s:
                    out = out + Chain(n, {nw: s * coeff * sgn})
            return out

        expect = (pair(schouten_bracket(B, C), -1, left=ga)
                  + pair(schouten_bracket(A, B), 1, right=gc)
                  + pair(schouten_bracket(A, C), (-1) ** (a * b), left=gb))
        assert boundary(Chain(n, {word: Fraction(1)})) == expect


# --- matrices ----------------------------------------------------------------


def test_boundary_matrix_columns_match_operator():
    n, m, w, h = 2, 3, 1, 1
    bm = boundary_matrix(n, m, w, h)
    for col, word in enumerate(bm.domain.words):
        img = boundary(Chain(n, {word: Fraction(1)}))
        vec = chain_to_vector(img, bm.codomain)
        for r, v in enumerate(vec):
            assert bm.matrix.entries.get((r, col), Fraction(0)) == v


def test_boundary_matrix_arity_one_is_zero_map():
    bm = boundary_matrix(2, 1, 0, 0)
    assert bm.matrix.rows == 0
    assert bm.matrix.cols == 4
    assert bm.codomain is None


def test_composite_matrix_is_zero():
    n, w, h = 2, 1, 1
    b3 = boundary_matrix(n, 3, w, h)
    b2 = boundary_matrix(n, 2, w, h, domain=b3.codomain)
    assert b2.matrix.matmul(b3.matrix).is_zero()


def test_matrix_text_format():
    bm = boundary_matrix(2, 2, 0, 0)
    text = matrix_to_text(bm.matrix)
    lines = text.splitlines()
    rows, cols, nnz = map(int, lines[0].split())
    assert (rows, cols) == (bm.matrix.rows, bm.matrix.cols)
    assert nnz == len(lines) - 1 == len(bm.matrix.entries)
    keys = []
    for line in lines[1:]:
        r, c, v = line.split()
        keys.append((int(c), int(r)))
        Fraction(v)  # parses
    assert keys == sorted(keys)
