"""Canonical words, chain arithmetic, basis enumeration, serialization."""

import itertools
import random
from fractions import Fraction

import pytest

from schouten import kernels
from schouten.chains import (
    BasisIndex,
    Chain,
    canonicalize_word,
    chain_to_text,
    chain_to_vector,
    dim_generators,
    enumerate_basis,
    factor_key,
    generators_of_bidegree,
    max_arity,
    max_arity_bound,
    parse_chain,
    vector_to_chain,
    wedge_chain,
    weight_signature,
)
from schouten.multivector import g_degree


def random_gen(rng, n, max_beta=3):
    alpha = tuple(sorted(rng.sample(range(1, n + 1), rng.randint(1, n))))
    beta = [0] * n
    for _ in range(rng.randint(0, max_beta)):
        beta[rng.randrange(n)] += 1
    return alpha, tuple(beta)


# --- canonical words ---------------------------------------------------------


def test_even_degree_repeat_kills_word():
    g = ((1,), (1, 0))  # g-degree 0
    sign, word = canonicalize_word([g, g])
    assert sign == 0 and word is None


def test_odd_degree_repeat_survives():
    g = ((1, 2), (1, 1))  # bivector, g-degree 1
    sign, word = canonicalize_word([g, g])
    assert sign == 1 and word == (g, g)


def test_swap_sign_even_even():
    g1 = ((1,), (0, 0))
    g2 = ((2,), (0, 0))
    s_fwd, w_fwd = canonicalize_word([g1, g2])
    s_rev, w_rev = canonicalize_word([g2, g1])
    assert w_fwd == w_rev
    assert s_fwd == -s_rev  # -(-1)^{0*0} = -1 per swap


def test_swap_sign_odd_odd():
    g1 = ((1, 2), (0, 0, 0))
    g2 = ((1, 3), (1, 0, 0))
    s_fwd, w_fwd = canonicalize_word([g1, g2])
    s_rev, w_rev = canonicalize_word([g2, g1])
    assert w_fwd == w_rev
    assert s_fwd == s_rev  # -(-1)^{1*1} = +1 per swap


def test_canonical_sign_matches_transposition_count():
    """Oracle: resolve an arbitrary permutation into adjacent swaps by brute
    force and accumulate -(-1)^{xy} per swap independently."""
    rng = random.Random(17)
    for _ in range(80):
        n = rng.randint(2, 3)
        m = rng.randint(2, 4)
        gens = []
        while len(gens) < m:
            g = random_gen(rng, n)
            if g not in gens:
                gens.append(g)
        perm = list(gens)
        rng.shuffle(perm)
        # bubble sort oracle
        sign = 1
        arr = list(perm)
        for i in range(len(arr)):
            for j in range(len(arr) - 1):
                if factor_key(arr[j]) > factor_key(arr[j + 1]):
                    x, y = g_degree(arr[j]), g_degree(arr[j + 1])
                    if (x * y) % 2 == 0:
                        sign = -sign
                    arr[j], arr[j + 1] = arr[j + 1], arr[j]
        got_sign, got_word = canonicalize_word(perm)
        assert got_word == tuple(arr)
        assert got_sign == sign


def test_place_factor_matches_full_canonicalization():
    rng = random.Random(29)
    checked = 0
    for _ in range(400):
        n = rng.randint(2, 3)
        m = rng.randint(1, 4)
        raw = [random_gen(rng, n) for _ in range(m + 1)]
        s, word = canonicalize_word(raw[:-1] + [raw[-1]])
        base_s, base = canonicalize_word(raw[:-1])
        if base_s == 0:
            continue
        gen = raw[-1]
        for i in range(len(base) + 1):
            expect = canonicalize_word(base[:i] + (gen,) + base[i:])
            assert kernels.place_factor(base, i, gen) == expect
            assert kernels.place_factor_pure(base, i, gen) == expect
            checked += 1
    assert checked > 500


# --- chain arithmetic --------------------------------------------------------


def test_chain_linear_structure():
    g1 = (((1,), (1, 0)),)
    g2 = (((2,), (0, 1)),)
    a = Chain(2, {g1: Fraction(1, 2)})
    b = Chain(2, {g1: Fraction(1, 2), g2: Fraction(-1)})
    assert (a + b).terms == {g1: Fraction(1), g2: Fraction(-1)}
    assert (a - a).is_zero()
    assert (2 * b).terms[g2] == Fraction(-2)


def test_wedge_chain_square_of_even_factor_is_zero():
    c = Chain.from_word(2, [((1,), (1, 0))])
    assert wedge_chain(c, c).is_zero()


def test_wedge_chain_square_of_bivector_survives():
    c = Chain.from_word(2, [((1, 2), (1, 1))])
    sq = wedge_chain(c, c)
    assert len(sq.terms) == 1 and list(sq.terms.values()) == [Fraction(1)]


def test_arity_mixed_raises():
    g1 = (((1,), (1, 0)),)
    g2 = (((1,), (1, 0)), ((2,), (0, 1)))
    with pytest.raises(ValueError):
        Chain(2, {g1: Fraction(1), g2: Fraction(1)}).arity()


def test_weight_signature():
    word = (((1,), (0, 0)), ((1, 2), (2, 1)))
    assert weight_signature(word) == (2, 1, 1)


# --- generator spaces --------------------------------------------------------


def test_generator_dimension_closed_form():
    for n in (1, 2, 3):
        for i in range(-1, n + 1):
            for j in range(-1, 4):
                assert len(generators_of_bidegree(n, i, j)) == dim_generators(n, i, j)


def test_generators_out_of_range_empty():
    assert generators_of_bidegree(2, 2, 0) == ()
    assert generators_of_bidegree(2, 0, -2) == ()


# --- basis enumeration -------------------------------------------------------


def brute_force_basis(n, m, w, h):
    """Independent enumeration: all multisets of m generators drawn from the
    full generator pool, filtered by weight and the even-repeat rule."""
    pool = []
    for i in range(0, n):
        for j in range(-1, h + m + 1):
            pool.extend(generators_of_bidegree(n, i, j))
    words = set()
    for combo in itertools.combinations_with_replacement(sorted(pool, key=factor_key), m):
        ws = weight_signature(combo)
        if ws != (m, w, h):
            continue
        ok = True
        for g1, g2 in zip(combo, combo[1:]):
            if g1 == g2 and g_degree(g1) % 2 == 0:
                ok = False
                break
        if ok:
            words.add(combo)
    return words


@pytest.mark.parametrize("n,m,w,h", [
    (2, 1, 0, 0), (2, 2, 0, 0), (2, 2, 1, 1), (2, 3, 0, 0),
    (2, 2, 2, 2), (3, 2, 0, 0), (2, 2, 0, 1), (2, 2, 1, 0),
    (1, 2, 0, 1), (2, 3, 1, -1),
])
def test_enumeration_against_brute_force(n, m, w, h):
    basis = enumerate_basis(n, m, w, h)
    expect = brute_force_basis(n, m, w, h)
    assert set(basis.words) == expect
    assert len(basis) == len(expect)


def test_known_small_dimensions():
    assert len(enumerate_basis(2, 1, 0, 0)) == 4
    assert len(enumerate_basis(2, 2, 0, 0)) == 18


def test_basis_sorted_and_indexed():
    basis = enumerate_basis(2, 2, 1, 1)
    keys = [tuple(factor_key(f) for f in word) for word in basis.words]
    assert keys == sorted(keys)
    for i, word in enumerate(basis.words):
        assert basis.position(word) == i
    with pytest.raises(KeyError):
        basis.position((((1,), (0, 0)),))


def test_max_arity_consistent_with_bound():
    for (n, w, h) in [(2, 0, 0), (2, 1, 1), (3, 0, 0), (1, 0, 0)]:
        mm = max_arity(n, w, h)
        assert mm <= max_arity_bound(n, w, h)
        if mm:
            assert len(enumerate_basis(n, mm, w, h)) > 0
        assert len(enumerate_basis(n, mm + 1, w, h)) == 0


def test_max_arity_known_value():
    # n=2, weight (0,0): top word is d1 ^ d2 ^ (the 4 linear fields) ^ 2 quadratics
    assert max_arity(2, 0, 0) == 8


# --- coordinates and serialization ------------------------------------------


def test_vector_round_trip():
    rng = random.Random(53)
    basis = enumerate_basis(2, 2, 1, 1)
    terms = {w: Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for w in
             rng.sample(basis.words, 7)}
    c = Chain(2, terms)
    v = chain_to_vector(c, basis)
    assert vector_to_chain(v, basis) == c


def test_text_round_trip_and_reordering():
    c = Chain.from_word(2, [((2,), (0, 1)), ((1,), (1, 0))], Fraction(-3, 2))
    text = chain_to_text(c)
    assert parse_chain(2, text) == c
    # factor order in the input must not matter beyond the sign
    swapped = "3/2 | x[0,1] d[2] ; x[1,0] d[1]"
    straight = "3/2 | x[1,0] d[1] ; x[0,1] d[2]"
    assert parse_chain(2, swapped) == -parse_chain(2, straight)


def test_parse_chain_skips_blank_and_comment_lines():
    text = "\n# note\n1 | x[0,0] d[1]\n\n"
    c = parse_chain(2, text)
    assert len(c.terms) == 1
