"""Canonical super-wedge words, chain spaces and ordered basis enumeration.

A wedge word is a tuple of unit-coefficient generators (alpha, beta) in the
canonical factor order: primary key |alpha| ascending, secondary |beta|
ascending, tertiary lexicographic (alpha, beta).  Swapping adjacent factors
of g-degrees x, y multiplies the sign by -(-1)^{xy}, so factors of even
g-degree behave antisymmetrically (no repeats) while factors of odd g-degree
commute (repeats allowed).

A chain is a rational combination of canonical words.  Serialized form, one
term per line:  ``coeff | x[..] d[..] ; x[..] d[..] ; ...``
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
import math

from .multivector import (
    DimensionMismatchError,
    MultiVector,
    check_generator,
    format_monomial,
    g_degree,
    parse_monomial,
)


def factor_key(gen):
    alpha, beta = gen
    return (len(alpha), sum(beta), alpha, beta)


def canonicalize_word(factors):
    """Sort raw unit-coefficient factors into the canonical order.

    Returns (sign, word); sign is 0 and word is None when a factor of even
    g-degree repeats.
    """
    fs = list(factors)
    if not fs:
        raise ValueError("empty factor list")
    sign = 1
    # insertion sort, one adjacent transposition at a time
    for i in range(1, len(fs)):
        j = i
        while j > 0 and factor_key(fs[j - 1]) > factor_key(fs[j]):
            x = g_degree(fs[j - 1])
            y = g_degree(fs[j])
            if (x * y) % 2 == 0:
                sign = -sign
            fs[j - 1], fs[j] = fs[j], fs[j - 1]
            j -= 1
    for f1, f2 in zip(fs, fs[1:]):
        if f1 == f2 and g_degree(f1) % 2 == 0:
            return 0, None
    return sign, tuple(fs)


# single-factor insertion into a canonical word; equivalent to
# canonicalize_word(rest[:i] + (gen,) + rest[i:]) but O(m), backend-selected
from .kernels import place_factor  # noqa: E402


def weight_signature(word):
    """(m, w, h) = (arity, sum(|alpha|-1), sum(|beta|-1)) of a word."""
    m = len(word)
    w = sum(len(alpha) - 1 for alpha, _ in word)
    h = sum(sum(beta) - 1 for _, beta in word)
    return m, w, h


class Chain:
    """Rational combination of canonical wedge words over a fixed n."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        clean = {}
        if terms:
            for word, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[word] = c
        self.terms = clean

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def from_word(cls, n, raw_factors, coeff=1):
        """Build c * (f1 ^^ f2 ^^ ...) from raw factors, canonicalizing."""
        for alpha, beta in raw_factors:
            check_generator(n, alpha, beta)
        sign, word = canonicalize_word(raw_factors)
        if sign == 0:
            return cls.zero(n)
        return cls(n, {word: sign * Fraction(coeff)})

    @classmethod
    def from_multivector(cls, A):
        """A 1-chain: each monomial of A becomes a single-factor word."""
        return cls(A.n, {((alpha, beta),): c for (alpha, beta), c in A.terms.items()})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Chain) and self.n == other.n and self.terms == other.terms

    def _check(self, other):
        if self.n != other.n:
            raise DimensionMismatchError("mixing n=%d with n=%d" % (self.n, other.n))

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return Chain(self.n, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Chain(self.n, {w: -c for w, c in self.terms.items()})

    def __mul__(self, scalar):
        return Chain(self.n, {w: c * scalar for w, c in self.terms.items()})

    __rmul__ = __mul__

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: tuple(factor_key(f) for f in kv[0]))

    def arity(self):
        """Common arity of all words; None for the zero chain."""
        ms = {len(w) for w in self.terms}
        if not ms:
            return None
        if len(ms) > 1:
            raise ValueError("mixed arities %s" % sorted(ms))
        return ms.pop()

    def __repr__(self):
        if not self.terms:
            return "Chain(%d, 0)" % self.n
        return "Chain(%d, <%d terms>)" % (self.n, len(self.terms))


def wedge_chain(c1, c2):
    """Bilinear ^^ product: concatenate factor lists and canonicalize."""
    c1._check(c2)
    terms = {}
    for w1, a in c1.terms.items():
        for w2, b in c2.terms.items():
            sign, word = canonicalize_word(w1 + w2)
            if sign == 0:
                continue
            terms[word] = terms.get(word, 0) + sign * a * b
    return Chain(c1.n, terms)


def multivector_wedge_word(A, word):
    """A ^^ word for a MultiVector A, distributing monomials of A."""
    terms = {}
    for (alpha, beta), c in A.terms.items():
        sign, nw = canonicalize_word(((alpha, beta),) + word)
        if sign == 0:
            continue
        terms[nw] = terms.get(nw, 0) + sign * c
    return Chain(A.n, terms)


# --- basis enumeration ------------------------------------------------------


@lru_cache(maxsize=None)
def generators_of_bidegree(n, i, j):
    """All generators of g-bidegree (i, j), sorted canonically.

    |alpha| = i+1 directions out of n, |beta| = j+1.
    """
    if not (0 <= i <= n - 1) or j < -1:
        return ()
    gens = []
    for alpha in combinations(range(1, n + 1), i + 1):
        for beta in _compositions(j + 1, n):
            gens.append((alpha, beta))
    gens.sort(key=factor_key)
    return tuple(gens)


def _compositions(total, parts):
    """All tuples of `parts` non-negative integers summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def dim_generators(n, i, j):
    if not (0 <= i <= n - 1) or j < -1:
        return 0
    return math.comb(n, i + 1) * math.comb(j + 1 + n - 1, n - 1)


def _class_multisets(n, m, w, h, min_class):
    """Multisets of m bidegree classes (i, j) with sum i = w, sum j = h.

    Classes are produced in ascending (i, j) order starting at min_class;
    even-i classes are capped at their generator-space dimension.  Yields
    lists of ((i, j), count).
    """
    if m == 0:
        if w == 0 and h == 0:
            yield []
        return
    min_i, min_j = min_class
    for i in range(min_i, n):
        if i > w:
            break
        j_lo = min_j if i == min_i else -1
        # each remaining factor contributes at least -1 to h
        for j in range(j_lo, h + m):
            cap = m
            if i % 2 == 0:
                cap = min(cap, dim_generators(n, i, j))
            for count in range(1, cap + 1):
                if count * i > w:
                    break
                if h - count * j < -(m - count):
                    break
                # later classes all have (i', j') > (i, j), so i' >= i
                if w - count * i < (m - count) * i:
                    continue
                for rest in _class_multisets(n, m - count, w - count * i,
                                             h - count * j, (i, j + 1)):
                    yield [((i, j), count)] + rest


class BasisIndex:
    """Ordered basis of the chain space block (n; m, w, h)."""

    __slots__ = ("n", "m", "w", "h", "words", "index")

    def __init__(self, n, m, w, h, words):
        self.n = n
        self.m = m
        self.w = w
        self.h = h
        self.words = tuple(words)
        self.index = {word: i for i, word in enumerate(self.words)}

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def position(self, word):
        try:
            return self.index[word]
        except KeyError:
            raise KeyError("word %r lies outside the (m=%d, w=%d, h=%d) block"
                           % (word, self.m, self.w, self.h))


def enumerate_basis(n, m, w, h):
    """All canonical words of arity m and double weight (w, h) over R^n.

    A word is a multiset of generators with even-g-degree generators distinct
    and odd-g-degree generators free to repeat.  The result may be empty.
    """
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    words = []
    for classes in _class_multisets(n, m, w, h, (0, -1)):
        pools = []
        for (i, j), count in classes:
            gens = generators_of_bidegree(n, i, j)
            if i % 2 == 0:
                pools.append(list(combinations(gens, count)))
            else:
                pools.append(list(combinations_with_replacement(gens, count)))
        for pick in product(*pools):
            word = tuple(g for group in pick for g in group)
            words.append(word)
    words.sort(key=lambda word: tuple(factor_key(f) for f in word))
    return BasisIndex(n, m, w, h, words)


def max_arity_bound(n, w, h):
    """Hard upper bound on the arity of a nonzero (w, h) word.

    Factors split by bidegree class: (0,-1) constant fields (<= n distinct),
    (0,0) linear fields (<= n^2 distinct), i >= 1 (each eats >= 1 of w),
    (0, j>=1) (each eats >= 1 of the h-budget h + #(j=-1 factors)).
    """
    return n + n * n + w + max(0, h + n + w)


@lru_cache(maxsize=None)
def max_arity(n, w, h):
    """Largest m with a nonempty basis (0 if the whole block is trivial)."""
    best = 0
    for m in range(1, max_arity_bound(n, w, h) + 1):
        if len(enumerate_basis(n, m, w, h)):
            best = m
    return best


# --- coordinates and serialization ------------------------------------------


def chain_to_vector(c, basis):
    """Coordinates of a chain in a basis; raises on out-of-block words."""
    v = [Fraction(0)] * len(basis)
    for word, coeff in c.terms.items():
        v[basis.position(word)] = coeff
    return v


def vector_to_chain(v, basis):
    if len(v) != len(basis):
        raise ValueError("vector length %d != basis size %d" % (len(v), len(basis)))
    return Chain(basis.n, {basis.words[i]: Fraction(x) for i, x in enumerate(v) if x})


def _format_coeff(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)


def format_factor(gen):
    alpha, beta = gen
    return "x[%s] d[%s]" % (",".join(map(str, beta)), ",".join(map(str, alpha)))


def chain_to_text(c):
    """Canonical text serialization, one term per line."""
    lines = []
    for word, coeff in c.sorted_terms():
        lines.append("%s | %s" % (_format_coeff(coeff),
                                  " ; ".join(format_factor(f) for f in word)))
    return "\n".join(lines)


def parse_chain(n, text):
    """Inverse of chain_to_text; accepts any factor order and blank lines."""
    total = Chain.zero(n)
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        head, _, tail = line.partition("|")
        coeff = Fraction(head.strip())
        factors = []
        for part in tail.split(";"):
            c, beta, alpha = parse_monomial("1 * " + part.strip())
            factors.append((alpha, beta))
        total = total + Chain.from_word(n, factors, coeff)
    return total


def chain_to_struct(c):
    """Structured (JSON-ready) form: sorted list of {coeff, factors}."""
    return [
        {"coeff": _format_coeff(coeff),
         "factors": [{"beta": list(beta), "alpha": list(alpha)} for alpha, beta in word]}
        for word, coeff in c.sorted_terms()
    ]
