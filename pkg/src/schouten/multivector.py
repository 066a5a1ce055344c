"""Polynomial-coefficient multivector fields on R^n with exact rational
coefficients: wedge product, Schouten bracket, bidegrees.

A monomial generator is x^beta d_alpha where beta is a tuple of n exponents
and alpha a strictly increasing tuple of directions in 1..n.  Its g-bidegree
is (|alpha|-1, |beta|-1); the first component drives all Koszul signs.

Text form of one monomial (bit-exact, used by the CLI and serialization):
    c * x[b1,...,bn] d[a1,...,am]      with c printed as p or p/q
e.g. ``-3/2 * x[1,1] d[1,2]`` is -(3/2) x1 x2 d1^d2.
"""

from fractions import Fraction
from functools import lru_cache
import re


class DimensionMismatchError(ValueError):
    pass


class MixedDegreeError(ValueError):
    """Raised when an operation needs a bihomogeneous multivector."""
    pass


def check_generator(n, alpha, beta):
    if len(beta) != n:
        raise DimensionMismatchError("beta has length %d, ambient dimension is %d" % (len(beta), n))
    if any(b < 0 for b in beta):
        raise ValueError("negative exponent in %r" % (beta,))
    if not alpha:
        raise ValueError("empty direction set")
    if any(not 1 <= a <= n for a in alpha):
        raise ValueError("direction out of range 1..%d in %r" % (n, alpha))
    if any(alpha[i] >= alpha[i + 1] for i in range(len(alpha) - 1)):
        raise ValueError("directions not strictly increasing: %r" % (alpha,))


def g_degree(gen):
    """Super degree |alpha| - 1 of a generator (alpha, beta)."""
    return len(gen[0]) - 1


class MultiVector:
    """Normalized rational combination of monomial generators.

    terms maps (alpha, beta) -> nonzero Fraction.  The zero multivector is
    the empty dict.  Instances are treated as immutable.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        clean = {}
        if terms:
            for (alpha, beta), c in terms.items():
                c = Fraction(c)
                if c:
                    check_generator(n, alpha, beta)
                    clean[(tuple(alpha), tuple(beta))] = c
        self.terms = clean

    @classmethod
    def monomial(cls, n, coeff, beta, alpha):
        return cls(n, {(tuple(alpha), tuple(beta)): Fraction(coeff)})

    @classmethod
    def coordinate_field(cls, n, l):
        """The constant vector field d_l."""
        return cls.monomial(n, 1, (0,) * n, (l,))

    @classmethod
    def zero(cls, n):
        return cls(n)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, MultiVector) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def _check(self, other):
        if self.n != other.n:
            raise DimensionMismatchError("mixing n=%d with n=%d" % (self.n, other.n))

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return MultiVector(self.n, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return MultiVector(self.n, {k: -c for k, c in self.terms.items()})

    def __mul__(self, scalar):
        return MultiVector(self.n, {k: c * scalar for k, c in self.terms.items()})

    __rmul__ = __mul__

    def sorted_terms(self):
        """Terms in the canonical order: lexicographic on (alpha, beta)."""
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def __repr__(self):
        if not self.terms:
            return "MultiVector(%d, 0)" % self.n
        return "MultiVector(%d, %s)" % (self.n, " + ".join(
            format_monomial(c, beta, alpha) for (alpha, beta), c in self.sorted_terms()))


def format_monomial(coeff, beta, alpha):
    c = Fraction(coeff)
    cs = str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)
    return "%s * x[%s] d[%s]" % (cs, ",".join(map(str, beta)), ",".join(map(str, alpha)))


_MONO_RE = re.compile(
    r"^\s*(-?\d+(?:/\d+)?)\s*\*\s*x\[([0-9,]*)\]\s*d\[([0-9,]+)\]\s*$")


def parse_monomial(text):
    """Parse the monomial text form; returns (coeff, beta, alpha)."""
    m = _MONO_RE.match(text)
    if m is None:
        raise ValueError("malformed monomial: %r" % text)
    coeff = Fraction(m.group(1))
    beta = tuple(int(t) for t in m.group(2).split(",")) if m.group(2) else ()
    alpha = tuple(int(t) for t in m.group(3).split(","))
    return coeff, beta, alpha


def _merge_directions(a1, a2):
    """Merge two strictly increasing direction tuples.

    Returns (sign, merged) with sign the parity of the interleaving
    permutation, or None when the tuples intersect.
    """
    if set(a1) & set(a2):
        return None
    merged = []
    i = j = 0
    sign = 1
    while i < len(a1) and j < len(a2):
        if a1[i] < a2[j]:
            merged.append(a1[i])
            i += 1
        else:
            # a2[j] jumps over the remaining len(a1)-i entries of a1
            if (len(a1) - i) % 2:
                sign = -sign
            merged.append(a2[j])
            j += 1
    merged.extend(a1[i:])
    merged.extend(a2[j:])
    return sign, tuple(merged)


def _wedge_mono(gen1, gen2):
    """Wedge of unit monomials; returns (sign, (alpha, beta)) or None."""
    res = _merge_directions(gen1[0], gen2[0])
    if res is None:
        return None
    sign, alpha = res
    beta = tuple(b1 + b2 for b1, b2 in zip(gen1[1], gen2[1]))
    return sign, (alpha, beta)


def wedge_mv(A, B):
    """Interior wedge product of multivector fields, extended bilinearly."""
    A._check(B)
    terms = {}
    for (aA, bA), cA in A.terms.items():
        for (aB, bB), cB in B.terms.items():
            res = _wedge_mono((aA, bA), (aB, bB))
            if res is None:
                continue
            sign, key = res
            terms[key] = terms.get(key, 0) + sign * cA * cB
    return MultiVector(A.n, terms)


@lru_cache(maxsize=None)
def _bracket_mono(n, alpha_a, beta_a, alpha_b, beta_b):
    """Schouten bracket of two unit monomials, as ((alpha, beta), int) pairs.

    Characterized by: Lie bracket on vector-field pairs, Lie derivative on
    polynomial factors, graded Leibniz in the second slot and graded
    antisymmetry.  All structure constants are integers.
    """
    p, q = len(alpha_a), len(alpha_b)
    if p == 1 and q == 1:
        i, j = alpha_a[0], alpha_b[0]
        out = {}
        # x^ba d_i(x^bb) d_j  -  x^bb d_j(x^ba) d_i
        if beta_b[i - 1] > 0:
            beta = list(beta_b)
            beta[i - 1] -= 1
            key = ((j,), tuple(x + y for x, y in zip(beta_a, beta)))
            out[key] = out.get(key, 0) + beta_b[i - 1]
        if beta_a[j - 1] > 0:
            beta = list(beta_a)
            beta[j - 1] -= 1
            key = ((i,), tuple(x + y for x, y in zip(beta, beta_b)))
            out[key] = out.get(key, 0) - beta_a[j - 1]
        return tuple((k, c) for k, c in out.items() if c)
    if q > 1:
        # B = B1 ^ B2 with B1 = x^bb d_{first}, B2 of unit coefficient:
        # [A, B1^B2] = [A,B1]^B2 + (-1)^{(p-1)|B1|} B1^[A,B2]
        zero = (0,) * n
        b1 = (alpha_b[:1], beta_b)
        b2_alpha = alpha_b[1:]
        out = {}
        for key, c in _bracket_mono(n, alpha_a, beta_a, b1[0], b1[1]):
            res = _wedge_mono(key, (b2_alpha, zero))
            if res is not None:
                sign, k = res
                out[k] = out.get(k, 0) + sign * c
        s = -1 if (p - 1) % 2 else 1
        for key, c in _bracket_mono(n, alpha_a, beta_a, b2_alpha, zero):
            res = _wedge_mono(b1, key)
            if res is not None:
                sign, k = res
                out[k] = out.get(k, 0) + s * sign * c
        return tuple((k, c) for k, c in out.items() if c)
    # q == 1 < p: graded antisymmetry [A,B] = (-1)^{1+(p-1)(q-1)} [B,A];
    # here q-1 = 0 so the sign is -1.
    return tuple((k, -c) for k, c in _bracket_mono(n, alpha_b, beta_b, alpha_a, beta_a))


def schouten_bracket(A, B):
    """Schouten bracket, extended bilinearly over monomial terms."""
    A._check(B)
    terms = {}
    for (aA, bA), cA in A.terms.items():
        for (aB, bB), cB in B.terms.items():
            for key, c in _bracket_mono(A.n, aA, bA, aB, bB):
                terms[key] = terms.get(key, 0) + c * cA * cB
    return MultiVector(A.n, terms)


def bidegree(A):
    """The g-bidegree (|alpha|-1, |beta|-1) of a bihomogeneous multivector."""
    if not A.terms:
        raise ValueError("the zero multivector has no bidegree")
    degs = {(len(alpha) - 1, sum(beta) - 1) for (alpha, beta) in A.terms}
    if len(degs) > 1:
        raise MixedDegreeError("mixed bidegrees %s; split into homogeneous parts" % sorted(degs))
    return degs.pop()


def scale_by_coordinate(l, A):
    """Multiply by the coordinate x_l: every beta gets +1 in slot l."""
    if not 1 <= l <= A.n:
        raise ValueError("coordinate index %d out of range 1..%d" % (l, A.n))
    terms = {}
    for (alpha, beta), c in A.terms.items():
        nb = list(beta)
        nb[l - 1] += 1
        terms[(alpha, tuple(nb))] = c
    return MultiVector(A.n, terms)
