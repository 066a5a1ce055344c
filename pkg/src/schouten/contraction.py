"""Quasi-contraction machinery for 2-chains of double weight (w, w).

An arity-2 word pairs factors of bidegree classes X^{a1}_{b1} and
X^{a2}_{b2} with a1+a2 = b1+b2 = 2+w; the canonical factor order makes
(a1, b1) with a1 <= a2 (and b1 <= b2 on the diagonal a1 = a2) a well-defined
stratum label.  A word is type TR when |A1|+|B1| < |A2|+|B2|, or the sums tie
and |A1| <= |A2|; type TL otherwise -- equivalently TL iff a1+b1 > 2+w.

Operators (all block-preserving on (2, w, w)):

    phi_op(U)      = sum_l  d_l ^^ (x_l U)                  on 1-chains
    capital_phi(U) = sum_l  d_l ^^ F1 ^^ (x_l F2)   (TR)
                     sum_l  d_l ^^ (x_l F1) ^^ F2   (TL)    per canonical word
    psi(U)         = boundary(capital_phi(U)) + phi_op(boundary(U))

psi acts on each stratum by a known leading scalar (n+|B2| for TR, n+|B1|
for TL) plus a residual one stratum down (TR) or up (TL) plus a piece in the
(1, 0) stratum, where psi is exactly multiplication by n+w+1.  Chasing the
strata yields nonzero constants c_i with (psi+c_1)...(psi+c_m) U = 0; for a
cycle U this turns into an explicit primitive V with boundary(V) = U.
"""

from dataclasses import dataclass
from fractions import Fraction

from .chains import Chain, enumerate_basis, weight_signature
from .boundary import boundary
from .multivector import MultiVector


class DescentError(RuntimeError):
    """Stratum descent failed to terminate within its theoretical bound."""
    pass


class CertificateError(RuntimeError):
    pass


TR = "TR"
TL = "TL"


def classify_type(word):
    """TR/TL type of a canonical arity-2 word."""
    if len(word) != 2:
        raise ValueError("type is defined for arity-2 words, got arity %d" % len(word))
    (a1, b1), (a2, b2) = word
    s1 = len(a1) + sum(b1)
    s2 = len(a2) + sum(b2)
    if s1 < s2 or (s1 == s2 and len(a1) <= len(a2)):
        return TR
    return TL


def stratum_of(word):
    """(a1, b1) of the canonical representative of an arity-2 word."""
    if len(word) != 2:
        raise ValueError("strata are defined for arity-2 words")
    alpha1, beta1 = word[0]
    return (len(alpha1), sum(beta1))


@dataclass(frozen=True)
class PairStratum:
    """One lattice point (a1, b1) of the pair decomposition at weight w,
    labelling X^{a1}_{b1} ^^ X^{2+w-a1}_{2+w-b1}."""
    a1: int
    b1: int
    w: int

    def __post_init__(self):
        w = self.w
        if not 1 <= 2 * self.a1 <= 2 + w:
            raise ValueError("representative needs 1 <= a1 <= 1 + w/2, got a1=%d, w=%d"
                             % (self.a1, w))
        if not 0 <= self.b1 <= 2 + w:
            raise ValueError("b1=%d outside 0..%d" % (self.b1, 2 + w))
        if 2 * self.a1 == 2 + w and 2 * self.b1 > 2 + w:
            raise ValueError("mirrored duplicate (a1=%d, b1=%d) is not a representative"
                             % (self.a1, self.b1))

    @property
    def is_tl(self):
        return self.a1 + self.b1 > 2 + self.w


class Stratification:
    """Bookkeeping of the stratum lattice at weight w: TL diagonals T^l,
    TR diagonals T^(p), and the horizontal layers of the rectangle."""

    def __init__(self, w):
        self.w = w
        self.omega = w // 2
        self.omega_e = self.omega + 1 if w % 2 else self.omega

    def all_strata(self):
        out = []
        for a1 in range(1, (2 + self.w) // 2 + 1):
            bmax = 2 + self.w
            if 2 * a1 == 2 + self.w:
                bmax = (2 + self.w) // 2
            for b1 in range(0, bmax + 1):
                out.append(PairStratum(a1, b1, self.w))
        return out

    def tl_strata(self):
        return [s for s in self.all_strata() if s.is_tl]

    def tr_strata(self):
        return [s for s in self.all_strata() if not s.is_tl]

    def tl_diagonal(self, l):
        """T^l: TL strata with a1 + b1 = l + 2 + w."""
        return [s for s in self.tl_strata() if s.a1 + s.b1 == l + 2 + self.w]

    def tr_diagonal(self, p):
        """T^(p): TR strata with a1 + b1 = p."""
        return [s for s in self.tr_strata() if s.a1 + s.b1 == p]

    def layer(self, b):
        """L_b: rectangle strata at height b (a1 <= omega+1, b <= 1+omega_e)."""
        return [s for s in self.tr_strata()
                if s.b1 == b and b <= 1 + self.omega_e and s.a1 <= self.omega + 1]

    def roof(self):
        """TR strata above the rectangle (b1 > 1 + omega_e)."""
        return [s for s in self.tr_strata() if s.b1 > 1 + self.omega_e]


def _check_block(U, w):
    for word in U.terms:
        sig = weight_signature(word)
        if sig != (2, w, w):
            raise ValueError("term signature %r outside the (2, %d, %d) block" % (sig, w, w))


def decompose_by_stratum(U):
    """Split an arity-2 chain into its stratum components."""
    parts = {}
    for word, c in U.terms.items():
        key = stratum_of(word)
        parts.setdefault(key, {})[word] = c
    return {key: Chain(U.n, terms) for key, terms in parts.items()}


def project_stratum(U, stratum):
    """The sub-chain of words whose representative lies in the stratum."""
    key = (stratum.a1, stratum.b1)
    return Chain(U.n, {word: c for word, c in U.terms.items() if stratum_of(word) == key})


def _coordinate_gen(n, l):
    return ((l,), (0,) * n)


def _scale_gen(gen, l):
    alpha, beta = gen
    nb = list(beta)
    nb[l - 1] += 1
    return (alpha, tuple(nb))


def phi_op(U):
    """sum_l d_l ^^ (x_l U) for a 1-chain U."""
    n = U.n
    if U.arity() not in (None, 1):
        raise ValueError("phi_op expects a 1-chain")
    terms = {}
    for word, c in U.terms.items():
        gen = word[0]
        for l in range(1, n + 1):
            ch = Chain.from_word(n, [_coordinate_gen(n, l), _scale_gen(gen, l)], c)
            for wrd, cc in ch.terms.items():
                terms[wrd] = terms.get(wrd, 0) + cc
    return Chain(n, terms)


def capital_phi(U):
    """The 3-chain operator, applied per canonical word by TR/TL type."""
    n = U.n
    if U.arity() not in (None, 2):
        raise ValueError("capital_phi expects a 2-chain")
    terms = {}
    for word, c in U.terms.items():
        f1, f2 = word
        tr = classify_type(word) == TR
        for l in range(1, n + 1):
            if tr:
                raw = [_coordinate_gen(n, l), f1, _scale_gen(f2, l)]
            else:
                raw = [_coordinate_gen(n, l), _scale_gen(f1, l), f2]
            ch = Chain.from_word(n, raw, c)
            for wrd, cc in ch.terms.items():
                terms[wrd] = terms.get(wrd, 0) + cc
    return Chain(n, terms)


def psi(U):
    """boundary(capital_phi(U)) + phi_op(boundary(U)); block-preserving."""
    out = boundary(capital_phi(U)) + phi_op(boundary(U))
    if out:
        w = weight_signature(next(iter(U.terms)))[1] if U else None
        for word in out.terms:
            if weight_signature(word) != (2, w, w):
                raise RuntimeError("psi left the (2, %d, %d) block" % (w, w))
    return out


def _psi_pow(U, k):
    for _ in range(k):
        U = psi(U)
    return U


def leading_scalar(n, w, word):
    """The scalar multiple of the word itself inside psi(word):
    n + |B2| for TR, n + |B1| for TL."""
    (a1, b1), (a2, b2) = word
    if classify_type(word) == TR:
        return n + sum(b2)
    return n + sum(b1)


def structured_descent(U):
    """Nonzero constants c_1..c_m with (psi+c_1)...(psi+c_m) U = 0.

    Follows the stratum flow: ascend the TL diagonals, clear the TR roof
    diagonal by diagonal, walk the rectangle layers down, then remember the
    (1, 0) contribution and kill it with its eigenvalue n+w+1.  The composite
    is verified step by step; exceeding the theoretical step bound aborts.
    """
    if not U:
        return []
    n = U.n
    w = weight_signature(next(iter(U.terms)))[1]
    _check_block(U, w)
    strat = Stratification(w)
    bound = 2 * len(strat.all_strata()) + 4
    cs = []
    cur = U
    while cur:
        if len(cs) >= bound:
            raise DescentError("descent exceeded %d steps; stratum flow is broken" % bound)
        parts = decompose_by_stratum(cur)
        tl = [key for key in parts if key[0] + key[1] > 2 + w]
        if tl:
            # lowest occupied TL diagonal, then its lowest a1
            diag = min(a1 + b1 - 2 - w for a1, b1 in tl)
            s = min(a1 for a1, b1 in tl if a1 + b1 - 2 - w == diag)
            c = -(n + w + 2 + diag - s)
        else:
            roof = [key for key in parts if key[1] > 1 + strat.omega_e]
            if roof:
                # highest occupied TR diagonal, then its highest a1
                p = max(a1 + b1 for a1, b1 in parts)
                s = max(a1 for a1, b1 in parts if a1 + b1 == p)
                c = -(n + 2 + w - p + s)
            else:
                bmax = max(b1 for a1, b1 in parts)
                if bmax >= 1:
                    c = -(n + w + 2 - bmax)
                elif any(key != (1, 0) for key in parts):
                    c = -(n + w + 2)
                else:
                    c = -(n + w + 1)
        cs.append(c)
        cur = psi(cur) + c * cur
    return cs


def _krylov_minimal_polynomial(U, operator):
    """Minimal monic annihilator of U under the operator, via the Krylov
    sequence U, TU, T^2 U, ...; coefficients ascending, [1] for U = 0."""
    if not U:
        return [Fraction(1)]
    pivots = []  # (pivot_word, reduced_chain, combo list)
    vec = U
    combo = [Fraction(1)]
    while True:
        red = vec
        rep = list(combo)
        for pword, pchain, pcombo in pivots:
            coeff = red.terms.get(pword)
            if coeff:
                factor = coeff / pchain.terms[pword]
                red = red - factor * pchain
                for i, x in enumerate(pcombo):
                    rep[i] -= factor * x
        if not red:
            # rep gives sum rep_k T^k U = 0 with rep[-1] = 1 (monic)
            return rep
        pivots.append((next(iter(red.terms)), red, rep))
        vec = operator(vec)
        combo = [Fraction(0)] + combo
        # pad earlier combos to the new length
        pivots = [(pw, pc, co + [Fraction(0)] * (len(combo) - len(co)))
                  for pw, pc, co in pivots]


def annihilating_polynomial(U):
    """Minimal monic p with p(psi) U = 0 and p(0) != 0, ascending coeffs.

    The nonzero constant term is guaranteed because p divides the structured
    descent product, whose roots are all nonzero; a zero constant term aborts.
    """
    p = _krylov_minimal_polynomial(U, psi)
    if len(p) > 1 and p[0] == 0:
        raise CertificateError("annihilator has zero constant term")
    return p


@dataclass(frozen=True)
class ExactnessCertificate:
    """A cycle U, a primitive V with boundary(V) = U, and the annihilating
    polynomial data p(t) = p(0) + t*g(t) behind the construction."""
    n: int
    w: int
    cycle: Chain
    primitive: Chain
    annihilator: tuple  # Fraction coefficients, constant first
    quotient: tuple     # g(t) coefficients, constant first


def certify_exact(U):
    """Constructive exactness of a 2-cycle in a (w, w) block.

    On cycles psi coincides with boundary . capital_phi, so with
    p(t) = p0 + t g(t) annihilating U the chain
    V = -(1/p0) capital_phi(g(boundary . capital_phi)(U)) has boundary V = U.
    The identity is re-verified exactly before the certificate is emitted.
    """
    n = U.n
    if not U:
        return ExactnessCertificate(n, 0, U, Chain.zero(n), (Fraction(1),), ())
    w = weight_signature(next(iter(U.terms)))[1]
    _check_block(U, w)
    dU = boundary(U)
    if dU:
        raise CertificateError("input is not a cycle; boundary has %d terms" % len(dU.terms))
    p = annihilating_polynomial(U)
    p0 = p[0]
    g = p[1:]
    # W = g(boundary . capital_phi)(U)
    acc = Chain.zero(n)
    power = U
    for k, coeff in enumerate(g):
        if k > 0:
            power = boundary(capital_phi(power))
        if coeff:
            acc = acc + coeff * power
    V = (Fraction(-1) / p0) * capital_phi(acc)
    if boundary(V) != U:
        raise CertificateError("primitive verification failed")
    return ExactnessCertificate(n, w, U, V, tuple(p), tuple(g))


def certificate_to_dict(cert):
    """JSON-ready certificate: block, both chains, p coefficients
    (constant first)."""
    from .chains import chain_to_text

    def frac(x):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)

    return {
        "block": [cert.n, cert.w],
        "U": chain_to_text(cert.cycle).splitlines(),
        "V": chain_to_text(cert.primitive).splitlines(),
        "p": [frac(c) for c in cert.annihilator],
    }


def certificate_from_dict(data):
    from .chains import parse_chain
    n, w = data["block"]
    U = parse_chain(n, "\n".join(data["U"]))
    V = parse_chain(n, "\n".join(data["V"]))
    p = tuple(Fraction(c) for c in data["p"])
    return ExactnessCertificate(n, w, U, V, p, p[1:])


def check_certificate(cert):
    """Independent re-verification: boundary(primitive) == cycle, exactly.

    Trusts nothing from the producer beyond the chains themselves.
    """
    return boundary(cert.primitive) == cert.cycle


def verify_psi_structure(n, w):
    """Check psi's per-word leading scalar and residual strata on the full
    basis of the (2, w, w) block.

    For every canonical basis word: psi(word) - scalar*word must live in the
    predicted strata -- (a1, b1-1) for TR, (a1, b1+1) for TL, plus (1, 0).
    Returns a report dict; violations land in report['violations'].
    """
    strat = Stratification(w)
    basis = enumerate_basis(n, 2, w, w)
    violations = []
    checked = 0
    for word in basis.words:
        a1, b1 = stratum_of(word)
        typ = classify_type(word)
        scalar = leading_scalar(n, w, word)
        resid = psi(Chain(n, {word: Fraction(1)})) - scalar * Chain(n, {word: Fraction(1)})
        target = (a1, b1 - 1) if typ == TR else (a1, b1 + 1)
        allowed = {target, (1, 0)}
        bad = {key for key in decompose_by_stratum(resid) if key not in allowed}
        if bad:
            violations.append({"word": word, "type": typ, "scalar": scalar,
                               "stray_strata": sorted(bad)})
        checked += 1
    return {
        "n": n,
        "w": w,
        "dim": len(basis),
        "checked": checked,
        "tl_vacuous": not strat.tl_strata(),
        "violations": violations,
    }
