"""Betti numbers, Euler characteristics and the Poisson predicate.

Homology of the double-weighted chain complex is computed blockwise: for a
block (n; m, w, h), betti = dim C_m - rank(d: C_m -> C_{m-1})
- rank(d: C_{m+1} -> C_m).  Coefficients are rationals, so ranks are exact
and the reported Betti numbers are dimensions over Q.
"""

from dataclasses import dataclass

from .chains import Chain, enumerate_basis, max_arity, max_arity_bound
from .boundary import boundary, boundary_matrix
from .linalg import rank_exact
from .multivector import schouten_bracket


@dataclass(frozen=True)
class HomologyReport:
    n: int
    m: int
    w: int
    h: int
    dim: int
    dim_lower: int
    dim_upper: int
    rank_out: int  # rank of d: C_m -> C_{m-1}
    rank_in: int   # rank of d: C_{m+1} -> C_m
    betti: int

    def csv_row(self):
        return "%d,%d,%d,%d,%d,%d,%d,%d" % (
            self.n, self.m, self.w, self.h, self.dim, self.rank_out, self.rank_in, self.betti)

    CSV_HEADER = "n,m,w,h,dim,rank_out,rank_in,betti"


def betti(n, m, w, h):
    """Full homology report of the block (n; m, w, h)."""
    basis_m = enumerate_basis(n, m, w, h)
    basis_lo = enumerate_basis(n, m - 1, w, h) if m >= 2 else None
    basis_hi = enumerate_basis(n, m + 1, w, h)
    if m >= 2 and len(basis_m) and len(basis_lo):
        rank_out = rank_exact(boundary_matrix(n, m, w, h, basis_m, basis_lo).matrix)
    else:
        rank_out = 0
    if len(basis_hi) and len(basis_m):
        rank_in = rank_exact(boundary_matrix(n, m + 1, w, h, basis_hi, basis_m).matrix)
    else:
        rank_in = 0
    b = len(basis_m) - rank_out - rank_in
    assert b >= 0
    return HomologyReport(n, m, w, h, len(basis_m),
                          len(basis_lo) if basis_lo is not None else 0,
                          len(basis_hi), rank_out, rank_in, b)


def dims_table(n, w, h):
    """dim C_m^{(w,h)} for m = 1..max_arity; asserts emptiness beyond."""
    mm = max_arity(n, w, h)
    for m in range(mm + 1, max_arity_bound(n, w, h) + 1):
        assert len(enumerate_basis(n, m, w, h)) == 0, "nonempty basis beyond max arity"
    return [len(enumerate_basis(n, m, w, h)) for m in range(1, mm + 1)]


def euler_characteristic(n, w, h):
    """sum_m (-1)^m dim C_m^{(w,h)} over the complete finite m-range.

    The m = 0 term is the scalars: a 1-dimensional space living in the
    (0, 0) block and absent from every other block.  Without it the
    alternating sum of the (0, 0) block would come out -1 instead of 0.
    """
    dims = dims_table(n, w, h)
    dim0 = 1 if (w, h) == (0, 0) else 0
    return dim0 + sum((-1) ** m * d for m, d in enumerate(dims, start=1))


def is_poisson(pi):
    """True iff the bivector pi satisfies [pi, pi] = 0.

    The polynomial coefficients may be inhomogeneous; only the multivector
    degree must be 2 throughout.
    """
    if pi.is_zero():
        return True
    if any(len(alpha) != 2 for alpha, _ in pi.terms):
        raise ValueError("is_poisson expects a bivector (multivector degree 2)")
    return schouten_bracket(pi, pi).is_zero()
