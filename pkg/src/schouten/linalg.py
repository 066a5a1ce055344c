"""Exact sparse linear algebra over the rationals.

Matrices store only nonzero Fraction entries.  Rank and kernel run through
the fraction-free integer echelon kernel (see kernels.py): each row is
scaled to integers first, which changes neither the rank nor the null
space.  Everything is deterministic.
"""

from fractions import Fraction
from math import lcm

from . import kernels


class SparseMatrixQ:
    """rows x cols rational matrix; entries maps (row, col) -> Fraction."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        clean = {}
        if entries:
            for (r, c), v in entries.items():
                v = Fraction(v)
                if v:
                    if not (0 <= r < rows and 0 <= c < cols):
                        raise IndexError("entry (%d, %d) outside %dx%d" % (r, c, rows, cols))
                    clean[(r, c)] = v
        self.entries = clean

    @classmethod
    def identity(cls, k):
        return cls(k, k, {(i, i): Fraction(1) for i in range(k)})

    def transpose(self):
        return SparseMatrixQ(self.cols, self.rows,
                             {(c, r): v for (r, c), v in self.entries.items()})

    def row_dicts(self):
        """Rows as integer dicts {col: int}, each row scaled by its lcm of
        denominators (preserves rank and null space)."""
        rows = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        out = []
        for row in rows:
            if not row:
                out.append({})
                continue
            scale = lcm(*[v.denominator for v in row.values()])
            out.append({c: int(v * scale) for c, v in row.items()})
        return out

    def mul_vector(self, v):
        out = [Fraction(0)] * self.rows
        for (r, c), a in self.entries.items():
            if v[c]:
                out[r] += a * v[c]
        return out

    def matmul(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch %dx%d @ %dx%d"
                             % (self.rows, self.cols, other.rows, other.cols))
        by_row = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        entries = {}
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, ()):
                key = (r, c)
                entries[key] = entries.get(key, 0) + a * b
        return SparseMatrixQ(self.rows, other.cols, entries)

    def is_zero(self):
        return not self.entries


def rank_exact(M, backend_echelon=None):
    """Rank over Q via fraction-free elimination; deterministic."""
    ech = backend_echelon or kernels.echelon
    pivots, _ = ech(M.row_dicts())
    return len(pivots)


def kernel_basis(M, backend_echelon=None):
    """A basis of the null space of M, one Fraction vector per free column."""
    ech = backend_echelon or kernels.echelon
    pivots, rows = ech(M.row_dicts())
    pivot_set = set(pivots)
    basis = []
    for free in range(M.cols):
        if free in pivot_set:
            continue
        x = {free: Fraction(1)}
        for i in reversed(range(len(rows))):
            pc = pivots[i]
            s = Fraction(0)
            for c, v in rows[i].items():
                if c != pc and c in x:
                    s += Fraction(v) * x[c]
            if s:
                x[pc] = -s / rows[i][pc]
        v = [Fraction(0)] * M.cols
        for c, val in x.items():
            v[c] = val
        basis.append(v)
    return basis
