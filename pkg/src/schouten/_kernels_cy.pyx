# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of _kernels_py: fraction-free sparse integer row echelon.

Arithmetic stays on arbitrary-precision Python ints (entries can outgrow any
machine word); the win over the pure backend is compiled dispatch in the
inner update loops.  Pivot choice and output must match _kernels_py exactly.
"""

from math import gcd


cdef inline tuple _fkey(tuple gen):
    cdef tuple alpha = <tuple> gen[0]
    cdef tuple beta = <tuple> gen[1]
    cdef Py_ssize_t s = 0
    cdef object b
    for b in beta:
        s += <Py_ssize_t> b
    return (len(alpha), s, alpha, beta)


def place_factor(tuple rest, Py_ssize_t i, tuple gen):
    """Compiled twin of chains.place_factor: insert one factor into a
    canonical word, accumulating the -(-1)^{xy} swap signs."""
    cdef Py_ssize_t x = len(<tuple> gen[0]) - 1
    cdef tuple kg = _fkey(gen)
    cdef int sign = 1
    cdef Py_ssize_t j = i
    cdef Py_ssize_t nrest = len(rest)
    cdef tuple f
    while j > 0:
        f = <tuple> rest[j - 1]
        if _fkey(f) <= kg:
            break
        if (x * (len(<tuple> f[0]) - 1)) % 2 == 0:
            sign = -sign
        j -= 1
    if j == i:
        while j < nrest:
            f = <tuple> rest[j]
            if _fkey(f) >= kg:
                break
            if (x * (len(<tuple> f[0]) - 1)) % 2 == 0:
                sign = -sign
            j += 1
    if x % 2 == 0 and ((j > 0 and rest[j - 1] == gen) or (j < nrest and rest[j] == gen)):
        return 0, None
    return sign, rest[:j] + (gen,) + rest[j:]


cdef dict _normalize(dict row):
    cdef object g = 0
    cdef object v, lead
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if g > 1:
        row = {c: v // g for c, v in row.items()}
        lead = lead // g
    if lead < 0:
        row = {c: -v for c, v in row.items()}
    return row


def echelon(rows):
    """Row echelon form of integer rows; see _kernels_py.echelon."""
    cdef list work = [_normalize(dict(r)) for r in rows if r]
    cdef list pivots = []
    cdef list ech = []
    cdef list nxt
    cdef dict r, piv, out
    cdef object col, pv, rv, v, nv, c
    cdef Py_ssize_t idx, best, best_nnz, nnz
    while work:
        col = min(min(r) for r in work)
        best = -1
        best_nnz = -1
        for idx in range(len(work)):
            r = <dict> work[idx]
            if min(r) == col:
                nnz = len(r)
                if best < 0 or nnz < best_nnz:
                    best = idx
                    best_nnz = nnz
        piv = <dict> work.pop(best)
        pv = piv[col]
        nxt = []
        for idx in range(len(work)):
            r = <dict> work[idx]
            rv = r.get(col)
            if rv is None:
                nxt.append(r)
                continue
            out = {}
            for c, v in r.items():
                if c != col:
                    out[c] = v * pv
            for c, v in piv.items():
                if c == col:
                    continue
                nv = out.get(c, 0) - v * rv
                if nv:
                    out[c] = nv
                elif c in out:
                    del out[c]
            if out:
                nxt.append(_normalize(out))
        work = nxt
        pivots.append(col)
        ech.append(piv)
    return pivots, ech
