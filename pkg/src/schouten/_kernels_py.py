"""Pure-Python compute kernels: fraction-free sparse integer row echelon
and single-factor placement in canonical wedge words.

Reference backend for the compiled kernel in _kernels_cy; both must produce
identical pivots and echelon rows.  Rows are dicts {col: nonzero int}.
Pivoting is deterministic: the pivot column is the globally smallest open
column; among rows starting there the one with fewest nonzeros wins, ties
broken by insertion order.  Every updated row is divided by its content
(gcd) with the leading sign normalized positive, so entries stay small.
"""

from math import gcd


def _normalize(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if g > 1:
        row = {c: v // g for c, v in row.items()}
        lead //= g
    if lead < 0:
        row = {c: -v for c, v in row.items()}
    return row


def echelon(rows):
    """Row echelon form of integer rows.

    Returns (pivot_cols, ech_rows): ech_rows[i] starts at column
    pivot_cols[i], pivot columns strictly increasing.  rank = len(pivot_cols).
    """
    work = [_normalize(dict(r)) for r in rows if r]
    pivots = []
    ech = []
    while work:
        col = min(min(r) for r in work)
        best = -1
        best_nnz = -1
        for idx, r in enumerate(work):
            if min(r) == col:
                nnz = len(r)
                if best < 0 or nnz < best_nnz:
                    best, best_nnz = idx, nnz
        piv = work.pop(best)
        pv = piv[col]
        nxt = []
        for r in work:
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


def _fkey(gen):
    alpha, beta = gen
    return (len(alpha), sum(beta), alpha, beta)


def place_factor(rest, i, gen):
    """Insert `gen` at slot i of the canonical word `rest`, re-canonicalizing.

    The factor bubbles left or right to its sorted position, accumulating
    -(-1)^{xy} per adjacent swap (x, y the g-degrees).  Returns (sign, word);
    sign 0 when a factor of even g-degree repeats.
    """
    x = len(gen[0]) - 1
    kg = _fkey(gen)
    sign = 1
    j = i
    while j > 0 and _fkey(rest[j - 1]) > kg:
        if (x * (len(rest[j - 1][0]) - 1)) % 2 == 0:
            sign = -sign
        j -= 1
    if j == i:
        while j < len(rest) and _fkey(rest[j]) < kg:
            if (x * (len(rest[j][0]) - 1)) % 2 == 0:
                sign = -sign
            j += 1
    if x % 2 == 0 and ((j > 0 and rest[j - 1] == gen) or (j < len(rest) and rest[j] == gen)):
        return 0, None
    return sign, rest[:j] + (gen,) + rest[j:]
