"""Benchmark the compiled kernels against their pure-Python twins.

Two hot paths: the fraction-free integer echelon (rank / kernel) and the
single-factor placement inside boundary assembly.  Results are printed as a
small table; run with  python3 benchmarks/bench_kernels.py
"""

import time

from schouten import kernels
from schouten.boundary import _boundary_word
from schouten.chains import enumerate_basis
from schouten.boundary import boundary_matrix
import schouten.boundary as boundary_mod


def timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return time.perf_counter() - t0, out


def bench_echelon():
    print("echelon (fraction-free integer row reduction)")
    for (n, m, w, h) in [(2, 3, 1, 1), (3, 3, 0, 0), (3, 3, 1, 1)]:
        M = boundary_matrix(n, m, w, h).matrix
        rows = M.row_dicts()
        t_c, out_c = timed(kernels.echelon, [dict(r) for r in rows])
        t_p, out_p = timed(kernels.echelon_pure, [dict(r) for r in rows])
        assert out_c == out_p
        print("  block (n=%d, m=%d, w=%d, h=%d)  %4dx%-4d  compiled %.4fs  "
              "pure %.4fs  speedup %.1fx"
              % (n, m, w, h, M.rows, M.cols, t_c, t_p, t_p / t_c if t_c else 0))


def bench_boundary():
    print("boundary assembly (single-factor placement hot path)")
    for (n, m, w, h) in [(3, 3, 1, 1), (3, 4, 0, 0)]:
        basis = enumerate_basis(n, m, w, h)

        def assemble():
            _boundary_word.cache_clear()
            for word in basis.words:
                _boundary_word(n, word)

        boundary_mod.place_factor = kernels.place_factor
        t_c, _ = timed(assemble)
        boundary_mod.place_factor = kernels.place_factor_pure
        t_p, _ = timed(assemble)
        boundary_mod.place_factor = kernels.place_factor
        _boundary_word.cache_clear()
        print("  block (n=%d, m=%d, w=%d, h=%d)  %6d words  compiled %.3fs  "
              "pure %.3fs  speedup %.1fx"
              % (n, m, w, h, len(basis), t_c, t_p, t_p / t_c if t_c else 0))


if __name__ == "__main__":
    print("selected backend: %s" % kernels.BACKEND)
    bench_echelon()
    bench_boundary()
