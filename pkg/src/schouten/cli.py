"""Command line frontend.

Subcommands: dims | betti | euler | verify | certify | check-certificate |
basis | psi-matrix.  Output goes to stdout or, with --output, is written
atomically (temp file + rename) so a failing run never leaves a partial
file.  The structured format is JSON and is the stable surface; csv is
stable per command; plain is for humans and may change.

Exit codes: 0 success, 1 a guaranteed-zero came out nonzero / input is not
a cycle / verification failed, 2 malformed input.  Randomized suites take
--seed (default 7) and record it in the output.  SCHOUTEN_THREADS caps the
worker pool of the verify command.
"""

import argparse
import json
import os
import random
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .chains import (
    Chain,
    chain_to_text,
    enumerate_basis,
    chain_to_vector,
    format_factor,
    parse_chain,
    weight_signature,
)
from .boundary import boundary, boundary_matrix, matrix_to_text
from .homology import HomologyReport, betti, dims_table, euler_characteristic
from .linalg import SparseMatrixQ
from .multivector import MultiVector, g_degree, schouten_bracket
from .contraction import (
    CertificateError,
    certificate_from_dict,
    certificate_to_dict,
    certify_exact,
    check_certificate,
    psi,
    verify_psi_structure,
)
from .kernels import BACKEND


def worker_cap():
    """Worker count from SCHOUTEN_THREADS, default 1, clamped to >= 1."""
    try:
        return max(1, int(os.environ.get("SCHOUTEN_THREADS", "1")))
    except ValueError:
        return 1


def _emit(text, output):
    if output is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    d = os.path.dirname(os.path.abspath(output))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".schouten-")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
            if not text.endswith("\n"):
                f.write("\n")
        os.replace(tmp, output)
    except BaseException:
        os.unlink(tmp)
        raise


def _json(obj):
    return json.dumps(obj, indent=2, sort_keys=True)


# --- dims / betti / euler ---------------------------------------------------


def cmd_dims(args):
    dims = dims_table(args.n, args.w, args.h)
    if args.format == "structured":
        text = _json({"command": "dims", "n": args.n, "w": args.w, "h": args.h,
                      "dims": [{"m": m, "dim": d} for m, d in enumerate(dims, start=1)]})
    elif args.format == "csv":
        text = "\n".join(["m,dim"] + ["%d,%d" % (m, d) for m, d in enumerate(dims, start=1)])
    else:
        head = "dim C_m for n=%d, weight (%d, %d)" % (args.n, args.w, args.h)
        body = ["  m=%d  dim=%d" % (m, d) for m, d in enumerate(dims, start=1)]
        text = "\n".join([head] + (body or ["  (all blocks empty)"]))
    _emit(text, args.output)
    return 0


def _guaranteed_zero(n, m, w, h):
    """Blocks whose vanishing homology is a published result: the first
    Betti number, every w != h block, and the second Betti number of the
    (w, w) blocks."""
    return m == 1 or w != h or m == 2


def cmd_betti(args):
    rep = betti(args.n, args.m, args.w, args.h)
    if args.format == "structured":
        text = _json({"command": "betti", "n": rep.n, "m": rep.m, "w": rep.w, "h": rep.h,
                      "dim": rep.dim, "rank_out": rep.rank_out, "rank_in": rep.rank_in,
                      "betti": rep.betti})
    elif args.format == "csv":
        text = HomologyReport.CSV_HEADER + "\n" + rep.csv_row()
    else:
        text = ("block (n=%d, m=%d, w=%d, h=%d): dim=%d rank_out=%d rank_in=%d betti=%d"
                % (rep.n, rep.m, rep.w, rep.h, rep.dim, rep.rank_out, rep.rank_in, rep.betti))
    _emit(text, args.output)
    if rep.betti != 0 and _guaranteed_zero(args.n, args.m, args.w, args.h):
        return 1
    return 0


def cmd_euler(args):
    chi = euler_characteristic(args.n, args.w, args.h)
    if args.format == "structured":
        text = _json({"command": "euler", "n": args.n, "w": args.w, "h": args.h, "euler": chi})
    elif args.format == "csv":
        text = "n,w,h,euler\n%d,%d,%d,%d" % (args.n, args.w, args.h, chi)
    else:
        text = "euler characteristic (n=%d, w=%d, h=%d) = %d" % (args.n, args.w, args.h, chi)
    _emit(text, args.output)
    return 0 if chi == 0 else 1


# --- verify -----------------------------------------------------------------


def _random_generator(rng, n, max_beta):
    alpha = tuple(sorted(rng.sample(range(1, n + 1), rng.randint(1, n))))
    beta = [0] * n
    for _ in range(rng.randint(0, max_beta)):
        beta[rng.randrange(n)] += 1
    return alpha, tuple(beta)


def _verify_dsq(args):
    """boundary(boundary(word)) = 0 for every basis word of the block."""
    n, w, h = args.n, args.w, args.h
    from .chains import max_arity
    failures = []
    checked = 0
    blocks = []
    for m in range(2, max_arity(n, w, h) + 1):
        blocks.append((m, enumerate_basis(n, m, w, h)))

    def run_block(item):
        m, basis = item
        bad = []
        for word in basis.words:
            sq = boundary(boundary(Chain(n, {word: Fraction(1)})))
            if sq:
                bad.append(word)
        return m, len(basis), bad

    with ThreadPoolExecutor(max_workers=worker_cap()) as pool:
        for m, size, bad in pool.map(run_block, blocks):
            checked += size
            for word in bad:
                failures.append({"m": m, "word": [format_factor(f) for f in word]})
    return {"suite": "dsq", "n": n, "w": w, "h": h,
            "checked": checked, "failures": failures}


def _verify_jacobi(args):
    """Graded antisymmetry and the super Jacobi identity on random
    homogeneous monomials."""
    rng = random.Random(args.seed)
    n = args.n
    failures = []
    checked = 0
    for _ in range(200):
        A, B, C = (MultiVector(n, {_random_generator(rng, n, 4): Fraction(rng.randint(-3, 3) or 1)})
                   for _ in range(3))
        x, y, z = (g_degree(next(iter(M.terms))) for M in (A, B, C))
        anti = schouten_bracket(A, B) - (-1) ** (1 + x * y) * schouten_bracket(B, A)
        jac = ((-1) ** (x * z) * schouten_bracket(schouten_bracket(A, B), C)
               + (-1) ** (y * x) * schouten_bracket(schouten_bracket(B, C), A)
               + (-1) ** (z * y) * schouten_bracket(schouten_bracket(C, A), B))
        checked += 1
        if not anti.is_zero() or not jac.is_zero():
            failures.append({"triple": [sorted(M.terms) for M in (A, B, C)],
                             "antisymmetry": not anti.is_zero(),
                             "jacobi": not jac.is_zero()})
    return {"suite": "jacobi", "n": n, "seed": args.seed,
            "checked": checked, "failures": failures}


def _verify_weights(args):
    """Weight bookkeeping: the boundary of every word of random blocks
    stays inside the (m-1, w, h) block."""
    n, w, h = args.n, args.w, args.h
    failures = []
    checked = 0
    from .chains import max_arity
    for m in range(2, max_arity(n, w, h) + 1):
        for word in enumerate_basis(n, m, w, h).words:
            d = boundary(Chain(n, {word: Fraction(1)}))
            checked += 1
            for out in d.terms:
                if weight_signature(out) != (m - 1, w, h):
                    failures.append({"m": m, "word": [format_factor(f) for f in word]})
                    break
    return {"suite": "weights", "n": n, "w": w, "h": h,
            "checked": checked, "failures": failures}


def _verify_psi(args):
    rep = verify_psi_structure(args.n, args.w)
    failures = [{"word": [format_factor(f) for f in v["word"]],
                 "type": v["type"], "stray_strata": [list(s) for s in v["stray_strata"]]}
                for v in rep["violations"]]
    out = {"suite": "psi", "n": rep["n"], "w": rep["w"], "checked": rep["checked"],
           "failures": failures}
    if rep["tl_vacuous"]:
        out["note"] = "no TL strata at this weight; the ascent clause is vacuous"
    return out


def cmd_verify(args):
    suites = {"dsq": _verify_dsq, "jacobi": _verify_jacobi,
              "weights": _verify_weights, "psi": _verify_psi}
    names = list(suites) if args.suite == "all" else [args.suite]
    reports = [suites[name](args) for name in names]
    failed = any(r["failures"] for r in reports)
    if args.format == "structured":
        text = _json({"command": "verify", "reports": reports,
                      "status": "fail" if failed else "pass"})
    elif args.format == "csv":
        lines = ["suite,checked,failures"]
        for r in reports:
            lines.append("%s,%d,%d" % (r["suite"], r["checked"], len(r["failures"])))
        text = "\n".join(lines)
    else:
        lines = []
        for r in reports:
            status = "FAIL" if r["failures"] else "pass"
            lines.append("%s: %s (%d checked)" % (r["suite"], status, r["checked"]))
            if "note" in r:
                lines.append("  note: %s" % r["note"])
            for f in r["failures"]:
                lines.append("  witness: %s" % json.dumps(f, sort_keys=True))
        text = "\n".join(lines)
    _emit(text, args.output)
    return 1 if failed else 0


# --- certificates -----------------------------------------------------------


def _read_input(args):
    if args.input is None or args.input == "-":
        return sys.stdin.read()
    with open(args.input) as f:
        return f.read()


def cmd_certify(args):
    try:
        U = parse_chain(args.n, _read_input(args))
    except (OSError, ValueError, KeyError) as e:
        sys.stderr.write("malformed input: %s\n" % e)
        return 2
    dU = boundary(U)
    if dU:
        sys.stderr.write("input is not a cycle; its boundary is:\n%s\n" % chain_to_text(dU))
        return 1
    try:
        cert = certify_exact(U)
    except (CertificateError, ValueError) as e:
        sys.stderr.write("certification failed: %s\n" % e)
        return 1
    _emit(_json(certificate_to_dict(cert)), args.output)
    return 0


def cmd_check_certificate(args):
    try:
        cert = certificate_from_dict(json.loads(_read_input(args)))
    except (OSError, ValueError, KeyError, TypeError) as e:
        sys.stderr.write("malformed certificate: %s\n" % e)
        return 2
    ok = check_certificate(cert)
    text = "certificate %s: boundary(V) %s U" % (
        "valid" if ok else "INVALID", "==" if ok else "!=")
    if args.format == "structured":
        text = _json({"command": "check-certificate", "block": [cert.n, cert.w],
                      "valid": ok})
    _emit(text, args.output)
    return 0 if ok else 1


# --- basis / psi-matrix -----------------------------------------------------


def cmd_basis(args):
    basis = enumerate_basis(args.n, args.m, args.w, args.h)
    if args.format == "structured":
        text = _json({"command": "basis", "n": args.n, "m": args.m, "w": args.w,
                      "h": args.h, "dim": len(basis),
                      "words": [[format_factor(f) for f in word] for word in basis.words]})
    else:
        lines = [" ; ".join(format_factor(f) for f in word) for word in basis.words]
        text = "\n".join(lines) if lines else "(empty block)"
    _emit(text, args.output)
    return 0


def cmd_psi_matrix(args):
    """Matrix of psi on the canonical basis of the (2, w, w) block,
    coordinate-list format."""
    n, w = args.n, args.w
    basis = enumerate_basis(n, 2, w, w)
    entries = {}
    for col, word in enumerate(basis.words):
        img = psi(Chain(n, {word: Fraction(1)}))
        for r, v in enumerate(chain_to_vector(img, basis)):
            if v:
                entries[(r, col)] = v
    M = SparseMatrixQ(len(basis), len(basis), entries)
    if args.format == "structured":
        text = _json({"command": "psi-matrix", "n": n, "w": w, "dim": len(basis),
                      "matrix": matrix_to_text(M).splitlines()})
    else:
        text = matrix_to_text(M)
    _emit(text, args.output)
    return 0


# --- argument plumbing ------------------------------------------------------


def _add_common(p, *names):
    if "n" in names:
        p.add_argument("--n", type=int, required=True, help="dimension of R^n")
    if "m" in names:
        p.add_argument("--m", type=int, required=True, help="chain arity")
    if "w" in names:
        p.add_argument("--w", type=int, required=True, help="first weight")
    if "h" in names:
        p.add_argument("--h", type=int, required=True, help="second weight")
    p.add_argument("--output", help="write here atomically instead of stdout")
    p.add_argument("--format", choices=("structured", "csv", "plain"), default="plain")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="schouten",
        description="Exact homology of polynomial multivector fields under "
                    "the Schouten bracket (backend: %s)." % BACKEND)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", help="chain space dimensions of a weight block")
    _add_common(p, "n", "w", "h")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("betti", help="Betti number of one block")
    _add_common(p, "n", "m", "w", "h")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("euler", help="Euler characteristic of a weight block")
    _add_common(p, "n", "w", "h")
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("verify", help="property suites: dsq, jacobi, weights, psi")
    p.add_argument("suite", choices=("dsq", "jacobi", "weights", "psi", "all"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--w", type=int, default=0)
    p.add_argument("--h", type=int, default=0)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--output")
    p.add_argument("--format", choices=("structured", "csv", "plain"), default="plain")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certify", help="build an exactness certificate for a 2-cycle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--input", help="cycle file in chain text form (default stdin)")
    p.add_argument("--output")
    p.add_argument("--format", choices=("structured", "csv", "plain"), default="structured")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("check-certificate", help="re-verify a certificate file")
    p.add_argument("--input", help="certificate JSON (default stdin)")
    p.add_argument("--output")
    p.add_argument("--format", choices=("structured", "csv", "plain"), default="plain")
    p.set_defaults(func=cmd_check_certificate)

    p = sub.add_parser("basis", help="list the canonical basis words of a block")
    _add_common(p, "n", "m", "w", "h")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("psi-matrix", help="matrix of the psi operator on a (2, w, w) block")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--output")
    p.add_argument("--format", choices=("structured", "csv", "plain"), default="plain")
    p.set_defaults(func=cmd_psi_matrix)

    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
