"""Command-line front end.

Usage::

    smla matrix   add|transpose|flatten|det FILE [FILE]
    smla spec     charpoly|minpoly|eigen|diag|cayley FILE
    smla metric   gram-schmidt|project|form-report|signature FILE [FILE]
    smla markov   step|limit FILE
    smla leontief closed|open FILE

Exit status is 0 on success, 2 for invalid input (bad file, partition
mismatch, broken model invariant) and 3 when the mathematics fails
(singular block, non-ergodic chain, ...).  ``SMLA_TOL`` in the environment
sets the default for ``--tol``.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import inner_product as ip
from . import models, spectral
from ._numeric import format_scalar, jsonable
from .core import SuperDiagonalMatrix, SuperMatrix, add, transpose
from .errors import FileFormatError, InputError, MathError
from .io import (load_any, load_leontief, load_markov, load_super_diagonal,
                 load_super_vector, load_vectors, read_json, to_obj)
from .polynomial import distinct_roots

__all__ = ["run", "main", "build_parser"]


def _fmt(x):
    return format_scalar(x)


def _tuple(xs):
    return "(" + ", ".join(_fmt(x) for x in xs) + ")"


def _vec(v):
    return "(" + " ".join(_fmt(x) for x in v) + ")"


def _table(headers, rows):
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    line = lambda cells: "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    out = [line(headers), line(["-" * w for w in widths])]
    out.extend(line(r) for r in rows)
    return "\n".join(out)


def _grid_text(a):
    a = np.asarray(a)
    return "\n".join(" ".join(_fmt(x) for x in row) for row in a)


def _jgrid(a):
    return [[jsonable(x) for x in row] for row in np.asarray(a)]


def _jvec(v):
    return [jsonable(x) for x in np.asarray(v)]


def _tol(args, default):
    return default if args.tol is None else args.tol


# Each handler returns (text, report-dict).

def _load_matrix_like(path, args):
    obj = read_json(path)
    exact = True if args.rational else None
    if isinstance(obj, dict) and "row_partition" in obj:
        return load_any(obj, exact)
    return load_super_diagonal(obj, exact)


def _load_sd(path, args):
    return load_super_diagonal(read_json(path), True if args.rational else None)


def cmd_matrix(args):
    a = _load_matrix_like(args.files[0], args)
    op = args.op
    if op == "add":
        if len(args.files) != 2:
            raise FileFormatError("matrix add needs two files")
        b = _load_matrix_like(args.files[1], args)
        if isinstance(a, SuperDiagonalMatrix) and isinstance(b, SuperDiagonalMatrix):
            r = a + b
        else:
            r = add(a.to_super_matrix() if isinstance(a, SuperDiagonalMatrix) else a,
                    b.to_super_matrix() if isinstance(b, SuperDiagonalMatrix) else b)
        return str(r), {"result": to_obj(r)}
    if op == "transpose":
        r = a.T if isinstance(a, SuperDiagonalMatrix) else transpose(a)
        return str(r), {"result": to_obj(r)}
    if op == "flatten":
        r = a.flatten() if isinstance(a, SuperDiagonalMatrix) else a.data
        return _grid_text(r), {"result": _jgrid(r)}
    if op == "det":
        if isinstance(a, SuperMatrix):
            a = SuperDiagonalMatrix.from_super_matrix(a)
        d = spectral.super_det(a, exact=args.rational)
        return _tuple(d), {"det": [jsonable(x) for x in d]}
    raise AssertionError(op)


def cmd_spec(args):
    a = _load_sd(args.files[0], args)
    op = args.op
    exact = args.rational
    if op == "charpoly":
        f = spectral.char_super_poly(a, exact=exact)
        return str(f), {"charpoly": [str(p) for p in f]}
    if op == "minpoly":
        m = spectral.minimal_super_poly(a, exact=exact)
        return str(m), {"minpoly": [str(p) for p in m]}
    if op == "eigen":
        f = spectral.char_super_poly(a, exact=exact)
        tol = _tol(args, spectral.ROOT_CLUSTER_TOL)
        rows, rep = [], []
        for i, p in enumerate(f):
            vals = distinct_roots(p, tol)
            if args.real:
                vals = [(r, k) for r, k in vals if abs(complex(r).imag) <= 1e-9]
            rep.append({"block": i, "eigenvalues": [
                {"value": jsonable(r), "multiplicity": k} for r, k in vals]})
            if not vals:
                rows.append([i, "-", "-"])
            rows.extend([i, _fmt(r), k] for r, k in vals)
        return _table(["block", "eigenvalue", "multiplicity"], rows), {"blocks": rep}
    if op == "diag":
        tol = _tol(args, spectral.ROOT_CLUSTER_TOL)
        v = spectral.is_super_diagonalizable(a, tol=tol, exact=exact)
        rows = [[i, str(m), "yes" if ok else "no"]
                for i, (m, ok) in enumerate(zip(v.minimal, v.blocks))]
        text = _table(["block", "minimal polynomial", "diagonalizable"], rows)
        text += f"\nsuper diagonalizable: {'yes' if v.diagonalizable else 'no'}"
        return text, {"diagonalizable": v.diagonalizable,
                      "blocks": [{"block": i, "minpoly": str(m), "verdict": ok}
                                 for i, (m, ok) in enumerate(zip(v.minimal, v.blocks))]}
    if op == "cayley":
        r = spectral.cayley_hamilton_residual(a, exact=exact)
        return _tuple(r), {"residual": [jsonable(x) for x in r]}
    raise AssertionError(op)


def _vectors_text(vs):
    return "\n".join(str(v) for v in vs)


def cmd_metric(args):
    op = args.op
    if op == "gram-schmidt":
        vs = load_vectors(read_json(args.files[0]))
        out = ip.gram_schmidt(vs, _tol(args, ip.GS_TOL))
        return _vectors_text(out), {"vectors": [to_obj(v) for v in out]}
    if op == "project":
        if len(args.files) != 2:
            raise FileFormatError("metric project needs a basis file and a vector file")
        basis = load_vectors(read_json(args.files[0]))
        beta = load_super_vector(read_json(args.files[1]))
        alpha = ip.best_approximation(basis, beta, _tol(args, ip.GS_TOL))
        resid = beta - alpha
        return (f"projection  {alpha}\nresidual    {resid}",
                {"projection": to_obj(alpha), "residual": to_obj(resid)})
    f = ip.BilinearSuperForm(load_super_diagonal(read_json(args.files[0])))
    tol = _tol(args, ip.SIGNATURE_TOL)
    if op == "form-report":
        cls = f.symmetry_class()
        ranks = ip.form_rank(f)
        report = {"symmetry": cls, "rank": list(ranks),
                  "nondegenerate": ip.is_nondegenerate(f)}
        lines = [f"symmetry       {cls}", f"rank           {_tuple(ranks)}",
                 f"nondegenerate  {'yes' if report['nondegenerate'] else 'no'}"]
        if cls in ("symmetric", "hermitian"):
            _, _, sig = ip.diagonalize_symmetric(f, tol)
            report["signature"] = sig.as_dict()
            lines.append(f"signature      {_tuple(sig.signature)}")
        elif cls == "skew":
            _, k = ip.skew_canonical(f)
            report["skew_pairs"] = list(k)
            lines.append(f"skew pairs     {_tuple(k)}")
        return "\n".join(lines), report
    if op == "signature":
        _, _, sig = ip.diagonalize_symmetric(f, tol)
        rows = [[i, sig.p[i], sig.q[i], sig.z[i], sig.rank[i], sig.signature[i]]
                for i in range(len(sig.p))]
        return (_table(["block", "p", "q", "z", "rank", "signature"], rows),
                sig.as_dict())
    raise AssertionError(op)


def cmd_markov(args):
    chain, x0 = load_markov(read_json(args.files[0]))
    if args.op == "step":
        if x0 is None:
            x0 = models.DistributionSuperVector.uniform(chain.sizes)
        xn = models.step(chain, x0, args.steps)
        rows = [[t, _vec(v)] for t, v in enumerate(xn.blocks)]
        rep = [{"block": t, "verdict": "ok", "vector": _jvec(v), "residual": 0.0,
                "iterations": args.steps} for t, v in enumerate(xn.blocks)]
        return _table(["block", f"X^({args.steps})"], rows), {"blocks": rep}
    lim = models.ergodic_limit(chain, tol=_tol(args, 1e-10), max_iter=args.max_iter)
    rows, rep = [], []
    for t, (p, pi, k) in enumerate(zip(chain.transitions, lim.stationary, lim.iterations)):
        res = float(np.max(np.abs(pi @ p - pi)))
        rows.append([t, _vec(pi), _fmt(res), k])
        rep.append({"block": t, "verdict": "ergodic", "vector": _jvec(pi),
                    "residual": res, "iterations": k})
    text = _table(["block", "stationary", "residual", "iterations"], rows)
    if x0 is not None:
        xi = lim.x_inf(x0)
        text += "\nX^inf  " + " | ".join(" ".join(_fmt(x) for x in b) for b in xi.blocks)
    return text, {"blocks": rep}


def cmd_leontief(args):
    model = load_leontief(read_json(args.files[0]), relaxed=True if args.relaxed else None)
    if args.op == "closed":
        if model.kind != "closed":
            raise FileFormatError(f"{args.files[0]}: not a closed model")
        sol = models.leontief_closed_solve(model, tol=_tol(args, 1e-10))
        rows, rep = [], []
        for t, (p, u, r) in enumerate(zip(sol.prices, sol.unique, sol.residuals)):
            verdict = "unique" if u else "not certified unique"
            rows.append([t, _vec(p), _fmt(r), verdict])
            rep.append({"block": t, "verdict": verdict, "vector": _jvec(p), "residual": r,
                        "iterations": 0,
                        "candidates": [_jvec(c) for c in sol.candidates[t]]})
        return _table(["block", "prices", "residual", "verdict"], rows), {"blocks": rep}
    if model.kind != "open":
        raise FileFormatError(f"{args.files[0]}: not an open model")
    sol = models.leontief_open_solve(model, tol=_tol(args, 1e-9))
    rows, rep = [], []
    yn = lambda b: "yes" if b else "no"
    for t, x in enumerate(sol.production):
        rows.append([t, _vec(x), _fmt(sol.residuals[t]), yn(sol.row_sum_test[t]),
                     yn(sol.col_sum_test[t]), yn(sol.inverse_nonnegative[t])])
        rep.append({"block": t, "verdict": "productive", "vector": _jvec(x),
                    "residual": sol.residuals[t], "iterations": 0,
                    "row_sum_test": sol.row_sum_test[t], "col_sum_test": sol.col_sum_test[t],
                    "inverse_nonnegative": sol.inverse_nonnegative[t],
                    "production_nonnegative": sol.production_nonnegative[t]})
    return (_table(["block", "production", "residual", "rows<1", "cols<1", "inv>=0"], rows),
            {"blocks": rep})


_VERBS = {
    "matrix": (cmd_matrix, ["add", "transpose", "flatten", "det"]),
    "spec": (cmd_spec, ["charpoly", "minpoly", "eigen", "diag", "cayley"]),
    "metric": (cmd_metric, ["gram-schmidt", "project", "form-report", "signature"]),
    "markov": (cmd_markov, ["step", "limit"]),
    "leontief": (cmd_leontief, ["closed", "open"]),
}


def _env_tol():
    raw = os.environ.get("SMLA_TOL")
    if raw is None or raw == "":
        return None
    try:
        return float(raw)
    except ValueError:
        raise FileFormatError(f"SMLA_TOL: cannot read {raw!r} as a number") from None


def build_parser():
    parser = argparse.ArgumentParser(
        prog="smla", description="Block-partitioned linear algebra on JSON inputs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="tolerance override (default: SMLA_TOL or per-command default)")
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--rational", action="store_true",
                        help="exact rational arithmetic where supported")
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb, (_, ops) in _VERBS.items():
        p = sub.add_parser(verb, parents=[common])
        p.add_argument("op", choices=ops)
        p.add_argument("files", nargs="+", metavar="FILE")
        if verb == "spec":
            p.add_argument("--real", action="store_true", help="real eigenvalues only")
        if verb == "markov":
            p.add_argument("--steps", type=int, default=1)
            p.add_argument("--max-iter", type=int, default=10**6)
        if verb == "leontief":
            p.add_argument("--relaxed", action="store_true",
                           help="drop closed-model checks and rank null-space candidates")
    return parser


def run(argv=None, out=None, err=None):
    """Execute one command; returns the exit status."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = _VERBS[args.verb][0]
    try:
        if args.tol is None:
            args.tol = _env_tol()
        text, report = handler(args)
    except InputError as exc:
        print(f"smla: input error: {exc}", file=err)
        return 2
    except MathError as exc:
        print(f"smla: {type(exc).__name__}: {exc}", file=err)
        return 3
    if args.json:
        report = {"command": f"{args.verb} {args.op}", **report}
        print(json.dumps(report, sort_keys=True, indent=2), file=out)
    else:
        print(text, file=out)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
