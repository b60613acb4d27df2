"""Command-line interface: ``bubble <subcommand> ...``.

Exit status is 0 on success, 2 on invalid input and 1 when an internal
consistency check fails.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys
from collections.abc import Sequence

from . import cells, checks, decomposition, diagrams
from .linalg import ExactMatrix, SymbolicDimensionError, determinant, rank
from .scalars import ParameterSpec, evaluate


class InputError(ValueError):
    """Bad user input; reported with exit status 2."""


def _parse_lambda(text: str, n: int, m: int) -> cells.WeightLambda:
    try:
        lam = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"--lambda must be comma-separated integers, got {text!r}") from None
    try:
        return cells.WeightLambda(n, m, lam)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _params(args) -> ParameterSpec:
    tokens = args.delta or ["generic"] * args.m
    if len(tokens) != args.m:
        raise InputError(f"--delta given {len(tokens)} times but m = {args.m}; repeat it once per colour")
    try:
        return ParameterSpec.parse(tokens)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _require_lambda(args) -> cells.WeightLambda:
    if args.lam is None:
        raise InputError("this subcommand needs --lambda")
    return _parse_lambda(args.lam, args.n, args.m)


def _matrix_payload(M: ExactMatrix, rows=None, cols=None) -> dict:
    return {
        "rows": rows if rows is not None else list(range(M.rows)),
        "cols": cols if cols is not None else list(range(M.cols)),
        "entries": [[str(x) for x in r] for r in M.entries],
    }


def _emit_matrix(payload: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + [str(c) for c in payload["cols"]])
        for label, row in zip(payload["rows"], payload["entries"]):
            w.writerow([str(label)] + [str(x) for x in row])
        out.write(buf.getvalue())
    else:
        for row in payload["entries"]:
            out.write(" ".join(str(x) for x in row) + "\n")


def _lam_str(lam) -> str:
    return "(" + ",".join(map(str, lam)) + ")"


# ---------------------------------------------------------------------------
# subcommands


def cmd_basis(args, out) -> int:
    if args.lam is not None:
        lw = _parse_lambda(args.lam, args.n, args.m)
        items = [str(s) for s in cells.enumerate_delta_basis(lw)]
    elif args.propagating is not None:
        lw = _parse_lambda(args.propagating, args.n, args.m)
        items = [str(d) for d in diagrams.enumerate_bubble_basis_lambda(args.n, args.m, lw.lam)]
    else:
        items = [str(d) for d in diagrams.enumerate_bubble_basis(args.n, args.m)]
    if args.format == "json":
        out.write(json.dumps({"n": args.n, "m": args.m, "count": len(items), "elements": items}) + "\n")
    else:
        out.write("\n".join(items) + ("\n" if items else ""))
    return 0


def _read_diagram_texts(paths: Sequence[str], stdin) -> list[str]:
    if not paths:
        lines = [ln.strip() for ln in stdin.read().splitlines() if ln.strip()]
        if len(lines) != 2:
            raise InputError(f"expected two diagrams on stdin (one per line), got {len(lines)}")
        return lines
    if len(paths) != 2:
        raise InputError("multiply takes exactly two diagram files (or none to read stdin)")
    texts = []
    for p in paths:
        if p == "-":
            texts.append(stdin.readline().strip())
            continue
        try:
            with open(p, encoding="utf-8") as fh:
                texts.append(fh.read().strip())
        except OSError as exc:
            raise InputError(f"cannot read {p}: {exc.strerror}") from None
    return texts


def cmd_multiply(args, out, stdin) -> int:
    if args.left is not None or args.right is not None:
        if args.left is None or args.right is None:
            raise InputError("--left and --right must be given together")
        texts = [args.left, args.right]
    else:
        texts = _read_diagram_texts(args.files, stdin)
    try:
        a, b = (diagrams.ColouredDiagram.parse(t) for t in texts)
    except ValueError as exc:
        raise InputError(f"malformed diagram: {exc}") from None
    prod = diagrams.multiply(a, b)
    if args.format == "json":
        payload = {"zero": prod is None}
        if prod is not None:
            payload.update(coeff=str(prod.coeff), diagram=str(prod.diagram))
        out.write(json.dumps(payload) + "\n")
    else:
        out.write("0\n" if prod is None else f"{prod.coeff}\n{prod.diagram}\n")
    return 0


def cmd_gram(args, out) -> int:
    lw = _require_lambda(args)
    labels = [str(s) for s in cells.enumerate_delta_basis(lw)]
    if args.mode == "factorized":
        rep = cells.gram_factorized(lw)
        if args.format == "json":
            payload = {
                "lambda": list(lw.lam),
                "dim": rep.dim,
                "blocks": [
                    {
                        "u": list(b.u),
                        "multiplicity": b.multiplicity,
                        "factors": [_matrix_payload(f) for f in b.factors],
                    }
                    for b in rep.blocks
                ],
                "determinant": str(rep.determinant),
            }
            out.write(json.dumps(payload) + "\n")
            return 0
        M = rep.assemble()
    else:
        M = cells.gram_direct(lw)
    if args.delta:
        params = _params(args)
        values = params.values()
        M = M.map(lambda x: evaluate(x, params, values))
    _emit_matrix(_matrix_payload(M, labels, labels), args.format, out)
    return 0


def cmd_det(args, out) -> int:
    lw = _require_lambda(args)
    if args.method == "formula":
        value = cells.gram_det(lw)
    else:
        try:
            value = determinant(cells.gram_direct(lw))
        except SymbolicDimensionError as exc:
            raise InputError(str(exc)) from None
    if args.delta:
        value = evaluate(value, _params(args))
    if args.format == "json":
        out.write(json.dumps({"lambda": list(lw.lam), "determinant": str(value)}) + "\n")
    else:
        out.write(f"{value}\n")
    return 0


def cmd_rank(args, out) -> int:
    lw = _require_lambda(args)
    params = _params(args)
    if any(params.is_generic(j) for j in range(params.m)):
        raise InputError("rank needs every parameter specialised: pass --delta for each colour")
    r = rank(cells.gram_specialized(lw, params))
    if args.format == "json":
        out.write(json.dumps({"lambda": list(lw.lam), "rank": r, "dim": cells.dim_delta(lw)}) + "\n")
    else:
        out.write(f"{r}\n")
    return 0


def cmd_dims(args, out) -> int:
    params = _params(args)
    orders = params.orders()
    rows = []
    for lw in cells.enumerate_lambda(args.n, args.m):
        cell = cells.dim_delta(lw)
        head = cells.dim_head(lw, orders)
        rows.append({"lambda": list(lw.lam), "cell": cell, "head": head, "radical": cell - head})
    if args.format == "json":
        out.write(json.dumps(rows) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["lambda", "cell", "head", "radical"])
        for r in rows:
            w.writerow([_lam_str(r["lambda"]), r["cell"], r["head"], r["radical"]])
        out.write(buf.getvalue())
    else:
        out.write("lambda cell head radical\n")
        for r in rows:
            out.write(f"{_lam_str(r['lambda'])} {r['cell']} {r['head']} {r['radical']}\n")
    return 0


def cmd_radical_series(args, out) -> int:
    lw = _require_lambda(args)
    params = _params(args)
    layers = cells.radical_series(lw, params.orders())
    if args.format == "json":
        out.write(json.dumps({"lambda": list(lw.lam), "layers": [[list(x.lam) for x in L] for L in layers]}) + "\n")
    else:
        for k, layer in enumerate(layers):
            out.write(f"{k}: " + " ".join(str(x) for x in layer) + "\n")
    return 0


def _decomp(args) -> decomposition.DecompositionMatrix:
    params = _params(args)
    return decomposition.decomposition_matrix(args.n, args.m, params, args.order)


def cmd_decomp(args, out) -> int:
    D = _decomp(args)
    if args.format == "json":
        out.write(D.to_json() + "\n")
    else:
        labels = [_lam_str(x) for x in D.labels]
        _emit_matrix({"rows": labels, "cols": labels, "entries": D.entries}, args.format, out)
    return 0


def cmd_cartan(args, out) -> int:
    D = _decomp(args)
    C = decomposition.cartan_matrix(D)
    labels = [list(x) for x in D.labels]
    if args.format == "json":
        payload = {"rows": labels, "cols": labels, "entries": C}
        payload["blocks"] = [
            {"rows": [labels[i] for i in g], "cols": [labels[i] for i in g], "entries": [[C[i][j] for j in g] for i in g]}
            for g in D.blocks()
        ]
        out.write(json.dumps(payload) + "\n")
    else:
        text = [_lam_str(x) for x in labels]
        _emit_matrix({"rows": text, "cols": text, "entries": C}, args.format, out)
    return 0


def cmd_blocks(args, out) -> int:
    params = _params(args)
    bp = decomposition.blocks(args.n, args.m, params, args.order)
    if args.dot or args.format == "dot":
        out.write(bp.to_dot())
    elif args.format == "json":
        out.write(json.dumps([[list(x) for x in c] for c in bp.as_tuples()]) + "\n")
    else:
        for c in bp.as_tuples():
            out.write(" ".join(_lam_str(x) for x in c) + "\n")
    return 0


def cmd_check(args, out) -> int:
    results = checks.run_all(args.max_n, args.seed)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        out.write(f"{status} {r.name}" + (f" ({r.detail})" if r.detail else "") + "\n")
    return 0 if all(r.passed for r in results) else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bubble", description="Exact computations in multi-colour bubble algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt="text", formats=("json", "csv", "text"), lam=True, delta=True):
        p.add_argument("-n", type=int, required=True, help="number of strands")
        p.add_argument("-m", type=int, required=True, help="number of colours")
        if lam:
            p.add_argument("--lambda", dest="lam", help="cell weight, e.g. 0,2")
        if delta:
            p.add_argument("--delta", action="append", help="loop parameter per colour: <int>, <p>/<q>, root:<l>, generic")
        p.add_argument("--format", choices=formats, default=fmt)

    p = sub.add_parser("basis", help="bubble basis, or the cell-module basis with --lambda")
    common(p, formats=("json", "text"), delta=False)
    p.add_argument("--propagating", help="restrict the bubble basis to per-colour propagating numbers")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("multiply", help="product of two diagrams (files, '-' or two stdin lines)")
    p.add_argument("files", nargs="*")
    p.add_argument("--left")
    p.add_argument("--right")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_multiply, needs_stdin=True)

    p = sub.add_parser("gram", help="Gram matrix of a cell module")
    common(p, fmt="json")
    p.add_argument("--mode", choices=("direct", "factorized"), default="direct")
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("det", help="Gram determinant")
    common(p, formats=("json", "text"))
    p.add_argument("--method", choices=("direct", "formula"), default="formula")
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("rank", help="rank of the specialised Gram matrix")
    common(p, formats=("json", "text"))
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("dims", help="cell, head and radical dimensions for every weight")
    common(p, lam=False)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("radical-series", help="Loewy layers of a cell module")
    common(p, formats=("json", "text"))
    p.set_defaults(func=cmd_radical_series)

    for name, func, fmt in (("decomp", cmd_decomp, "json"), ("cartan", cmd_cartan, "json")):
        p = sub.add_parser(name, help=f"{name} matrix of the algebra")
        common(p, fmt=fmt, lam=False)
        p.add_argument("--order", default="default", help="row ordering: default or paper-6-2")
        p.set_defaults(func=func)

    p = sub.add_parser("blocks", help="linkage classes of cell modules")
    common(p, formats=("json", "text", "dot"), lam=False)
    p.add_argument("--order", default="default")
    p.add_argument("--dot", action="store_true", help="emit a Graphviz digraph")
    p.set_defaults(func=cmd_blocks)

    p = sub.add_parser("check", help="run the invariant suite")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None, stdin=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    stdin = stdin or sys.stdin
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if hasattr(args, "n") and (args.n < 1 or args.m < 1):
        err.write("error: need n >= 1 and m >= 1\n")
        return 2
    try:
        if getattr(args, "needs_stdin", False):
            return args.func(args, out, stdin)
        return args.func(args, out)
    except (InputError, ValueError, ZeroDivisionError, TypeError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    except (AssertionError, ArithmeticError) as exc:
        err.write(f"internal error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
