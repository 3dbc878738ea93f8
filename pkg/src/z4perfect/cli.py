"""Command-line interface.

Every subcommand builds a report ``{command, inputs, result, method,
elapsed}``.  ``--json`` prints it as JSON; otherwise a plain-text rendering
is printed.  Exit codes: 0 success, 1 usage, 2 verification failed,
3 resource cap.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from pathlib import Path

from . import analysis
from .codes import code_from_check, dual_code, binary_image, is_perfect
from .errors import MalformedCheckMatrixError, NotPerfectError, ResourceCapError, Z4Error
from .structure import canonicalize, product_code
from .z4linalg import build_check_matrix, format_matrix, read_check_matrix, write_matrix

EXIT_OK, EXIT_USAGE, EXIT_FAILED, EXIT_CAP = 0, 1, 2, 3


class VerificationFailed(Exception):
    def __init__(self, report: dict):
        super().__init__("verification failed")
        self.report = report


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rank_method_label(method: str) -> str:
    return "exhaustive" if method == analysis.STREAM else "shortcut-validated"


# --------------------------------------------------------------------------
# subcommands: each returns (inputs, result, method, text)


def cmd_matrix(args):
    check = build_check_matrix(args.r1, args.r2)
    text = check.to_text()
    if args.out:
        write_matrix(args.out, check)
    result = {"rows": text.split(), "full_rows": check.full_rows, "half_rows": check.half_rows, "n": check.n}
    shown = "" if args.out else text
    return {"r1": args.r1, "r2": args.r2, "out": args.out}, result, "structural", shown


def cmd_verify(args):
    check = read_check_matrix(args.check)
    code = code_from_check(check)
    method = "exhaustive" if args.exhaustive else "structural" if args.structural else "auto"
    res = is_perfect(code, method)
    result = {
        "n": code.n,
        "k1": code.k1,
        "k2": code.k2,
        "cardinality_ok": res.cardinality_ok,
        "min_lee_weight": res.min_weight,
        "perfect": res.perfect,
    }
    text = "\n".join(f"{k:<16}{v}" for k, v in result.items()) + "\n"
    inputs = {"check": str(args.check), "method": method}
    if not res.perfect:
        raise VerificationFailed(_report("verify", inputs, result, res.method, 0.0, text))
    return inputs, result, res.method, text


def cmd_rank(args):
    code = code_from_check(build_check_matrix(args.r1, args.r2))
    method = args.method or "auto"
    method = analysis.resolve_method(code, method)
    if method == analysis.SHORTCUT:
        analysis.require_validated_shortcut()
    rank = analysis.code_rank(code, method)
    rep = analysis.repetitive_dual_dimension(code, method)
    result = {
        "length": 2 * code.n,
        "rank": rank,
        "rep_dual_dim": rep,
        "linear": rank == code.log2_size,
    }
    text = "\n".join(f"{k:<14}{v}" for k, v in result.items()) + "\n"
    return {"r1": args.r1, "r2": args.r2, "method": args.method or "auto"}, result, _rank_method_label(method), text


def _table(entries: list[dict], cols: list[str]) -> str:
    cells = [[str(e[c]).lower() if isinstance(e[c], bool) else str(e[c]) for c in cols] for e in entries]
    widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    lines += ["  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in cells]
    return "\n".join(lines) + "\n"


def cmd_classify(args):
    report = analysis.classify(args.k)
    result = report.to_json()
    labels = set(report.methods.values())
    method = "shortcut-validated" if "shortcut-validated" in labels else "exhaustive"
    text = _table(result["entries"], ["r1", "r2", "length", "rank", "rep_dual_dim", "linear"])
    text += f"count: {report.count}\n"
    return {"k": args.k}, result, method, text


def cmd_canon(args):
    form = canonicalize(read_check_matrix(args.check))
    result = form.to_json()
    text = (
        f"r1           {form.r1}\n"
        f"r2           {form.r2}\n"
        f"signs        {result['signs']}\n"
        f"permutation  {' '.join(map(str, form.permutation))}\n"
    )
    return {"check": str(args.check)}, result, "structural", text


def cmd_product(args):
    left = code_from_check(read_check_matrix(args.left))
    right = code_from_check(read_check_matrix(args.right))
    prod = product_code(left, right)
    text = prod.check.to_text()
    if args.out:
        write_matrix(args.out, prod.check)
    result = {
        "rows": text.split(),
        "n": prod.n,
        "full_rows": prod.check.full_rows,
        "half_rows": prod.check.half_rows,
        "descriptor": json.loads(prod.descriptor()),
    }
    shown = "" if args.out else text
    return {"left": str(args.left), "right": str(args.right), "out": args.out}, result, "structural", shown


def cmd_dual(args):
    code = code_from_check(read_check_matrix(args.check))
    d = dual_code(code)
    g = d.generator
    text = f"# n={d.n} k1={g.k1} k2={g.k2}\n" + format_matrix(g.matrix)
    result = {"n": d.n, "k1": g.k1, "k2": g.k2, "rows": format_matrix(g.matrix).split()}
    return {"check": str(args.check)}, result, "structural", text


def cmd_image(args):
    if args.limit < 0:
        raise argparse.ArgumentTypeError("--limit must be nonnegative")
    code = code_from_check(read_check_matrix(args.check))
    words = [str(w) for w in itertools.islice(binary_image(code), args.limit)]
    text = "".join(w + "\n" for w in words)
    return {"check": str(args.check), "limit": args.limit}, {"words": words}, "exhaustive", text


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="z4perfect", description="Z4-linear extended perfect codes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="print the JSON report")
        sp.set_defaults(func=func)
        return sp

    sp = add("matrix", cmd_matrix, "emit the check matrix A^{r1,r2}")
    sp.add_argument("--r1", type=int, required=True)
    sp.add_argument("--r2", type=int, required=True)
    sp.add_argument("--out", type=Path)

    sp = add("verify", cmd_verify, "perfectness report for a check matrix file")
    sp.add_argument("--check", type=Path, required=True)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--exhaustive", action="store_true")
    g.add_argument("--structural", action="store_true")

    sp = add("rank", cmd_rank, "rank and repetitive-dual dimension of C^{r1,r2}")
    sp.add_argument("--r1", type=int, required=True)
    sp.add_argument("--r2", type=int, required=True)
    sp.add_argument("--method", choices=["stream", "shortcut"])

    sp = add("classify", cmd_classify, "classification table for binary length 2^k")
    sp.add_argument("--k", type=int, required=True)

    sp = add("canon", cmd_canon, "canonical form transcript of a check matrix")
    sp.add_argument("--check", type=Path, required=True)

    sp = add("product", cmd_product, "product check matrix of two perfect codes")
    sp.add_argument("--left", type=Path, required=True)
    sp.add_argument("--right", type=Path, required=True)
    sp.add_argument("--out", type=Path)

    sp = add("dual", cmd_dual, "generator matrix of the dual code")
    sp.add_argument("--check", type=Path, required=True)

    sp = add("image", cmd_image, "first N words of the binary image")
    sp.add_argument("--check", type=Path, required=True)
    sp.add_argument("--limit", type=int, required=True)
    return p


def _report(command, inputs, result, method, elapsed, text=""):
    inputs = {k: (str(v) if isinstance(v, Path) else v) for k, v in inputs.items()}
    return {
        "command": command,
        "inputs": inputs,
        "result": result,
        "method": method,
        "elapsed": elapsed,
        "_text": text,
    }


def _emit(report: dict, as_json: bool, out) -> None:
    text = report.pop("_text", "")
    if as_json:
        out.write(json.dumps(report, sort_keys=True) + "\n")
    else:
        out.write(text)


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    t0 = time.perf_counter()
    try:
        inputs, result, method, text = args.func(args)
    except VerificationFailed as e:
        e.report["elapsed"] = time.perf_counter() - t0
        _emit(e.report, args.json, out)
        return EXIT_FAILED
    except (NotPerfectError, MalformedCheckMatrixError) as e:
        err.write(f"verification failed: {e}\n")
        return EXIT_FAILED
    except ResourceCapError as e:
        err.write(f"resource cap: {e}\n")
        return EXIT_CAP
    except (Z4Error, ValueError, OSError, argparse.ArgumentTypeError) as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE
    report = _report(args.command, inputs, result, method, time.perf_counter() - t0, text)
    _emit(report, args.json, out)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
