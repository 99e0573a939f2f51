"""Command-line front end.

Every invocation writes exactly one JSON document to stdout. Diagnostics go
to stderr. Exit codes: 0 success, 1 mathematical failure (a precondition or
a check did not hold), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import MathematicalFailure
from .exact_arith import format_rational, parse_rational
from .hypermatrix import (
    FACE_ORDER, VARIANTS, GenQuadruple, Hypermatrix222, Rotation, SymParam,
    check_generalized_solution, complete, face_determinants, hyperdet, kernel_check,
    kernel_solve, parameterize_asymmetric, parameterize_symmetric, rotate,
    symmetric_witnesses, verify_hypermatrix_identities, KernelVectors,
)
from .quadruple import MTuple, ahs_extend, is_diophantine, is_regular_quadruple, verify_quadruple_identities
from .quintuple import dujella_extend, is_regular_quintuple, verify_quintuple_identities
from .covariants import verify_covariant_identities
from .search import (
    SearchConfig, SymmetricMatrixInstance, classify_regular, enumerate_diophantine,
    enumerate_parallel, reduce_rank2, write_csv,
)

SUITES = {
    "quadruple": verify_quadruple_identities,
    "quintuple": verify_quintuple_identities,
    "hypermatrix": verify_hypermatrix_identities,
    "covariants": verify_covariant_identities,
}

EXIT_CODES = {"ok": 0, "fail": 1, "error": 2}


@dataclass
class CommandResult:
    status: str
    payload: object = None
    diagnostics: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.status not in EXIT_CODES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == "ok" and self.payload is None:
            raise ValueError("an ok result needs a payload")

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def document(self) -> dict:
        if self.status == "ok":
            return self.payload
        out = {"status": self.status, "error": "; ".join(self.diagnostics)}
        if self.payload is not None:
            out["result"] = self.payload
        return out


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _rat(text: str):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _json_rational(value):
    # the bare-array shortcut also takes JSON integers
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    return parse_rational(value)


def _fmt(values):
    return [format_rational(v) for v in values]


# subcommands --------------------------------------------------------------

def cmd_verify(args) -> CommandResult:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = [SUITES[name]() for name in names]
    diagnostics = [line for rep in reports for line in rep.lines()]
    payload = {"passed": all(r.passed for r in reports), "suites": [r.to_json() for r in reports]}
    status = "ok" if payload["passed"] else "fail"
    return CommandResult(status, payload, diagnostics)


def cmd_check(args) -> CommandResult:
    data = _load_json(args.path)
    t = MTuple.from_json(data) if isinstance(data, dict) else MTuple(tuple(_json_rational(v) for v in data))
    rep = is_diophantine(t)
    payload = rep.to_json()
    n = len(t)
    if n == 4:
        payload["regular"] = is_regular_quadruple(*t.elements)
    elif n == 5:
        payload["regular"] = is_regular_quintuple(*t.elements)
    if rep.passed:
        payload["tuple"] = rep.tuple.to_json()
        return CommandResult("ok", payload)
    bad = ", ".join(f"({p.i},{p.j})" for p in rep.failures)
    return CommandResult("fail", payload, [f"not Diophantine: pairs {bad} fail"])


def cmd_extend_triple(args) -> CommandResult:
    return CommandResult("ok", {"roots": _fmt(ahs_extend(*args.values))})


def cmd_extend_quadruple(args) -> CommandResult:
    return CommandResult("ok", {"roots": _fmt(dujella_extend(*args.values))})


def cmd_hyperdet(args) -> CommandResult:
    A = Hypermatrix222.from_json(_load_json(args.path))
    faces = face_determinants(A)
    return CommandResult("ok", {
        "hyperdet": format_rational(hyperdet(A)),
        "faces": [{"axis": axis, "index": t, "value": format_rational(v)}
                  for (axis, t), v in zip(FACE_ORDER, faces)],
    })


def cmd_complete(args) -> CommandResult:
    A = Hypermatrix222.from_json(_load_json(args.path))
    roots = complete(A, args.missing)
    return CommandResult("ok", {"missing": args.missing, "roots": _fmt(roots)})


def cmd_rotate(args) -> CommandResult:
    sol = GenQuadruple.from_json(_load_json(args.path))
    out = rotate(sol, args.variant, Rotation(args.c, args.s))
    payload = out.to_json()
    payload["regular"] = check_generalized_solution(out).regular
    return CommandResult("ok", payload)


def cmd_parameterize(args) -> CommandResult:
    data = _load_json(args.path)
    if args.mode == "asymmetric":
        keys = ("y1", "x2", "x3", "x4", "z23", "z24", "z34")
        missing = [k for k in keys if k not in data]
        if missing:
            raise UsageError(f"missing parameters: {', '.join(missing)}")
        sol = parameterize_asymmetric(*(parse_rational(data[k]) for k in keys))
        rep = check_generalized_solution(sol)
        return CommandResult("ok", {"solution": sol.to_json(), "report": rep.to_json()})
    sp = SymParam.from_json(data)
    A = parameterize_symmetric(sp)
    return CommandResult("ok", {
        "a": A.to_json()["a"],
        "hyperdet": format_rational(hyperdet(A)),
        "kernel": KernelVectors(sp.p, sp.q, sp.r).to_json(),
        "kernel_check": kernel_check(A, KernelVectors(sp.p, sp.q, sp.r)),
        "faces": _fmt(face_determinants(A)),
        "witnesses": _fmt(symmetric_witnesses(sp)),
    })


def cmd_kernel(args) -> CommandResult:
    A = Hypermatrix222.from_json(_load_json(args.path))
    kv = kernel_solve(A)
    if kv is None:
        return CommandResult("fail", {"kernel": None}, ["no rational kernel vectors found"])
    return CommandResult("ok", {"kernel": kv.to_json()})


def _parse_shard(text: str) -> tuple[int, int]:
    try:
        index, count = (int(part) for part in text.split("/"))
    except ValueError:
        raise UsageError(f"shard must look like i/n, got {text!r}") from None
    return index, count


def cmd_search(args) -> CommandResult:
    try:
        if args.shard is not None:
            if args.jobs != 1:
                raise UsageError("--shard and --jobs cannot be combined")
            tuples = enumerate_diophantine(SearchConfig(args.bound, args.arity, shard=_parse_shard(args.shard)))
        else:
            SearchConfig(args.bound, args.arity)
            tuples = enumerate_parallel(args.bound, args.arity, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = {"arity": args.arity, "bound": args.bound, "count": len(tuples),
               "tuples": [_fmt(t.elements) for t in tuples]}
    if args.shard is not None:
        payload["shard"] = args.shard
    if args.arity == 4:
        rep = classify_regular(tuples)
        payload["regular"] = rep.regular_count
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            write_csv(tuples, args.arity, fh)
    return CommandResult("ok", payload)


def cmd_reduce(args) -> CommandResult:
    M = SymmetricMatrixInstance.from_json(_load_json(args.path))
    return CommandResult("ok", reduce_rank2(M).to_json())


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dioquad", description="Exact algebra of Diophantine tuples and 2x2x2 hyperdeterminants.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("verify-identities", help="run the symbolic identity suites")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check", help="check a tuple JSON file for the Diophantine property and regularity")
    p.add_argument("path")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("extend-triple", help="both regular fourth elements of a triple")
    p.add_argument("values", nargs=3, type=_rat, metavar="X")
    p.set_defaults(func=cmd_extend_triple)

    p = sub.add_parser("extend-quadruple", help="both regular fifth elements of a quadruple")
    p.add_argument("values", nargs=4, type=_rat, metavar="X")
    p.set_defaults(func=cmd_extend_quadruple)

    p = sub.add_parser("hyperdet", help="hyperdeterminant and six face determinants")
    p.add_argument("path")
    p.set_defaults(func=cmd_hyperdet)

    p = sub.add_parser("complete", help="fill one missing hypermatrix entry")
    p.add_argument("path")
    p.add_argument("--missing", required=True, help="entry index such as 000")
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("rotate", help="apply one of the three rotations to a generalised quadruple")
    p.add_argument("path")
    p.add_argument("--variant", required=True, choices=sorted(VARIANTS))
    p.add_argument("--c", required=True, type=_rat)
    p.add_argument("--s", required=True, type=_rat)
    p.set_defaults(func=cmd_rotate)

    p = sub.add_parser("parameterize", help="generate a regular solution from parameters")
    p.add_argument("--mode", required=True, choices=("asymmetric", "symmetric"))
    p.add_argument("path")
    p.set_defaults(func=cmd_parameterize)

    p = sub.add_parser("kernel", help="kernel vectors of a hypermatrix with zero hyperdeterminant")
    p.add_argument("path")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("search", help="enumerate integer Diophantine tuples")
    p.add_argument("--arity", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--shard", help="run one shard, written i/n")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--csv", help="also write a CSV file")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("reduce-matrix", help="rank-2 reduction of a symmetric matrix")
    p.add_argument("path")
    p.set_defaults(func=cmd_reduce)
    return parser


def run(argv) -> CommandResult:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        return CommandResult("error", None, [str(exc)])
    except MathematicalFailure as exc:
        return CommandResult("fail", None, [str(exc)])
    except (ValueError, KeyError, TypeError) as exc:
        return CommandResult("error", None, [f"bad input: {exc}"])


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if any(a in ("-h", "--help") for a in argv):
        try:
            build_parser().parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
    result = run(argv)
    for line in result.diagnostics:
        print(line, file=sys.stderr)
    json.dump(result.document(), sys.stdout, sort_keys=True)
    sys.stdout.write("\n")
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
