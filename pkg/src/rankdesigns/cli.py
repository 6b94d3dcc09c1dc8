"""Command-line front end.

Exit status: 0 on success, 1 when the mathematics says no (a hypothesis
fails, a design does not verify, a code is not MRD, a budget refuses the
enumeration), 2 on usage or input-format errors.  Diagnostics for status 1
are emitted in the selected output format; status 2 messages go to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from .am import InvarianceError, am_hypothesis, am_run
from .codes import (
    Budget,
    BudgetExceeded,
    CodeError,
    HypothesisError,
    InconsistencyError,
    MatrixCode,
    covering_radius,
    dual,
    dual_weight_distribution,
    external_distance,
    gabidulin,
    is_dually_qmrd,
    is_mrd,
    macwilliams,
    min_distance,
    puncture,
    shorten,
    weight_distribution,
)
from .designs import DesignError, DesignInstance, dual_design, supports_of_rank
from .fixtures import generate_examples
from .gf import ExtField, Field, FieldError
from .linalg import FqMatrix, LinalgError, Subspace
from .qcomb import q_binomial
from .serialize import FormatError, as_matrix_code, code_to_json, dump_json, load_code, load_json

__all__ = ["main", "build_parser", "run"]

THREADS_ENV = "RANKDESIGNS_THREADS"


class UsageError(Exception):
    pass


class DomainNegative(Exception):
    """Carries the diagnostic payload for an exit-status-1 outcome."""

    def __init__(self, payload: dict) -> None:
        super().__init__(payload.get("message", "negative result"))
        self.payload = payload


# ----------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="table", help="output format")
    common.add_argument("--output", type=Path, help="write the result here instead of stdout")
    common.add_argument("--threads", type=_positive, help=f"worker processes (default: ${THREADS_ENV} or 1)")
    defaults = Budget()
    common.add_argument("--max-codewords", type=_positive, default=defaults.max_codewords)
    common.add_argument("--max-ambient", type=_positive, default=defaults.max_ambient)
    common.add_argument("--max-subspaces", type=_positive, default=defaults.max_subspaces)

    parser = argparse.ArgumentParser(prog="rankdesigns", description="Rank-metric codes and subspace designs.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_text, description=help_text)

    p = add("weight-dist", "rank weight distribution of a code")
    p.add_argument("--code", type=Path, required=True)

    p = add("dual", "trace-dual code")
    p.add_argument("--code", type=Path, required=True)

    p = add("macwilliams", "dual weight distribution from a primal one")
    p.add_argument("--code", type=Path, help="take n, m, k, q and W from this code")
    p.add_argument("--n", type=_positive)
    p.add_argument("--m", type=_positive)
    p.add_argument("--k", type=int)
    p.add_argument("--q", type=_positive)
    p.add_argument("--weights", type=_int_list, help="W_0,W_1,...; missing trailing entries are zero")

    for name, what in (("puncture", "punctured code Pi(C, A, s)"), ("shorten", "shortened code Sigma(C, A, s)")):
        p = add(name, what)
        p.add_argument("--code", type=Path, required=True)
        p.add_argument("--s", type=_positive, required=True)
        p.add_argument("--A", dest="a", type=Path, help="JSON file with an invertible n x n matrix (default identity)")

    p = add("am-check", "test the design-theorem hypothesis at strength t")
    p.add_argument("--code", type=Path, required=True)
    p.add_argument("--t", type=_positive, required=True)

    p = add("am-run", "extract and verify the designs held by a code and its dual")
    p.add_argument("--code", type=Path, required=True)
    p.add_argument("--t", type=_positive, required=True)
    p.add_argument("--w", type=_positive)
    p.add_argument("--w-star", type=_positive)

    p = add("design-verify", "check that a block set is a t-design")
    p.add_argument("--design", type=Path, required=True)
    p.add_argument("--t", type=int, required=True)

    p = add("design-dual", "orthogonal-complement design with predicted and verified lambda")
    p.add_argument("--design", type=Path, required=True)
    p.add_argument("--t", type=int, help="strength, needed when the file does not record one")

    p = add("mrd-check", "MRD, dually-QMRD and trivial-design status of a code")
    p.add_argument("--code", type=Path, required=True)

    p = add("gabidulin", "Gabidulin code over F_{q^m}")
    p.add_argument("--q", type=_positive, required=True)
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--points", type=_int_list, help="evaluation points (default: polynomial basis)")

    p = add("report", "distances, distributions, external distance and covering radius")
    p.add_argument("--code", type=Path, required=True)

    p = add("generate-examples", "write the canonical fixture files")
    p.add_argument("--outdir", type=Path, default=Path("examples_out"))
    return parser


# ----------------------------------------------------------------------
# payload helpers
# ----------------------------------------------------------------------


def _subspace_json(u: Subspace) -> list[list[int]]:
    return [list(r) for r in u.basis]


def _budget(args: argparse.Namespace) -> Budget:
    threads = args.threads
    if threads is None:
        env = os.environ.get(THREADS_ENV)
        if env:
            try:
                threads = _positive(env)
            except argparse.ArgumentTypeError as exc:
                raise UsageError(f"{THREADS_ENV}: {exc}") from None
    return Budget(args.max_codewords, args.max_ambient, args.max_subspaces, threads or 1)


def _code(path: Path) -> MatrixCode:
    return as_matrix_code(load_code(path))


def _params(code: MatrixCode) -> dict:
    return {"n": code.n, "m": code.m, "k": code.k, "q": code.q}


def _design(path: Path) -> DesignInstance:
    data = load_json(path)
    if not isinstance(data, dict):
        raise FormatError(f"{path}: a design file must be a JSON object")
    for key in ("q", "n", "r", "blocks"):
        if key not in data:
            raise FormatError(f"{path}: missing field '{key}'")
    try:
        return DesignInstance.from_json(data)
    except (DesignError, FieldError, LinalgError, TypeError, ValueError) as exc:
        raise FormatError(f"{path}: {exc}") from None


def _matrix_file(path: Path, field, n: int) -> FqMatrix:
    data = load_json(path)
    if not (isinstance(data, list) and len(data) == n and all(isinstance(r, list) and len(r) == n for r in data)):
        raise FormatError(f"{path}: expected an {n} x {n} matrix as a list of rows")
    try:
        return FqMatrix.from_rows(field, data)
    except (FieldError, LinalgError) as exc:
        raise FormatError(f"{path}: {exc}") from None


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------


def _cmd_weight_dist(args, budget):
    code = _code(args.code)
    return {**_params(code), "distribution": weight_distribution(code, budget).to_json()}


def _cmd_dual(args, budget):
    return code_to_json(dual(_code(args.code)))


def _cmd_macwilliams(args, budget):
    if args.code is not None:
        code = _code(args.code)
        n, m, k, q = code.n, code.m, code.k, code.q
        w = weight_distribution(code, budget)
    else:
        missing = [f"--{x}" for x in ("n", "m", "k", "q", "weights") if getattr(args, x) is None]
        if missing:
            raise UsageError(f"macwilliams needs --code or all of --n --m --k --q --weights (missing {' '.join(missing)})")
        n, m, k, q = args.n, args.m, args.k, args.q
        if len(args.weights) > n + 1:
            raise UsageError(f"--weights has {len(args.weights)} entries, at most n+1 = {n + 1} allowed")
        w = list(args.weights) + [0] * (n + 1 - len(args.weights))
    try:
        result = macwilliams(w, n, m, k, q)
    except (CodeError, ArithmeticError) as exc:
        raise DomainNegative({"error": "macwilliams", "message": str(exc)}) from None
    return {"n": n, "m": m, "k": k, "q": q, "distribution": result.to_json()}


def _reshape(args, budget, op):
    code = _code(args.code)
    a = FqMatrix.identity(code.field, code.n) if args.a is None else _matrix_file(args.a, code.field, code.n)
    return code_to_json(op(code, a, args.s))


def _cmd_am_check(args, budget):
    code = _code(args.code)
    holds, diag = am_hypothesis(code, args.t, budget)
    payload = {
        **_params(code),
        "t": args.t,
        "d": diag["d"],
        "bound": diag["bound"],
        "hypothesis_holds": holds,
        "dual_weights_in_window": diag["dual_weights_in_window"],
        "distribution": diag["distribution"].to_json(),
        "dual_distribution": diag["dual_distribution"].to_json(),
    }
    if not holds:
        raise DomainNegative(payload)
    return payload


def _cmd_am_run(args, budget):
    code = _code(args.code)
    try:
        report = am_run(code, args.t, args.w, args.w_star, budget)
    except InvarianceError as exc:
        raise DomainNegative(
            {
                "error": "invariance",
                "message": str(exc),
                "witnesses": {
                    side: {"support": _subspace_json(w.witness[0]), "count": w.witness[1], "other_support": _subspace_json(w.witness[2]), "other_count": w.witness[3]}
                    for side, w in sorted(exc.witnesses.items())
                },
            }
        ) from None
    return report.to_json()


def _cmd_design_verify(args, budget):
    design = _design(args.design)
    if not 0 <= args.t <= design.n:
        raise UsageError(f"--t must lie in [0, {design.n}] for an ambient space of dimension {design.n}")
    check = design.verify(args.t, budget)
    base = {"q": design.q, "n": design.n, "r": design.r, "t": args.t, "blocks": len(design)}
    if check:
        return {**base, "design": True, "lambda": str(check.lam)}
    a, ca, b, cb = check.witness
    raise DomainNegative(
        {
            **base,
            "design": False,
            "counterexample": {"T": _subspace_json(b), "count": str(cb), "reference": _subspace_json(a), "reference_count": str(ca)},
        }
    )


def _cmd_design_dual(args, budget):
    design = _design(args.design)
    t = args.t if args.t is not None else design.t
    if t is None:
        raise UsageError(f"{args.design}: no strength recorded; pass --t")
    check = design.verify(t, budget)
    if not check:
        a, ca, b, cb = check.witness
        raise DomainNegative(
            {"design": False, "t": t, "counterexample": {"T": _subspace_json(b), "count": str(cb), "reference": _subspace_json(a), "reference_count": str(ca)}}
        )
    if design.lam is not None and design.t == t and design.lam != check.lam:
        raise DomainNegative({"design": True, "message": f"recorded lambda {design.lam} differs from verified {check.lam}"})
    return dual_design(design.with_strength(t, check.lam), budget).to_json()


def _trivial_design(code: MatrixCode, d: int, budget: Budget) -> bool | None:
    if d > code.n:
        return None
    found = supports_of_rank(code, d, budget)
    return len(found) == q_binomial(code.n, d, code.q)


def _cmd_mrd_check(args, budget):
    code = _code(args.code)
    if code.k == 0:
        raise DomainNegative({**_params(code), "mrd": False, "message": "the zero code has no minimum distance"})
    d = min_distance(code, budget)
    d_star = min_distance(dual(code), budget)
    payload = {
        **_params(code),
        "d": d,
        "d_star": d_star,
        "mrd": is_mrd(code, budget),
        "dually_qmrd": is_dually_qmrd(code, budget),
        "trivial_design": _trivial_design(code, d, budget),
    }
    if not payload["mrd"]:
        raise DomainNegative(payload)
    return payload


def _cmd_gabidulin(args, budget):
    try:
        ext = ExtField(Field.from_order(args.q), args.m)
    except FieldError as exc:
        raise UsageError(str(exc)) from None
    return code_to_json(gabidulin(ext, args.n, args.k, args.points))


def _cmd_report(args, budget):
    code = _code(args.code)
    wd = weight_distribution(code, budget)
    dual_wd = dual_weight_distribution(code, budget, cross_check=True)
    d = min_distance(code, budget)
    d_star = min_distance(dual(code), budget)
    try:
        rho: int | None = covering_radius(code, budget)
    except BudgetExceeded:
        rho = None
    return {
        **_params(code),
        "d": d,
        "d_star": d_star,
        "distribution": wd.to_json(),
        "dual_distribution": dual_wd.to_json(),
        "external_distance": external_distance(code, budget),
        "covering_radius": rho,
        "mrd": is_mrd(code, budget) if code.k else False,
        "dually_qmrd": is_dually_qmrd(code, budget),
    }


def _cmd_generate_examples(args, budget):
    paths = generate_examples(args.outdir)
    return {"written": [str(p) for p in paths]}


COMMANDS = {
    "weight-dist": _cmd_weight_dist,
    "dual": _cmd_dual,
    "macwilliams": _cmd_macwilliams,
    "puncture": lambda a, b: _reshape(a, b, puncture),
    "shorten": lambda a, b: _reshape(a, b, shorten),
    "am-check": _cmd_am_check,
    "am-run": _cmd_am_run,
    "design-verify": _cmd_design_verify,
    "design-dual": _cmd_design_dual,
    "mrd-check": _cmd_mrd_check,
    "gabidulin": _cmd_gabidulin,
    "report": _cmd_report,
    "generate-examples": _cmd_generate_examples,
}


# ----------------------------------------------------------------------
# rendering
# ----------------------------------------------------------------------


def _flatten(prefix: str, value: Any, out: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        if set(value) == {"counts"}:
            out.append((prefix, " ".join(value["counts"])))
            return
        for key in sorted(value):
            _flatten(f"{prefix}.{key}" if prefix else key, value[key], out)
    elif isinstance(value, list) and value and all(isinstance(v, list) for v in value):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, out)
    elif isinstance(value, list):
        out.append((prefix, " ".join(str(v) for v in value)))
    elif value is None:
        out.append((prefix, "-"))
    elif isinstance(value, bool):
        out.append((prefix, "yes" if value else "no"))
    else:
        out.append((prefix, str(value)))


def render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return dump_json(payload)
    rows: list[tuple[str, str]] = []
    _flatten("", payload, rows)
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text)


def run(args: argparse.Namespace) -> int:
    try:
        budget = _budget(args)
        payload = COMMANDS[args.command](args, budget)
        status = 0
    except DomainNegative as neg:
        payload, status = neg.payload, 1
    except HypothesisError as exc:
        payload, status = {"error": "hypothesis", "message": str(exc)}, 1
    except BudgetExceeded as exc:
        payload, status = {"error": "budget", "message": str(exc)}, 1
    except InconsistencyError as exc:
        payload, status = {"error": "inconsistency", "message": str(exc)}, 1
    except (UsageError, FormatError) as exc:
        sys.stderr.write(f"rankdesigns {args.command}: error: {exc}\n")
        return 2
    except (CodeError, DesignError, FieldError, LinalgError) as exc:
        sys.stderr.write(f"rankdesigns {args.command}: error: {exc}\n")
        return 2
    _emit(render(payload, args.format), args.output)
    return status


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
