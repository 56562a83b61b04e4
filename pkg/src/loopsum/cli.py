"""Command-line front end: ``compute``, ``verify`` and ``dump``.

Exit codes: 0 success, 1 a verification FAIL, 2 usage error, 3 an algebraic
failure such as an unexpected non-divisibility.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Sequence

from .laurent import DivisibilityError, render
from .polymatrix import MatrixKind, SizeRuleError, build_matrix
from .sumrule import (
    IdentityId,
    InterpolationError,
    RouteMismatchError,
    Method,
    Mode,
    Model,
    OPEN_METHODS,
    PERIODIC_METHODS,
    identity_min_size,
    oracle_interpolate,
    verify_many,
    z_open_compute,
    zp_compute,
)
from . import symfunc as sf

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ALGEBRA = 0, 1, 2, 3

JOBS_ENV = "LOOPSUM_JOBS"

# symbolic size ceilings; beyond these terms blow up quickly
SYMBOLIC_CEILING = {Model.PERIODIC: 6, Model.OPEN: 5}

SUITES = {
    "periodic": (
        IdentityId.REC1P, IdentityId.REC2P, IdentityId.PMREC, IdentityId.MUREC,
        IdentityId.RECP, IdentityId.GENMU, IdentityId.CROSS_PERIODIC,
        IdentityId.MU_REDUCTION, IdentityId.ZTILDE_VW, IdentityId.ZTILDE_REC,
    ),
    "open": (
        IdentityId.RECZ, IdentityId.REC2_OPEN, IdentityId.PPMREC, IdentityId.PREC1,
        IdentityId.GENVAR, IdentityId.EPS_CONV, IdentityId.CROSS_OPEN,
    ),
    "anchors": (IdentityId.ORACLE_MATCH, IdentityId.SYMMETRY),
}
SUITES["all"] = SUITES["periodic"] + SUITES["open"] + SUITES["anchors"]

_OPEN_IDS = set(SUITES["open"]) | {IdentityId.ORACLE_MATCH, IdentityId.SYMMETRY}


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _vars(args) -> tuple[str, ...]:
    if args.vars:
        names = tuple(v.strip() for v in args.vars.split(",") if v.strip())
        if len(set(names)) != len(names):
            raise UsageError("duplicate variable names")
        return names
    if args.L is None:
        raise UsageError("give --L or --vars")
    if args.L < 1:
        raise UsageError("--L must be at least 1")
    return sf.zvars(args.L)


def _ceiling(args, model: Model) -> int:
    return args.max_symbolic if args.max_symbolic is not None else SYMBOLIC_CEILING[model]


# -- compute -------------------------------------------------------------------

def cmd_compute(args) -> int:
    model = Model(args.model)
    vars = _vars(args)
    if len(vars) > _ceiling(args, model):
        raise UsageError(f"{len(vars)} variables exceeds the symbolic ceiling "
                         f"{_ceiling(args, model)} (raise it with --max-symbolic)")
    method = Method(args.method) if args.method else (
        Method.DET_E if model is Model.PERIODIC else Method.DET_LAMBDA)
    allowed = PERIODIC_METHODS if model is Model.PERIODIC else OPEN_METHODS
    if method is Method.ORACLE_INTERP:
        if args.vars:
            raise UsageError("the oracle route uses the default variable names")
        res = oracle_interpolate(model, len(vars))
    elif method not in allowed:
        raise UsageError(f"{method.value} is not a {model.value} method")
    elif model is Model.PERIODIC:
        res = zp_compute(vars, method)
    else:
        res = z_open_compute(vars, method)
    if args.format == "json":
        text = _dumps({"command": "compute", **res.to_json(), "text": render(res.value)})
    else:
        text = (
            f"model: {res.model.value}\n"
            f"method: {res.method.value}\n"
            f"vars: {', '.join(res.vars)}\n"
            f"normalization: {res.normalization}\n"
            f"terms: {len(res.value)}\n"
            f"value: {render(res.value)}\n"
        )
    _emit(text, args.out)
    return EXIT_OK


# -- verify -------------------------------------------------------------------

def _selected_ids(args) -> list[IdentityId]:
    if args.id:
        ids = []
        for name in args.id:
            try:
                ids.append(IdentityId(name.lower().replace("_", "-")))
            except ValueError:
                raise UsageError(f"unknown identity {name!r}") from None
        return ids
    if args.suite:
        return list(SUITES[args.suite])
    raise UsageError("give --id or --suite")


def _sizes(args, id: IdentityId) -> list[int]:
    lo = identity_min_size(id)
    if args.L is not None:
        return [args.L]
    if args.max_L is None:
        raise UsageError("give --L or --max-L")
    sizes = list(range(lo, args.max_L + 1))
    if id is IdentityId.MU_REDUCTION:
        sizes = [L for L in sizes if L % 2 == 0]
    return sizes


def cmd_verify(args) -> int:
    mode = Mode(args.mode)
    seed = args.seed if args.seed is not None else random.SystemRandom().randrange(2**31)
    jobs = args.jobs if args.jobs is not None else int(os.environ.get(JOBS_ENV, "1"))
    tasks = []
    for id in _selected_ids(args):
        for L in _sizes(args, id):
            if L < identity_min_size(id):
                raise UsageError(f"{id.value} needs L >= {identity_min_size(id)}")
            if id is IdentityId.MU_REDUCTION and L % 2:
                raise UsageError("mu-reduction is defined for even L only")
            if mode is Mode.SYMBOLIC:
                model = Model.OPEN if id in _OPEN_IDS else Model.PERIODIC
                if L > _ceiling(args, model):
                    raise UsageError(f"{id.value} at L={L} exceeds the symbolic ceiling "
                                     f"{_ceiling(args, model)} (raise it with --max-symbolic)")
            tasks.append((id, L, mode, args.trials, seed))
    if not tasks:
        raise UsageError("no verification tasks selected")
    reports = verify_many(tasks, jobs=max(1, jobs))
    failed = sum(not r.passed for r in reports)
    if args.format == "json":
        text = _dumps({
            "command": "verify",
            "seed": seed,
            "reports": [r.to_json() for r in reports],
            "summary": {"total": len(reports), "failed": failed},
        })
    else:
        lines = [r.to_text() for r in reports]
        lines.append(f"seed={seed} total={len(reports)} failed={failed}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_FAIL if failed else EXIT_OK


# -- dump -----------------------------------------------------------------------

def cmd_dump(args) -> int:
    vars = _vars(args)
    if bool(args.family) == bool(args.matrix):
        raise UsageError("give exactly one of --family or --matrix")
    if args.family:
        index = args.m if args.m is not None else args.i
        if index is None:
            raise UsageError("--family needs --m or --i")
        try:
            value = sf.family(args.family, vars, index)
        except ValueError as e:
            raise UsageError(str(e)) from None
        if args.format == "json":
            text = _dumps({"command": "dump", "family": sf.Family(args.family).value,
                           "index": index, "value": value.to_json(), "text": render(value)})
        else:
            text = render(value) + "\n"
    else:
        try:
            m = build_matrix(MatrixKind(args.matrix), vars)
        except SizeRuleError as e:
            raise UsageError(str(e)) from None
        if args.format == "json":
            text = _dumps({"command": "dump", "matrix": args.matrix, **m.to_json()})
        else:
            text = m.to_text() + "\n"
    _emit(text, args.out)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="loopsum", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--L", type=int, help="number of variables z1..zL")
        sp.add_argument("--vars", help="comma-separated variable names instead of --L")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--out", help="write output to this file")
        sp.add_argument("--max-symbolic", type=int, default=None,
                        help="override the symbolic size ceiling")

    c = sub.add_parser("compute", help="compute a sum rule")
    common(c)
    c.add_argument("--model", choices=[m.value for m in Model], required=True)
    c.add_argument("--method", choices=[m.value for m in Method])
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", help="verify identities")
    common(v)
    v.add_argument("--suite", choices=sorted(SUITES))
    v.add_argument("--id", action="append", help="identity id (repeatable)")
    v.add_argument("--max-L", type=int, dest="max_L")
    v.add_argument("--mode", choices=[m.value for m in Mode], default="symbolic")
    v.add_argument("--trials", type=int, default=20)
    v.add_argument("--seed", type=int, help="seed; generated and recorded when absent")
    v.add_argument("--jobs", type=int, help=f"parallel workers (default ${JOBS_ENV} or 1)")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("dump", help="print a family member or a matrix")
    common(d)
    d.add_argument("--family", choices=[f.value for f in sf.Family])
    d.add_argument("--matrix", choices=[k.value for k in MatrixKind])
    d.add_argument("--m", type=int)
    d.add_argument("--i", type=int)
    d.set_defaults(func=cmd_dump)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"loopsum: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DivisibilityError, InterpolationError, RouteMismatchError) as e:
        print(f"loopsum: algebraic failure: {e}", file=sys.stderr)
        return EXIT_ALGEBRA


if __name__ == "__main__":
    sys.exit(main())
