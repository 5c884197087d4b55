"""``lpgn`` command line: norms, the delta curve, verification suites and witnesses.

stdout carries data only (JSON, one object per line, or RFC-4180 CSV);
diagnostics go to stderr.  Exit codes: 0 success, 1 a verification suite
failed, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys

import numpy as np

from . import cyclic, zline
from .classify import GroupDescriptor, OutOfScopeError, witness_search
from .exponent import parse_exponent
from .pnorm import NormBudget, combine, norm_certified
from .verify import SUITES, run_suites

SCHEMA = "1"
DEFAULT_TS = "1,8/7,4/3,3/2,2,3,4,8"


class UsageError(ValueError):
    pass


def parse_complex(text: str) -> complex:
    """``"1"``, ``"i"``, ``"-2.5i"``, ``"1+2i"``, ``"1e-3-i"``."""
    s = text.strip().replace(" ", "")
    if not s or not re.fullmatch(r"[0-9eE.+\-ij]+", s):
        raise UsageError(f"malformed complex literal {text!r}")
    try:
        return complex(s.replace("i", "j"))
    except ValueError as exc:
        raise UsageError(f"malformed complex literal {text!r}") from exc


def parse_vector(text: str) -> np.ndarray:
    parts = [t for t in text.split(",")]
    if not parts or any(not t.strip() for t in parts):
        raise UsageError(f"malformed vector {text!r}; use comma-separated a+bi entries")
    return np.array([parse_complex(t) for t in parts], dtype=complex)


def parse_matrix(text: str) -> np.ndarray:
    rows = [parse_vector(r) for r in text.split(";")]
    if len({r.size for r in rows}) != 1:
        raise UsageError("matrix rows have different lengths")
    return np.vstack(rows)


def parse_kernel(text: str) -> zline.Kernel:
    d: dict[int, complex] = {}
    for item in text.split(","):
        k, sep, v = item.partition(":")
        if not sep:
            raise UsageError(f"kernel entries are k:value, got {item!r}")
        try:
            key = int(k.strip())
        except ValueError as exc:
            raise UsageError(f"kernel index {k!r} is not an integer") from exc
        if key in d:
            raise UsageError(f"kernel index {key} given twice")
        d[key] = parse_complex(v)
    return zline.Kernel.from_dict(d)


def parse_exp(text: str):
    try:
        return parse_exponent(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _finite(x: float):
    x = float(x)
    return x if math.isfinite(x) else ("inf" if x > 0 else "-inf")


def _estimate_record(est) -> dict:
    d = est.to_dict()
    d["lower"], d["upper"] = _finite(d["lower"]), _finite(d["upper"])
    return d


# --- commands ---------------------------------------------------------------

def cmd_norm(args) -> tuple[list[dict], list[str]]:
    p = parse_exp(args.p)
    budget = NormBudget(starts=args.starts, seed=args.seed, max_iter=args.max_iter, grid=args.grid)
    given = [s for s in ("gelfand", "coeffs", "kernel", "matrix") if getattr(args, s) is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --gelfand, --coeffs, --kernel, --matrix")
    what = given[0]
    group = GroupDescriptor.parse(args.group) if args.group else None

    if what == "matrix":
        if group is not None:
            raise UsageError("--matrix takes no --group")
        est = norm_certified(parse_matrix(args.matrix), p, budget)
        label = "matrix"
    elif what == "kernel":
        if group is not None and group.kind != "integers":
            raise UsageError("--kernel describes an element of the group Z")
        if p.is_inf:
            raise UsageError("group algebras use p in [1, inf)")
        f = parse_kernel(args.kernel)
        low = zline.norm_lambda_lower(f, p, args.N, budget)
        est = combine([low, zline.norm_lambda_upper(f, p)])
        label = "Z"
    else:
        if group is None or group.kind == "integers":
            raise UsageError("--gelfand/--coeffs need a finite group, e.g. --group Z4")
        if p.is_inf:
            raise UsageError("group algebras use p in [1, inf)")
        n = 1 if group.is_trivial else group.n
        vec = parse_vector(getattr(args, what))
        if vec.size != n:
            raise UsageError(f"{group} has {n} elements but {vec.size} entries were given")
        if n == 1:
            est = norm_certified(vec.reshape(1, 1), p, budget)
        else:
            x = cyclic.from_gelfand(n, vec) if what == "gelfand" else cyclic.from_coeffs(n, vec)
            est = cyclic.norm(x, p, budget)
        label = str(group)

    rec = {"schema": SCHEMA, "command": "norm", "group": label, "p": str(p)}
    rec.update(_estimate_record(est))
    if args.format == "csv":
        return [rec], ["group", "p", "lower", "upper", "exact", "method_tags"]
    return [rec], []


def cmd_delta_curve(args):
    ts = [parse_exp(t) for t in args.ts.split(",")]
    if any(t.is_inf for t in ts):
        raise UsageError("t must be finite")
    budget = NormBudget(starts=args.starts, seed=args.seed, max_iter=args.max_iter, grid=args.grid)
    rows = []
    for t, est in cyclic.delta_curve(ts, budget):
        cf = cyclic.delta_closed_form(t)
        err = max(0.0, est.lower - cf, cf - est.upper)
        rows.append({"t": str(t), "lower": est.lower, "upper": est.upper, "closed_form": cf, "abs_err": err})
    return rows, ["t", "lower", "upper", "closed_form", "abs_err"]


def cmd_verify(args):
    if args.all:
        names = list(SUITES)
    elif args.suite:
        names = args.suite
    else:
        raise UsageError("give --suite NAME (repeatable) or --all")
    grid = tuple(float(parse_exp(g)) for g in args.grid.split(",")) if args.grid else None
    results = run_suites(names, seed=args.seed, trials=args.trials, n=args.n, grid=grid)
    if args.format == "csv":
        rows = [{k: v for k, v in r.to_dict().items() if k != "failures"} for r in results]
        return rows, ["suite", "passed", "failed", "total"], all(r.ok for r in results)
    rec = {"schema": SCHEMA, "command": "verify", "seed": args.seed,
           "suites": [r.to_dict() for r in results], "ok": all(r.ok for r in results)}
    return [rec], [], rec["ok"]


def cmd_witness(args):
    G = GroupDescriptor.parse(args.group)
    p, q = parse_exp(args.p), parse_exp(args.q)
    if p.is_inf or q.is_inf:
        raise UsageError("group algebra exponents lie in [1, inf)")
    if G.kind != "cyclic":
        raise UsageError("witness search needs a finite cyclic group Zn with n >= 2")
    w = witness_search(G, p, q, trials=args.trials, seed=args.seed, unimodular=not args.general)
    rec = w.to_dict()
    if args.format == "csv":
        flat = {"group": rec["group"], "p": rec["p"], "q": rec["q"], "gap_lower": rec["gap_lower"],
                "norm_p_lower": rec["norm_p"]["lower"], "norm_p_upper": rec["norm_p"]["upper"],
                "norm_q_lower": rec["norm_q"]["lower"], "norm_q_upper": rec["norm_q"]["upper"]}
        for j, (re_, im_) in enumerate(rec["gelfand"]):
            flat[f"xi{j}_re"], flat[f"xi{j}_im"] = re_, im_
        return [flat], list(flat)
    return [rec], []


# --- plumbing ---------------------------------------------------------------

def _render(rows, columns, fmt) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_cell(r[k]) for k in columns])
        return buf.getvalue()
    return "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in rows)


def _cell(v) -> str:
    if isinstance(v, list):
        return ";".join(map(str, v))
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _budget_flags(p: argparse.ArgumentParser):
    p.add_argument("--starts", type=int, default=8, help="random starts for the power iteration")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iter", type=int, default=500)
    p.add_argument("--grid", type=int, default=32, help="initial grid of the 2x2 refined solver")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to FILE instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default=None)

    ap = argparse.ArgumentParser(prog="lpgn", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    n = sub.add_parser("norm", parents=[common], help="certified norm of a group algebra element or matrix")
    n.add_argument("--group", help="Zn, Z or trivial")
    n.add_argument("--gelfand", help='Gelfand coordinates, e.g. "1,i"')
    n.add_argument("--coeffs", help="group coefficients f(0), ..., f(n-1)")
    n.add_argument("--kernel", help='finitely supported kernel on Z, e.g. "0:1,1:i"')
    n.add_argument("--matrix", help='rows separated by ";", e.g. "1,2;3,4"')
    n.add_argument("--N", type=int, default=64, help="Toeplitz window -N..N for --kernel")
    n.add_argument("--p", required=True)
    _budget_flags(n)

    d = sub.add_parser("delta-curve", parents=[common], help="norm of (1, i) in F^t(Z2) against its closed form")
    d.add_argument("--ts", default=DEFAULT_TS)
    _budget_flags(d)

    v = sub.add_parser("verify", parents=[common], help="seeded property suites")
    v.add_argument("--suite", action="append", choices=list(SUITES))
    v.add_argument("--all", action="store_true")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int)
    v.add_argument("--n", type=int, help="fixed group order for the cyclic suites")
    v.add_argument("--grid", help="exponent grid for the gamma suite, e.g. 1,1.25,1.5")

    w = sub.add_parser("witness", parents=[common], help="element separating the p- and q-norms")
    w.add_argument("--group", required=True)
    w.add_argument("--p", required=True)
    w.add_argument("--q", required=True)
    w.add_argument("--trials", type=int, default=32)
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--general", action="store_true", help="sample Gaussian rather than unimodular vectors")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.format is None:
        args.format = "csv" if args.command == "delta-curve" else "json"
    ok = True
    try:
        if args.command == "norm":
            rows, cols = cmd_norm(args)
        elif args.command == "delta-curve":
            rows, cols = cmd_delta_curve(args)
        elif args.command == "verify":
            rows, cols, ok = cmd_verify(args)
        else:
            rows, cols = cmd_witness(args)
    except OutOfScopeError as exc:
        print(f"lpgn: out of scope: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"lpgn: {exc}", file=sys.stderr)
        return 2
    text = _render(rows, cols, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not ok:
        print("lpgn: verification failed", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
