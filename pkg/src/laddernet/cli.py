"""Command-line front end: ``compute``, ``sweep``, ``converge`` and ``solve``.

Exit codes: 0 success (non-convergence included), 2 usage error,
3 input/output or schema error, 4 numeric failure (lambda outside the
admissible set).
"""

from __future__ import annotations

import argparse
import cmath
import csv
import json
import math
import sys

from . import exhaustion
from .dirichlet import effective_admittance
from .errors import LadderNetError, NetworkFormatError, NotInLambdaSet
from .infinite import classify_cl, classify_lc
from .network import LadderKind, LadderSpec, load_network

EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_NUMERIC = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def parse_complex(text: str) -> complex:
    """Parse ``a+bi``, ``a-bi``, ``bi`` or ``a`` (no spaces)."""
    if not text or any(ch.isspace() for ch in text):
        raise argparse.ArgumentTypeError(f"invalid complex number {text!r}")
    t = text.strip()
    if t.endswith("i"):
        t = t[:-1] + "j"
    if "j" in t[:-1] or "J" in t:
        raise argparse.ArgumentTypeError(f"invalid complex number {text!r}")
    try:
        return complex(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid complex number {text!r}") from None


def fmt_real(x: float) -> str:
    """9 significant digits, exponent without padding: 4.16666667e-1."""
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "infinity" if x > 0 else "-infinity"
    if x == 0:
        x = 0.0
    mantissa, exp = f"{x:.8e}".split("e")
    return f"{mantissa}e{int(exp)}"


def fmt_complex(z: complex) -> str:
    if cmath.isinf(z):
        return "infinity"
    im = z.imag if z.imag != 0 else 0.0
    sign = "-" if math.copysign(1.0, im) < 0 else "+"
    return f"{fmt_real(z.real)}{sign}{fmt_real(abs(im))}i"


def _json_complex(z: complex | None):
    if z is None:
        return None
    if cmath.isinf(z):
        return "infinity"
    return {"re": float(fmt_real(z.real)), "im": float(fmt_real(z.imag))}


def _reciprocal(p: complex) -> complex:
    if cmath.isinf(p):
        return 0j
    if p == 0:
        return complex(math.inf, 0)
    return 1 / p


def _spec(args) -> LadderSpec:
    kind = LadderKind(args.kind)
    if kind is LadderKind.AB:
        if args.alpha is None or args.beta is None:
            raise CliError("--kind ab requires --alpha and --beta", EXIT_USAGE)
        if args.alpha == 0 or args.beta == 0:
            raise CliError("alpha and beta must be nonzero", EXIT_NUMERIC)
        return LadderSpec.ab(args.alpha, args.beta)
    if not (args.L > 0 and args.C > 0):
        raise CliError("--L and --C must be positive", EXIT_USAGE)
    return LadderSpec(kind, L=args.L, C=args.C)


def _lambda(args) -> complex:
    if args.lam is None:
        raise CliError("--lambda is required", EXIT_USAGE)
    if args.lam == 0:
        raise CliError("lambda must be nonzero", EXIT_NUMERIC)
    return args.lam


def _region(spec: LadderSpec, lam: complex) -> str | None:
    if spec.kind is LadderKind.LC:
        return classify_lc(lam, spec.L, spec.C).value
    if spec.kind is LadderKind.CL:
        return classify_cl(lam, spec.L, spec.C).value
    return None


def cmd_compute(args, out) -> None:
    spec = _spec(args)
    lam = _lambda(args)
    if args.n is None and not args.limit:
        raise CliError("compute needs --n and/or --limit", EXIT_USAGE)
    record = {
        "kind": spec.kind.value,
        "lambda": _json_complex(lam),
        "region": _region(spec, lam),
    }
    if args.n is not None:
        if args.n < 1:
            raise CliError("--n must be >= 1", EXIT_USAGE)
        p_n = exhaustion.term(spec, lam, args.n)
        record["n"] = args.n
        record["P_n"] = _json_complex(p_n)
        record["Z_n"] = _json_complex(_reciprocal(p_n))
    if args.limit:
        limit = exhaustion.infinite_limit(spec, lam)
        record["status"] = "converged" if limit.converged else "non_convergent"
        record["P_inf"] = _json_complex(limit.value)
        record["Z_inf"] = _json_complex(None if limit.value is None else _reciprocal(limit.value))
    out.write(json.dumps(record) + "\n")


def sweep_rows(spec: LadderSpec, re_min, re_max, im_min, im_max, n_re, n_im):
    """Rows (re, im, region, conv, p) in row-major order: imaginary part outer."""
    for j in range(n_im):
        im = im_min + (im_max - im_min) * j / (n_im - 1)
        for i in range(n_re):
            re = re_min + (re_max - re_min) * i / (n_re - 1)
            lam = complex(re, im)
            if lam == 0:
                yield re, im, "zero", 0, None
                continue
            limit = exhaustion.infinite_limit(spec, lam)
            yield re, im, _region(spec, lam), int(limit.converged), limit.value


def cmd_sweep(args, out) -> None:
    spec = _spec(args)
    if spec.kind is LadderKind.AB:
        raise CliError("sweep supports --kind lc or cl", EXIT_USAGE)
    if not (args.re_min < args.re_max and args.im_min < args.im_max):
        raise CliError("grid bounds must satisfy min < max", EXIT_USAGE)
    if args.nre < 2 or args.nim < 2:
        raise CliError("--nre and --nim must be >= 2", EXIT_USAGE)
    rows = sweep_rows(spec, args.re_min, args.re_max, args.im_min, args.im_max, args.nre, args.nim)
    try:
        handle = open(args.out, "w", newline="") if args.out else out
    except OSError as exc:
        raise CliError(f"cannot write {args.out}: {exc}", EXIT_INPUT) from None
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["re", "im", "region", "conv", "p_re", "p_im"])
        for re, im, region, conv, p in rows:
            p_re = fmt_real(p.real) if p is not None else ""
            p_im = fmt_real(p.imag) if p is not None else ""
            writer.writerow([fmt_real(re), fmt_real(im), region, conv, p_re, p_im])
    finally:
        if handle is not out:
            handle.close()


def cmd_converge(args, out) -> None:
    spec = _spec(args)
    lam = _lambda(args)
    if args.n_max < 4:
        raise CliError("--n-max must be >= 4", EXIT_USAGE)
    seq = exhaustion.exhaust(spec, lam, args.n_max)
    limit = exhaustion.infinite_limit(spec, lam)
    out.write("n P_n error\n")
    for n, p in seq.terms:
        if limit.converged and not cmath.isinf(p):
            err = fmt_real(abs(p - limit.value))
        else:
            err = "-"
        out.write(f"{n} {fmt_complex(p)} {err}\n")
    verdict = exhaustion.diagnose(seq, args.tol)
    parts = [f"verdict {verdict.status.value}"]
    if verdict.estimated_limit is not None:
        parts.append(f"limit {fmt_complex(verdict.estimated_limit)}")
    parts.append(f"rate {fmt_real(verdict.estimated_rate)}")
    if limit.converged:
        parts.append(f"P_inf {fmt_complex(limit.value)}")
    out.write(" ".join(parts) + "\n")


def cmd_solve(args, out) -> None:
    if args.file is None:
        raise CliError("--file is required", EXIT_USAGE)
    lam = _lambda(args)
    try:
        net = load_network(args.file)
    except OSError as exc:
        raise CliError(f"cannot read {args.file}: {exc}", EXIT_INPUT) from None
    except NetworkFormatError as exc:
        raise CliError(f"invalid network file: {exc}", EXIT_INPUT) from None
    try:
        result = effective_admittance(net, lam)
    except NotInLambdaSet as exc:
        u, v = exc.edge
        raise CliError(f"edge ({u},{v}) has zero impedance at lambda={fmt_complex(lam)}", EXIT_NUMERIC) from None
    out.write(f"lambda = {fmt_complex(lam)}\n")
    if result.solvable:
        for x in sorted(result.solution.values):
            out.write(f"v({x}) = {fmt_complex(result.solution.values[x])}\n")
        out.write(f"P = {fmt_complex(result.value)}\n")
        out.write(f"Z = {fmt_complex(_reciprocal(result.value))}\n")
        out.write(f"unique = {'true' if result.solution.unique else 'false'}\n")
    else:
        out.write("P = infinity\n")
        out.write(f"Z = {fmt_complex(0j)}\n")


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--kind", choices=[k.value for k in LadderKind], default="lc")
    shared.add_argument("--L", type=float, default=1.0)
    shared.add_argument("--C", type=float, default=1.0)
    shared.add_argument("--alpha", type=parse_complex)
    shared.add_argument("--beta", type=parse_complex)
    shared.add_argument("--lambda", dest="lam", type=parse_complex)

    parser = argparse.ArgumentParser(prog="laddernet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[shared], help="P_n and/or the infinite limit at one lambda")
    p.add_argument("--n", type=int)
    p.add_argument("--limit", action="store_true")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("sweep", parents=[shared], help="region/limit map over a lambda grid (CSV)")
    p.add_argument("--re-min", type=float, default=-3.0)
    p.add_argument("--re-max", type=float, default=3.0)
    p.add_argument("--im-min", type=float, default=-3.0)
    p.add_argument("--im-max", type=float, default=3.0)
    p.add_argument("--nre", type=int, default=61)
    p.add_argument("--nim", type=int, default=61)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("converge", parents=[shared], help="P_n table and convergence verdict")
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--tol", type=float, default=exhaustion.DEFAULT_TOL)
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("solve", parents=[shared], help="Dirichlet solve of a JSON network")
    p.add_argument("--file")
    p.set_defaults(func=cmd_solve)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args, out)
    except CliError as exc:
        if exc.code == EXIT_USAGE:
            parser.error(str(exc))
        print(f"laddernet: error: {exc}", file=sys.stderr)
        return exc.code
    except NotInLambdaSet as exc:
        print(f"laddernet: error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except LadderNetError as exc:
        print(f"laddernet: error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return 0


if __name__ == "__main__":
    sys.exit(main())
