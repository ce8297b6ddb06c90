"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
import argparse
import csv
import io
import json
import sys

import numpy as np

from . import models, susy, verify
from .errors import DomainError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def fmt(v) -> str:
    # 17 significant digits, always '.' as decimal point; -0.0 printed as 0
    return format(float(v) + 0.0, ".17g")


def params_from_args(args):
    try:
        if args.family == models.OSCILLATOR:
            return models.OscillatorParams(args.omega, args.l)
        if args.A is None or args.B is None:
            raise UsageError("scarf family needs --A and --B")
        return models.ScarfParams(args.A, args.B)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


def add_family_args(p):
    p.add_argument("--family", choices=models.FAMILIES, required=True)
    p.add_argument("--omega", type=float, default=1.0, help="oscillator frequency (default 1)")
    p.add_argument("--l", type=int, default=0, help="angular momentum (default 0)")
    p.add_argument("--A", type=float, help="Scarf I parameter A")
    p.add_argument("--B", type=float, help="Scarf I parameter B, 0 < B < A - 1")


def spectrum_report(params, nu_max: int, n: int = verify.ORACLE_N, refine: bool = True, extended: bool = True):
    """Analytic vs finite-difference spectrum as a JSON-ready dict."""
    numeric = verify.numeric_spectrum(params, k=nu_max + 1, extended=extended, n=n, refine=refine)
    rows = []
    for nu, e_num in enumerate(numeric):
        e = models.energy(params, nu)
        rows.append({"nu": nu, "E_analytic": e, "E_numeric": float(e_num), "abs_diff": abs(e - float(e_num))})
    a, b = models.oracle_domain(params, nu_max)
    return {
        "schema_version": verify.SCHEMA_VERSION,
        "family": models.family_of(params),
        "params": _params_dict(params),
        "potential": "extended" if extended else "standard",
        "rows": rows,
        "oracle": {"domain": [a, b], "n_interior": n, "refine": refine},
    }


def _params_dict(params):
    if models.family_of(params) == models.OSCILLATOR:
        return {"omega": params.omega, "l": params.l}
    return {"A": params.bigA, "B": params.bigB}


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in r])
    return buf.getvalue()


def cmd_spectrum(args) -> int:
    params = params_from_args(args)
    if args.nu_max < 0:
        raise UsageError("--nu-max must be >= 0")
    report = spectrum_report(params, args.nu_max, n=args.n, refine=not args.no_refine, extended=not args.standard)
    tol = args.tol if args.tol is not None else verify.SPECTRUM_TOL[models.family_of(params)]
    report["tolerance"] = tol
    ok = all(r["abs_diff"] <= tol for r in report["rows"])
    report["passed"] = ok
    if args.json:
        _write(json.dumps(report, indent=2) + "\n", args.out)
    else:
        rows = [(r["nu"], r["E_analytic"], r["E_numeric"], r["abs_diff"]) for r in report["rows"]]
        _write(_csv(["nu", "E_analytic", "E_numeric", "abs_diff"], rows), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_sample(args) -> int:
    params = params_from_args(args)
    if args.nu < 0:
        raise UsageError("--nu must be >= 0")
    if args.points < 3:
        raise UsageError("--points must be >= 3")
    xs = models.sample_grid(params, args.points, nu_max=max(args.nu, 5))
    table = models.wavefunction_table(params, args.nu, xs, extended=not args.standard, normalized=args.normalized)
    header, cols = ["x", "psi"], [table.xs, table.values]
    if args.factored:
        psi10, one_plus_phi = models.ground_state_factorized(params, table.xs)
        header += ["phi", "psi10"]
        cols += [np.asarray(one_plus_phi) - 1.0, np.asarray(psi10)]
    _write(_csv(header, zip(*cols)), args.out)
    return EXIT_OK


def cmd_partner(args) -> int:
    params = params_from_args(args)
    spec = susy.FactorizationSpec(params)
    lo, hi = models.oracle_domain(params)
    if models.family_of(params) == models.OSCILLATOR:
        hi = models.support_cutoff(params)
    # both ends are singular for W; stay strictly inside
    xs = np.linspace(lo, hi, args.points + 2)[1:-1]
    cols = [
        xs,
        susy.superpotential(spec, xs),
        susy.superpotential_prime(spec, xs),
        models.potential(params, xs),
        susy.partner_potential(spec, xs),
    ]
    _write(_csv(["x", "W", "W_prime", "V_plus", "V_minus"], zip(*cols)), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    unknown = [s for s in (args.only or []) if s not in verify.SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(verify.SUITES)}")
    summary = verify.run(args.only, perturb_v2=args.perturb_v2)
    if args.json:
        _write(json.dumps(summary.to_dict(), indent=2) + "\n", args.out)
    else:
        lines = []
        for c in summary.checks:
            extra = "".join(f" {k}={v:.12g}" for k, v in c.detail.items())
            lines.append(f"{'PASS' if c.passed else 'FAIL'} {c.name} value={c.value:.3e} tol={c.tolerance:.1e}{extra}")
        lines.append(f"overall: {'PASS' if summary.passed else 'FAIL'} ({len(summary.checks)} checks)")
        _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK if summary.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="x1pot",
        description="Rationally extended radial oscillator and Scarf I potentials built on X1 polynomials.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="compare analytic and finite-difference spectra")
    add_family_args(p)
    p.add_argument("--nu-max", type=int, default=5)
    p.add_argument("--n", type=int, default=verify.ORACLE_N, help="interior grid points of the oracle")
    p.add_argument("--no-refine", action="store_true", help="skip the h/2 Richardson step")
    p.add_argument("--standard", action="store_true", help="use the standard (not extended) potential")
    p.add_argument("--tol", type=float, help="absolute tolerance (default 1e-4 oscillator, 1e-3 scarf)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("sample", help="tabulate a wavefunction as CSV")
    add_family_args(p)
    p.add_argument("--nu", type=int, default=0)
    p.add_argument("--points", type=int, default=2001)
    p.add_argument("--normalized", action="store_true")
    p.add_argument("--factored", action="store_true", help="also emit phi and psi10 columns")
    p.add_argument("--standard", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("partner", help="tabulate W, W', V(+) and V(-) as CSV")
    add_family_args(p)
    p.add_argument("--points", type=int, default=1000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_partner)

    p = sub.add_parser("verify", help="run the verification suites")
    p.add_argument("--only", action="append", metavar="SUITE", help=f"one of: {', '.join(verify.SUITES)}")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.add_argument("--perturb-v2", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except OSError as exc:
        print(f"x1pot: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
