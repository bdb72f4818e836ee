"""Command-line interface.

Exit codes: 0 success, 1 a verification check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__, ladder, spectrum, verify, wavefunction
from ._kernels import BACKEND
from .errors import HulthenError
from .grid import make_grid
from .report import dumps_report
from .spectrum import Mode
from .tolerances import DEFAULT


def _g(x) -> str:
    return format(float(x), ".17g")


def parse_range(text: str) -> list[int]:
    """``"3"``, ``"1..4"`` or ``"1,3,5"``."""
    out = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad n range {text!r}; use N, A..B or A,B,C") from None
    if not out:
        raise argparse.ArgumentTypeError("empty n range")
    return out


def parse_exact(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a number or fraction, got {text!r}") from None


def parse_tol(text: str) -> tuple[str, float]:
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError("tolerance override must look like NAME=VALUE")
    try:
        return name.strip(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad tolerance value in {text!r}") from None


def _mode(args, parser) -> Mode:
    if args.mode == "generalized":
        if args.beta is None:
            parser.error("--mode generalized needs --beta")
        if not args.beta > 0:
            parser.error("--beta must be positive")
        return Mode.generalized(args.beta)
    if args.beta is not None:
        parser.error("--beta is only meaningful with --mode generalized")
    return spectrum.PAPER


def _emit(rows: list[dict], columns: list[str], fmt: str, output) -> str:
    if fmt == "json":
        text = json.dumps(rows, indent=2) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({c: r.get(c, "") for c in columns})
        text = buf.getvalue()
    else:
        cells = [[str(r.get(c, "")) for c in columns] for r in rows]
        widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
        lines = ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
        lines.append("  ".join("-" * w for w in widths))
        lines += ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells]
        text = "\n".join(lines) + "\n"
    _write(text, output)
    return text


def _write(text: str, output) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8", newline="")
    else:
        sys.stdout.write(text)


# --- commands -------------------------------------------------------------------

def cmd_spectrum(args, parser) -> int:
    mode = _mode(args, parser)
    coupling = spectrum.Coupling(V0=args.V0)
    rows = []
    prev = None
    for n in args.n:
        try:
            e = spectrum.entry(n, coupling, mode)
        except spectrum.NoBoundStateError:
            rows.append({"n": n, "bound": "false"})
            prev = None
            continue
        ratio = e.epsilon if mode.kind == "paper" else e.epsilon / mode.beta
        row = {
            "n": n,
            "s": _g(e.s),
            "s_exact": str(e.s) if isinstance(e.s, Fraction) else "",
            "epsilon": _g(e.epsilon),
            "E_over_V0": _g(ratio),
            "E_over_V0_exact": str(ratio) if isinstance(ratio, Fraction) else "",
            "E": _g(e.E),
            "bound": "true",
        }
        if mode.kind == "paper":
            row["spacing"] = "" if prev is None else _g(ratio - prev)
        prev = ratio
        rows.append(row)
    columns = ["n", "s", "s_exact", "epsilon", "E_over_V0", "E_over_V0_exact", "E", "bound"]
    if mode.kind == "paper":
        columns.append("spacing")
    _emit(rows, columns, args.format, args.output)
    return 0


def _family_s(args, parser, n: int):
    if args.s is not None:
        return args.s
    try:
        return spectrum.s_param(n, _mode(args, parser))
    except spectrum.NoBoundStateError as exc:
        parser.error(str(exc))


def cmd_wavefunction(args, parser) -> int:
    if len(args.n) != 1:
        parser.error("wavefunction takes a single --n")
    n = args.n[0]
    s = _family_s(args, parser, n)
    if not s > 0:
        parser.error(f"s = {s} is not positive (n=1 in paper mode); pass --s to pick a family")
    state = wavefunction.make_state(s, n)
    gf = wavefunction.sample(state, make_grid(args.grid, args.grid_kind))
    _write(gf.to_csv(), args.output)
    return 0


def cmd_normalization(args, parser) -> int:
    rows = []
    for n in args.n:
        s = args.s if args.s is not None else spectrum.s_param(n, _mode(args, parser))
        q = wavefunction.normalize_quadrature(float(s), n)
        try:
            sym = wavefunction.normalize_symbolic(n).value(s)
        except HulthenError:
            sym = None
        pub = wavefunction.published_norm(n, s)
        rows.append({
            "n": n,
            "s": _g(s),
            "N_quadrature": _g(q),
            "N_symbolic": "" if sym is None else _g(sym),
            "N_published": "absent" if pub is None else _g(pub),
            "rel_diff": "" if sym is None else _g(abs(q - sym) / sym),
        })
    _emit(rows, ["n", "s", "N_quadrature", "N_symbolic", "N_published", "rel_diff"], args.format, args.output)
    return 0


def cmd_ladder(args, parser) -> int:
    s = args.s if args.s is not None else Fraction(3, 4)
    sf = float(s)
    g = make_grid(args.grid, "uniform", interior=True)
    norms = wavefunction.family_norms(sf, range(max(1, min(args.n) - 1), max(args.n) + 2))
    rows = []
    for n in args.n:
        lc = ladder.ladder_coeffs(sf, n, norms)
        rows.append({
            "n": n,
            "s": _g(sf),
            "l_plus": _g(lc.l_plus),
            "l_minus": "" if lc.l_minus is None else _g(lc.l_minus),
            "l_zero": _g(lc.l_zero),
            "raise_residual": _g(ladder.raise_residual(sf, n, g, norms)),
            "lower_residual": "" if n < 2 else _g(ladder.lower_residual(sf, n, g, norms)),
        })
    _emit(rows, ["n", "s", "l_plus", "l_minus", "l_zero", "raise_residual", "lower_residual"],
          args.format, args.output)
    return 0


def cmd_verify(args, parser) -> int:
    if args.mode == "generalized" and args.beta is None:
        parser.error("--mode generalized needs --beta")
    if args.beta is not None and args.mode != "generalized":
        parser.error("--beta is only meaningful with --mode generalized")
    try:
        tol = DEFAULT.override(**dict(args.tol or []))
    except KeyError as exc:
        parser.error(str(exc.args[0]))
    suites = tuple(args.suite) if args.suite else verify.SUITES
    cfg = verify.VerifyConfig(
        suites=suites, mode=args.mode, beta=args.beta, ns=args.n, s=args.s,
        seed=args.seed, draws=args.draws, grid_size=args.grid, tol=tol,
    )
    checks = verify.run(cfg)
    metadata = {
        "package": "hulthen",
        "version": __version__,
        "kernel_backend": BACKEND,
        "config": cfg.as_dict(),
        "tolerances": tol.as_dict(),
    }
    _write(dumps_report(checks, metadata), args.output)
    if not args.quiet:
        for c in checks:
            print(c.line(), file=sys.stderr)
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed", file=sys.stderr)
    return 1 if failed else 0


# --- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hulthen", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, n_default, formats=True):
        sp.add_argument("--mode", choices=("paper", "generalized"), default=None)
        sp.add_argument("--beta", type=parse_exact, default=None, help="well strength (generalized mode)")
        sp.add_argument("--n", type=parse_range, default=n_default, help="level or range, e.g. 1..4")
        sp.add_argument("--output", "-o", default=None)
        if formats:
            sp.add_argument("--format", choices=("table", "csv", "json"), default="table")

    sp = sub.add_parser("spectrum", help="levels n, s, epsilon and E/V0")
    common(sp, [1, 2, 3, 4])
    sp.add_argument("--V0", type=float, default=1.0)
    sp.set_defaults(func=cmd_spectrum, subparser=sp)

    sp = sub.add_parser("wavefunction", help="CSV dump of psi_n on a grid")
    common(sp, [2], formats=False)
    sp.add_argument("--s", type=parse_exact, default=None, help="fixed family exponent")
    sp.add_argument("--grid", type=int, default=201)
    sp.add_argument("--grid-kind", choices=("uniform", "chebyshev"), default="uniform")
    sp.set_defaults(func=cmd_wavefunction, subparser=sp)

    sp = sub.add_parser("normalization", help="quadrature vs exact vs published norms")
    common(sp, [1, 2, 3, 4])
    sp.add_argument("--s", type=parse_exact, default=None)
    sp.set_defaults(func=cmd_normalization, subparser=sp)

    sp = sub.add_parser("ladder", help="ladder eigen-factors and action residuals")
    common(sp, [1, 2, 3, 4, 5, 6])
    sp.add_argument("--s", type=parse_exact, default=None)
    sp.add_argument("--grid", type=int, default=200)
    sp.set_defaults(func=cmd_ladder, subparser=sp)

    sp = sub.add_parser("verify", help="run verification suites, JSON report")
    common(sp, None, formats=False)
    sp.add_argument("--suite", action="append", choices=verify.SUITES)
    sp.add_argument("--s", type=parse_exact, default=None)
    sp.add_argument("--seed", type=int, default=12345)
    sp.add_argument("--draws", type=int, default=100)
    sp.add_argument("--grid", type=int, default=200)
    sp.add_argument("--tol", type=parse_tol, action="append", metavar="NAME=VALUE")
    sp.add_argument("--quiet", "-q", action="store_true")
    sp.set_defaults(func=cmd_verify, subparser=sp)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    sub = args.subparser
    if getattr(args, "grid", 10) < 5:
        sub.error("--grid must be at least 5")
    s_floor_ok = (lambda s: s >= 0) if args.command == "normalization" else (lambda s: s > 0)
    if getattr(args, "s", None) is not None and not s_floor_ok(args.s):
        sub.error("--s must be positive" + (" or zero" if args.command == "normalization" else ""))
    if args.command in ("spectrum", "normalization") and any(n < 1 for n in args.n):
        sub.error("n must be >= 1 (n = 0 is excluded: the solution diverges at y -> 1)")
    try:
        return args.func(args, sub)
    except HulthenError as exc:
        print(f"hulthen: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
