"""Batch command-line interface.

Every capability is a subcommand writing machine-readable output (CSV with
17 significant digits, flat JSON, or raw little-endian float64).  All
stochastic subcommands require an explicit --seed and reproduce
byte-identical output for a fixed configuration, independent of
--threads.

Exit codes: 0 success, 2 flag or domain error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys

import numpy as np

from .charfn import charfn_eps
from .dist import density_table, quantile as dist_quantile, sample as dist_sample
from .errors import DomainError, NumericalError
from .fbm import simulate_fbm
from .lrdmix import approx_error_report, build_mixture, simulate_lrd
from .mc import FunctionalSpec, ks_distance, run_monte_carlo
from .spectrum import build_spectrum, choose_M

__all__ = ["main"]

_CORR_NAMES = {"power": "power", "ml": "mittag_leffler"}
_FUNCTIONALS = {
    "mean": "mean_h2",
    "corr": "correlation",
    "sojourn": "sojourn",
    "quadvar": "quadvar",
}


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _open_out(path: str, binary: bool = False):
    if path == "-":
        return (sys.stdout.buffer if binary else sys.stdout), False
    return open(path, "wb" if binary else "w"), True


def _write_rows(path: str, header: list[str], rows) -> None:
    fh, close = _open_out(path)
    try:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
            fh.write("\n")
    finally:
        if close:
            fh.close()


def _write_values(path: str, fmt: str, values: np.ndarray) -> None:
    if fmt == "bin":
        fh, close = _open_out(path, binary=True)
        try:
            fh.write(np.asarray(values, dtype="<f8").tobytes())
        finally:
            if close:
                fh.close()
    else:
        _write_rows(path, ["value"], ((float(v),) for v in values))


def _spectrum_from(args):
    if (args.m is None) == (args.eps is None):
        raise DomainError("exactly one of --m or --eps must be given")
    M = args.m if args.m is not None else choose_M(args.a, args.eps)
    return build_spectrum(args.a, M)


def _grid(lo: float, hi: float, step: float) -> np.ndarray:
    if step <= 0.0:
        raise DomainError("--step must be positive")
    if hi < lo:
        raise DomainError("--xmax must be >= --xmin")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(count)


def _cmd_eigs(args) -> int:
    spec = _spectrum_from(args)
    rows = [(n + 1, float(lam)) for n, lam in enumerate(spec.lambdas)]
    rows.append(("sigma_eps2", float(spec.sigma_eps2)))
    _write_rows(args.out, ["n", "lambda"], rows)
    return 0


def _cmd_charfn(args) -> int:
    spec = _spectrum_from(args)
    zs = _grid(args.zmin, args.zmax, args.step)
    phi = np.atleast_1d(charfn_eps(spec, zs))
    _write_rows(args.out, ["z", "re", "im"],
                ((float(z), float(p.real), float(p.imag)) for z, p in zip(zs, phi)))
    return 0


def _cmd_table(args) -> int:
    spec = _spectrum_from(args)
    xs = _grid(args.xmin, args.xmax, args.step)
    tab = density_table(spec, xs, zmax=args.zmax, tol=args.tol)
    with np.errstate(divide="ignore"):
        logpdf = np.log(tab.pdf)
    _write_rows(args.out, ["x", "pdf", "log_pdf", "cdf"],
                zip(map(float, tab.xs), map(float, tab.pdf),
                    map(float, logpdf), map(float, tab.cdf)))
    return 0


def _cmd_quantile(args) -> int:
    spec = _spectrum_from(args)
    ps = [float(tok) for tok in args.p.split(",") if tok]
    if not ps:
        raise DomainError("--p must list at least one probability")
    _write_rows(args.out, ["p", "x"],
                ((p, dist_quantile(spec, p)) for p in ps))
    return 0


def _cmd_sample(args) -> int:
    spec = _spectrum_from(args)
    _write_values(args.out, args.format, dist_sample(spec, args.seed, args.count))
    return 0


def _cmd_simulate_lrd(args) -> int:
    mix = build_mixture(args.a, _CORR_NAMES[args.corr])
    x = simulate_lrd(mix, args.n, args.seed, threads=args.threads)
    _write_values(args.out, args.format, x)
    return 0


def _cmd_simulate_fbm(args) -> int:
    x = simulate_fbm(args.hurst, args.n, args.seed)
    _write_values(args.out, args.format, x)
    return 0


def _cmd_corr_audit(args) -> int:
    mix = build_mixture(args.a, _CORR_NAMES[args.corr])
    grid = np.geomspace(args.tmin, args.tmax, args.points)
    rows, max_rel = approx_error_report(mix, grid)
    out_rows = [tuple(map(float, r)) for r in rows]
    out_rows.append(("max_abs_rel_err", float(max_rel)))
    _write_rows(args.out, ["t", "target", "approx", "rel_err"], out_rows)
    return 0


def _cmd_mc_run(args) -> int:
    kind = _FUNCTIONALS[args.functional]
    corr = _CORR_NAMES[args.corr] if kind != "quadvar" else None
    fs = FunctionalSpec(kind=kind, a=args.a, n=args.n, lag=args.lag,
                        level=args.level, corr_kind=corr)
    ed = run_monte_carlo(fs, args.reps, args.seed, threads=args.threads)
    spec = build_spectrum(args.a, choose_M(args.a, args.eps))
    ks = ks_distance(ed, spec)
    for name, v in (("mean", ed.mean), ("sd", ed.sd), ("skewness", ed.skewness),
                    ("ks", ks)):
        if not math.isfinite(v):
            raise NumericalError(f"summary value {name} is not finite")
    summary = {
        "functional": args.functional,
        "a": args.a,
        "n": args.n,
        "reps": args.reps,
        "seed": args.seed,
        "mean": ed.mean,
        "sd": ed.sd,
        "skewness": ed.skewness,
        "ks": ks,
    }
    if args.lag is not None:
        summary["lag"] = args.lag
    if args.level is not None:
        summary["level"] = args.level
    if corr is not None:
        summary["corr"] = args.corr
    with open(args.out, "w") as fh:
        json.dump(summary, fh, indent=1, sort_keys=True, allow_nan=False)
        fh.write("\n")
    tab = density_table(spec, ed.kde_xs)
    csv_path = re.sub(r"\.json$", "", args.out) + ".csv"
    _write_rows(csv_path, ["x", "kde", "rosenblatt_pdf"],
                zip(map(float, ed.kde_xs), map(float, ed.kde_vals),
                    map(float, tab.pdf)))
    return 0


def _add_spectrum_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--a", type=float, required=True, help="shape parameter in [0, 0.5)")
    p.add_argument("--m", type=int, default=None, help="number of eigenvalues")
    p.add_argument("--eps", type=float, default=None,
                   help="cube-sum tail target; picks M automatically")


def _add_out_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default="-", help="output path, - for stdout")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rosenblatt",
        description="Rosenblatt distribution computations and limit-theorem "
                    "Monte-Carlo experiments",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eigs", help="eigenvalues and remainder variance as CSV")
    _add_spectrum_flags(p)
    _add_out_flag(p)
    p.set_defaults(func=_cmd_eigs)

    p = sub.add_parser("charfn", help="characteristic function on a z-grid")
    _add_spectrum_flags(p)
    p.add_argument("--zmin", type=float, required=True)
    p.add_argument("--zmax", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    _add_out_flag(p)
    p.set_defaults(func=_cmd_charfn)

    for name in ("density", "cdf"):
        p = sub.add_parser(name, help="density/CDF table on an x-grid")
        _add_spectrum_flags(p)
        p.add_argument("--xmin", type=float, required=True)
        p.add_argument("--xmax", type=float, required=True)
        p.add_argument("--step", type=float, required=True)
        p.add_argument("--zmax", type=float, default=20.0,
                       help="initial quadrature cutoff (auto-extended)")
        p.add_argument("--tol", type=float, default=1e-9)
        _add_out_flag(p)
        p.set_defaults(func=_cmd_table)

    p = sub.add_parser("quantile", help="quantiles at comma-separated probabilities")
    _add_spectrum_flags(p)
    p.add_argument("--p", required=True, help="e.g. 0.05,0.5,0.95")
    _add_out_flag(p)
    p.set_defaults(func=_cmd_quantile)

    p = sub.add_parser("sample", help="i.i.d. draws from the truncated model")
    _add_spectrum_flags(p)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--format", choices=("csv", "bin"), default="csv")
    _add_out_flag(p)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("simulate-lrd", help="long-memory Gaussian sequence")
    p.add_argument("--corr", choices=("power", "ml"), required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--format", choices=("csv", "bin"), default="csv")
    p.add_argument("--threads", type=int, default=1)
    _add_out_flag(p)
    p.set_defaults(func=_cmd_simulate_lrd)

    p = sub.add_parser("simulate-fbm", help="fractional Brownian motion path")
    p.add_argument("--hurst", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--format", choices=("csv", "bin"), default="csv")
    _add_out_flag(p)
    p.set_defaults(func=_cmd_simulate_fbm)

    p = sub.add_parser("corr-audit", help="mixture vs target correlation report")
    p.add_argument("--corr", choices=("power", "ml"), required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--tmin", type=float, default=0.1)
    p.add_argument("--tmax", type=float, default=1e4)
    p.add_argument("--points", type=int, default=200)
    _add_out_flag(p)
    p.set_defaults(func=_cmd_corr_audit)

    p = sub.add_parser("mc", help="Monte-Carlo experiments")
    mcsub = p.add_subparsers(dest="mc_command", required=True)
    p = mcsub.add_parser("run", help="replicate a functional and summarize")
    p.add_argument("--functional", choices=tuple(_FUNCTIONALS), required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--reps", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--lag", type=int, default=None)
    p.add_argument("--level", type=float, default=None)
    p.add_argument("--corr", choices=("power", "ml"), default="power")
    p.add_argument("--eps", type=float, default=1e-4,
                   help="tail target for the reference spectrum")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", required=True,
                   help="JSON summary path; KDE overlay CSV lands beside it")
    p.set_defaults(func=_cmd_mc_run)

    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NumericalError, RuntimeError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
