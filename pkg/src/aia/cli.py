"""Command-line driver: sweeps, power-law fits, impulse-interval scans.

    aia <lz|tfi|open> --config FILE [--out FILE.csv] [--threads N]
    aia fit --csv FILE --column NAME --tmin V --tmax V
    aia dtau-scan --config FILE --tf V [--out FILE.csv]

Exit codes: 0 success, 1 config error, 2 numerical failure in every row.
"""

import argparse
import sys

from .sweeps import (ConfigError, fit_line, load_config, run_dtau_scan,
                     run_fit, run_sweep)


def _add_sweep_parser(sub, model):
    p = sub.add_parser(model, help=f"run a {model} sweep over t_f")
    p.add_argument("--config", required=True, help="key = value config file")
    p.add_argument("--out", default=None, help="output CSV path")
    p.add_argument("--threads", type=int, default=1, help="worker processes")
    return p


def main(argv=None):
    parser = argparse.ArgumentParser(prog="aia",
                                     description="adiabatic-impulse sweep driver")
    sub = parser.add_subparsers(dest="command", required=True)
    for model in ("lz", "tfi", "open"):
        _add_sweep_parser(sub, model)

    fit_p = sub.add_parser("fit", help="power-law fit of a CSV column")
    fit_p.add_argument("--csv", required=True)
    fit_p.add_argument("--column", required=True)
    fit_p.add_argument("--tmin", type=float, required=True)
    fit_p.add_argument("--tmax", type=float, required=True)

    scan_p = sub.add_parser("dtau-scan", help="distance vs impulse interval at one t_f")
    scan_p.add_argument("--config", required=True)
    scan_p.add_argument("--tf", type=float, required=True)
    scan_p.add_argument("--out", default=None)

    args = parser.parse_args(argv)

    if args.command in ("lz", "tfi", "open"):
        try:
            cfg = load_config(args.config)
        except (ConfigError, OSError) as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return 1
        if cfg.model != args.command:
            print(f"config error: config is for model {cfg.model!r}, "
                  f"command was {args.command!r}", file=sys.stderr)
            return 1
        path, rows, n_failed = run_sweep(cfg, out=args.out, threads=args.threads)
        print(f"wrote {len(rows)} rows to {path}" +
              (f" ({n_failed} failed)" if n_failed else ""))
        return 2 if n_failed == len(rows) else 0

    if args.command == "fit":
        try:
            fr = run_fit(args.csv, args.column, args.tmin, args.tmax)
        except (ValueError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        print(f"amplitude = {fr.amplitude:.6g}")
        print(f"exponent  = {fr.exponent:.6g}")
        print(f"residual  = {fr.residual:.6g}")
        print(fit_line(args.column, fr))
        return 0

    try:
        cfg = load_config(args.config)
        path, _, _ = run_dtau_scan(cfg, args.tf, out=args.out)
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote impulse-interval scan to {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
