"""Command-line front end.

    dipolewave overlap --family quabis --a 0 --theta-deg 90
    dipolewave fig2 --out fig2.csv
    dipolewave stats --eta 1 0 --s 1e-4 --tau 0.5 --tau 50 --mode both
    dipolewave sweep --variable abs_eta --range 0 8 --steps 81 --fixed s=1e-4

Angles are given in degrees and converted to radians.  Exit codes: 0 success,
2 usage or domain error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from dipolewave import figures
from dipolewave.errors import ContractViolation, DomainError, NumericalError
from dipolewave.quadrature import DEFAULT_N_ALPHA, DEFAULT_N_BETA

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", type=Path, default=None, help="output file (default: stdout)")
    p.add_argument("--quad-nodes", type=int, default=DEFAULT_N_ALPHA, help="Gauss-Legendre nodes per polar segment")
    p.add_argument("--beta-nodes", type=int, default=DEFAULT_N_BETA, help="azimuthal nodes")
    p.add_argument("--seed", type=int, default=None, help="reserved; all computations are deterministic")
    p.add_argument("--config", type=Path, default=None, help="JSON file with defaults for any flag")
    return p


def _fixed_pair(text: str) -> tuple[str, object]:
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    key, value = text.split("=", 1)
    try:
        return key, json.loads(value)
    except json.JSONDecodeError:
        return key, value


def build_parser() -> tuple[argparse.ArgumentParser, dict]:
    parser = argparse.ArgumentParser(prog="dipolewave", description=__doc__.splitlines()[0] if __doc__ else None)
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()
    subs = {}

    p = sub.add_parser("overlap", parents=[common], help="dipole content of one beam")
    p.add_argument("--family", default="quabis", choices=("quabis", "sine", "truncated-dipole", "dipole"))
    p.add_argument("--a", type=float, default=0.0, help="f/w0 for the quabis family")
    p.add_argument("--theta-deg", type=float, default=90.0)
    p.add_argument("--pol", default="longitudinal", choices=("longitudinal", "transverse"))
    p.add_argument("--M", type=int, default=0, help="dipole index of the 'dipole' family")
    p.add_argument("--target", default="auto", help="dipole wave to project on: -1, 0, 1, x, y or auto")
    subs["overlap"] = p

    p = sub.add_parser("fig1", parents=[common], help="g2(0) vs |eta| at phases pi/(2n)")
    p.add_argument("--steps", type=int, default=801)
    subs["fig1"] = p

    for name, text in (("fig2", "longitudinal beam contents vs theta"), ("fig3", "transverse vs longitudinal")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--steps", type=int, default=181)
        subs[name] = p

    p = sub.add_parser("stats", parents=[common], help="flux ratio and g2 at one point")
    p.add_argument("--eta", type=float, nargs=2, default=[1.0, 0.0], metavar=("RE", "IM"))
    p.add_argument("--s", type=float, default=1e-4, help="saturation parameter 8|beta|^2/Gamma")
    p.add_argument("--delta", type=float, default=0.0, help="detuning 2 Delta / Gamma")
    p.add_argument("--tau", type=float, action="append", default=None, help="delay in units of 1/Gamma (repeatable)")
    p.add_argument("--mode", choices=figures.STATS_MODES, default="both")
    subs["stats"] = p

    p = sub.add_parser("sweep", parents=[common], help="one-parameter sweep")
    p.add_argument("--variable", choices=figures.SWEEP_VARIABLES, required=False, default=None)
    p.add_argument("--range", type=float, nargs=2, default=None, metavar=("LO", "HI"),
                   help="theta range in degrees")
    p.add_argument("--steps", type=int, default=51)
    p.add_argument("--fixed", type=_fixed_pair, action="append", default=None, help="KEY=VALUE (theta in degrees)")
    subs["sweep"] = p
    return parser, subs


def _apply_config(argv: list[str], parser: argparse.ArgumentParser, subs: dict) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", type=Path, default=None)
    known, _ = pre.parse_known_args(argv)
    if known.config is None:
        return
    try:
        cfg = json.loads(known.config.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read config {known.config}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise DomainError("config file must hold a JSON object")
    cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
    if "fixed" in cfg and isinstance(cfg["fixed"], dict):
        cfg["fixed"] = list(cfg["fixed"].items())
    for sp in subs.values():
        own = {a.dest for a in sp._actions}
        sp.set_defaults(**{k: v for k, v in cfg.items() if k in own})


def run(args) -> figures.FigureTable:
    nodes = dict(n_alpha=args.quad_nodes, n_beta=args.beta_nodes)
    if args.command == "overlap":
        return figures.cmd_overlap(args.family, args.a, np.deg2rad(args.theta_deg), args.target, args.pol, args.M,
                                   **nodes)
    if args.command == "fig1":
        return figures.cmd_fig1(args.steps)
    if args.command == "fig2":
        return figures.cmd_fig2(args.steps, **nodes)
    if args.command == "fig3":
        return figures.cmd_fig3(args.steps, **nodes)
    if args.command == "stats":
        return figures.cmd_stats(args.eta[0], args.eta[1], args.s, args.delta, args.tau or [], args.mode)
    if args.command == "sweep":
        if args.variable is None or args.range is None:
            raise DomainError("sweep needs --variable and --range")
        lo, hi = args.range
        fixed = dict(args.fixed or [])
        if args.variable == "theta":
            lo, hi = np.deg2rad(lo), np.deg2rad(hi)
        if "theta" in fixed:
            fixed["theta"] = float(np.deg2rad(float(fixed["theta"])))
        spec = figures.SweepSpec(args.variable, float(lo), float(hi), args.steps, fixed)
        return figures.cmd_sweep(spec, **nodes)
    raise DomainError(f"unknown command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subs = build_parser()
    try:
        _apply_config(argv, parser, subs)
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:  # argparse usage errors and --help
            return int(exc.code or 0)
        if args.quad_nodes < 2 or args.beta_nodes < 1:
            raise DomainError("--quad-nodes must be >= 2 and --beta-nodes >= 1")
        text = run(args).render(args.format)
    except (DomainError, ContractViolation) as exc:
        print(f"dipolewave: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"dipolewave: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
