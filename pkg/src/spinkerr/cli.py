"""Command-line entry point: ``derive``, ``point``, ``sweep`` and ``compare``."""

from __future__ import annotations

import argparse
import sys

from .errors import SpinKerrError
from .nonreciprocity import ToleranceConfig
from .params import CONFIG_KEYS, derive_rates, load_config, params_from_config, parse_config
from .sweep import (
    AXES,
    ENGINES,
    MODELS,
    ResultRow,
    SweepSpec,
    compare_engines,
    default_dims,
    rows_to_csv,
    rows_to_json,
    run_sweep,
    solve_point,
)


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="flat 'key = value' file (SI units)")
    p.add_argument(
        "--set", action="append", default=[], metavar="KEY=VALUE",
        help=f"override a config key; keys: {', '.join(CONFIG_KEYS)}",
    )
    p.add_argument("--omega", type=float, help="angular velocity in rad/s")


def _add_point_axes(p: argparse.ArgumentParser):
    p.add_argument("--delta-l", type=float, help="detuning delta_L in units of gamma")
    p.add_argument("--j", type=float, help="backscattering J in units of gamma")
    p.add_argument("--model", choices=MODELS)
    p.add_argument("--engine", choices=ENGINES)
    p.add_argument("--nmax", type=int, help="Fock truncation per mode")
    p.add_argument("--eps-n", type=float, default=ToleranceConfig.eps_n)
    p.add_argument("--delta-g", type=float, default=ToleranceConfig.delta_g)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinkerr",
        description="Photon statistics and nonreciprocity of a spinning Kerr resonator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", help="print the derived rates")
    _add_common(p)

    p = sub.add_parser("point", help="observables and nonreciprocity at one point")
    _add_common(p)
    _add_point_axes(p)
    p.add_argument("--drive", choices=("cw", "ccw", "both"), default="both",
                   help="which drive direction's observables to print")
    p.add_argument("--format", choices=("text", "json"), default="text")

    for name, help_ in (("sweep", "grid run, tabular output"),
                        ("compare", "analytic-vs-numeric errors over a grid")):
        p = sub.add_parser(name, help=help_)
        _add_common(p)
        _add_point_axes(p)
        p.add_argument("--axis", choices=AXES, default="delta_l")
        p.add_argument("--start", type=float, default=-4.0)
        p.add_argument("--stop", type=float, default=4.0)
        p.add_argument("--count", type=int, default=41)
        p.add_argument("--workers", type=int, default=1)
        if name == "sweep":
            p.add_argument("--format", choices=("csv", "json"), default="csv")
            p.add_argument("--output", help="write the table here instead of stdout")
    return parser


def _settings(args) -> dict:
    config = load_config(args.config) if args.config else {}
    overrides = "\n".join(args.set)
    config.update(parse_config(overrides))
    if args.omega is not None:
        config["omega_rad_s"] = args.omega
    for attr, key in (("delta_l", "delta_l_over_gamma"), ("j", "j_over_gamma"),
                      ("model", "model"), ("engine", "engine"), ("nmax", "nmax")):
        value = getattr(args, attr, None)
        if value is not None:
            config[key] = value
    if config.get("model", "single") not in MODELS:
        raise ValueError(f"model must be one of {MODELS}")
    if config.get("engine", "numeric") not in ENGINES:
        raise ValueError(f"engine must be one of {ENGINES}")
    return config


def _cmd_derive(args, out) -> int:
    params = params_from_config(_settings(args))
    rates = derive_rates(params)
    g = rates.gamma
    print(f"omega0 = {rates.omega0:.12g} rad/s", file=out)
    print(f"gamma = {g:.12g} rad/s", file=out)
    for name, value in (("chi", rates.chi), ("xi", rates.xi), ("delta_f_abs", rates.delta_f_abs),
                        ("delta_f", rates.delta_f)):
        print(f"{name} = {value:.12g} rad/s = {value / g:.12g} gamma", file=out)
    return 0


def _format_report(label: str, rep, drives, out):
    print(f"[{label}]", file=out)
    for drive in drives:
        o = getattr(rep, drive)
        g3 = "n/a" if o.g3 is None else f"{o.g3:.12g}"
        print(f"{drive}: N = {o.n:.12g}  g2 = {o.g2:.12g}  g3 = {g3}", file=out)
    print(f"R1 = {rep.r1:.12g} dB  R2 = {rep.r2:.12g} dB  R3 = {rep.r3:.12g} dB", file=out)
    print(f"class = {rep.classification}", file=out)


def _cmd_point(args, out) -> int:
    cfg = _settings(args)
    params = params_from_config(cfg)
    model = cfg.get("model", "single")
    engine = cfg.get("engine", "numeric")
    dims = default_dims(model, cfg.get("nmax"))
    dl = cfg.get("delta_l_over_gamma", 0.0)
    j = cfg.get("j_over_gamma", 0.0)
    tol = ToleranceConfig(args.eps_n, args.delta_g)
    res = solve_point(params, dl, params.omega, j, model, engine, dims, tol)
    if args.format == "json":
        row = ResultRow(0, "delta_l", dl, dl, params.omega, j, model, engine, dims, res)
        out.write(rows_to_json([row]))
        return 0
    drives = ("cw", "ccw") if args.drive == "both" else (args.drive,)
    print(f"delta_l = {dl:.12g} gamma  omega = {params.omega:.12g} rad/s  "
          f"j = {j:.12g} gamma  model = {model}  dims = {dims}", file=out)
    if res.numeric is not None:
        _format_report("numeric", res.numeric, drives, out)
        print(f"max relative residual = {res.max_residual:.3e}", file=out)
    if res.analytic is not None:
        _format_report("analytic", res.analytic, drives, out)
    return 0


def _spec(args, engine=None) -> SweepSpec:
    cfg = _settings(args)
    model = cfg.get("model", "single")
    return SweepSpec(
        params=params_from_config(cfg),
        axis=args.axis,
        start=args.start,
        stop=args.stop,
        count=args.count,
        delta_l_over_gamma=cfg.get("delta_l_over_gamma", 0.0),
        j_over_gamma=cfg.get("j_over_gamma", 0.0),
        model=model,
        engine=engine or cfg.get("engine", "numeric"),
        tol=ToleranceConfig(args.eps_n, args.delta_g),
        dims=default_dims(model, cfg.get("nmax")),
        workers=args.workers,
    )


def _cmd_sweep(args, out) -> int:
    rows = run_sweep(_spec(args))
    text = rows_to_csv(rows) if args.format == "csv" else rows_to_json(rows)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    failed = [r for r in rows if r.error]
    for r in failed:
        print(f"row {r.index}: {r.error}", file=sys.stderr)
    return 1 if failed else 0


def _cmd_compare(args, out) -> int:
    rows = run_sweep(_spec(args, engine="both"))
    stats = compare_engines(rows)
    print(f"points = {stats['points']}", file=out)
    print(f"max relative N error = {stats['n']:.6g}", file=out)
    print(f"max relative g2 error = {stats['g2']:.6g}", file=out)
    if rows and rows[0].model == "two":
        print(f"max relative g3 error = {stats['g3']:.6g}", file=out)
    return 0 if stats["points"] == len(rows) else 1


COMMANDS = {"derive": _cmd_derive, "point": _cmd_point, "sweep": _cmd_sweep, "compare": _cmd_compare}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "count", 1) < 1:
            parser.error("--count must be >= 1")
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (SpinKerrError, ValueError, OSError) as exc:
        print(f"spinkerr: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
