"""Command-line front end.

    a2gbeam point --beamformer nsb --mci-km 2.5
    a2gbeam sweep-distance --values 0,1,2.5,5 --set array_size=500
    a2gbeam pattern --beamformer nsb-d

Results go to stdout as CSV and, when an output directory is configured
(``--output-dir`` or ``$A2GBEAM_OUTPUT_DIR``), to ``<subcommand>.csv`` there.
Exit status: 0 success, 2 configuration error, 3 degenerate scenario.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import replace

import numpy as np

from . import sim
from .beamform import DegenerateDirections
from .config import ConfigError, emit_config, load_config, parse_config

log = logging.getLogger("a2gbeam")

OUTPUT_ENV = "A2GBEAM_OUTPUT_DIR"

DEFAULT_AXES = {
    "sweep-distance": "0,0.5,1,1.5,2,2.5,3,3.5,4,4.5,5",
    "sweep-array": "200,300,400,500",
    "doppler-table": "-1,-0.5,0,0.5,1",
    "offset-table": "0,0.5,1,5",
}


def _floats(text):
    return [float(v) for v in text.split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value config file")
    common.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override one config key (repeatable)")
    common.add_argument("--beamformer", choices=("nsb", "nsb-d", "mpdrb"))
    common.add_argument("--mci-km", type=float, help="MCI distance from the macro-cell centre in km")
    common.add_argument("-M", "--array-size", type=int)
    common.add_argument("--k-db", type=float, help="Rician factor in dB")
    common.add_argument("--trials", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--workers", type=int, help="worker threads (default: CPU count)")
    common.add_argument("--monte-carlo", action="store_true", help="also run channel-draw SINR")
    common.add_argument("--output-dir")
    common.add_argument("--plot", action="store_true", help="write an SVG next to the CSV")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="a2gbeam", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True
    sub.add_parser("point", parents=[common], help="one operating point")
    for name, default in DEFAULT_AXES.items():
        sp = sub.add_parser(name, parents=[common], help=f"{name.replace('-', ' ')}")
        unit = {"sweep-distance": "km", "offset-table": "m"}.get(name, "")
        sp.add_argument("--values", default=default,
                        help=f"comma-separated axis values {unit} (default: {default})")
    pp = sub.add_parser("pattern", parents=[common], help="served beam power pattern")
    pp.add_argument("--zenith-max", type=float, default=30.0, help="degrees")
    pp.add_argument("--zenith-step", type=float, default=0.5)
    pp.add_argument("--azimuth-step", type=float, default=5.0)
    sub.add_parser("config", parents=[common], help="print the effective configuration")
    return p


def _overrides(args) -> dict:
    out = {}
    for item in args.set:
        if "=" not in item:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    flag_map = {"beamformer": "beamformer", "array_size": "array_size", "k_db": "rician_factor",
                "trials": "trials", "seed": "seed", "workers": "workers",
                "output_dir": "output_dir"}
    for attr, key in flag_map.items():
        v = getattr(args, attr)
        if v is not None:
            out[key] = v
    if args.mci_km is not None:
        out["mci_distance"] = f"{args.mci_km}km"
    if args.monte_carlo:
        out["monte_carlo"] = "true"
    if args.plot:
        out["plot"] = "true"
    if args.verbose:
        out["verbosity"] = min(args.verbose, 3)
    return out


def _resolve_config(args):
    overrides = _overrides(args)
    if "workers" not in overrides:
        overrides.setdefault("workers", os.cpu_count() or 1)
    if args.config:
        cfg = load_config(args.config, overrides)
    else:
        cfg = parse_config("", overrides)
    if not cfg.output_dir and os.environ.get(OUTPUT_ENV):
        cfg = replace(cfg, output_dir=os.environ[OUTPUT_ENV])
    return cfg


def _write(cfg, name: str, text: str, result=None):
    sys.stdout.write(text)
    if cfg.output_dir:
        os.makedirs(cfg.output_dir, exist_ok=True)
        path = os.path.join(cfg.output_dir, f"{name}.csv")
        with open(path, "w") as fh:
            fh.write(text)
        log.info("wrote %s", path)
        if cfg.plot and result is not None:
            result.plot(os.path.join(cfg.output_dir, f"{name}.svg"))


def _pattern_csv(s: sim.Scenario, args) -> str:
    zen = np.radians(np.arange(0.0, args.zenith_max + 1e-9, args.zenith_step))
    az = np.radians(np.arange(-180.0, 180.0, args.azimuth_step))
    users, grid = sim.pattern_rows(s, zen, az)
    lines = [f"# seed={s.seed} config_hash={s.config_hash()} beamformer={s.beamformer} "
             f"user_rows={len(users)}",
             "zenith_deg,azimuth_deg,power_db"]

    def row(z, a, p):
        db = 10 * np.log10(max(float(p), 1e-300))
        return f"{float(np.degrees(z))!r},{float(np.degrees(a))!r},{float(db)!r}"

    lines += [row(z, a, p) for z, a, p in users]
    for i, z in enumerate(zen):
        lines += [row(z, a, grid[i, j]) for j, a in enumerate(az)]
    return "\n".join(lines) + "\n"


def run(args) -> int:
    cfg = _resolve_config(args)
    logging.basicConfig(level=logging.WARNING - 10 * cfg.verbosity,
                        format="%(levelname)s %(name)s: %(message)s")
    s = cfg.to_scenario()
    cmd = args.command
    if cmd == "config":
        sys.stdout.write(emit_config(cfg))
        return 0
    if cmd == "pattern":
        _write(cfg, cmd, _pattern_csv(s, args))
        return 0
    if cmd == "point":
        result = sim.SweepResult("mci_distance_m", [s.mci_distance], [sim.run_point(s)],
                                 {"seed": s.seed, "config_hash": s.config_hash(),
                                  "beamformer": s.beamformer})
    else:
        values = _floats(args.values)
        if cmd == "sweep-distance":
            result = sim.sweep_distance(s, [v * 1e3 for v in values])
        elif cmd == "sweep-array":
            result = sim.sweep_array(s, [int(v) for v in values])
        elif cmd == "doppler-table":
            result = sim.doppler_table(s, values)
        else:
            result = sim.offset_table(s, values)
    _write(cfg, cmd, result.to_csv(), result)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return run(args)
    except DegenerateDirections as exc:
        # checked first: LinAlgError derives from ValueError
        print(f"a2gbeam: degenerate scenario: {exc}", file=sys.stderr)
        return 3
    except (ConfigError, ValueError) as exc:
        print(f"a2gbeam: configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
