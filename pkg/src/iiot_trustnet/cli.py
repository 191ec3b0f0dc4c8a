"""Experiment harness.

Subcommands map one-to-one onto the experiment families: error-curve,
attack-strength, snr-curve, alteration, compromise, and simulate. Every
command is deterministic for a fixed seed and writes RFC-4180-style CSV
(header first, LF endings, floats at six significant digits).

Exit codes: 0 success, 1 usage error, 2 config error, 3 runtime error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .ledger import dump_chain
from .sim import ConfigError, SimConfig, run, run_world, sweep_attack_strength
from .threat import (
    ChannelParams,
    attack_strength,
    compromised_throughput,
    db_to_linear,
    probability_of_error,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONFIG = 2
EXIT_RUNTIME = 3


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(cell) for cell in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="ascii", newline="")


def parse_grid(spec: str) -> list[float]:
    """Grid spec: either 'a,b,c' or inclusive 'start:stop:step'."""
    spec = spec.strip()
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid must be start:stop:step, got {spec!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0 or stop < start:
            raise ValueError(f"bad grid range {spec!r}")
        count = int(round((stop - start) / step)) + 1
        if abs(start + (count - 1) * step - stop) > 1e-9:
            raise ValueError(f"step does not divide the range in {spec!r}")
        return [float(x) for x in np.linspace(start, stop, count)]
    values = [float(p) for p in spec.split(",") if p.strip()]
    if not values:
        raise ValueError(f"empty grid {spec!r}")
    return values


def parse_config_file(path: str) -> SimConfig:
    """Flat key=value file, one pair per line, '#' starts a comment."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    pairs = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw_line!r}")
        key, value = line.split("=", 1)
        pairs[key.strip()] = value.strip()
    return SimConfig.from_mapping(pairs)


def _load_base_config(args, **overrides) -> SimConfig:
    if getattr(args, "config", None):
        config = parse_config_file(args.config)
    else:
        config = SimConfig(**overrides)
    if getattr(args, "seed", None) is not None:
        config = replace(config, seed=args.seed)
    config.validate()
    return config


def cmd_error_curve(args) -> int:
    w_m_values = parse_grid(args.w_m)
    w_fa_values = (
        parse_grid(args.w_fa)
        if args.w_fa
        else [float(x) for x in np.linspace(0.0, 1.0, 50)]
    )
    rows = []
    for w_m in w_m_values:
        for w_fa in w_fa_values:
            rows.append([w_m, w_fa, probability_of_error(w_fa, w_m, args.pr_on, args.pr_off)])
    write_csv(Path(args.out), ["w_m", "w_fa", "w_e"], rows)
    return EXIT_OK


def cmd_attack_strength(args) -> int:
    alphas = parse_grid(args.alphas)
    config = _load_base_config(
        args,
        device_count=args.devices,
        attacker_count=5,
        trust_enabled=True,
        ledger_enabled=False,
        # budget below ceil((grace+1)/2) so every ratio-blocked attacker has
        # already crossed it: keeps the compromise trend monotone in alpha
        compromise_budget=2,
    )
    rows = [
        [alpha, mean, std]
        for alpha, mean, std in sweep_attack_strength(config, alphas, runs=args.runs)
    ]
    write_csv(
        Path(args.out), ["alpha", "mean_compromised_fraction", "stddev"], rows
    )
    return EXIT_OK


def cmd_snr_curve(args) -> int:
    snr_md_values = parse_grid(args.snr_md)
    snr_lid = args.snr_lid
    if args.db:
        snr_lid = db_to_linear(snr_lid)
        snr_md_values = [db_to_linear(v) for v in snr_md_values]
    rows = []
    for snr_md in snr_md_values:
        channel = ChannelParams(snr_lid=snr_lid, snr_md=snr_md)
        rows.append([
            snr_md,
            attack_strength(channel),
            compromised_throughput(args.mu1, args.mu3, channel),
        ])
    write_csv(Path(args.out), ["snr_md", "rho", "r_nid"], rows)
    return EXIT_OK


def _parse_sizes(spec: str) -> list[int]:
    sizes = [int(p) for p in spec.split(",") if p.strip()]
    if not sizes:
        raise ValueError(f"empty size list {spec!r}")
    return sizes


def cmd_alteration(args) -> int:
    sizes = _parse_sizes(args.sizes)
    base = _load_base_config(args, attacker_count=5)
    rows = []
    for size in sizes:
        for ledger_enabled in (True, False):
            attempts = succeeded = detected = 0
            for r in range(args.runs):
                cfg = replace(
                    base,
                    device_count=size,
                    ledger_enabled=ledger_enabled,
                    seed=base.seed + r,
                )
                metrics = run(cfg)
                attempts += metrics.alterations_attempted
                succeeded += metrics.alterations_succeeded
                detected += metrics.alterations_detected
            rate = detected / attempts if attempts else 0.0
            rows.append([size, ledger_enabled, attempts, succeeded, detected, rate])
    write_csv(
        Path(args.out),
        ["network_size", "ledger_enabled", "attempts", "succeeded", "detected", "success_rate"],
        rows,
    )
    return EXIT_OK


def cmd_compromise(args) -> int:
    sizes = _parse_sizes(args.sizes)
    # always-lying attackers: the trust pipeline caps their delivered false
    # messages at the grace window, the conventional network never stops them
    base = _load_base_config(
        args, attacker_count=5, alpha=1.0, ledger_enabled=False
    )
    rows = []
    for trust_enabled in (True, False):
        for size in sizes:
            counts = []
            for r in range(args.runs):
                cfg = replace(
                    base,
                    device_count=size,
                    trust_enabled=trust_enabled,
                    seed=base.seed + r,
                )
                counts.append(run(cfg).compromised_count)
            rows.append([trust_enabled, size, float(np.mean(counts))])
    write_csv(
        Path(args.out),
        ["trust_enabled", "network_size", "mean_compromised_count"],
        rows,
    )
    return EXIT_OK


def cmd_simulate(args) -> int:
    config = _load_base_config(args)
    out_dir = Path(args.out)
    world, metrics = run_world(config)
    header = [
        "tick", "sent", "accepted", "rejected",
        "alterations_attempted", "alterations_succeeded", "alterations_detected",
        "compromised_devices", "blocked_devices",
    ]
    rows = [
        [
            t.tick, t.sent, t.accepted, t.rejected,
            t.alterations_attempted, t.alterations_succeeded, t.alterations_detected,
            t.compromised_devices, t.blocked_devices,
        ]
        for t in metrics.ticks
    ]
    write_csv(out_dir / "metrics.csv", header, rows)
    if config.ledger_enabled:
        for phase, chain in world.ledgers.items():
            path = out_dir / f"ledger_{phase.name.lower()}.bin"
            with open(path, "wb") as stream:
                dump_chain(chain, stream)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="iiot-trustnet", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_out):
        p.add_argument("--seed", type=int, default=None, help="run seed (u64)")
        p.add_argument("--runs", type=int, default=30, help="seeded runs per row")
        p.add_argument("--out", default=default_out, help="output path")
        p.add_argument("--config", default=None, help="key=value config file")

    p = sub.add_parser("error-curve", help="decision error vs false authentication")
    p.add_argument("--w-m", default="0,0.25,0.5", help="non-detection grid")
    p.add_argument("--w-fa", default=None, help="false-auth grid (default 50 points in [0,1])")
    p.add_argument("--pr-on", type=float, default=0.8, help="attacker-on prior")
    p.add_argument("--pr-off", type=float, default=0.2, help="attacker-off prior")
    common(p, "error_curve.csv")
    p.set_defaults(func=cmd_error_curve)

    p = sub.add_parser("attack-strength", help="compromise vs attack rate")
    p.add_argument("--alphas", default="0,0.2,0.4,0.6,0.8,1.0", help="attack-rate grid")
    p.add_argument("--devices", type=int, default=25, help="network size")
    common(p, "attack_strength.csv")
    p.set_defaults(func=cmd_attack_strength)

    p = sub.add_parser("snr-curve", help="compromised-receiver throughput vs attacker SNR")
    p.add_argument("--mu1", type=float, default=0.4, help="legitimate-only state probability")
    p.add_argument("--mu3", type=float, default=0.1, help="contested state probability")
    p.add_argument("--snr-lid", type=float, default=10.0, help="legitimate SNR")
    p.add_argument("--snr-md", default="0:20:0.5", help="attacker SNR grid")
    p.add_argument("--db", action="store_true", help="interpret SNR inputs as dB")
    common(p, "snr_curve.csv")
    p.set_defaults(func=cmd_snr_curve)

    p = sub.add_parser("alteration", help="stored-data alteration with and without the ledger")
    p.add_argument("--sizes", default="25,100", help="network sizes")
    common(p, "alteration.csv")
    p.set_defaults(func=cmd_alteration)

    p = sub.add_parser("compromise", help="compromised devices with and without trust")
    p.add_argument("--sizes", default="25,100", help="network sizes")
    common(p, "compromise.csv")
    p.set_defaults(func=cmd_compromise)

    p = sub.add_parser("simulate", help="full run: per-tick metrics plus ledger dumps")
    common(p, "simout")
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - map anything else to runtime failure
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
