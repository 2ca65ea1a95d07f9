"""Command-line front end: figure data as CSV, single bound evaluations, and
the Monte-Carlo validation harness.

All SNR flags are in dB and converted to linear exactly once, here.  CSV
output uses a header row, comma separators, LF line endings, no trailing
comma, and 12 significant digits, so files are byte-stable across runs.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .blockfading import (
    block_orthogonal_bound,
    block_superimposed_bound,
    optimize_block_pilot_share,
)
from .bounds import (
    hybrid_bound,
    medard_bound,
    optimal_pilot_share,
    optimized_hybrid_bound,
    optimized_superimposed_bound,
    pilot_share_high_snr_limit,
    superimposed_pilot_bound,
)
from .model import ChannelSpec, SignalSpec, rayleigh_channel, rician_channel
from .montecarlo import McConfig, validate_bound

_LN2 = math.log(2.0)


def _db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _unit_scale(unit: str) -> float:
    return 1.0 / _LN2 if unit == "bits" else 1.0


def _parse_preset(preset: str, los: float | None) -> ChannelSpec:
    if los is not None:
        return rician_channel(los)
    if preset == "rayleigh":
        return rayleigh_channel()
    if preset.startswith("rician:"):
        return rician_channel(float(preset.split(":", 1)[1]))
    raise SystemExit(f"unknown preset {preset!r} (use rayleigh or rician:LAMBDA)")


def _db_grid(start: float, stop: float, step: float) -> list[float]:
    if step <= 0:
        raise SystemExit("--snr-db-step must be positive")
    if stop < start:
        raise SystemExit("--snr-db-stop must be >= --snr-db-start")
    count = int(round((stop - start) / step))
    grid = [start + i * step for i in range(count + 1)]
    if grid[-1] > stop + 1e-9:
        grid.pop()
    return grid


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _csv(header: list[str], rows: list[list[str]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_fig1(args) -> int:
    channel = _parse_preset(args.preset, None)
    rows = []
    for db in _db_grid(args.snr_db_start, args.snr_db_stop, args.snr_db_step):
        nu = optimal_pilot_share(channel, _db_to_linear(db))
        rows.append([_fmt(db), _fmt(nu)])
    _write(args.out, _csv(["SNRdB", "nu_opt"], rows))
    return 0


def cmd_fig2(args) -> int:
    channel = _parse_preset(args.preset, None)
    scale = _unit_scale(args.unit)
    nu_high = pilot_share_high_snr_limit(channel)
    rows = []
    for db in _db_grid(args.snr_db_start, args.snr_db_stop, args.snr_db_step):
        rho = _db_to_linear(db)
        nu_opt = optimal_pilot_share(channel, rho)
        vals = [
            superimposed_pilot_bound(channel, SignalSpec(rho, nu)).rate_nats * scale
            for nu in (nu_opt, 0.5, nu_high)
        ]
        rows.append([_fmt(db)] + [_fmt(v) for v in vals])
    _write(args.out, _csv(
        ["SNRdB", "I_opt", "I_subopt_low_SNR", "I_subopt_high_SNR"], rows))
    return 0


def cmd_fig3(args) -> int:
    scale = _unit_scale(args.unit)
    rho = _db_to_linear(args.snr_db)
    if args.lambda_step <= 0:
        raise SystemExit("--lambda-step must be positive")
    count = int(round(1.0 / args.lambda_step))
    rows = []
    for i in range(count + 1):
        lam = min(i * args.lambda_step, 1.0)
        channel = rician_channel(lam)
        i_med = medard_bound(channel, rho).rate_nats
        _, sup = optimized_superimposed_bound(channel, rho)
        _, hyb = optimized_hybrid_bound(channel, rho)
        rows.append([_fmt(lam), _fmt(i_med * scale),
                     _fmt(sup.rate_nats * scale), _fmt(hyb.rate_nats * scale)])
    _write(args.out, _csv(["lambda", "I_Medard", "I_simple", "I_hybrid"], rows))
    return 0


def _nc_grid(nc_min: int, nc_max: int, points: int) -> list[int]:
    if nc_min < 1 or nc_max < nc_min or points < 2:
        raise SystemExit("need 1 <= --nc-min <= --nc-max and --nc-points >= 2")
    raw = np.logspace(math.log10(nc_min), math.log10(nc_max), points)
    return sorted({int(round(v)) for v in raw})


def cmd_fig4(args) -> int:
    scale = _unit_scale(args.unit)
    rho = _db_to_linear(args.snr_db)
    rows = []
    for nc in _nc_grid(args.nc_min, args.nc_max, args.nc_points):
        _, sup = optimize_block_pilot_share(nc, rho)
        if nc >= 2:
            orth, _ = block_orthogonal_bound(nc, rho)
            orth_txt = _fmt(orth.rate_nats * scale)
        else:
            orth_txt = ""
        rows.append([str(nc), _fmt(sup.rate_nats * scale), orth_txt])
    _write(args.out, _csv(["nc", "I", "I_M_opt"], rows))
    return 0


def _resolve_rho(args) -> float:
    if args.rho is not None and args.snr_db is not None:
        raise SystemExit("give either --rho or --snr-db, not both")
    if args.rho is not None:
        return args.rho
    if args.snr_db is not None:
        return _db_to_linear(args.snr_db)
    raise SystemExit("an SNR is required (--rho linear or --snr-db)")


def cmd_bound(args) -> int:
    scale = _unit_scale(args.unit)
    channel = _parse_preset(args.preset, args.los)
    rho = _resolve_rho(args)

    def need_nu() -> float:
        if args.nu is None:
            raise SystemExit(f"--nu is required for the {args.which} bound")
        return args.nu

    if args.which == "superimposed":
        value = superimposed_pilot_bound(channel, SignalSpec(rho, need_nu())).rate_nats
    elif args.which == "medard":
        value = medard_bound(channel, rho).rate_nats
    elif args.which == "hybrid":
        value = hybrid_bound(channel, SignalSpec(rho, need_nu())).rate_nats
    elif args.which == "block":
        if args.nc is None:
            raise SystemExit("--nc is required for the block bound")
        value = block_superimposed_bound(args.nc, rho, need_nu()).rate_nats
    elif args.which == "orthogonal":
        if args.nc is None:
            raise SystemExit("--nc is required for the orthogonal bound")
        if args.tau is not None:
            from .special import coherent_ergodic_capacity

            if not 1 <= args.tau < args.nc:
                raise SystemExit("--tau must be in [1, nc-1]")
            eff = rho * rho * args.tau / (1.0 + rho * (args.tau + 1.0))
            value = (args.nc - args.tau) / args.nc * coherent_ergodic_capacity(eff)
        else:
            value = block_orthogonal_bound(args.nc, rho)[0].rate_nats
    else:  # pragma: no cover - argparse restricts choices
        raise SystemExit(f"unknown bound {args.which!r}")
    _write(args.out, _fmt(value * scale) + "\n")
    return 0


def cmd_validate(args) -> int:
    channel = _parse_preset(args.preset, args.los)
    rho = args.rho if args.rho is not None else _db_to_linear(args.snr_db)
    if args.nu is not None:
        nu = args.nu
    elif channel.fading_mean == 0:
        nu = optimal_pilot_share(channel, rho)
    else:
        nu = 0.5
    cfg = McConfig(seed=args.seed, n_samples=args.n_samples, batch_count=args.batch_count)
    report = validate_bound(channel, SignalSpec(rho, nu), cfg)
    _write(args.out, report.to_text())
    return 0 if report.all_passed else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_range_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--snr-db-start", type=float, default=-20.0)
    p.add_argument("--snr-db-stop", type=float, default=30.0)
    p.add_argument("--snr-db-step", type=float, default=0.5)


def _add_common(p: argparse.ArgumentParser, unit: bool = True) -> None:
    p.add_argument("--preset", default="rayleigh",
                   help="channel preset: rayleigh or rician:LAMBDA")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    if unit:
        p.add_argument("--unit", choices=["nats", "bits"], default="nats")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sipbounds",
        description="Mutual-information lower bounds for noncoherent fading "
                    "channels with superimposed pilots")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fig1", help="optimal pilot share vs SNR (CSV)")
    _add_range_flags(p)
    _add_common(p, unit=False)
    p.set_defaults(func=cmd_fig1)

    p = sub.add_parser("fig2", help="superimposed-pilot bound vs SNR for three pilot shares")
    _add_range_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_fig2)

    p = sub.add_parser("fig3", help="bound comparison vs line-of-sight fraction")
    p.add_argument("--snr-db", type=float, default=0.0)
    p.add_argument("--lambda-step", type=float, default=0.01)
    _add_common(p)
    p.set_defaults(func=cmd_fig3)

    p = sub.add_parser("fig4", help="superimposed vs orthogonal pilots on block fading")
    p.add_argument("--snr-db", type=float, default=-10.0)
    p.add_argument("--nc-min", type=int, default=1)
    p.add_argument("--nc-max", type=int, default=10_000)
    p.add_argument("--nc-points", type=int, default=33)
    _add_common(p)
    p.set_defaults(func=cmd_fig4)

    p = sub.add_parser("bound", help="evaluate one bound at explicit parameters")
    p.add_argument("which", choices=["superimposed", "medard", "hybrid", "block", "orthogonal"])
    p.add_argument("--rho", type=float, default=None, help="linear SNR")
    p.add_argument("--snr-db", type=float, default=None)
    p.add_argument("--nu", type=float, default=None, help="pilot power share")
    p.add_argument("--lambda", dest="los", type=float, default=None,
                   help="line-of-sight fraction (shorthand for --preset rician:LAMBDA)")
    p.add_argument("--nc", type=int, default=None, help="coherence time")
    p.add_argument("--tau", type=int, default=None, help="training length (orthogonal only)")
    _add_common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("validate", help="Monte-Carlo validation of the closed forms")
    p.add_argument("--rho", type=float, default=None, help="linear SNR")
    p.add_argument("--snr-db", type=float, default=0.0)
    p.add_argument("--nu", type=float, default=None,
                   help="pilot share (default: optimal for zero-mean fading, else 0.5)")
    p.add_argument("--lambda", dest="los", type=float, default=None)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--n-samples", type=int, default=1_000_000)
    p.add_argument("--batch-count", type=int, default=32)
    _add_common(p, unit=False)
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
