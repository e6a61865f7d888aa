"""Command-line front end.

Subcommands: state, bounds, region, threshold, attack, verify.  Reports are
JSON (schema_version 1); sweeps are CSV with LF line endings and shortest
round-trip floats, so identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import bounds as bnd
from . import channels as chn
from . import devices as dev
from . import serialize as ser
from . import states as st
from .linalg import DEFAULT_DENSE_LIMIT, trace_norm

ENV_DENSE_LIMIT = "DIQKD_BOUNDS_DENSE_LIMIT"
SCHEMA_VERSION = ser.SCHEMA_VERSION


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _emit_json(doc: dict, path: str | None) -> None:
    _emit(json.dumps(doc, indent=2) + "\n", path)


def _dense_limit(args) -> int:
    if args.dense_limit is not None:
        limit = args.dense_limit
    else:
        limit = int(os.environ.get(ENV_DENSE_LIMIT, DEFAULT_DENSE_LIMIT))
    if limit < 4:
        raise ValueError("dense limit must be at least 4")
    return limit


def _cmd_state(args) -> int:
    limit = _dense_limit(args)
    d = args.d
    p = st.default_noise_weight(d) if args.p is None else args.p
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p = {p!r} outside [0, 1]")
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "state",
        "d": d,
        "unitary": args.unitary,
        "p": p,
        "checks": args.checks,
    }
    if args.checks == "none":
        # closed-form norms only; no matrices are built
        params = st.BellParams((1 - p) / 2, p / 2, (1 - p) / 2, 0.0)
    else:
        state = st.make_rho_d(d, unitary=args.unitary, p=p, dense_limit=limit)
        params = st.privacy_squeeze(state)
        ppt, witness = state.is_ppt()
        doc["block_norms"] = {
            name: trace_norm(getattr(state, name))
            for name in ("A1", "A2", "B1", "B2", "C", "D")
        }
        doc["ppt"] = {"ppt": ppt, "witness": witness}
    doc["bell_params"] = {
        "alpha": params.alpha,
        "beta": params.beta,
        "gamma": params.gamma,
        "delta": params.delta,
    }
    doc["lower_bound"] = bnd.k_ad_dw(params)
    doc["upper_bound"] = bnd.k_upper_ppt_block(params)
    _emit_json(doc, args.output)
    return 0


def _cmd_bounds(args) -> int:
    doc = {"schema_version": SCHEMA_VERSION, "command": "bounds"}
    if args.d is not None:
        report = bnd.rho_d_bounds(args.d)
        doc["d"] = args.d
    else:
        params = (args.alpha, args.beta, args.gamma, args.delta)
        doc["params"] = {
            "alpha": args.alpha,
            "beta": args.beta,
            "gamma": args.gamma,
            "delta": args.delta,
        }
        doc["m"] = args.m
        lower = bnd.k_ad_dw(params, args.m)
        if args.delta > 0:
            doc.update(
                lower=lower, upper=None, gap=None, gap_established=None
            )
            _emit_json(doc, args.output)
            return 0
        report = bnd.BoundReport(lower=lower, upper=bnd.k_upper_ppt_block(params))
    doc.update(
        lower=report.lower,
        upper=report.upper,
        gap=report.gap,
        gap_established=report.gap_established,
    )
    _emit_json(doc, args.output)
    return 0


def _cmd_region(args) -> int:
    points = bnd.region_sweep(args.a_grid, args.alpha_grid)
    if args.format == "csv":
        _emit(ser.region_to_csv(points), args.output)
    else:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": "region",
            "a_grid": args.a_grid,
            "alpha_grid": args.alpha_grid,
            "points": [
                {
                    "a": pt.a,
                    "alpha": pt.alpha,
                    "entropy": pt.entropy_value,
                    "threshold": pt.threshold_value,
                    "in_gap": pt.in_gap,
                }
                for pt in points
            ],
        }
        _emit_json(doc, args.output)
    return 0


def _cmd_threshold(args) -> int:
    if args.lo >= args.hi:
        raise ValueError("need lo < hi")
    try:
        d = bnd.threshold_search(bnd.rho_d_bounds, args.lo, args.hi)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(d)
    return 0


def _cmd_attack(args) -> int:
    limit = _dense_limit(args)
    with open(args.device, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    kind = args.kind or doc.get("kind")
    if kind not in ("state", "channel"):
        raise ValueError(f"unknown device kind {kind!r}")
    if kind != doc.get("kind"):
        raise ValueError(
            f"--kind {kind} does not match document kind {doc.get('kind')!r}"
        )
    dims = doc.get("state", {}).get("dims", [])
    if math.prod(dims) > limit:
        raise ValueError(
            f"device state side {math.prod(dims)} exceeds the dense limit {limit}"
        )
    if kind == "state":
        device = ser.state_device_from_doc(doc)
        attacked = dev.transpose_attack(device)
        distance = dev.distribution_distance(
            dev.device_statistics(device), dev.device_statistics(attacked)
        )
        out_doc = ser.state_device_to_doc(attacked)
    else:
        measurements, rho, channel = ser.channel_device_from_doc(doc)
        flipped_m, flipped_rho, flipped_c = chn.transpose_channel_attack(
            measurements, rho, channel
        )
        distance = dev.distribution_distance(
            chn.channel_device_statistics(measurements, rho, channel),
            chn.channel_device_statistics(flipped_m, flipped_rho, flipped_c),
        )
        out_doc = ser.channel_device_to_doc(flipped_m, flipped_rho, flipped_c)
    if args.output is not None:
        _emit_json(out_doc, args.output)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "attack",
        "kind": kind,
        "statistics_distance": distance,
        "output": args.output,
    }
    _emit_json(report, None)
    return 0


def _cmd_verify(args) -> int:
    limit = _dense_limit(args)
    state = st.make_rho_d(args.d, unitary=args.unitary, p=args.p, dense_limit=limit)
    report = bnd.verify_transposed_decomposition(state)
    passed = report.max_residual <= args.tolerance
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "d": args.d,
        "unitary": args.unitary,
        "alpha": report.alpha,
        "beta": report.beta,
        "ppt_witness": report.ppt_witness,
        "corr_residual": report.corr_residual,
        "acorr_residual": report.acorr_residual,
        "total_residual": report.total_residual,
        "corr_min_eigenvalue": report.corr_min_eigenvalue,
        "acorr_min_eigenvalue": report.acorr_min_eigenvalue,
        "corr_trace": report.corr_trace,
        "acorr_trace": report.acorr_trace,
        "tolerance": args.tolerance,
        "passed": passed,
    }
    _emit_json(doc, args.output)
    return 0 if passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diqkd-bounds",
        description="Key-rate bounds and partial-transpose attacks for "
        "device-independent QKD.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--output", help="write the report here instead of stdout")
        p.add_argument(
            "--dense-limit",
            type=int,
            default=None,
            help=f"max dense matrix side (default {DEFAULT_DENSE_LIMIT}, "
            f"env {ENV_DENSE_LIMIT})",
        )

    p = sub.add_parser("state", help="build a key--shield state and report its diagnostics")
    p.add_argument("--d", type=int, required=True, help="shield dimension per side")
    p.add_argument("--unitary", choices=st.UNITARY_KINDS, default="fourier")
    p.add_argument("--p", type=float, default=None, help="noise weight (default 1/(sqrt(d)+1))")
    p.add_argument("--checks", choices=("full", "none"), default="full",
                   help="'none' reports closed-form norms without building matrices")
    add_common(p)
    p.set_defaults(func=_cmd_state)

    p = sub.add_parser("bounds", help="key-rate bound report for a dimension or parameters")
    p.add_argument("--d", type=int, default=None, help="closed-form bounds for this dimension")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--m", type=int, default=1, help="advantage-distillation rounds")
    add_common(p)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("region", help="sweep the gap condition over (a, alpha)")
    p.add_argument("--a-grid", type=int, required=True)
    p.add_argument("--alpha-grid", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    add_common(p)
    p.set_defaults(func=_cmd_region)

    p = sub.add_parser("threshold", help="least d whose closed-form bounds establish a gap")
    p.add_argument("--lo", type=int, required=True)
    p.add_argument("--hi", type=int, required=True)
    p.set_defaults(func=_cmd_threshold)

    p = sub.add_parser("attack", help="apply the transpose attack to a device document")
    p.add_argument("--device", required=True, help="JSON device document")
    p.add_argument("--kind", choices=("state", "channel"), default=None)
    add_common(p)
    p.set_defaults(func=_cmd_attack)

    p = sub.add_parser("verify", help="check the decomposition of the transposed state")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--unitary", choices=st.UNITARY_KINDS, default="fourier")
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--tolerance", type=float, default=1e-9)
    add_common(p)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "bounds":
        have_d = args.d is not None
        have_params = args.alpha is not None or args.beta is not None
        if have_d == have_params:
            print("error: give either --d or --alpha/--beta", file=sys.stderr)
            return 2
        if have_params and (args.alpha is None or args.beta is None):
            print("error: --alpha and --beta are both required", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
