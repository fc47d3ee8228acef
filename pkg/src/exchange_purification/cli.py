"""Command-line front end emitting CSV or JSON tables.

Exit codes: 0 success, 2 argument error, 3 non-purifiable or degenerate input
(including an iteration that did not reach its target).
"""
import argparse
import io
import json
import sys

import numpy as np

from . import analysis, protocol, states
from .gates import ExchangeKind
from .protocol import ProtocolConfig, ProtocolKind, RetwirlMode

SCHEMA_VERSION = "1"
EXIT_OK, EXIT_USAGE, EXIT_NON_PURIFIABLE = 0, 2, 3


class UsageError(Exception):
    pass


class NonPurifiable(Exception):
    pass


def fmt(value):
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return f"{float(value) + 0.0:.12g}"


class OutputRecord:
    def __init__(self, command, parameters, columns):
        self.command = command
        self.parameters = parameters
        self.columns = list(columns)
        self.rows = []

    def add(self, **row):
        unknown = set(row) - set(self.columns)
        if unknown:
            raise KeyError(f"unknown columns {sorted(unknown)}")
        self.rows.append([row.get(c) for c in self.columns])

    def to_csv(self):
        buf = io.StringIO()
        buf.write(f"# schema_version: {SCHEMA_VERSION}\n")
        buf.write(f"# command: {self.command}\n")
        buf.write(f"# parameters: {json.dumps(self.parameters, sort_keys=True)}\n")
        buf.write(",".join(self.columns) + "\n")
        for row in self.rows:
            buf.write(",".join(fmt(v) for v in row) + "\n")
        return buf.getvalue()

    def to_json(self):
        def cell(v):
            if v is None or isinstance(v, str):
                return v
            if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
                return int(v)
            return float(fmt(v))
        obj = {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "parameters": self.parameters,
            "columns": self.columns,
            "rows": [[cell(v) for v in row] for row in self.rows],
        }
        return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _float_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from err


def _angle(args, value):
    return np.deg2rad(value) if args.degrees else value


def _fidelity(value, name="--f"):
    if not 0.0 <= value <= 1.0:
        raise UsageError(f"{name} must lie in [0, 1], got {value}")
    return value


def cmd_map_eval(args):
    f = _fidelity(args.f)
    alpha = _angle(args, args.alpha)
    beta = _angle(args, args.beta)
    if args.kind == "optimal":
        alpha, beta = np.pi / 2, -np.pi / 2
    elif args.kind == "inverse":
        beta = -alpha

    try:
        if args.kind == "xy":
            closed = analysis.fidelity_map_xy(f, alpha, beta)
        elif args.kind == "inverse":
            closed = analysis.fidelity_map_inverse_case(f, alpha)
        elif args.kind == "optimal":
            closed = analysis.fidelity_map_optimal(f)
        else:
            closed = analysis.fidelity_map_heisenberg(f, alpha, beta)
    except analysis.UndefinedMapError as err:
        raise NonPurifiable(str(err)) from err

    exchange = ExchangeKind.XY if args.kind == "xy" else ExchangeKind.HEISENBERG
    rho = states.werner(f)
    outcome = protocol.round_exchange(rho, rho, alpha, beta, exchange)
    rec = OutputRecord("map-eval", {"kind": args.kind, "f": f, "alpha": alpha,
                                    "beta": beta},
                       ["f", "alpha", "beta", "f_prime_closed", "f_prime_sim",
                        "abs_diff", "success_prob"])
    rec.add(f=f, alpha=alpha, beta=beta, f_prime_closed=closed,
            f_prime_sim=outcome.fidelity, abs_diff=abs(closed - outcome.fidelity),
            success_prob=outcome.success_prob)
    return rec


def _parse_betas(text):
    out = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if token == analysis.INVERSE_BETA:
            out.append(token)
        else:
            try:
                out.append(float(token))
            except ValueError as err:
                raise UsageError(f"bad beta value {token!r}") from err
    if not out:
        raise UsageError("--betas needs at least one value")
    return out


def cmd_sweep(args):
    betas = [b if b == analysis.INVERSE_BETA else _angle(args, b)
             for b in _parse_betas(args.betas)]
    if args.alpha_points < 2:
        raise UsageError("--alpha-points must be at least 2")
    lo, hi = _angle(args, args.alpha_min), _angle(args, args.alpha_max)
    rows = analysis.fmin_fmax_sweep(betas, args.alpha_points, (lo, hi),
                                    ExchangeKind(args.kind))
    rec = OutputRecord("sweep", {"betas": [str(b) for b in betas],
                                 "alpha_points": args.alpha_points,
                                 "alpha_min": lo, "alpha_max": hi,
                                 "kind": args.kind},
                       ["alpha", "beta", "f_min", "f_max", "residual"])
    for row in rows:
        rec.add(alpha=row.alpha, beta=row.beta, f_min=row.f_min,
                f_max=row.f_max, residual=row.residual)
    return rec


_KINDS = {
    "exchange-optimal": ProtocolKind.EXCHANGE,
    "exchange": ProtocolKind.EXCHANGE,
    "xy": ProtocolKind.XY,
    "bbpssw": ProtocolKind.BBPSSW,
    "dejmps": ProtocolKind.DEJMPS_EXCHANGE,
}


def _config(kind, mode, alpha, beta):
    if kind == "exchange-optimal":
        alpha, beta = np.pi / 2, -np.pi / 2
    return ProtocolConfig(_KINDS[kind], alpha, beta, RetwirlMode(mode))


def cmd_iterate(args):
    f0 = _fidelity(args.f0, "--f0")
    if f0 == 0.0 or not 0.0 < args.target < 1.0:
        raise UsageError("need 0 < f0 and 0 < target < 1")
    if args.max_steps < 1:
        raise UsageError("--max-steps must be at least 1")
    alpha, beta = _angle(args, args.alpha), _angle(args, args.beta)

    if args.compare:
        series = [("werner", _config("exchange-optimal", "werner", alpha, beta)),
                  ("dejmps", _config("dejmps", "tracking", np.pi / 2, -np.pi / 2))]
    else:
        series = [(args.kind, _config(args.kind, args.mode, alpha, beta))]

    rec = OutputRecord("iterate", {"kind": args.kind, "mode": args.mode,
                                   "f0": f0, "target": args.target,
                                   "max_steps": args.max_steps, "alpha": alpha,
                                   "beta": beta, "compare": args.compare},
                       ["series", "step", "fidelity", "success_prob",
                        "closed_form", "residual"])
    converged = True
    for name, config in series:
        trace = protocol.iterate(config, f0, args.target, args.max_steps)
        converged = converged and trace.converged
        closed = _scalar_reference(config, f0, trace.steps)
        for step, (fid, p) in enumerate(zip(trace.fidelities, trace.success_probs), 1):
            ref = closed[step - 1] if closed else None
            rec.add(series=name, step=step, fidelity=fid, success_prob=p,
                    closed_form=ref,
                    residual=None if ref is None else abs(fid - ref))
    rec.failed = not converged
    return rec


def _scalar_reference(config, f0, steps):
    fmap = analysis.closed_form_map(config)
    if fmap is None:
        return None
    out, f = [], f0
    for _ in range(steps):
        f = fmap(min(max(f, 0.0), 1.0))
        out.append(f)
    return out


def cmd_robustness(args):
    if args.j <= 0:
        raise UsageError("--j must be positive")
    taus = args.delta_tau
    if any(t < 0 for t in taus):
        raise UsageError("--delta-tau values must be nonnegative")
    rec = OutputRecord("robustness", {"j_uev": args.j, "delta_tau_ns": taus},
                       ["delta_tau_ns", "delta_alpha_rad", "f_max", "residual"])
    for tau in taus:
        delta = analysis.pulse_deviation_to_angle(args.j, tau)
        f_max = analysis.max_reachable_fidelity(delta)
        residual = None
        if f_max is not None:
            residual = abs(analysis.fidelity_map_heisenberg(
                f_max, np.pi / 2 + delta, -np.pi / 2) - f_max)
        rec.add(delta_tau_ns=tau, delta_alpha_rad=delta, f_max=f_max,
                residual=residual)
    return rec


def cmd_compare(args):
    fs = args.f if args.f else list(np.linspace(0.0, 1.0, args.points))
    for f in fs:
        _fidelity(f)
    alphas = [_angle(args, a) for a in args.alphas]
    alpha_cols = [f"f_prime_alpha_{fmt(a)}" for a in alphas]
    rec = OutputRecord("compare", {"f": fs, "alphas": alphas},
                       ["f", "f_prime_optimal", "f_prime_optimal_sim", "residual",
                        *alpha_cols, "f_prime_bbpssw"])
    for f in fs:
        rho = states.werner(f)
        sim = protocol.round_exchange(rho, rho, np.pi / 2, -np.pi / 2).fidelity
        opt = analysis.fidelity_map_optimal(f)
        row = {"f": f, "f_prime_optimal": opt, "f_prime_optimal_sim": sim,
               "residual": abs(opt - sim),
               "f_prime_bbpssw": protocol.round_bbpssw(rho, rho).fidelity}
        for col, a in zip(alpha_cols, alphas):
            row[col] = analysis.fidelity_map_inverse_case(f, a)
        rec.add(**row)
    return rec


def cmd_fixed_points(args):
    alpha, beta = _angle(args, args.alpha), _angle(args, args.beta)
    try:
        fp = analysis.fixed_points(alpha, beta, ExchangeKind(args.kind))
    except analysis.DegenerateMapError as err:
        raise NonPurifiable(str(err)) from err
    rec = OutputRecord("fixed-points", {"kind": args.kind, "alpha": alpha,
                                        "beta": beta},
                       ["name", "value", "stability", "residual"])
    for name in ("f_c", "f_min", "f_max"):
        value = getattr(fp, name)
        rec.add(name=name, value=value, stability=fp.stability.get(name),
                residual=fp.residuals.get(name))
    return rec


def build_parser():
    parser = argparse.ArgumentParser(
        prog="exchange-purify",
        description="Fidelity maps, rounds and sweeps for exchange-based "
                    "entanglement purification.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")
    common.add_argument("--degrees", action="store_true",
                        help="read angles in degrees instead of radians")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("map-eval", parents=[common],
                       help="closed-form and simulated F' for one input")
    p.add_argument("--kind", choices=["heisenberg", "xy", "inverse", "optimal"],
                   default="heisenberg")
    p.add_argument("--f", type=float, required=True)
    p.add_argument("--alpha", type=float, default=np.pi / 2)
    p.add_argument("--beta", type=float, default=-np.pi / 2)
    p.set_defaults(func=cmd_map_eval)

    p = sub.add_parser("sweep", parents=[common],
                       help="F_min and F_max over an alpha grid")
    p.add_argument("--betas", default=analysis.INVERSE_BETA,
                   help="comma-separated beta values; '-alpha' means beta = -alpha "
                        "(pass as --betas=-alpha,...)")
    p.add_argument("--alpha-points", type=int, default=73)
    p.add_argument("--alpha-min", type=float, default=0.0)
    p.add_argument("--alpha-max", type=float, default=2 * np.pi)
    p.add_argument("--kind", choices=["heisenberg", "xy"], default="heisenberg")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("iterate", parents=[common],
                       help="fidelity per purification round")
    p.add_argument("--kind", choices=list(_KINDS), default="exchange-optimal")
    p.add_argument("--mode", choices=[m.value for m in RetwirlMode], default="werner")
    p.add_argument("--f0", type=float, required=True)
    p.add_argument("--target", type=float, default=0.99)
    p.add_argument("--max-steps", type=int, default=200)
    p.add_argument("--alpha", type=float, default=np.pi / 2)
    p.add_argument("--beta", type=float, default=-np.pi / 2)
    p.add_argument("--compare", action="store_true",
                   help="emit both the re-twirled optimal series and the DEJMPS-style series")
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("robustness", parents=[common],
                       help="reachable fidelity under pulse-duration errors")
    p.add_argument("--j", type=float, default=1.0, help="exchange energy in micro-eV")
    p.add_argument("--delta-tau", type=_float_list, default=[0.0, 0.05, 0.1, 0.12],
                   help="comma-separated duration errors in ns")
    p.set_defaults(func=cmd_robustness)

    p = sub.add_parser("compare", parents=[common],
                       help="one-round F' against BBPSSW over a fidelity grid")
    p.add_argument("--f", type=_float_list, default=None)
    p.add_argument("--points", type=int, default=21)
    p.add_argument("--alphas", type=_float_list, default=[np.pi / 4],
                   help="pulse areas for extra beta = -alpha columns")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("fixed-points", parents=[common],
                       help="fixed points of the map and their stability")
    p.add_argument("--kind", choices=["heisenberg", "xy"], default="heisenberg")
    p.add_argument("--alpha", type=float, default=np.pi / 2)
    p.add_argument("--beta", type=float, default=-np.pi / 2)
    p.set_defaults(func=cmd_fixed_points)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    status = EXIT_OK
    try:
        rec = args.func(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except NonPurifiable as err:
        print(f"non-purifiable: {err}", file=sys.stderr)
        return EXIT_NON_PURIFIABLE
    if getattr(rec, "failed", False):
        print("non-purifiable: target fidelity not reached", file=sys.stderr)
        status = EXIT_NON_PURIFIABLE

    text = rec.to_json() if args.format == "json" else rec.to_csv()
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
