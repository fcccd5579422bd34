"""Command-line entry point: ``qfano {bounds,sweep,optimize,verify}``.

Exit codes: 0 success, 1 usage error, 2 input validation failure,
3 property violation (verify) or internal consistency failure.
"""

from __future__ import annotations

import argparse
import math
import sys

from .bounds import BoundError, entanglement_fidelity, entropy_exchange, full_report, qfi_bound
from .depolarizing import SWEEP_COLUMNS, ClosedFormMismatch, sweep
from .io import SpecError, fmt, load_channel_spec, write_csv
from .linalg import LinAlgError
from .optimize import golden_section_gamma1, optimize_gamma, optimize_gamma_xi
from .quantum import StateError, as_probability, extend_to_joint, purify
from .verify import run_suite

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}")


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")


def _emit(text: str, out) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _aligned(pairs) -> str:
    width = max(len(k) for k, _ in pairs)
    lines = []
    for k, v in pairs:
        if isinstance(v, float):
            v = fmt(v) if math.isfinite(v) else str(v)
        lines.append(f"{k:<{width}}  {v}")
    return "\n".join(lines) + "\n"


def _vec(v) -> str:
    return ",".join(fmt(float(x)) for x in v)


def cmd_bounds(args) -> int:
    channel = load_channel_spec(args.spec)
    lam = as_probability(args.lam)
    if lam.size != channel.dim:
        raise StateError(f"--lambda has {lam.size} entries, channel dim is {channel.dim}")
    gamma = args.gamma
    if args.optimize_gamma:
        psi = purify(lam)
        F = entanglement_fidelity(psi, extend_to_joint(channel, psi))
        gamma = optimize_gamma(lam, F, lam.size, args.tol).gamma_star
    report = full_report(lam, channel, gamma, args.xi)
    pairs = [("fidelity", report.fidelity), ("entropy_exchange", report.entropy_exchange)]
    pairs += list(report.bounds().items())
    pairs += [("lambda", _vec(report.lam)), ("gamma", _vec(report.gamma)), ("xi", _vec(report.xi)),
              ("beta_max", report.beta_max), ("beta_min", report.beta_min)]
    sys.stdout.write(_aligned(pairs))
    if args.out:
        scalars = [(k, v) for k, v in pairs if isinstance(v, float)]
        write_csv(["quantity", "value"], scalars, args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    if len(args.lam) != 1:
        raise UsageError("sweep takes a single --lambda value, the eigenvalue lambda of rho")
    if args.p_steps < 2:
        raise UsageError("--p-steps must be at least 2")
    rows = sweep(args.lam[0], args.p_steps, args.seed, args.tol)
    _emit(write_csv(SWEEP_COLUMNS, (r.values() for r in rows)), args.out)
    bad = [r.p for r in rows if not r.ordered()]
    if bad:
        print(f"bound ordering violated at p = {bad}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_optimize(args) -> int:
    channel = load_channel_spec(args.spec)
    lam = as_probability(args.lam)
    d = lam.size
    if d != channel.dim:
        raise StateError(f"--lambda has {d} entries, channel dim is {channel.dim}")
    psi = purify(lam)
    joint = extend_to_joint(channel, psi)
    F, S = entanglement_fidelity(psi, joint), entropy_exchange(joint)
    res = optimize_gamma(lam, F, d, args.tol, seed=args.seed)
    pairs = [("fidelity", F), ("entropy_exchange", S), ("qfi", qfi_bound(F, d)),
             ("ineq4_opt", res.bound_star), ("gamma_star", _vec(res.gamma_star)),
             ("iterations", res.iterations), ("converged", res.converged)]
    if d == 2:
        pairs.append(("ineq4_golden", golden_section_gamma1(lam, F, args.tol).bound_star))
    if args.joint:
        joint_res = optimize_gamma_xi(lam, F, args.tol)
        pairs += [("ineq3_opt", joint_res.bound_star), ("ineq3_gamma", _vec(joint_res.gamma_star)),
                  ("ineq3_xi", _vec(joint_res.xi_star))]
    _emit(_aligned(pairs), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    if any(d < 2 for d in args.dims):
        raise UsageError("--dims entries must be at least 2")
    results = run_suite(args.seed, args.trials, args.dims)
    width = max(len(r.name) for r in results)
    lines = [f"{'property':<{width}}  trials  worst_slack  tol      status"]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.name:<{width}}  {r.trials:>6}  {r.worst_slack:+.3e}  {r.tol:.0e}  {status}")
    failed = [r for r in results if not r.passed]
    for r in failed:
        for seed, idx, d, t in r.failures[:5]:
            lines.append(f"  {r.name} failed: seed={seed} property={idx} d={d} trial={t}")
    lines.append("all properties passed" if not failed else f"{len(failed)} properties FAILED")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_VIOLATION if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qfano", description="Entropy exchange and Fano-type bounds.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--tol", type=float, default=1e-10, help="optimizer tolerance")
        p.add_argument("--seed", type=int, default=42)

    p = sub.add_parser("bounds", help="all bounds for one channel and input spectrum")
    p.add_argument("--spec", required=True, help="channel spec JSON")
    p.add_argument("--lambda", dest="lam", type=_floats, required=True)
    p.add_argument("--gamma", type=_floats, default=None)
    p.add_argument("--xi", type=_floats, default=None)
    p.add_argument("--optimize-gamma", action="store_true", help="replace --gamma by the optimized one")
    common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("sweep", help="depolarizing-channel sweep over p as CSV")
    p.add_argument("--lambda", dest="lam", type=_floats, default=[0.1])
    p.add_argument("--p-steps", type=int, default=101)
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("optimize", help="optimize gamma for a channel spec")
    p.add_argument("--spec", required=True)
    p.add_argument("--lambda", dest="lam", type=_floats, required=True)
    p.add_argument("--joint", action="store_true", help="also optimize (gamma, xi) jointly")
    common(p)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("verify", help="randomized property suite")
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--dims", type=_ints, default=[2, 3])
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"qfano {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SpecError, StateError, BoundError, LinAlgError, ValueError, OSError) as exc:
        print(f"qfano {args.command}: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ClosedFormMismatch as exc:
        print(f"qfano {args.command}: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
