"""Command-line entry point: ``xxz-qrg {sweep,flow,derivative,scaling,qg,verify}``.

Output is CSV (header row, 17 significant digits).  Summary values are written as
``# key=value`` lines above the CSV body.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import sys
from dataclasses import fields

from .config import COMMAND_DEFAULTS, RunConfig, Tolerances
from .flow import BLOCK_SIZE, CouplingState, correlation_length_exponent, rg_trajectory
from .measures import renormalized_measures
from .qgroup import qg_entropy
from .scaling import EXPONENT_TOL, MEASURES, analyze_measure, derivative_chain
from .verification import run_all

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_steps(text: str) -> tuple[int, ...]:
    """``"0:6"`` (inclusive range), ``"1,3,5"`` or a single integer."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ":" in part:
                a, b = part.split(":")
                out.extend(range(int(a), int(b) + 1))
            elif part:
                out.append(int(part))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid steps {text!r}") from exc
    if not out or any(n < 0 for n in out):
        raise argparse.ArgumentTypeError(f"steps must be non-negative integers, got {text!r}")
    return tuple(out)


def fmt(x) -> str:
    if isinstance(x, int):
        return str(x)
    return f"{float(x):.17g}"


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="xxz-qrg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "sweep": "renormalized concurrence, EoF and site entropy on a delta grid",
        "flow": "RG trajectory of (J, delta)",
        "derivative": "derivative curves d(measure)/d(delta) at several RG steps",
        "scaling": "minima of the derivative curves and their power-law fits",
        "qg": "quantum-group site entropy on a delta grid",
        "verify": "run the oracle-equivalence suites",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("--delta-min", type=float)
        p.add_argument("--delta-max", type=float)
        p.add_argument("--points", type=int)
        p.add_argument("--steps", type=parse_steps, help="e.g. 0:6 or 1,3,5")
        p.add_argument("--measure", choices=("concurrence", "entropy", "eof", "all"))
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--fit-min-step", type=int)
        p.add_argument("--fit-max-step", type=int)
        p.add_argument("--tolerance", type=float, help="override every verification tolerance")
        p.add_argument("--delta0", type=float, help="initial anisotropy for 'flow'")
        p.add_argument("--J0", type=float, help="initial exchange coupling for 'flow'")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values = dict(COMMAND_DEFAULTS[args.command])
    for f in fields(RunConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = v
    values["command"] = args.command
    try:
        return RunConfig(**values)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_sweep(cfg: RunConfig, out) -> int:
    cols = {"concurrence": "concurrence", "eof": "eof", "entropy": "entropy"}
    chosen = list(cols) if cfg.measure == "all" else [cfg.measure]
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["delta", "n", "N_effective"] + chosen)
    for d in cfg.grid():
        for n in cfg.steps:
            r = renormalized_measures(float(d), n)
            vals = {"concurrence": r.C13, "eof": r.E_formation, "entropy": r.E_entropy}
            w.writerow([fmt(float(d)), n, r.effective_size] + [fmt(vals[c]) for c in chosen])
    return EXIT_OK


def cmd_flow(cfg: RunConfig, out) -> int:
    traj = rg_trajectory(CouplingState(cfg.J0, cfg.delta0), max(cfg.steps))
    out.write(f"# halted={traj.halted or 'none'}\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["step", "N_effective", "J", "delta"])
    for k, c in enumerate(traj.steps):
        w.writerow([k, BLOCK_SIZE ** (k + 1), fmt(c.J), fmt(c.delta)])
    return EXIT_OK


def _scaling_measures(cfg: RunConfig) -> list[str]:
    if cfg.measure in ("all", None):
        return list(MEASURES)
    if cfg.measure not in MEASURES:
        raise UsageError(f"measure must be one of {MEASURES} or all for this command")
    return [cfg.measure]


def cmd_derivative(cfg: RunConfig, out) -> int:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["measure", "delta", "n", "N_effective", "derivative"])
    for m in _scaling_measures(cfg):
        for n in cfg.steps:
            for d in cfg.grid():
                w.writerow([m, fmt(float(d)), n, BLOCK_SIZE ** (n + 1), fmt(derivative_chain(float(d), n, m))])
    return EXIT_OK


def cmd_scaling(cfg: RunConfig, out) -> int:
    measures = _scaling_measures(cfg)
    try:
        analyses = [analyze_measure(m, cfg.steps, cfg.fit_min_step, cfg.fit_max_step) for m in measures]
    except ValueError as exc:
        print(f"xxz-qrg: fit failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    nu = correlation_length_exponent()
    out.write(f"# nu_analytic={fmt(nu)}\n# one_over_nu={fmt(1 / nu)}\n")
    out.write(f"# fit_window={cfg.fit_min_step}:{cfg.fit_max_step}\n")
    for a in analyses:
        out.write(f"# {a.measure}_theta_position={fmt(a.position.exponent)}\n")
        out.write(f"# {a.measure}_theta_magnitude={fmt(a.magnitude.exponent)}\n")
        out.write(f"# {a.measure}_r2_position={fmt(a.position.r2)}\n")
        out.write(f"# {a.measure}_r2_magnitude={fmt(a.magnitude.r2)}\n")
    if len(analyses) == len(MEASURES):
        chk_ok = all(abs(a.magnitude.exponent - 1 / nu) <= EXPONENT_TOL for a in analyses)
        out.write(f"# nu_check={'pass' if chk_ok else 'fail'}\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["measure", "n", "N", "delta_m", "min_derivative"])
    for a in analyses:
        for m in a.minima:
            w.writerow([a.measure, m.n, m.N, fmt(m.delta_m), fmt(m.value)])
    return EXIT_OK


def cmd_qg(cfg: RunConfig, out) -> int:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["delta", "n", "E_q"])
    for d in cfg.grid():
        for n in cfg.steps:
            w.writerow([fmt(float(d)), n, fmt(qg_entropy(float(d), n))])
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out) -> int:
    tol = Tolerances.uniform(cfg.tolerance) if cfg.tolerance is not None else Tolerances()
    results = run_all(tol)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        out.write(f"{status} {r.name} checks={r.checks} failures={r.failures} max_error={r.max_error:.3e}\n")
        for note in r.notes:
            out.write(f"    {note}\n")
    ok = all(r.passed for r in results)
    out.write(f"# all_passed={'true' if ok else 'false'}\n")
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "sweep": cmd_sweep,
    "flow": cmd_flow,
    "derivative": cmd_derivative,
    "scaling": cmd_scaling,
    "qg": cmd_qg,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        with contextlib.ExitStack() as stack:
            out = stack.enter_context(open(cfg.out, "w", newline="")) if cfg.out else sys.stdout
            return COMMANDS[cfg.command](cfg, out)
    except UsageError as exc:
        print(f"xxz-qrg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
