"""Command-line front end.

Subcommands: ``lambda``, ``hermitian``, ``figure``, ``verify`` and ``oracle``.
Exit codes: 0 success, 2 usage or validation error, 3 quadrature
non-convergence, 4 verification failure.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from typing import List, Optional, Sequence

from . import __version__
from .decoherence import discretize_spectral_density, lambda_continuum, lambda_discrete, lambda_hermitian
from .errors import NonConvergenceError, PTBrokenError
from .experiments import FIGURES, angle_label, time_grid
from .fock import composite_residual, similarity_residual
from .model import ZETA_FORMS, EnvConfig, SystemConfig
from .output import WRITERS
from .quadrature import QuadratureConfig

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NONCONVERGENCE = 3
EXIT_VERIFY = 4

_ANGLE = re.compile(r"^\s*(?P<k>\d+(?:\.\d*)?)?\s*\*?\s*pi\s*(?:/\s*(?P<n>\d+(?:\.\d*)?))?\s*$")


def parse_angle(text: str) -> float:
    """Radians, either numeric or of the form ``[k][*]pi[/n]``."""
    match = _ANGLE.match(text.lower())
    if match:
        k = float(match["k"]) if match["k"] else 1.0
        n = float(match["n"]) if match["n"] else 1.0
        if n == 0:
            raise argparse.ArgumentTypeError(f"invalid angle {text!r}")
        return k * math.pi / n
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid angle {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"invalid angle {text!r}")
    return value


def _float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be finite: {text!r}")
    return value


def positive_float(text: str) -> float:
    value = _float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def nonnegative_float(text: str) -> float:
    value = _float(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {text!r}")
    return value


def alpha_value(text: str) -> float:
    value = _float(text)
    if abs(value) > 1:
        raise argparse.ArgumentTypeError(f"|alpha_s| must not exceed 1 (PT-broken): {text!r}")
    return value


def complex_value(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def fock_dim(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 8:
        raise argparse.ArgumentTypeError(f"dimension must be >= 8: {text!r}")
    return value


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return value


def _add_output(p):
    p.add_argument("--format", choices=sorted(WRITERS), default="csv")
    p.add_argument("--output", "-o", default="-", help="output file (default stdout)")


def _add_quadrature(p):
    p.add_argument("--rel-tol", type=positive_float, default=1e-9)
    p.add_argument("--abs-tol", type=positive_float, default=1e-12)
    p.add_argument("--max-subdivisions", type=positive_int, default=200)


def _add_physics(p):
    p.add_argument("--alpha-s", type=alpha_value, default=0.0)
    p.add_argument("--tau", type=_float, default=0.0)
    p.add_argument("--zeta-form", choices=sorted(ZETA_FORMS), default="quadratic")
    p.add_argument("--delta", type=positive_float, default=1.0)
    p.add_argument("--theta", type=parse_angle, default=math.pi / 2)
    p.add_argument("--amp", type=positive_float, default=1.0)
    p.add_argument("--cutoff", type=positive_float, default=0.1)
    p.add_argument("--temperature", type=positive_float, default=300.0)
    p.add_argument("--zero-temperature", action="store_true", help="replace coth(w/2T) by 1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptdephasing",
        description="Pure-dephasing decoherence of a PT-symmetric qubit in a PT-symmetric bosonic bath.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lambda", help="decoherence factor at one or more times")
    _add_physics(p)
    p.add_argument("--t", type=nonnegative_float, nargs="+", required=True)
    _add_quadrature(p)
    _add_output(p)

    p = sub.add_parser("hermitian", help="Hermitian spin-boson reference factor")
    p.add_argument("--amp", type=positive_float, default=1.0)
    p.add_argument("--cutoff", type=positive_float, default=0.1)
    p.add_argument("--temperature", type=positive_float, default=300.0)
    p.add_argument("--t", type=nonnegative_float, nargs="+", required=True)
    _add_quadrature(p)
    _add_output(p)

    p = sub.add_parser("figure", help="figure data tables")
    p.add_argument("name", help=f"one of {', '.join(FIGURES)}")
    p.add_argument("--t-max", type=positive_float, default=None)
    p.add_argument("--n-points", type=positive_int, default=400)
    p.add_argument("--t-fixed", type=positive_float, default=10.0, help="time for fig5")
    p.add_argument("--threads", type=positive_int, default=1, help="worker processes")
    _add_quadrature(p)
    _add_output(p)

    p = sub.add_parser("verify", help="truncated Fock-space similarity residuals")
    p.add_argument("--dim", type=fock_dim, nargs="+", default=[20, 40, 80])
    p.add_argument("--tau", type=_float, default=0.1)
    p.add_argument("--alpha-s", type=alpha_value, default=0.6)
    p.add_argument("--coupling", type=complex_value, default=0.1)
    p.add_argument("--zeta-form", choices=sorted(ZETA_FORMS), default="quadratic")
    p.add_argument("--delta", type=positive_float, default=1.0)
    p.add_argument("--floor", type=positive_float, default=1e-12,
                   help="residuals below this count as converged")
    _add_output(p)

    p = sub.add_parser("oracle", help="discrete-mode sum against the continuum integral")
    _add_physics(p)
    p.add_argument("--t", type=nonnegative_float, default=10.0)
    p.add_argument("--n-modes", type=positive_int, nargs="+", default=[500, 1000, 2000, 4000])
    p.add_argument("--omega-max-factor", type=positive_float, default=60.0)
    p.add_argument("--max-deviation", type=positive_float, default=1e-3)
    _add_quadrature(p)
    _add_output(p)
    return parser


def _quad_cfg(args) -> QuadratureConfig:
    return QuadratureConfig(args.rel_tol, args.abs_tol, args.max_subdivisions)


def _configs(args):
    try:
        sys_cfg = SystemConfig(args.alpha_s)
    except PTBrokenError as exc:
        raise _Invalid("--alpha-s", str(exc)) from None
    env = EnvConfig(
        tau=args.tau,
        zeta_form=args.zeta_form,
        delta=args.delta,
        amp=args.amp,
        cutoff=args.cutoff,
        temperature=args.temperature,
        theta=args.theta,
        zero_temperature=args.zero_temperature,
    )
    return sys_cfg, env


def _physics_params(sys_cfg: SystemConfig, env: EnvConfig):
    return {
        "alpha_s": sys_cfg.alpha_s,
        "e1": sys_cfg.e1,
        "tau": env.tau,
        "zeta_form": env.zeta_form,
        "zeta": env.zeta,
        "delta": env.delta,
        "theta": angle_label(env.theta),
        "amp": env.amp,
        "cutoff": env.cutoff,
        "temperature": "0" if env.zero_temperature else env.temperature,
    }


class _Invalid(Exception):
    def __init__(self, flag, message):
        super().__init__(f"{flag}: {message}")


def _emit(args, columns, rows, params):
    writer = WRITERS[args.format]
    if args.output == "-":
        writer(sys.stdout, columns, rows, params)
    else:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            writer(fh, columns, rows, params)


def cmd_lambda(args) -> int:
    sys_cfg, env = _configs(args)
    cfg = _quad_cfg(args)
    rows = []
    for t in args.t:
        res = lambda_continuum(t, sys_cfg, env, cfg)
        rows.append((t, res.value, res.abs_error_estimate))
    params = {**_physics_params(sys_cfg, env), "rel_tol": cfg.rel_tol, "abs_tol": cfg.abs_tol}
    _emit(args, ("t", "lambda", "abs_error"), rows, params)
    return EXIT_OK


def cmd_hermitian(args) -> int:
    cfg = _quad_cfg(args)
    rows = []
    for t in args.t:
        res = lambda_hermitian(t, args.amp, args.cutoff, args.temperature, cfg)
        rows.append((t, res.value, res.abs_error_estimate))
    params = {"amp": args.amp, "cutoff": args.cutoff, "temperature": args.temperature,
              "rel_tol": cfg.rel_tol, "abs_tol": cfg.abs_tol}
    _emit(args, ("t", "lambda", "abs_error"), rows, params)
    return EXIT_OK


def cmd_figure(args) -> int:
    if args.name not in FIGURES:
        print(f"ptdephasing figure: unknown figure {args.name!r}; choose from {', '.join(FIGURES)}",
              file=sys.stderr)
        return EXIT_USAGE
    cfg = _quad_cfg(args)
    fn = FIGURES[args.name]
    kwargs = {"cfg": cfg, "workers": args.threads}
    if args.name.startswith("fig1"):
        kwargs.update(t_max=args.t_max, n_points=args.n_points)
    elif args.name == "fig5":
        kwargs.update(t_fixed=args.t_fixed)
    else:
        kwargs.update(t_grid=time_grid(args.t_max or 10.0, args.n_points))
    result = fn(**kwargs)
    params = {"name": args.name, **result.params}
    _emit(args, ("label", result.axis_name, "lambda", "abs_error"), list(result.rows()), params)
    return EXIT_OK


def residuals_decrease(values: Sequence[float], floor: float) -> bool:
    return all(b <= a or b <= floor for a, b in zip(values, values[1:]))


def cmd_verify(args) -> int:
    env = EnvConfig(tau=args.tau, zeta_form=args.zeta_form, delta=args.delta)
    sys_cfg = SystemConfig(args.alpha_s)
    if sys_cfg.at_exceptional_point:
        raise _Invalid("--alpha-s", "similarity transform undefined at |alpha_s| = 1")
    dims = sorted(args.dim)
    single = [similarity_residual(d, env) for d in dims]
    comp = [composite_residual(d, sys_cfg, env, [args.coupling]) for d in dims]
    rows = [(r.kind, r.dim, r.tau, r.zeta, r.delta, r.residual) for r in single + comp]
    params = {"alpha_s": args.alpha_s, "coupling": args.coupling, "zeta_form": args.zeta_form,
              "m": 1.0, "k": 1.0, "trusted_block": "top-left half"}
    _emit(args, ("check", "dim", "tau", "zeta", "delta", "residual"), rows, params)
    ok = residuals_decrease([r.residual for r in single], args.floor) and residuals_decrease(
        [r.residual for r in comp], args.floor
    )
    if not ok:
        print("ptdephasing verify: residuals do not decrease with dimension", file=sys.stderr)
    return EXIT_OK if ok else EXIT_VERIFY


def relative_deviation(a: float, b: float) -> float:
    if a == b:
        return 0.0
    return abs(a - b) / abs(b) if b != 0 else math.inf


def cmd_oracle(args) -> int:
    sys_cfg, env = _configs(args)
    cfg = _quad_cfg(args)
    cont = lambda_continuum(args.t, sys_cfg, env, cfg)
    rows = []
    omega_max = args.omega_max_factor * env.cutoff
    for n in args.n_modes:
        modes = discretize_spectral_density(env.amp, env.cutoff, env.theta, n, omega_max)
        disc = lambda_discrete(args.t, modes, sys_cfg.e1, env.zeta, env.delta, env.temperature,
                               env.zero_temperature)
        rows.append((n, disc, cont.value, relative_deviation(disc, cont.value)))
    params = {**_physics_params(sys_cfg, env), "t": args.t, "omega_max": omega_max,
              "continuum_abs_error": cont.abs_error_estimate}
    _emit(args, ("n_modes", "discrete", "continuum", "rel_deviation"), rows, params)
    devs = [r[3] for r in sorted(rows)]
    ok = devs[-1] <= args.max_deviation and residuals_decrease(devs, 0.0)
    if not ok:
        print("ptdephasing oracle: discrete sum does not converge to the continuum value",
              file=sys.stderr)
    return EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {
    "lambda": cmd_lambda,
    "hermitian": cmd_hermitian,
    "figure": cmd_figure,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except _Invalid as exc:
        print(f"ptdephasing {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NonConvergenceError as exc:
        print(f"ptdephasing {args.command}: quadrature did not converge: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except ValueError as exc:
        print(f"ptdephasing {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
