"""Batch command-line front end.

Every command writes CSV with a one-line JSON config header (byte-stable
for a fixed config and seed) followed by a separate timestamp line, so
repeated runs differ only in that isolated line.  Floats are serialized
with 17 significant digits.  Exit codes: 0 success, 2 validation error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import __version__, _kernels, laplace, levy, pde, stoch
from .errors import (GammaPole, HorizonExceeded, InvalidParams,
                     InversionFailure, NonConvergent, QuadratureFailure,
                     SeriesDiverges)
from .params import (BrownianDrift, CompensatedPoisson, InversionConfig,
                     IsotropicStable, Method, Poisson, PrabhakarParams,
                     TimeChangeParams, TransformId, WrightParams)
from .rng import master_stream

_NUMERICAL_ERRORS = (NonConvergent, GammaPole, SeriesDiverges, QuadratureFailure,
                     InversionFailure, HorizonExceeded)


def _fmt(x) -> str:
    if isinstance(x, complex):
        return f"{x.real:.17g}{x.imag:+.17g}j"
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


class _Writer:
    def __init__(self, path: str | None, config: dict):
        self.lines = []
        self.path = path
        header = {k: v for k, v in sorted(config.items()) if v is not None}
        self.lines.append("# config " + json.dumps(header, sort_keys=True))
        self.lines.append("# generated " + time.strftime("%Y-%m-%dT%H:%M:%S%z"))

    def row(self, *cells):
        self.lines.append(",".join(_fmt(c) for c in cells))

    def flush(self):
        text = "\n".join(self.lines) + "\n"
        if self.path:
            with open(self.path, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def _tc_from(args) -> TimeChangeParams:
    return TimeChangeParams(gamma=args.gamma, nu=args.nu, delta=args.delta,
                            lambda_rate=getattr(args, "lam", 1.0) or 1.0,
                            c=getattr(args, "c", 1.0) or 1.0)


def _inversion_cfg(args) -> InversionConfig:
    method = Method.GAVER_STEHFEST if getattr(args, "method", "talbot") == "stehfest" \
        else Method.FIXED_TALBOT
    return InversionConfig(method=method, order=getattr(args, "order", 0) or 0)


def _seed_of(args) -> int:
    seed = getattr(args, "seed", None)
    if seed is None:
        env = os.environ.get("FRACSTOCH_SEED")
        if env is None:
            raise InvalidParams("stochastic commands need --seed or FRACSTOCH_SEED")
        seed = int(env)
    return int(seed)


def _floats(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def _cmd_eval_ml(args, config):
    from .specfun import ml_prabhakar
    w = _Writer(args.output, config)
    p = PrabhakarParams(alpha=args.alpha, eta=args.eta, xi=args.xi, zeta=1.0)
    w.row("alpha", "eta", "xi", "x", "value", "method", "tolerance")
    for x in _floats(args.x):
        w.row(args.alpha, args.eta, args.xi, x, ml_prabhakar(p, x), "series", 1e-15)
    w.flush()


def _cmd_eval_wright(args, config):
    from .specfun import wright
    w = _Writer(args.output, config)
    w.row("a", "b", "x", "value", "method", "tolerance")
    for x in _floats(args.x):
        w.row(args.a, args.b, x, wright(WrightParams(a=args.a, b=args.b), x),
              "series", 1e-15)
    w.flush()


def _cmd_invert(args, config):
    w = _Writer(args.output, config)
    tc = _tc_from(args)
    tid = TransformId(args.id)
    cfg = _inversion_cfg(args)
    if tid is TransformId.G_FOURIER_LAPLACE:
        coord = complex(args.psi_re or 0.0, args.psi_im or 0.0)
    else:
        coord = args.coord
    w.row("t", "value", "secondary", "disagreement", "method", "tolerance")
    for t in _floats(args.t):
        rep = laplace.invert_laplace_report(
            lambda s: laplace.analytic_transform(tid, tc, (coord, s)), t, cfg)
        w.row(t, rep.value, rep.secondary, rep.disagreement,
              rep.method.value, rep.tolerance)
    w.flush()


def _cmd_simulate_path(args, config):
    w = _Writer(args.output, config)
    stream = master_stream(_seed_of(args)).child("simulate-path")
    grid = np.linspace(0.0, args.horizon, args.steps + 1)
    if args.process == "frakv":
        path = stoch.sample_frakV_path(_tc_from(args), grid, stream)
    else:
        spec = _levy_spec(args)
        path = levy.sample_levy_path(spec, grid, stream)
    w.row("time", "value", "monotone", "method", "tolerance")
    for t, v in zip(path.times, path.values):
        w.row(t, v, int(path.monotone), _kernels.BACKEND + "-exact", 0.0)
    w.flush()


def _levy_spec(args):
    if args.process == "brownian":
        return BrownianDrift(a=args.drift or 0.0, c=args.c or 1.0)
    if args.process == "stable":
        return IsotropicStable(alpha_s=args.alpha_s or 0.5)
    if args.process == "poisson":
        return Poisson(rate=args.rate or 1.0)
    if args.process == "compensated-poisson":
        return CompensatedPoisson(rate=args.rate or 1.0)
    raise InvalidParams(f"unknown process {args.process!r}")


def _cmd_sample_inverse(args, config):
    w = _Writer(args.output, config)
    stream = master_stream(_seed_of(args)).child("sample-inverse")
    tc = _tc_from(args)
    values = stoch.inverse_E_batch(tc, args.t, args.resolution, args.n, stream)
    w.row("index", "value", "bracket_width", "method")
    for i, v in enumerate(values):
        w.row(i, float(v), args.resolution, "first-passage")
    w.flush()


def _cmd_mc_verify(args, config):
    w = _Writer(args.output, config)
    seed = _seed_of(args)
    stream = master_stream(seed).child("mc-verify")
    tc = _tc_from(args)
    n = args.n
    w.row("check", "estimate", "stderr", "analytic", "deviation_sigmas",
          "n_samples", "method", "tolerance")

    def emit(name, emp_mean, emp_se, analytic):
        dev = abs(emp_mean - analytic) / emp_se if emp_se else 0.0
        w.row(name, emp_mean, emp_se, analytic, dev, n, "mc-vs-inversion", 3.0)

    if args.check == "v-laplace":
        v = stoch.frakV_marginal(tc, args.t, n, stream)
        vals = np.exp(-args.z * v)
        gn = tc.order_sum
        emit("v-laplace", vals.mean(), vals.std(ddof=1) / np.sqrt(n),
             float(np.exp(-args.t * (args.z ** gn * (1 + args.z ** -tc.nu) ** tc.delta))))
    elif args.check == "e-laplace":
        e = stoch.inverse_E_batch(tc, args.t, args.resolution, n, stream)
        vals = np.exp(-args.z * e)
        target = laplace.invert_laplace(
            lambda s: laplace.analytic_transform(TransformId.H_XS, tc, (args.z, s)),
            args.t)
        emit("e-laplace", vals.mean(), vals.std(ddof=1) / np.sqrt(n), float(target))
    elif args.check == "x2-moment":
        from scipy.special import gamma as G
        x = levy.time_changed_batch(BrownianDrift(a=0.0, c=args.c or 1.0), tc, 0.0,
                                    args.t, args.resolution, n, stream)
        vals = x * x
        gn = tc.order_sum
        emit("x2-moment", vals.mean(), vals.std(ddof=1) / np.sqrt(n),
             2.0 * (args.c or 1.0) * args.t ** gn / float(G(1.0 + gn)))
    elif args.check == "char-function":
        spec = _levy_spec(args)
        x = levy.time_changed_batch(spec, tc, 0.0, args.t, args.resolution, n, stream)
        vals = np.exp(1j * args.z * x)
        psi = levy.psi_symbol(spec, args.z)
        target = laplace.invert_laplace(
            lambda s: laplace.analytic_transform(TransformId.G_FOURIER_LAPLACE, tc,
                                                 (psi, s)), args.t)
        target = complex(target)
        emit("char-function-re", vals.real.mean(),
             vals.real.std(ddof=1) / np.sqrt(n), target.real)
        emit("char-function-im", vals.imag.mean(),
             vals.imag.std(ddof=1) / np.sqrt(n), target.imag)
    else:
        raise InvalidParams(f"unknown check {args.check!r}")
    w.flush()


def _cmd_solve_pde(args, config):
    w = _Writer(args.output, config)
    tc = _tc_from(args)
    cfg = _inversion_cfg(args)
    if args.mode == "fourier-series":
        w.row("beta", "t", "value", "method", "tolerance")
        for b in _floats(args.beta):
            w.row(b, args.t, pde.g_hat_series(tc, b, args.t), "prabhakar-series", 1e-15)
    elif args.mode == "density":
        w.row("x", "t", "density", "raw", "method", "tolerance")
        for x in _floats(args.x):
            r = pde.density_g_report(tc, x, args.t, cfg)
            w.row(x, args.t, r.clamped, r.raw, r.method.value, cfg.tolerance)
    elif args.mode == "wright":
        w.row("x", "t", "density", "method", "tolerance")
        for x in _floats(args.x):
            w.row(x, args.t,
                  pde.diffusion_wright(args.alpha_w, args.lambda_scale, x, args.t),
                  "wright-series", 1e-15)
    else:
        raise InvalidParams(f"unknown mode {args.mode!r}")
    w.flush()


def _cmd_multiterm(args, config):
    w = _Writer(args.output, config)
    w.row("coefficient", "order", "method", "tolerance")
    for coef, order in pde.multiterm_expand(args.n, args.lam or 1.0,
                                            args.gamma, args.nu):
        w.row(coef, order, "exact", 0.0)
    w.flush()


def _cmd_verify_suite(args, config):
    from .verify import run_suite
    w = _Writer(args.output, config)
    w.row("check", "status", "observed", "target", "tolerance", "method")
    failures = 0
    for r in run_suite(tier=args.tier, seed=_seed_of(args), threads=args.threads):
        failures += r.status != "pass"
        w.row(r.name, r.status, r.observed, r.target, r.tolerance, r.method)
    w.flush()
    if failures:
        raise InversionFailure(f"{failures} verification checks failed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracstoch",
        description="Evaluate the special functions and transforms, simulate the "
                    "time-changed processes, and cross-check the two against "
                    "each other.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, stochastic=False, inversion=False, tc=False):
        p.add_argument("--output", help="write CSV here instead of stdout")
        p.add_argument("--config", help="JSON file with defaults; flags override")
        p.add_argument("--threads", type=int, default=None,
                       help="worker cap for parallel sections (default: all cores)")
        if stochastic:
            p.add_argument("--seed", type=int, default=None,
                           help="master seed (falls back to FRACSTOCH_SEED)")
        if inversion:
            p.add_argument("--method", choices=["stehfest", "talbot"], default="talbot")
            p.add_argument("--order", type=int, default=0,
                           help="method order (0 = default: 14 / 32)")
        if tc:
            p.add_argument("--gamma", type=float, required=True)
            p.add_argument("--nu", type=float, required=True)
            p.add_argument("--delta", type=float, required=True)
            p.add_argument("--lam", type=float, default=1.0, help="rate lambda")
            p.add_argument("--c", type=float, default=1.0, help="diffusivity")

    p = sub.add_parser("eval-ml", help="generalized Mittag-Leffler values",
                       epilog="columns: alpha,eta,xi,x,value,method,tolerance")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--x", required=True, help="comma-separated arguments")
    add_common(p)
    p.set_defaults(func=_cmd_eval_ml)

    p = sub.add_parser("eval-wright", help="Wright function values",
                       epilog="columns: a,b,x,value,method,tolerance")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--x", required=True, help="comma-separated arguments")
    add_common(p)
    p.set_defaults(func=_cmd_eval_wright)

    p = sub.add_parser("invert", help="invert a cataloged transform in s",
                       epilog="columns: t,value,secondary,disagreement,method,tolerance")
    p.add_argument("--id", required=True,
                   choices=[t.value for t in TransformId])
    p.add_argument("--coord", type=float, default=1.0,
                   help="the non-inverted coordinate (x or z)")
    p.add_argument("--psi-re", type=float, default=None)
    p.add_argument("--psi-im", type=float, default=None)
    p.add_argument("--t", required=True, help="comma-separated inversion times")
    add_common(p, inversion=True, tc=True)
    p.set_defaults(func=_cmd_invert)

    p = sub.add_parser("simulate-path", help="sample a process path on a grid",
                       epilog="columns: time,value,monotone,method,tolerance")
    p.add_argument("--process", required=True,
                   choices=["frakv", "brownian", "stable", "poisson",
                            "compensated-poisson"])
    p.add_argument("--horizon", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--gamma", type=float, default=0.5)
    p.add_argument("--nu", type=float, default=0.2)
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--lam", type=float, default=1.0)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--drift", type=float, default=0.0)
    p.add_argument("--alpha-s", dest="alpha_s", type=float, default=0.5)
    p.add_argument("--rate", type=float, default=1.0)
    add_common(p, stochastic=True)
    p.set_defaults(func=_cmd_simulate_path)

    p = sub.add_parser("sample-inverse",
                       help="first-passage samples of the inverse process",
                       epilog="columns: index,value,bracket_width,method")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--resolution", type=float, default=1e-3)
    p.add_argument("--n", type=int, default=1000)
    add_common(p, stochastic=True, tc=True)
    p.set_defaults(func=_cmd_sample_inverse)

    p = sub.add_parser("mc-verify", help="Monte Carlo vs closed-form transform",
                       epilog="columns: check,estimate,stderr,analytic,deviation_sigmas,n_samples,method,tolerance")
    p.add_argument("--check", required=True,
                   choices=["v-laplace", "e-laplace", "x2-moment", "char-function"])
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--z", type=float, default=1.0)
    p.add_argument("--n", type=int, default=10000)
    p.add_argument("--resolution", type=float, default=1e-3)
    p.add_argument("--process", default="brownian",
                   choices=["brownian", "stable", "poisson", "compensated-poisson"])
    p.add_argument("--drift", type=float, default=0.0)
    p.add_argument("--alpha-s", dest="alpha_s", type=float, default=0.5)
    p.add_argument("--rate", type=float, default=1.0)
    add_common(p, stochastic=True, tc=True)
    p.set_defaults(func=_cmd_mc_verify)

    p = sub.add_parser("solve-pde", help="evaluate the Cauchy-problem solution",
                       epilog="columns: beta-or-x,t,value,(raw,)method,tolerance")
    p.add_argument("--mode", required=True,
                   choices=["fourier-series", "density", "wright"])
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--beta", default="0.5,1.0", help="frequencies (fourier-series)")
    p.add_argument("--x", default="0.0,0.5,1.0", help="positions (density/wright)")
    p.add_argument("--alpha-w", dest="alpha_w", type=float, default=1.0,
                   help="diffusion-wave order (wright mode)")
    p.add_argument("--lambda-scale", dest="lambda_scale", type=float, default=1.0)
    add_common(p, inversion=True, tc=True)
    p.set_defaults(func=_cmd_solve_pde)

    p = sub.add_parser("multiterm", help="integer-order multi-term expansion",
                       epilog="columns: coefficient,order,method,tolerance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--nu", type=float, required=True)
    add_common(p)
    p.set_defaults(func=_cmd_multiterm)

    p = sub.add_parser("verify-suite", help="run the cross-check battery",
                       epilog="columns: check,status,observed,target,tolerance,method")
    p.add_argument("--tier", choices=["fast", "full"], default="fast")
    add_common(p, stochastic=True)
    p.set_defaults(func=_cmd_verify_suite)

    return parser


def _apply_config_file(parser, argv):
    # a --config file supplies defaults; explicit flags win
    probe = argparse.ArgumentParser(add_help=False)
    probe.add_argument("--config")
    known, _ = probe.parse_known_args(argv)
    if not known.config:
        return argv, {}
    with open(known.config) as fh:
        loaded = json.load(fh)
    if not isinstance(loaded, dict):
        raise InvalidParams("--config must hold a JSON object")
    return argv, loaded


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv, file_defaults = _apply_config_file(parser, argv)
        if file_defaults:
            for action in parser._subparsers._group_actions[0].choices.values():
                action.set_defaults(**{k: v for k, v in file_defaults.items()})
        args = parser.parse_args(argv)
        config = {k: v for k, v in vars(args).items()
                  if k not in ("func", "output") and not callable(v)}
        config["version"] = __version__
        config["backend"] = _kernels.BACKEND
        args.func(args, config)
    except InvalidParams as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
