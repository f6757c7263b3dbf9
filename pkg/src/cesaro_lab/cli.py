"""Command-line front end: named experiments, reproducible configs, and
CSV/JSON emission.

Every output file embeds the resolved configuration, so a result can be
regenerated from the file alone.  Exit codes: 0 success, 1 verification
failure, 2 invalid usage or configuration, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass

import numpy as np

from .ergodic import iterate_trace, spectral_dichotomy_report
from .operators import cesaro_apply, cesaro_inverse_apply, generalized_cesaro_apply, s_t_apply
from .resolvent import (
    QuadratureSpec,
    ResolventRequest,
    off_cut_sample_points,
    resolvent_integral_profile,
    resolvent_recurrence,
    resolvent_semigroup,
)
from .series import Poly, binomial_series, log_one_minus_inv, monomial, truncate
from .verify import run_suite
from .weights import WeightSpec, growth_classify

DEFAULT_SEED = 0x5EED


def _shifted_standard_pole(order: int, degree: int) -> Poly:
    coeffs = np.zeros(degree + 1, dtype=complex)
    coeffs[order - 1 :] = binomial_series(-order, degree - (order - 1)).coeffs
    return Poly(coeffs)


BUILTIN_FUNCTIONS = {
    "const1": lambda degree: truncate(monomial(0), degree),
    "log-inv": lambda degree: log_one_minus_inv(degree),
    "log-neg": lambda degree: Poly(-log_one_minus_inv(degree).coeffs),
    "geom": lambda degree: binomial_series(-1, degree),
    "binom-half": lambda degree: binomial_series(-0.5, degree),
    "binom-2": lambda degree: binomial_series(-2, degree),
    "e2": lambda degree: _shifted_standard_pole(2, degree),
    "e3": lambda degree: _shifted_standard_pole(3, degree),
    "e4": lambda degree: _shifted_standard_pole(4, degree),
}


@dataclass
class ExperimentConfig:
    """Resolved parameters of one command invocation, embedded in outputs."""

    command: str
    seed: int = DEFAULT_SEED
    degree: int | None = None
    t: float | None = None
    lambda_re: float | None = None
    lambda_im: float | None = None
    weight_kind: str | None = None
    weight_order: float | None = None
    samples: int | None = None
    grid_points: int | None = None
    op: str | None = None
    function: str | None = None
    input: str | None = None
    output: str | None = None
    route: str | None = None
    nodes: int | None = None
    panels: int | None = None
    substitution: bool | None = None
    t_max: float | None = None
    n_max: int | None = None
    degrees: tuple | None = None
    suite: str | None = None

    def embedded(self) -> dict:
        resolved = {k: v for k, v in asdict(self).items() if v is not None}
        # the destination is not part of the computation: identical configs
        # must yield byte-identical output wherever they are written
        resolved.pop("output", None)
        degrees = resolved.get("degrees")
        if degrees is not None:
            resolved["degrees"] = list(degrees)
        return resolved


def write_coeffs_csv(path: str | None, p: Poly, config: dict):
    lines = ["# config: " + json.dumps(config, sort_keys=True), "n,re,im"]
    # repr of a Python float is the shortest exact round-trip form
    lines += [f"{n},{float(c.real)!r},{float(c.imag)!r}" for n, c in enumerate(p.coeffs)]
    _write_text(path, "\n".join(lines) + "\n")


def read_coeffs_csv(path: str) -> Poly:
    """Read a coefficient file: header n,re,im, index-complete from 0;
    lines starting with ``#`` are ignored."""
    with open(path, "r", encoding="utf-8") as fh:
        rows = [line.strip() for line in fh if line.strip() and not line.startswith("#")]
    if not rows or rows[0].replace(" ", "") != "n,re,im":
        raise ValueError(f"{path}: expected header 'n,re,im'")
    coeffs = []
    for expected, row in enumerate(rows[1:]):
        parts = row.split(",")
        if len(parts) != 3:
            raise ValueError(f"{path}: malformed row {row!r}")
        if int(parts[0]) != expected:
            raise ValueError(f"{path}: coefficient rows must be index-complete from 0")
        coeffs.append(complex(float(parts[1]), float(parts[2])))
    if not coeffs:
        raise ValueError(f"{path}: no coefficient rows")
    return Poly(coeffs)


def write_samples_csv(path: str | None, zs, values, config: dict):
    lines = ["# config: " + json.dumps(config, sort_keys=True), "z_re,z_im,re,im"]
    lines += [
        f"{float(z.real)!r},{float(z.imag)!r},{float(v.real)!r},{float(v.imag)!r}"
        for z, v in zip(zs, values)
    ]
    _write_text(path, "\n".join(lines) + "\n")


def write_json(path: str | None, payload: dict):
    _write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _write_text(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _load_function(args, config: ExperimentConfig) -> Poly:
    if getattr(args, "input", None) and getattr(args, "function", None):
        raise ValueError("give either --input or --f, not both")
    if getattr(args, "input", None):
        config.input = args.input
        return read_coeffs_csv(args.input)
    name = getattr(args, "function", None)
    if not name:
        raise ValueError("one of --input or --f is required")
    if name not in BUILTIN_FUNCTIONS:
        raise ValueError(f"unknown function {name!r}; choose from " + ", ".join(BUILTIN_FUNCTIONS))
    if args.degree is None:
        raise ValueError("--degree is required with --f")
    config.function = name
    config.degree = args.degree
    return BUILTIN_FUNCTIONS[name](args.degree)


def _weight_from(args) -> WeightSpec:
    if args.weight_kind == "standard":
        return WeightSpec.standard(args.weight_order)
    return WeightSpec.log_power(int(args.weight_order))


def _cmd_apply(args) -> int:
    config = ExperimentConfig(command="apply", op=args.op, output=args.output)
    p = _load_function(args, config)
    if args.op in ("generalized", "composition"):
        if args.t is None:
            raise ValueError(f"--t is required for --op {args.op}")
        config.t = args.t
    if args.op == "cesaro":
        out = cesaro_apply(p)
    elif args.op == "inverse":
        out = cesaro_inverse_apply(p)
    elif args.op == "hardy":
        out = generalized_cesaro_apply(0.0, p)
    elif args.op == "generalized":
        out = generalized_cesaro_apply(args.t, p)
    else:
        out = s_t_apply(args.t, p)
    write_coeffs_csv(args.output, out, config.embedded())
    return 0


def _cmd_resolvent(args) -> int:
    lam = complex(args.lambda_re, args.lambda_im)
    config = ExperimentConfig(
        command="resolvent",
        route=args.route,
        lambda_re=args.lambda_re,
        lambda_im=args.lambda_im,
        output=args.output,
        nodes=args.nodes,
        panels=args.panels,
        substitution=not args.no_substitution,
        t_max=args.t_max,
    )
    h = _load_function(args, config)
    quad = QuadratureSpec(
        nodes=args.nodes,
        panels=args.panels,
        substitution=not args.no_substitution,
        t_max=args.t_max,
    )
    request = ResolventRequest(lam=lam, h=h, route=args.route, quad=quad)
    request.validate()
    if args.route == "recurrence":
        write_coeffs_csv(args.output, resolvent_recurrence(lam, h), config.embedded())
    elif args.route == "semigroup":
        write_coeffs_csv(args.output, resolvent_semigroup(lam, h, quad), config.embedded())
    else:
        zs = off_cut_sample_points()
        values = resolvent_integral_profile(lam, h, zs, quad)
        write_samples_csv(args.output, zs, values, config.embedded())
    return 0


def _cmd_spectrum(args) -> int:
    degrees = tuple(int(d) for d in args.degrees.split(",")) if args.degrees else None
    config = ExperimentConfig(
        command="spectrum",
        degree=args.degree,
        degrees=degrees,
        grid_points=args.grid_points,
        output=args.output,
    )
    report = spectral_dichotomy_report(args.degree, degrees=degrees, grid_points=args.grid_points)
    payload = {
        "config": config.embedded(),
        "degrees": list(report.degrees),
        "t_values": list(report.t_values),
        "section_diagonal_errors": {f"{t:g}": e for t, e in report.section_diagonal_errors.items()},
        "points": [
            {
                "lambda": [pt.lam.real, pt.lam.imag],
                "norms": list(pt.norms),
                "growth_ratio": pt.growth_ratio,
                "classification": pt.classification,
            }
            for pt in report.points
        ],
    }
    write_json(args.output, payload)
    return 0


def _cmd_ergodic(args) -> int:
    config = ExperimentConfig(
        command="ergodic",
        t=args.t,
        n_max=args.n_max,
        weight_kind=args.weight_kind,
        weight_order=args.weight_order,
        samples=args.samples,
        output=args.output,
    )
    f = _load_function(args, config)
    trace = iterate_trace(args.t, f, _weight_from(args), args.n_max, samples=args.samples)
    payload = {
        "config": config.embedded(),
        "iterate_norms": list(trace.iterate_norms),
        "mean_norms": list(trace.mean_norms),
        "mean_increments": list(trace.mean_increments),
        "projection_errors": list(trace.projection_errors),
    }
    write_json(args.output, payload)
    return 0


def _cmd_classify(args) -> int:
    degrees = tuple(int(d) for d in args.degrees.split(","))
    config = ExperimentConfig(
        command="classify",
        degrees=degrees,
        weight_kind=args.weight_kind,
        weight_order=args.weight_order,
        output=args.output,
    )
    if args.function not in BUILTIN_FUNCTIONS:
        raise ValueError(
            f"unknown function {args.function!r}; choose from " + ", ".join(BUILTIN_FUNCTIONS)
        )
    config.function = args.function
    family = [BUILTIN_FUNCTIONS[args.function](d) for d in degrees]
    report = growth_classify(family, weight=_weight_from(args))
    payload = {
        "config": config.embedded(),
        "log_order": report.log_order,
        "standard_order": report.standard_order,
        "residuals": report.residuals,
        "divergence_flag": report.divergence_flag,
        "norms_by_degree": list(report.norms_by_degree),
    }
    write_json(args.output, payload)
    return 0


def _cmd_verify(args) -> int:
    results = run_suite(args.suite, args.degree)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}")
    if args.output:
        config = ExperimentConfig(
            command="verify", suite=args.suite, degree=args.degree, output=args.output
        )
        payload = {
            "config": config.embedded(),
            "results": [
                {"name": r.name, "passed": r.passed, "runtime_s": r.runtime_s, "detail": r.detail}
                for r in results
            ],
        }
        write_json(args.output, payload)
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cesaro-lab",
        description="Numerical laboratory for Cesaro-type operators on truncated Taylor series.",
        epilog="CESARO_LAB_THREADS caps internal parallelism (default 1).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_function_args(p, degree_default=None):
        p.add_argument("--f", dest="function", help="builtin function name")
        p.add_argument("--input", help="coefficient CSV (n,re,im)")
        p.add_argument("--degree", type=int, default=degree_default, help="truncation degree")
        p.add_argument("--output", help="output path (default: stdout)")

    p_apply = sub.add_parser("apply", help="apply an operator to a coefficient sequence")
    p_apply.add_argument(
        "--op",
        required=True,
        choices=["cesaro", "inverse", "hardy", "generalized", "composition"],
    )
    p_apply.add_argument("--t", type=float, help="parameter for generalized/composition")
    add_function_args(p_apply)

    p_res = sub.add_parser("resolvent", help="solve (lambda*I - C) f = h by a chosen route")
    p_res.add_argument("--route", required=True, choices=["recurrence", "integral", "semigroup"])
    p_res.add_argument("--lambda-re", type=float, required=True)
    p_res.add_argument("--lambda-im", type=float, default=0.0)
    p_res.add_argument("--nodes", type=int, default=256, help="quadrature nodes per panel")
    p_res.add_argument("--panels", type=int, default=4)
    p_res.add_argument("--no-substitution", action="store_true")
    p_res.add_argument("--t-max", type=float, default=None, help="semigroup horizon override")
    add_function_args(p_res)

    p_spec = sub.add_parser("spectrum", help="finite-section diagonals and resolvent-norm sweep")
    p_spec.add_argument("--degree", type=int, default=512)
    p_spec.add_argument("--degrees", help="comma-separated section degrees")
    p_spec.add_argument("--grid-points", type=int, default=17)
    p_spec.add_argument("--output", help="output path (default: stdout)")

    p_erg = sub.add_parser("ergodic", help="iterate/average trace for the memory-t operator")
    p_erg.add_argument("--t", type=float, required=True)
    p_erg.add_argument("--n-max", type=int, default=256)
    p_erg.add_argument("--weight-kind", choices=["log", "standard"], default="log")
    p_erg.add_argument("--weight-order", type=float, default=1)
    p_erg.add_argument("--samples", type=int, default=1024)
    add_function_args(p_erg, degree_default=512)

    p_cls = sub.add_parser("classify", help="growth-order fit across truncation degrees")
    p_cls.add_argument("--f", dest="function", required=True)
    p_cls.add_argument("--degrees", default="128,512,2048")
    p_cls.add_argument("--weight-kind", choices=["log", "standard"], default="log")
    p_cls.add_argument("--weight-order", type=float, default=1)
    p_cls.add_argument("--output", help="output path (default: stdout)")

    p_ver = sub.add_parser("verify", help="run the verification suite")
    p_ver.add_argument("--suite", default="all")
    p_ver.add_argument("--degree", type=int, default=512)
    p_ver.add_argument("--output", help="also write results as JSON")

    return parser


COMMANDS = {
    "apply": _cmd_apply,
    "resolvent": _cmd_resolvent,
    "spectrum": _cmd_spectrum,
    "ergodic": _cmd_ergodic,
    "classify": _cmd_classify,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
