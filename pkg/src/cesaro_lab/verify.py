"""Verification suite: the package's falsifiable claims, each with its
stated tolerance and runtime budget.

Every check derives its expected values independently of the code path it
exercises (closed forms, triangular oracles, stated constants) and returns
a :class:`CheckResult`; ``run_suite`` powers both the command-line
``verify`` subcommand and the acceptance tests.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .ergodic import eigenpair_cesaro, eigenvector_ct, iterate_trace
from .operators import (
    build_corpus,
    cesaro_apply,
    cesaro_inverse_apply,
    finite_section,
    generalized_cesaro_apply,
    log_power_identity_check,
    s_t_apply,
    CORPUS_SEED,
)
from .resolvent import (
    off_cut_sample_points,
    resolvent_integral_profile,
    resolvent_recurrence,
    resolvent_semigroup,
)
from .series import Poly, horner_eval, log_one_minus_inv, monomial, truncate
from .weights import (
    WeightSpec,
    default_radius_grid,
    growth_classify,
    max_modulus_profile,
    weight_eval,
)

#: Multiplicative slack over the proved constants, absorbing the sampling
#: underestimate of circle maxima (applied on both sides of each bound).
INEQUALITY_SLACK = 1.0 + 1e-6


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    runtime_s: float
    detail: str


def worker_count() -> int:
    """Internal parallelism cap from CESARO_LAB_THREADS (default 1)."""
    raw = os.environ.get("CESARO_LAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map_ordered(fn, items):
    items = list(items)
    n = worker_count()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _result(name, start, ok, limit, detail) -> CheckResult:
    runtime = time.perf_counter() - start
    in_budget = runtime <= limit
    extra = "" if in_budget else f"; exceeded {limit:g} s budget"
    return CheckResult(
        name=name,
        passed=bool(ok and in_budget),
        runtime_s=runtime,
        detail=f"{detail} [{runtime:.2f} s{extra}]",
    )


def check_eigen_cesaro(degree: int = 512) -> CheckResult:
    """Eigen-identity for the averaging operator, indices 1..8."""
    start = time.perf_counter()
    worst = 0.0
    for n in range(1, 9):
        pair = eigenpair_cesaro(n, degree)
        image = cesaro_apply(pair.coeffs).coeffs
        scale = float(np.max(np.abs(pair.coeffs.coeffs)))
        worst = max(worst, float(np.max(np.abs(image - pair.eigenvalue * pair.coeffs.coeffs))) / scale)
    return _result(
        "eigen-cesaro", start, worst <= 1e-12, 1.0, f"max relative residual {worst:.2e}"
    )


def check_eigen_ct(degree: int = 512) -> CheckResult:
    """Eigen-identity and absolute-sum tail for the memory-t operator.

    The tail clause compares the partial sums of |x_n| between half degree
    and full degree against 1e-8 for every (t, m) pair.
    """
    start = time.perf_counter()
    half = degree // 2
    worst_res = 0.0
    tail_failures = []
    for t in (0.0, 0.3, 0.9):
        for m in range(6):
            pair = eigenvector_ct(t, m, degree)
            x = pair.coeffs.coeffs
            image = generalized_cesaro_apply(t, pair.coeffs).coeffs
            scale = float(np.max(np.abs(x)))
            worst_res = max(
                worst_res, float(np.max(np.abs(image - pair.eigenvalue * x))) / scale
            )
            increment = float(np.sum(np.abs(x[half + 1 :])))
            if increment > 1e-8:
                tail_failures.append(f"t={t} m={m} increment={increment:.3e}")
    ok = worst_res <= 1e-12 and not tail_failures
    detail = f"max relative residual {worst_res:.2e}"
    if tail_failures:
        detail += "; tail>1e-8 at " + ", ".join(tail_failures)
    return _result("eigen-ct", start, ok, 1.0, detail)


def check_inverse_roundtrip(degree: int = 512) -> CheckResult:
    """Inverse identity over the 50 pseudo-random corpus members."""
    start = time.perf_counter()
    worst = 0.0
    for _, f in build_corpus(degree, include_structured=False):
        back = cesaro_inverse_apply(cesaro_apply(f))
        worst = max(worst, float(np.max(np.abs(back.coeffs - f.coeffs))))
    return _result(
        "inverse-roundtrip", start, worst <= 1e-12, 1.0, f"max coefficient error {worst:.2e}"
    )


def check_log_power_identity() -> CheckResult:
    """Closed-form image of log(1-z)**k for k = 1..4 at degree 256."""
    start = time.perf_counter()
    errs = {k: log_power_identity_check(k, 256) for k in (1, 2, 3, 4)}
    worst = max(errs.values())
    return _result(
        "log-power-identity", start, worst <= 1e-10, 1.0, f"max coefficient error {worst:.2e}"
    )


def check_resolvent_routes(degree: int = 128) -> CheckResult:
    """Integral and semigroup routes against the triangular oracle.

    The oracle is solved to four times the corpus degree so that its own
    truncation tail at |z| <= 0.8 sits well below the comparison tolerance.
    """
    start = time.perf_counter()
    corpus = build_corpus(degree)
    zs = off_cut_sample_points()
    oracle_degree = 4 * degree

    def integral_diff(lam):
        worst = 0.0
        for _, h in corpus:
            reference = horner_eval(resolvent_recurrence(lam, truncate(h, oracle_degree)), zs)
            values = resolvent_integral_profile(lam, h, zs)
            worst = max(worst, float(np.max(np.abs(values - reference))))
        return worst

    worst_integral = max(_map_ordered(integral_diff, [1j, 2j, -1 + 1j, 3.0]))

    probes = [truncate(monomial(0), degree), log_one_minus_inv(degree), corpus[0][1]]
    worst_semigroup = 0.0
    for lam in (-1.0, -0.5 + 0.3j, -2.0):
        for h in probes:
            direct = resolvent_recurrence(lam, h)
            quadrature = resolvent_semigroup(lam, h)
            worst_semigroup = max(
                worst_semigroup, float(np.max(np.abs(direct.coeffs - quadrature.coeffs)))
            )
    ok = worst_integral <= 1e-8 and worst_semigroup <= 1e-6
    detail = f"integral vs oracle {worst_integral:.2e}; semigroup vs oracle {worst_semigroup:.2e}"
    return _result("resolvent-routes", start, ok, 30.0, detail)


def check_resolvent_identity(degree: int = 512) -> CheckResult:
    """(lam*I - C) applied to the solved resolvent reproduces h."""
    start = time.perf_counter()
    randoms = build_corpus(degree, include_structured=False)
    rng = np.random.default_rng(CORPUS_SEED)
    diag = 1.0 / np.arange(1, degree + 2)
    worst = 0.0
    for i in range(20):
        while True:
            lam = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            # keep a real spectral gap so the triangular solve stays
            # well-conditioned at the stated tolerance
            if abs(lam) >= 0.05 and np.min(np.abs(lam - diag)) >= 0.05:
                break
        h = randoms[i][1]
        f = resolvent_recurrence(lam, h)
        residual = lam * f.coeffs - cesaro_apply(f).coeffs - h.coeffs
        # backward error: for Re(1/lam) > 1 the solution itself grows
        # polynomially in the degree, which is the scale rounding acts on
        scale = abs(lam) * float(np.max(np.abs(f.coeffs))) + float(np.max(np.abs(h.coeffs)))
        worst = max(worst, float(np.max(np.abs(residual))) / scale)
    return _result(
        "resolvent-identity", start, worst <= 1e-12, 1.0, f"max residual {worst:.2e}"
    )


def check_norm_inequalities(degree: int = 512, samples: int = 1024) -> CheckResult:
    """Zero violations of the five proved norm bounds over the corpus."""
    start = time.perf_counter()
    corpus = build_corpus(degree)
    grid = default_radius_grid(degree)
    positive = grid > 0
    log_factor = np.empty_like(grid)
    log_factor[positive] = -np.log1p(-grid[positive]) / grid[positive]
    vw = {k: weight_eval(WeightSpec.log_power(k), grid) for k in (1, 2, 3, 4)}
    w1 = weight_eval(WeightSpec.standard(1.0), grid)
    continuity_const = 1.0 / (1.0 - 1.0 / np.e)

    def member_violations(item):
        name, f = item
        found = []
        m_f = max_modulus_profile(f, grid, samples)
        m_cf = max_modulus_profile(cesaro_apply(f), grid, samples)
        if np.any(m_cf[positive] > m_f[positive] * log_factor[positive] * INEQUALITY_SLACK):
            found.append(f"{name}:growth-estimate")
        for k in (1, 2, 3):
            lhs = np.max(vw[k + 1] * m_cf)
            rhs = continuity_const * np.max(vw[k] * m_f) * INEQUALITY_SLACK
            if lhs > rhs:
                found.append(f"{name}:step-shift-k{k}")
        norm_w1 = np.max(w1 * m_f)
        for t in (0.0, 0.5, 0.9):
            m_ct = max_modulus_profile(generalized_cesaro_apply(t, f), grid, samples)
            lhs = np.max(vw[1] * m_ct) / norm_w1
            rhs = INEQUALITY_SLACK / ((1.0 - t) * (1.0 - 1.0 / np.e))
            if lhs > rhs:
                found.append(f"{name}:compact-route-t{t:g}")
        for t in (0.1, 1.0, 5.0):
            m_st = max_modulus_profile(s_t_apply(t, f), grid, samples)
            for k in (1, 2, 3):
                if np.max(vw[k] * m_st) > np.max(vw[k] * m_f) * INEQUALITY_SLACK:
                    found.append(f"{name}:contraction-t{t:g}-k{k}")
        for b in (0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 8.0, -8.0):
            m_r = max_modulus_profile(resolvent_recurrence(1j * b, f), grid, samples)
            bound = 1.0 / abs(b) + np.exp(4.0 * np.pi / abs(b)) / b**2
            if np.max(vw[2] * m_r) > bound * np.max(vw[1] * m_f) * INEQUALITY_SLACK:
                found.append(f"{name}:imaginary-axis-b{b:g}")
        return found

    violations = [v for found in _map_ordered(member_violations, corpus) for v in found]
    detail = f"{len(corpus)} corpus members, {len(violations)} violations"
    if violations:
        detail += ": " + ", ".join(violations[:8])
    return _result("norm-inequalities", start, not violations, 60.0, detail)


def check_ergodic_dichotomy(degree: int = 512) -> CheckResult:
    """Mean convergence with explicit limit at t = 0.5; drift at t = 1."""
    start = time.perf_counter()
    f = truncate(monomial(0), degree)
    v1 = WeightSpec.log_power(1)
    n_max = 256

    trace_half = iterate_trace(0.5, f, v1, n_max)
    errors = np.asarray(trace_half.projection_errors)
    decay_ok = errors[n_max - 1] <= 0.01 * errors[0]
    scaled = np.arange(1, n_max + 1) * errors
    rate_ok = np.max(scaled[31:]) <= 10.0 * scaled[31]

    trace_one = iterate_trace(1.0, f, v1, n_max)
    min_increment = min(trace_one.mean_increments)
    drift_ok = min_increment >= 1e-3

    # independent re-derivation of the running averages, watching only the
    # exactly preserved constant coordinate
    current = f.coeffs.copy()
    mean0 = 0.0 + 0.0j
    constant_ok = True
    for n in range(1, n_max + 1):
        current = generalized_cesaro_apply(1.0, Poly(current)).coeffs
        mean0 = mean0 + (current[0] - mean0) / n
        if mean0 != 1.0:
            constant_ok = False
            break

    ok = decay_ok and rate_ok and drift_ok and constant_ok
    detail = (
        f"err(256)/err(1)={errors[n_max - 1] / errors[0]:.4f}, "
        f"max n*err / 32*err(32)={np.max(scaled[31:]) / scaled[31]:.2f}, "
        f"min drift increment={min_increment:.3e}, constant term exact={constant_ok}"
    )
    return _result("ergodic-dichotomy", start, ok, 30.0, detail)


def check_growth_classification() -> CheckResult:
    """Fitted growth orders for a log-growth and a standard-order-2 family."""
    start = time.perf_counter()
    degs = (128, 512, 2048)
    log_report = growth_classify([log_one_minus_inv(d) for d in degs])
    quad_report = growth_classify([Poly(np.arange(d + 1, dtype=complex)) for d in degs])
    ok = (
        0.8 <= log_report.log_order <= 1.2
        and 1.9 <= quad_report.standard_order <= 2.1
        and quad_report.divergence_flag
    )
    detail = (
        f"log family k-hat={log_report.log_order:.3f}; "
        f"order-2 family gamma-hat={quad_report.standard_order:.3f}, "
        f"divergence={quad_report.divergence_flag}"
    )
    return _result("growth-classification", start, ok, 30.0, detail)


def check_finite_section_spectrum(degree: int = 512) -> CheckResult:
    """Section eigenvalues read off the diagonal, for every memory t."""
    start = time.perf_counter()
    expected = 1.0 / np.arange(1, degree + 2)
    worst = 0.0
    triangular = True
    for t in (0.0, 0.3, 0.5, 0.9, 1.0):
        section = finite_section(t, degree)
        if np.any(np.triu(section.entries, 1) != 0):
            triangular = False
        worst = max(worst, float(np.max(np.abs(np.diagonal(section.entries) - expected))))
    ok = triangular and worst <= 1e-14
    return _result(
        "finite-section-spectrum",
        start,
        ok,
        1.0,
        f"triangular={triangular}, max diagonal error {worst:.2e}",
    )


SUITES = {
    "eigen-cesaro": lambda degree: check_eigen_cesaro(degree),
    "eigen-ct": lambda degree: check_eigen_ct(degree),
    "inverse-roundtrip": lambda degree: check_inverse_roundtrip(degree),
    "log-power-identity": lambda degree: check_log_power_identity(),
    "resolvent-routes": lambda degree: check_resolvent_routes(),
    "resolvent-identity": lambda degree: check_resolvent_identity(degree),
    "norm-inequalities": lambda degree: check_norm_inequalities(degree),
    "ergodic-dichotomy": lambda degree: check_ergodic_dichotomy(degree),
    "growth-classification": lambda degree: check_growth_classification(),
    "finite-section-spectrum": lambda degree: check_finite_section_spectrum(degree),
}


def run_suite(suite: str = "all", degree: int = 512):
    """Run one named check or, for ``all``, every check in order."""
    if suite == "all":
        names = list(SUITES)
    elif suite in SUITES:
        names = [suite]
    else:
        raise ValueError(f"unknown suite {suite!r}; choose from all, " + ", ".join(SUITES))
    return [SUITES[name](degree) for name in names]
