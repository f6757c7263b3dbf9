"""Eigenvector constructions, iterate/average experiments, and the
spectral dichotomy between the compact regime t < 1 and the boundary case
t = 1.

For t < 1 the averaging operator with memory t is power bounded and its
running averages converge to the rank-one projection f -> f(0) * g0, where
g0 has coefficients t**n.  At t = 1 the averages keep drifting; the traces
record that drift instead of asserting a rate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operators import finite_section, generalized_cesaro_apply, cesaro_apply
from .resolvent import resolvent_recurrence
from .series import Poly, binomial_series, log_one_minus_inv, monomial, truncate
from .weights import WeightSpec, default_radius_grid, weighted_sup_norm

#: Relative eigen-residual tolerated for constructed eigenpairs; the maps
#: are triangular, so anything above rounding noise indicates a bug.
EIGEN_RESIDUAL_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class EigenPair:
    """An eigenvector truncation together with its exact eigenvalue."""

    index: int
    t: float
    coeffs: Poly
    eigenvalue: float


def _verify_residual(image: np.ndarray, pair: EigenPair):
    scale = float(np.max(np.abs(pair.coeffs.coeffs)))
    residual = float(np.max(np.abs(image - pair.eigenvalue * pair.coeffs.coeffs)))
    if residual > EIGEN_RESIDUAL_TOL * max(scale, 1.0):
        raise ArithmeticError(
            f"eigen residual {residual:.3e} exceeds {EIGEN_RESIDUAL_TOL:g} * {scale:.3e}"
        )


def eigenpair_cesaro(n: int, degree: int) -> EigenPair:
    """Eigenvector z**(n-1) * (1-z)**(-n) of the averaging operator, with
    eigenvalue 1/n; the truncation satisfies the eigen-identity exactly."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if degree < n:
        raise ValueError("degree must be at least n")
    tail = binomial_series(-n, degree - (n - 1))
    coeffs = np.zeros(degree + 1, dtype=complex)
    coeffs[n - 1 :] = tail.coeffs
    pair = EigenPair(index=n, t=1.0, coeffs=Poly(coeffs), eigenvalue=1.0 / n)
    _verify_residual(cesaro_apply(pair.coeffs).coeffs, pair)
    return pair


def eigenvector_ct(t: float, m: int, degree: int) -> EigenPair:
    """Eigenvector of the memory-t operator for eigenvalue 1/(m+1).

    Normalized with coefficient 1 at z**m; below m everything vanishes and
    above m the triangular recurrence
    x_n * (1/(n+1) - 1/(m+1)) = -(1/(n+1)) * sum_{j<n} t**(n-j) x_j
    determines x_n (the diagonal gaps never vanish for n != m).
    """
    tv = float(t)
    if not np.isfinite(tv) or not (0.0 <= tv < 1.0):
        raise ValueError("t must lie in [0, 1)")
    if not (0 <= m <= degree):
        raise ValueError("m must lie in 0..degree")
    mu = 1.0 / (m + 1)
    x = np.zeros(degree + 1, dtype=complex)
    x[m] = 1.0
    running = 0.0 + 0.0j  # sum_{j<=n} t**(n-j) x_j, advanced each step
    for n in range(degree + 1):
        if n > m:
            s = tv * running
            x[n] = -(s / (n + 1)) / (1.0 / (n + 1) - mu)
            running = s + x[n]
        else:
            running = tv * running + x[n]
    pair = EigenPair(index=m, t=tv, coeffs=Poly(x), eigenvalue=mu)
    _verify_residual(generalized_cesaro_apply(tv, pair.coeffs).coeffs, pair)
    return pair


@dataclass(frozen=True, eq=False)
class ErgodicTrace:
    """Per-iteration record of iterate norms, running-average norms,
    average increments, and (for t < 1) distances to the limit projection.

    ``iterate_norms[n-1]`` is the weighted norm of the n-th iterate,
    ``mean_norms[n-1]`` that of the n-term running average T_[n], and
    ``mean_increments[n-1]`` the norm of T_[2n] - T_[n].
    """

    t: float
    weight: WeightSpec
    iterate_norms: tuple
    mean_norms: tuple
    mean_increments: tuple
    projection_errors: tuple


def iterate_trace(
    t: float,
    f: Poly,
    weight: WeightSpec,
    n_max: int,
    grid=None,
    samples: int = 1024,
) -> ErgodicTrace:
    """Iterate the memory-t operator on f and record the averaging history.

    Projection errors compare T_[n] f against f(0) * g0 truncated to deg f
    and are recorded only for t < 1, where that is the ergodic limit.
    """
    if n_max < 8:
        raise ValueError("n_max must be at least 8")
    if not np.any(np.abs(f.coeffs) > 0):
        raise ValueError("f must be nonzero")
    tv = float(t)
    if not np.isfinite(tv) or not (0.0 <= tv <= 1.0):
        raise ValueError("t must lie in [0, 1]")
    if grid is None:
        grid = default_radius_grid(f.degree)

    target = None
    if tv < 1.0:
        target = f.coeffs[0] * tv ** np.arange(f.degree + 1)

    def norm_of(vec: np.ndarray) -> float:
        return weighted_sup_norm(Poly(vec), weight, grid, samples).value

    current = f.coeffs.copy()
    mean = np.zeros_like(current)
    means = []
    iterate_norms = []
    mean_norms = []
    projection_errors = []
    for n in range(1, n_max + 1):
        current = generalized_cesaro_apply(tv, Poly(current)).coeffs
        mean = mean + (current - mean) / n
        means.append(mean.copy())
        iterate_norms.append(norm_of(current))
        mean_norms.append(norm_of(mean))
        if target is not None:
            projection_errors.append(norm_of(mean - target))
    mean_increments = [
        norm_of(means[2 * n - 1] - means[n - 1]) for n in range(1, n_max // 2 + 1)
    ]
    return ErgodicTrace(
        t=tv,
        weight=weight,
        iterate_norms=tuple(iterate_norms),
        mean_norms=tuple(mean_norms),
        mean_increments=tuple(mean_increments),
        projection_errors=tuple(projection_errors),
    )


@dataclass(frozen=True)
class SpectralPoint:
    """Resolvent norm estimates at one lambda across section degrees."""

    lam: complex
    norms: tuple
    growth_ratio: float
    classification: str


@dataclass(frozen=True, eq=False)
class SpectralDichotomyReport:
    """Finite-section diagonal check plus a resolvent-norm sweep over a
    lambda grid, tabulating where the estimates blow up across degrees
    (right half-plane) versus stabilize (elsewhere).  A numerical
    illustration, not a proof."""

    degrees: tuple
    t_values: tuple
    section_diagonal_errors: dict
    points: tuple


#: Norm growth across section degrees beyond this ratio is classified as
#: "growing"; an artifact convention for the sweep, not an asserted rate.
GROWTH_RATIO_THRESHOLD = 10.0


def spectral_dichotomy_report(
    degree: int,
    degrees=None,
    grid_points: int = 17,
    samples: int = 1024,
    t_values=(0.0, 0.3, 0.5, 0.9, 1.0),
) -> SpectralDichotomyReport:
    """Tabulate section diagonals and resolvent norm estimates on a grid
    over [-2, 2] x [-2, 2], excluding lambdas within 1e-6 of a diagonal
    value 1/(n+1) or of 0."""
    if degree < 64:
        raise ValueError("degree must be at least 64")
    if degrees is None:
        degrees = tuple(sorted({max(64, degree // 16), max(64, degree // 4), degree}))
    else:
        degrees = tuple(int(d) for d in degrees)

    section_errors = {}
    for tv in t_values:
        fs = finite_section(tv, degree)
        if np.any(np.triu(fs.entries, 1) != 0):
            raise ArithmeticError("finite section is not lower triangular")
        diag_expected = 1.0 / np.arange(1, degree + 2)
        section_errors[float(tv)] = float(
            np.max(np.abs(np.diagonal(fs.entries) - diag_expected))
        )

    probes = {
        d: (truncate(monomial(0), d), log_one_minus_inv(d)) for d in degrees
    }
    diag_values = 1.0 / np.arange(1, max(degrees) + 2)
    v1 = WeightSpec.log_power(1)
    v2 = WeightSpec.log_power(2)

    axis = np.linspace(-2.0, 2.0, grid_points)
    points = []
    for re in axis:
        for im in axis:
            lam = complex(re, im)
            if abs(lam) <= 1e-6 or np.min(np.abs(lam - diag_values)) <= 1e-6:
                continue
            norms = []
            for d in degrees:
                grid = default_radius_grid(d)
                ratio = 0.0
                for h in probes[d]:
                    solved = resolvent_recurrence(lam, h)
                    num = weighted_sup_norm(solved, v2, grid, samples).value
                    den = weighted_sup_norm(h, v1, grid, samples).value
                    ratio = max(ratio, num / den)
                norms.append(ratio)
            growth = norms[-1] / norms[0]
            points.append(
                SpectralPoint(
                    lam=lam,
                    norms=tuple(norms),
                    growth_ratio=float(growth),
                    classification="growing" if growth > GROWTH_RATIO_THRESHOLD else "stable",
                )
            )
    return SpectralDichotomyReport(
        degrees=degrees,
        t_values=tuple(float(t) for t in t_values),
        section_diagonal_errors=section_errors,
        points=tuple(points),
    )
