"""Radial weights, sampled max-modulus sweeps, and growth-order fits.

Two weight families are supported: the standard weights (1-r)**gamma and the
logarithmic weights that are constant 1 up to radius 1 - 1/e and equal
(-log(1-r))**(-k) beyond it.  Norm sweeps report the sampled weighted
sup-norm, which is always a lower bound on the true one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .series import Poly

#: Radius where the logarithmic weight switches from the constant branch.
JUNCTION_RADIUS = 1.0 - 1.0 / np.e


@dataclass(frozen=True)
class WeightSpec:
    """A radial weight: ``standard`` of order gamma or ``log`` of order k."""

    kind: str
    order: float

    def __post_init__(self):
        if self.kind not in ("standard", "log"):
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if self.kind == "standard":
            if not (np.isfinite(self.order) and self.order > 0):
                raise ValueError("standard weight needs order gamma > 0")
        else:
            if self.order != int(self.order) or self.order < 1:
                raise ValueError("log weight needs an integer order k >= 1")

    @classmethod
    def standard(cls, gamma: float) -> "WeightSpec":
        return cls("standard", float(gamma))

    @classmethod
    def log_power(cls, k: int) -> "WeightSpec":
        return cls("log", float(k))


def weight_eval(w: WeightSpec, r):
    """Weight value at radius r (scalar or array), defined on [0, 1)."""
    rv = np.asarray(r, dtype=float)
    if np.any(rv < 0) or np.any(rv >= 1):
        raise ValueError("radii must lie in [0, 1)")
    if w.kind == "standard":
        out = (1.0 - rv) ** w.order
    else:
        base = np.ones_like(rv)
        mask = rv > JUNCTION_RADIUS
        # -log1p(-r) = -log(1-r); both branches give exactly 1 at the junction.
        base[mask] = 1.0 / (-np.log1p(-rv[mask]))
        out = base ** int(w.order)
    if rv.ndim == 0:
        return float(out[()])
    return out


def reliable_radius(degree: int) -> float:
    """Largest radius where a degree-``degree`` truncation of a typical
    log-growth function still carries essentially all of its mass."""
    if degree < 1:
        return 0.5
    return max(0.5, 1.0 - 10.0 / degree)


def default_radius_grid(degree: int, points: int = 64, include_zero: bool = True) -> np.ndarray:
    """Radii geometrically spaced in 1-r from 0.5 down to the reliability
    gap, preceded by a coarse linear band below 0.5.

    The geometric band resolves logarithmic growth, which varies on the
    log(1-r) scale; the low band keeps standard-weight norms honest, whose
    suprema can sit at small radii.  r = 0 is prepended so sup-norm ties
    resolve to the centre.
    """
    gap_min = 1.0 - reliable_radius(degree)
    if gap_min >= 0.5:
        outer = np.array([0.5])
    else:
        outer = np.sort(1.0 - np.geomspace(0.5, gap_min, points))
    low = np.linspace(0.0, 0.5, 9, endpoint=False)
    if not include_zero:
        low = low[1:]
    return np.concatenate([low, outer])


def max_modulus_profile(p: Poly, radii, samples: int = 1024) -> np.ndarray:
    """Sampled max-modulus over ``samples`` equispaced angles at each radius.

    Coefficients are folded modulo ``samples`` before the FFT: the DFT of the
    folded vector equals evaluation at the ``samples``-th roots scaled by r,
    so the result is exact even when the degree exceeds the sample count.
    """
    rv = np.atleast_1d(np.asarray(radii, dtype=float))
    if rv.size == 0:
        raise ValueError("radius grid must be nonempty")
    if np.any(rv < 0) or np.any(rv >= 1):
        raise ValueError("radii must lie in [0, 1)")
    if int(samples) < 8 or samples != int(samples):
        raise ValueError("need at least 8 samples per circle")
    samples = int(samples)
    scaled = p.coeffs[None, :] * rv[:, None] ** np.arange(p.degree + 1)
    pad = (-scaled.shape[1]) % samples
    if pad:
        scaled = np.concatenate([scaled, np.zeros((rv.size, pad), dtype=complex)], axis=1)
    folded = scaled.reshape(rv.size, -1, samples).sum(axis=1)
    return np.abs(np.fft.fft(folded, axis=1)).max(axis=1)


def max_modulus(p: Poly, r: float, samples: int = 1024) -> float:
    """Sampled max of |p| on the circle of radius r (a lower bound)."""
    return float(max_modulus_profile(p, [r], samples)[0])


@dataclass(frozen=True, eq=False)
class NormEstimate:
    """Result of a weighted sup-norm sweep over a radius grid."""

    value: float
    argmax_radius: float
    grid: np.ndarray
    samples_per_circle: int


def weighted_sup_norm(p: Poly, w: WeightSpec, grid=None, samples: int = 1024) -> NormEstimate:
    """max over the grid of weight(r) * sampled max-modulus at r.

    Radii beyond :func:`reliable_radius` of the polynomial's degree are
    rejected: there the discarded tail of a typical truncation is no longer
    negligible and the sweep would not be honest.
    """
    if grid is None:
        grid = default_radius_grid(p.degree)
    gv = np.atleast_1d(np.asarray(grid, dtype=float))
    if gv.size == 0:
        raise ValueError("radius grid must be nonempty")
    rmax = reliable_radius(p.degree)
    if np.any(gv > rmax + 1e-12):
        raise ValueError(
            f"grid reaches {gv.max():.6f}, beyond the reliability bound {rmax:.6f} "
            f"for degree {p.degree}"
        )
    values = weight_eval(w, gv) * max_modulus_profile(p, gv, samples)
    i = int(np.argmax(values))
    return NormEstimate(
        value=float(values[i]),
        argmax_radius=float(gv[i]),
        grid=gv.copy(),
        samples_per_circle=int(samples),
    )


@dataclass(frozen=True)
class GrowthReport:
    """Fitted growth orders with fit diagnostics.

    ``log_order`` is the slope of log M(f, r) against log(-log(1-r)) and
    ``standard_order`` the slope against log(1/(1-r)); both are heuristics
    read off a finite radius window, not membership certificates.
    """

    log_order: float
    standard_order: float
    residuals: dict
    divergence_flag: bool
    norms_by_degree: tuple


def growth_classify(
    truncations,
    weight: WeightSpec | None = None,
    points: int = 64,
    samples: int = 1024,
) -> GrowthReport:
    """Fit growth orders from a family of truncations at increasing degrees.

    The fits use the outer half of the radius grid on the u = -log(1-r)
    scale, where the asymptotic growth dominates the bounded prefactors;
    the divergence flag compares weighted norms across the supplied degrees
    (ratio above 10 between the largest and smallest degree).
    """
    truncations = list(truncations)
    if len(truncations) < 3:
        raise ValueError("need at least three truncation degrees")
    degrees = [p.degree for p in truncations]
    if any(b <= a for a, b in zip(degrees, degrees[1:])):
        raise ValueError("truncation degrees must be strictly increasing")
    if weight is None:
        weight = WeightSpec.log_power(1)

    largest = truncations[-1]
    grid = default_radius_grid(largest.degree, points=points, include_zero=False)
    if grid.size < 4:
        raise ValueError("degenerate radius grid: fewer than 4 radii")
    m_vals = max_modulus_profile(largest, grid, samples)
    u = -np.log1p(-grid)
    window = (u >= 0.5 * (u.min() + u.max())) & (m_vals > 0)
    if window.sum() < 4:
        raise ValueError("degenerate fit window: fewer than 4 usable radii")
    log_m = np.log(m_vals[window])

    k_fit, k_res, *_ = np.polyfit(np.log(u[window]), log_m, 1, full=True)
    g_fit, g_res, *_ = np.polyfit(u[window], log_m, 1, full=True)
    npts = int(window.sum())
    k_rms = float(np.sqrt(k_res[0] / npts)) if k_res.size else 0.0
    g_rms = float(np.sqrt(g_res[0] / npts)) if g_res.size else 0.0

    norms = tuple(
        weighted_sup_norm(p, weight, default_radius_grid(p.degree, points=points), samples).value
        for p in truncations
    )
    return GrowthReport(
        log_order=max(float(k_fit[0]), 0.0),
        standard_order=max(float(g_fit[0]), 0.0),
        residuals={"log_order_rms": k_rms, "standard_order_rms": g_rms},
        divergence_flag=bool(norms[-1] > 10.0 * norms[0]),
        norms_by_degree=norms,
    )
