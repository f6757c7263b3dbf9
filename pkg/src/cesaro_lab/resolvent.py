"""Three independent routes to the resolvent of the averaging operator.

For (lam*I - C) f = h on truncated series:

* ``recurrence`` -- forward triangular solve in coefficient space; exact on
  truncations and the oracle against which the other two routes are checked.
* ``integral`` -- the explicit solution formula with principal-branch powers,
  evaluated pointwise off the cut (-1, 0] by fixed-node quadrature.
* ``semigroup`` -- for Re lam < 0, the Laplace-type integral of the weighted
  composition semigroup, integrated coefficientwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .operators import s_t_apply
from .series import Poly, horner_eval, require_finite_param, vanishing_order
from .weights import WeightSpec, weighted_sup_norm

#: Refuse recurrence solves when lam is this close to a diagonal value
#: 1/(n+1): those are genuine poles of the finite sections.
DIAGONAL_GUARD = 1e-12


@dataclass(frozen=True)
class QuadratureSpec:
    """Fixed-node quadrature settings shared by the two integral routes.

    ``nodes``/``panels``/``s_max``/``substitution`` drive the pointwise
    integral formula; ``time_nodes``/``t_max``/``tail_tol`` drive the
    semigroup route (``t_max=None`` picks the smallest horizon meeting
    ``tail_tol``).
    """

    nodes: int = 256
    panels: int = 4
    s_max: float = 36.0
    substitution: bool = True
    time_nodes: int = 24
    t_max: float | None = None
    tail_tol: float = 1e-9

    def __post_init__(self):
        if self.nodes < 16 or self.time_nodes < 16:
            raise ValueError("quadrature budgets below 16 nodes are rejected")
        if self.panels < 1 or self.s_max <= 0 or self.tail_tol <= 0:
            raise ValueError("invalid quadrature settings")


@dataclass(frozen=True)
class ResolventRequest:
    """A resolvent computation: lam, right-hand side, route, quadrature."""

    lam: complex
    h: Poly
    route: str
    quad: QuadratureSpec = QuadratureSpec()

    def validate(self):
        lam = require_finite_param(self.lam, "lam")
        if self.route not in ("recurrence", "integral", "semigroup"):
            raise ValueError(f"unknown route {self.route!r}")
        if self.route == "recurrence":
            _check_lambda_clear(lam, self.h.degree)
        elif self.route == "integral":
            _check_integral_preconditions(lam, self.h)
        else:
            if lam.real >= 0:
                raise ValueError("semigroup route needs Re lam < 0")


def _check_lambda_clear(lam: complex, degree: int):
    if abs(lam) < DIAGONAL_GUARD:
        raise ValueError("lam must be nonzero")
    n = np.arange(degree + 1)
    dist = np.abs(lam - 1.0 / (n + 1))
    if dist.min() < DIAGONAL_GUARD:
        k = int(np.argmin(dist))
        raise ValueError(f"lam within {DIAGONAL_GUARD:g} of diagonal value 1/{k + 1}")


def _check_integral_preconditions(lam: complex, h: Poly):
    if abs(lam) < DIAGONAL_GUARD:
        raise ValueError("lam must be nonzero")
    if vanishing_order(h) <= (1.0 / lam).real - 1.0:
        raise ValueError(
            "integral route requires the vanishing order of h to exceed Re(1/lam) - 1"
        )


def resolvent_recurrence(lam, h: Poly) -> Poly:
    """Forward triangular solve of (lam*I - C) f = h.

    Coefficient n satisfies f_n*(lam - 1/(n+1)) = h_n + mean of f_0..f_{n-1}
    scaled by 1/(n+1); values of lam within 1e-12 of a diagonal entry are
    rejected rather than regularized.
    """
    lv = require_finite_param(lam, "lam")
    _check_lambda_clear(lv, h.degree)
    c = h.coeffs
    f = np.empty_like(c)
    running = 0.0 + 0.0j
    for n in range(c.size):
        f[n] = (c[n] + running / (n + 1)) / (lv - 1.0 / (n + 1))
        running += f[n]
    return Poly(f)


def branch_power(xi, alpha) -> complex:
    """xi**alpha through the principal logarithm (argument in (-pi, pi)).

    Rejects xi on the closed negative real axis, where the branch is cut.
    """
    x = require_finite_param(xi, "xi")
    a = require_finite_param(alpha, "alpha")
    if x.imag == 0 and x.real <= 0:
        raise ValueError("xi must avoid the closed negative real axis")
    return complex(np.exp(a * np.log(x)))


def off_cut_sample_points(per_ring: int = 50, radii=(0.5, 0.8)) -> np.ndarray:
    """The fixed evaluation set for route-agreement checks: midpoint-spaced
    angles on two rings, so no point lies on the cut (-1, 0]."""
    k = np.arange(per_ring)
    theta = -np.pi + (k + 0.5) * (2.0 * np.pi / per_ring)
    return np.concatenate([r * np.exp(1j * theta) for r in radii])


@lru_cache(maxsize=None)
def _gauss_panels(nodes: int, panels: int, length: float):
    x, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(0.0, length, panels + 1)
    ss, ws = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        ss.append(0.5 * (b - a) * x + 0.5 * (a + b))
        ws.append(0.5 * (b - a) * w)
    s = np.concatenate(ss)
    w = np.concatenate(ws)
    s.flags.writeable = False
    w.flags.writeable = False
    return s, w


def _validate_points(zs: np.ndarray):
    if np.any(np.abs(zs) >= 1.0):
        raise ValueError("evaluation points must lie inside the unit disc")
    on_cut = (zs.imag == 0) & (zs.real <= 0)
    if np.any(on_cut):
        raise ValueError("evaluation points must avoid the cut (-1, 0]")


def resolvent_integral_profile(lam, h: Poly, zs, quad: QuadratureSpec | None = None) -> np.ndarray:
    """Pointwise values of the solution formula at an array of points.

    After the segment substitution zeta = tau*z the powers of z cancel and
    the integrand becomes tau**(-1/lam) (1 - tau*z)**(1/lam - 1) h(tau*z) on
    tau in (0, 1].  With the default further substitution tau = exp(-s) the
    endpoint oscillation of tau**(-1/lam) is flattened into a smooth,
    exponentially damped integrand on [0, s_max], which fixed Gauss-Legendre
    panels resolve to near machine precision.
    """
    lv = require_finite_param(lam, "lam")
    quad = quad or QuadratureSpec()
    _check_integral_preconditions(lv, h)
    zv = np.atleast_1d(np.asarray(zs, dtype=complex))
    _validate_points(zv)
    il = 1.0 / lv

    if quad.substitution:
        s, w = _gauss_panels(quad.nodes, quad.panels, quad.s_max)
        tau = np.exp(-s)
        # tau**(-il) * dtau collapses to exp(-s*(1 - il)) ds.
        damping = np.exp(-s * (1.0 - il))
    else:
        tau, w = _gauss_panels(quad.nodes, quad.panels, 1.0)
        damping = np.exp(-il * np.log(tau))
    zt = tau[:, None] * zv[None, :]
    integrand = damping[..., None] * np.exp((il - 1.0) * np.log(1.0 - zt)) * horner_eval(h, zt)
    integral = w @ integrand
    return horner_eval(h, zv) / lv + il**2 * np.exp(-il * np.log(1.0 - zv)) * integral


def resolvent_integral_eval(lam, h: Poly, z, quad: QuadratureSpec | None = None) -> complex:
    """Value of the analytic solution of (lam*I - C) f = h at a single point."""
    return complex(resolvent_integral_profile(lam, h, [z], quad)[0])


def semigroup_horizon(lam, tail_tol: float) -> float:
    """Smallest T with exp(T*Re(1/lam)) / |Re(1/lam)| below the tail bound."""
    rate = (1.0 / complex(lam)).real
    if rate >= 0:
        raise ValueError("semigroup route needs Re lam < 0")
    return float(np.log(1.0 / (tail_tol * abs(rate))) / abs(rate))


def resolvent_semigroup(lam, h: Poly, quad: QuadratureSpec | None = None) -> Poly:
    """Coefficientwise quadrature of h/lam + (1/lam^2) * int_0^T e^(t/lam) S_t h dt.

    Needs Re lam < 0 so the integrand decays; the horizon T is either taken
    from the quadrature spec (and checked against the tail tolerance) or
    chosen as the smallest one meeting it.
    """
    lv = require_finite_param(lam, "lam")
    if lv.real >= 0:
        raise ValueError("semigroup route needs Re lam < 0")
    quad = quad or QuadratureSpec()
    il = 1.0 / lv
    rate = il.real
    if quad.t_max is None:
        t_max = semigroup_horizon(lv, quad.tail_tol)
    else:
        t_max = float(quad.t_max)
        if np.exp(t_max * rate) / abs(rate) > quad.tail_tol * (1.0 + 1e-9):
            raise ValueError(
                f"t_max={t_max:g} cannot reach tail tolerance {quad.tail_tol:g} "
                f"for Re(1/lam)={rate:g}"
            )
    panel_len = 2.0
    panels = max(int(np.ceil(t_max / panel_len)), 1)
    acc = np.zeros(h.degree + 1, dtype=complex)
    for i in range(panels):
        a = i * panel_len
        b = min((i + 1) * panel_len, t_max)
        if b <= a:
            break
        # Coefficient n of S_t h is a Bernstein-type polynomial of degree n
        # in e^{-t}, so early panels need node counts that scale with the
        # degree; the polynomial content dies off like e^{-t} afterwards.
        local = quad.time_nodes + int(np.ceil((h.degree + 1) * np.exp(-a)))
        x, w = np.polynomial.legendre.leggauss(min(local, 280))
        tv = 0.5 * (b - a) * x + 0.5 * (a + b)
        wv = 0.5 * (b - a) * w
        for tk, wk in zip(tv, wv):
            acc += wk * np.exp(tk * il) * s_t_apply(tk, h).coeffs
    return Poly(h.coeffs / lv + il**2 * acc)


@dataclass(frozen=True)
class BoundCheck:
    """One evaluated norm inequality: measured side, bound side, verdict."""

    lhs: float
    rhs: float
    passed: bool


def resolvent_bound_check(b: float, h: Poly, k: int, grid=None, samples: int = 1024) -> BoundCheck:
    """Purely imaginary lam = i*b: compare the order-(k+1) weighted norm of
    the solution against (1/|b| + exp(4*pi/|b|)/b**2) times the order-k norm
    of h, with multiplicative slack 1e-6 for the sampled maxima."""
    bv = float(b)
    if bv == 0 or not np.isfinite(bv):
        raise ValueError("b must be a nonzero finite real")
    f = resolvent_recurrence(1j * bv, h)
    lhs = weighted_sup_norm(f, WeightSpec.log_power(k + 1), grid, samples).value
    const = 1.0 / abs(bv) + np.exp(4.0 * np.pi / abs(bv)) / bv**2
    rhs = const * weighted_sup_norm(h, WeightSpec.log_power(k), grid, samples).value
    return BoundCheck(lhs=lhs, rhs=rhs, passed=bool(lhs <= rhs * (1.0 + 1e-6)))
