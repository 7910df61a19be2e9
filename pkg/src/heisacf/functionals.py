"""Monotonicity functionals, their series coefficients, and curve classification.

Heisenberg setting (Koranyi balls, gauge N = |xi|)::

    I(r)   = r^-2 int_{B_r} |grad_H u|^2 / N^2
    J(r)   = I+(r) I-(r)                     (phases restricted to {u > 0}, {u < 0})
    Jb(r)  = J(r) r^(4 - beta)

Euclidean baseline in R^3: the same with |grad u|^2 / |P| and Euclidean balls.

For polynomial u with homogeneous parts P_k the ball integral splits into
sphere integrals, ``I(r) = sum_k a_k r^(2k-2) + sum_{h != k} a_{h,k} r^(h+k-2)``
with ``a_k = (1/2k) int Q_k / rho`` and ``a_{h,k} = (1/(h+k)) int T_{h,k} / rho``
over the unit sphere.  Cross coefficients are signed and summed over both
orders (h, k) and (k, h).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.optimize import bisect

from .errors import DomainError, NonFiniteError, PreconditionError
from .group import GaugePoint
from .operators import e_decompose, euclid_gradient, h_decompose, horizontal_gradient, q_poly, t_poly
from .parse import format_poly, parse
from .poly import Poly3
from .quadrature import (
    DEFAULT_ORDERS,
    Orders,
    SphereRule,
    euclid_ball_integrate,
    euclid_sphere_rule,
    integrate_euclid_sphere,
    _evaluate,
    ball_rule,
    integrate_sphere,
    koranyi_ball_integrate,
    koranyi_sphere_rule,
    pairwise_sum,
    gauss_legendre,
)

__all__ = [
    "COUNTEREXAMPLE",
    "ZERO_TOL",
    "DEFAULT_TOL",
    "I_heis",
    "I_heis_signed",
    "phase_integrals",
    "I_two_phase",
    "J_heis",
    "J_heis_direct",
    "J_beta_heis",
    "I_euclid",
    "I_euclid_signed",
    "J_euclid",
    "coeff_diag",
    "coeff_cross",
    "coeff_euclid",
    "coeff_euclid_cross",
    "SeriesCoefficients",
    "series_coefficients",
    "euclid_series_coefficients",
    "series_I_heis",
    "series_I_euclid",
    "euclid_sphere_inner",
    "FunctionalCurve",
    "MonotonicityVerdict",
    "geometric_grid",
    "sample_curve",
    "classify",
    "fit_even_quartic",
    "free_boundary_samples",
    "g_alpha",
    "two_phase_residual",
    "generalized_identity_check",
]

COUNTEREXAMPLE = parse("x - 3*y*t - 2*x^3")

# nodes where |u| <= ZERO_TOL belong to neither phase
ZERO_TOL = 1e-14
DEFAULT_TOL = 1e-7


def _positive_radius(r: float) -> float:
    if not r > 0:
        raise DomainError(f"radius must be positive, got {r}")
    return float(r)


def _positive(name: str, v: float) -> float:
    if not v > 0:
        raise DomainError(f"{name} must be positive, got {v}")
    return float(v)


@lru_cache(maxsize=256)
def _h_grad_sq(u: Poly3):
    return horizontal_gradient(u).norm_sq().lambdify()


@lru_cache(maxsize=256)
def _e_grad_sq(u: Poly3):
    gx, gy, gt = euclid_gradient(u)
    return (gx * gx + gy * gy + gt * gt).lambdify()


@lru_cache(maxsize=256)
def _values(u: Poly3):
    return u.lambdify()


def _gauge_sq(x, y, t):
    rho2 = x * x + y * y
    return np.sqrt(rho2 * rho2 + t * t)


def _euclid_abs(x, y, t):
    return np.sqrt(x * x + y * y + t * t)


def _h_density(u: Poly3):
    g = _h_grad_sq(u)
    return lambda x, y, t: g(x, y, t) / _gauge_sq(x, y, t)


def _e_density(u: Poly3):
    g = _e_grad_sq(u)
    return lambda x, y, t: g(x, y, t) / _euclid_abs(x, y, t)


def _phase(u: Poly3, sign: int):
    val = _values(u)
    if sign > 0:
        return lambda x, y, t: val(x, y, t) > ZERO_TOL
    return lambda x, y, t: val(x, y, t) < -ZERO_TOL


def _sign(sign) -> int:
    if sign in (1, "+", "plus"):
        return 1
    if sign in (-1, "-", "minus"):
        return -1
    raise DomainError(f"sign must be '+' or '-', got {sign!r}")


def _h_ball(f, r: float, orders: Orders) -> float:
    return koranyi_ball_integrate(f, r, orders.n_r, koranyi_sphere_rule(orders.n_phi, orders.n_theta))


def _e_ball(f, r: float, orders: Orders) -> float:
    return euclid_ball_integrate(f, r, orders.n_r, euclid_sphere_rule(orders.n_phi))


# -- Heisenberg functionals ----------------------------------------------------


def I_heis(u: Poly3, r: float, orders: Orders = DEFAULT_ORDERS) -> float:
    r = _positive_radius(r)
    return _h_ball(_h_density(u), r, orders) / (r * r)


def phase_integrals(u: Poly3, r: float, orders: Orders = DEFAULT_ORDERS) -> tuple[float, float]:
    """(I+, I-) from a single pass over the escalated ball grid."""
    r = _positive_radius(r)
    o = orders.escalated()
    rule = koranyi_sphere_rule(o.n_phi, o.n_theta)
    br = ball_rule(r, o.n_r, rule)
    sc = br.s[:, None]
    x, y, t = sc * rule.x, sc * rule.y, (sc * sc) * rule.t
    dens = _evaluate(_h_density(u), x, y, t)
    val = _evaluate(_values(u), x, y, t)
    radial = br.s**3 * br.ws
    out = []
    for mask in (val > ZERO_TOL, val < -ZERO_TOL):
        shells = pairwise_sum(np.where(mask, dens, 0.0) * rule.flat_weights, axis=-1)
        out.append(pairwise_sum(radial * shells) / (r * r))
    return out[0], out[1]


def I_heis_signed(u: Poly3, sign, r: float, orders: Orders = DEFAULT_ORDERS) -> float:
    """I restricted to the phase {u > 0} ('+') or {u < 0} ('-')."""
    plus, minus = phase_integrals(u, r, orders)
    return plus if _sign(sign) > 0 else minus


def I_two_phase(u: Poly3, r: float, alpha1: float, alpha2: float, orders: Orders = DEFAULT_ORDERS) -> float:
    """I of alpha1 u+ - alpha2 u-."""
    a1, a2 = _positive("alpha1", alpha1), _positive("alpha2", alpha2)
    plus, minus = phase_integrals(u, r, orders)
    return a1 * a1 * plus + a2 * a2 * minus


def J_heis(
    u: Poly3, r: float, orders: Orders = DEFAULT_ORDERS, alpha1: float = 1.0, alpha2: float = 1.0
) -> float:
    """I of alpha1 u+ times I of alpha2 u-."""
    a1, a2 = _positive("alpha1", alpha1), _positive("alpha2", alpha2)
    plus, minus = phase_integrals(u, r, orders)
    return (a1 * a1 * plus) * (a2 * a2 * minus)


def J_heis_direct(
    u: Poly3, r: float, orders: Orders = DEFAULT_ORDERS, alpha1: float = 1.0, alpha2: float = 1.0
) -> float:
    """r^-4 times the product of the two phase ball integrals.

    Each ball integral is taken in the literal coarea form,
    int_0^r s^3 int f(delta_s sigma) / rho dsigma_H ds, against the
    perimeter-weighted rule; this cross-checks :func:`J_heis`.
    """
    r = _positive_radius(r)
    a1, a2 = _positive("alpha1", alpha1), _positive("alpha2", alpha2)
    o = orders.escalated()
    rule = koranyi_sphere_rule(o.n_phi, o.n_theta)
    s, ws = gauss_legendre(o.n_r, 0.0, r)
    grad_sq, val = _h_grad_sq(u), _values(u)
    rho = rule.rho
    phases = []
    for sign in (1, -1):
        shells = []
        for si in s:
            x, y, t = si * rule.x, si * rule.y, si * si * rule.t
            v = val(x, y, t)
            f = np.where(sign * v > ZERO_TOL, grad_sq(x, y, t) / (si * si), 0.0)
            shells.append(pairwise_sum(f / rho * rule.weights))
        phases.append(pairwise_sum(s**3 * ws * np.array(shells)))
    if not all(math.isfinite(p) for p in phases):
        raise NonFiniteError("phase integral is not finite")
    return (a1 * a1 * phases[0]) * (a2 * a2 * phases[1]) / r**4


def J_beta_heis(
    u: Poly3,
    beta: float,
    r: float,
    orders: Orders = DEFAULT_ORDERS,
    alpha1: float = 1.0,
    alpha2: float = 1.0,
) -> float:
    beta = _positive("beta", beta)
    r = _positive_radius(r)
    return J_heis(u, r, orders, alpha1, alpha2) * r ** (4.0 - beta)


# -- Euclidean baseline ----------------------------------------------------------


def I_euclid(u: Poly3, r: float, orders: Orders = DEFAULT_ORDERS) -> float:
    r = _positive_radius(r)
    return _e_ball(_e_density(u), r, orders) / (r * r)


def I_euclid_signed(u: Poly3, sign, r: float, orders: Orders = DEFAULT_ORDERS) -> float:
    r = _positive_radius(r)
    dens, ind = _e_density(u), _phase(u, _sign(sign))
    f = lambda x, y, t: np.where(ind(x, y, t), dens(x, y, t), 0.0)
    return _e_ball(f, r, orders.escalated()) / (r * r)


def J_euclid(
    u: Poly3, r: float, orders: Orders = DEFAULT_ORDERS, alpha1: float = 1.0, alpha2: float = 1.0
) -> float:
    a1, a2 = _positive("alpha1", alpha1), _positive("alpha2", alpha2)
    return (a1 * a1 * I_euclid_signed(u, "+", r, orders)) * (a2 * a2 * I_euclid_signed(u, "-", r, orders))


# -- series coefficients -----------------------------------------------------------


def _check_degree(name: str, k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"{name} must be an integer >= 1, got {k!r}")


def _default_rule(rule: SphereRule | None) -> SphereRule:
    return rule if rule is not None else koranyi_sphere_rule(DEFAULT_ORDERS.n_phi, DEFAULT_ORDERS.n_theta)


def coeff_diag(u: Poly3, k: int, rule: SphereRule | None = None) -> float:
    """a_k = (1/2k) int Q_k / rho dsigma_H; zero if u has no degree-k part."""
    _check_degree("k", k)
    pk = h_decompose(u).get(k)
    if pk is None:
        return 0.0
    return integrate_sphere(q_poly(pk).lambdify(), _default_rule(rule), flat=True) / (2 * k)


def coeff_cross(u: Poly3, h: int, k: int, rule: SphereRule | None = None) -> float:
    """a_{h,k} = (1/(h+k)) int T_{h,k} / rho dsigma_H, signed."""
    _check_degree("h", h)
    _check_degree("k", k)
    if h == k:
        raise DomainError("coeff_cross needs h != k; use coeff_diag for the diagonal")
    parts = h_decompose(u)
    if h not in parts or k not in parts:
        return 0.0
    return integrate_sphere(t_poly(parts[h], parts[k]).lambdify(), _default_rule(rule), flat=True) / (h + k)


def coeff_euclid(u: Poly3, k: int, n: int = 32) -> float:
    """a_k = (1/2k) int_{S^2} |grad P_k|^2, P_k the Euclidean degree-k part."""
    _check_degree("k", k)
    pk = e_decompose(u).get(k)
    if pk is None:
        return 0.0
    return integrate_euclid_sphere(_e_grad_sq(pk), euclid_sphere_rule(n)) / (2 * k)


def coeff_euclid_cross(u: Poly3, h: int, k: int, n: int = 32) -> float:
    _check_degree("h", h)
    _check_degree("k", k)
    if h == k:
        raise DomainError("coeff_euclid_cross needs h != k")
    parts = e_decompose(u)
    if h not in parts or k not in parts:
        return 0.0
    gh, gk = euclid_gradient(parts[h]), euclid_gradient(parts[k])
    dot = gh[0] * gk[0] + gh[1] * gk[1] + gh[2] * gk[2]
    return integrate_euclid_sphere(dot.lambdify(), euclid_sphere_rule(n)) / (h + k)


def euclid_sphere_inner(p: Poly3, q: Poly3, n: int = 32) -> float:
    """int_{S^2} p q dsigma."""
    return integrate_euclid_sphere((p * q).lambdify(), euclid_sphere_rule(n))


@dataclass(frozen=True)
class SeriesCoefficients:
    """a_k and a_{h,k} up to truncation K; ``cross`` holds both (h, k) and (k, h)."""

    diag: dict[int, float]
    cross: dict[tuple[int, int], float]
    K: int
    setting: str = "heisenberg"

    def a(self, k: int) -> float:
        return self.diag.get(k, 0.0)

    def a_cross(self, h: int, k: int) -> float:
        return self.cross.get((h, k), 0.0)

    def near_zero_quantity(self) -> float:
        """a_2 + 2 a_{3,1}, the sign that decides the behaviour near r = 0."""
        return self.a(2) + 2 * self.a_cross(3, 1)

    def value(self, r: float) -> float:
        if r < 0:
            raise DomainError(f"radius must be nonnegative, got {r}")
        terms = [a * r ** (2 * (k - 1)) for k, a in sorted(self.diag.items())]
        terms += [a * r ** (h + k - 2) for (h, k), a in sorted(self.cross.items())]
        return math.fsum(terms)


def _truncation(u: Poly3, K: int | None, degree: int) -> int:
    if K is None:
        return max(degree, 1)
    _check_degree("K", K)
    return K


def series_coefficients(u: Poly3, K: int | None = None, rule: SphereRule | None = None) -> SeriesCoefficients:
    K = _truncation(u, K, u.degree)
    rule = _default_rule(rule)
    diag = {k: coeff_diag(u, k, rule) for k in range(1, K + 1)}
    cross = {}
    for h in range(2, K + 1):
        for k in range(1, h):
            cross[(h, k)] = cross[(k, h)] = coeff_cross(u, h, k, rule)
    return SeriesCoefficients(diag, cross, K, "heisenberg")


def euclid_series_coefficients(u: Poly3, K: int | None = None, n: int = 32) -> SeriesCoefficients:
    K = _truncation(u, K, u.euclid_degree)
    diag = {k: coeff_euclid(u, k, n) for k in range(1, K + 1)}
    cross = {}
    for h in range(2, K + 1):
        for k in range(1, h):
            cross[(h, k)] = cross[(k, h)] = coeff_euclid_cross(u, h, k, n)
    return SeriesCoefficients(diag, cross, K, "euclid")


def series_I_heis(coeffs: SeriesCoefficients, r: float) -> float:
    return coeffs.value(r)


def series_I_euclid(coeffs: SeriesCoefficients, r: float) -> float:
    return coeffs.value(r)


# -- curves and verdicts -------------------------------------------------------------


@dataclass(frozen=True)
class FunctionalCurve:
    radii: tuple[float, ...]
    values: tuple[float, ...]
    name: str = ""
    expr: str = ""
    orders: Orders | None = None

    def __post_init__(self):
        if len(self.radii) != len(self.values):
            raise DomainError("radii and values differ in length")
        if any(r <= 0 for r in self.radii) or any(b <= a for a, b in zip(self.radii, self.radii[1:])):
            raise DomainError("radii must be positive and strictly increasing")
        for r, v in zip(self.radii, self.values):
            if not math.isfinite(v):
                raise NonFiniteError(f"{self.name or 'curve'} is not finite at r={r}")

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.radii, self.values))

    def __len__(self) -> int:
        return len(self.radii)


@dataclass(frozen=True)
class MonotonicityVerdict:
    kind: str  # Increasing, Decreasing, Constant, Mixed
    window: tuple[float, float]
    evidence: float


def geometric_grid(r_min: float = 0.02, r_max: float = 0.5, count: int = 24) -> list[float]:
    if not 0 < r_min < r_max:
        raise DomainError(f"need 0 < r_min < r_max, got {r_min}, {r_max}")
    if count < 3:
        raise DomainError(f"need at least 3 grid points, got {count}")
    return [float(v) for v in np.geomspace(r_min, r_max, count)]


def sample_curve(
    fn: Callable[[float], float],
    radii: Sequence[float],
    name: str = "",
    expr: str = "",
    orders: Orders | None = None,
) -> FunctionalCurve:
    return FunctionalCurve(tuple(float(r) for r in radii), tuple(float(fn(r)) for r in radii), name, expr, orders)


def classify(curve: FunctionalCurve, tol: float = DEFAULT_TOL) -> MonotonicityVerdict:
    """Monotonicity verdict on values normalised by the curve mean.

    Constant wins when every value is within ``tol`` of the mean; otherwise
    every consecutive difference must exceed ``tol`` with one sign.
    """
    if len(curve) < 3:
        raise DomainError("classification needs at least 3 samples")
    v = np.array(curve.values)
    mean = math.fsum(v) / v.size
    scale = abs(mean) if mean != 0 else 1.0
    vn = v / scale
    window = (curve.radii[0], curve.radii[-1])
    spread = float(np.max(np.abs(vn - mean / scale)))
    if spread <= tol:
        return MonotonicityVerdict("Constant", window, spread)
    d = np.diff(vn)
    up_bad = np.abs(d[d <= tol])
    down_bad = np.abs(d[d >= -tol])
    up = float(up_bad.max()) if up_bad.size else 0.0
    down = float(down_bad.max()) if down_bad.size else 0.0
    if not up_bad.size:
        return MonotonicityVerdict("Increasing", window, 0.0)
    if not down_bad.size:
        return MonotonicityVerdict("Decreasing", window, 0.0)
    return MonotonicityVerdict("Mixed", window, min(up, down))


def fit_even_quartic(curve: FunctionalCurve) -> tuple[float, float, float]:
    """Least-squares coefficients of value ~ c0 + c2 r^2 + c4 r^4."""
    r = np.array(curve.radii)
    A = np.stack([np.ones_like(r), r**2, r**4], axis=1)
    c, *_ = np.linalg.lstsq(A, np.array(curve.values), rcond=None)
    return float(c[0]), float(c[1]), float(c[2])


# -- two-phase problem --------------------------------------------------------------


def free_boundary_samples(count: int = 50, half_width: float = 0.25, seed: int = 0) -> list[GaugePoint]:
    """Points of {x - 3yt - 2x^3 = 0} near the origin.

    (y, t) is drawn uniformly from the square of the given half width; x is
    the unique root in [-0.4, 0.4], where the map x -> x - 2x^3 is
    increasing and the bracket holds for |3yt| < 0.272.
    """
    if not 0 < half_width <= 0.25:
        raise DomainError(f"half_width must lie in (0, 0.25], got {half_width}")
    rng = np.random.default_rng(seed)
    out = []
    for y, t in rng.uniform(-half_width, half_width, size=(count, 2)):
        c = 3.0 * y * t
        x = bisect(lambda s: s - 2.0 * s**3 - c, -0.4, 0.4, xtol=1e-16, rtol=4 * np.finfo(float).eps, maxiter=200)
        out.append(GaugePoint(float(x), float(y), float(t)))
    return out


def g_alpha(alpha1: float, alpha2: float, x, y, t):
    """Jump of |grad_H u+|^2 - |grad_H u-|^2 across {u = 0} for the counterexample."""
    rho2 = x * x + y * y
    return (alpha1**2 - alpha2**2) * ((1 - 6 * rho2) ** 2 + 9 * (-t + 2 * x * y) ** 2)


def two_phase_residual(
    alpha1: float, alpha2: float, sample: Iterable[GaugePoint], u: Poly3 = COUNTEREXAMPLE
) -> float:
    """max |alpha1^2 |grad_H u|^2 - alpha2^2 |grad_H u|^2 - g| over the sample."""
    a1, a2 = _positive("alpha1", alpha1), _positive("alpha2", alpha2)
    val, grad_sq = _values(u), _h_grad_sq(u)
    worst = 0.0
    for p in sample:
        x, y, t = float(p.x), float(p.y), float(p.t)
        if abs(float(val(x, y, t))) > 1e-10:
            raise PreconditionError(f"sample point {p} is not on the zero level of {format_poly(u)}")
        g = float(grad_sq(x, y, t))
        worst = max(worst, abs(a1 * a1 * g - a2 * a2 * g - g_alpha(a1, a2, x, y, t)))
    return worst


def generalized_identity_check(
    alpha1: float, alpha2: float, r: float, orders: Orders = DEFAULT_ORDERS, u: Poly3 = COUNTEREXAMPLE
) -> float:
    """|I of (alpha1 u+ - alpha2 u-) - (alpha1^2 + alpha2^2)/2 I_u|, absolute."""
    a1, a2 = _positive("alpha1", alpha1), _positive("alpha2", alpha2)
    r = _positive_radius(r)
    return abs(I_two_phase(u, r, a1, a2, orders) - 0.5 * (a1 * a1 + a2 * a2) * I_heis(u, r, orders))
