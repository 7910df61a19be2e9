"""Deterministic quadrature on the Koranyi unit sphere, gauge balls, and S^2.

Koranyi sphere, upper and lower hemisphere::

    (x, y, t) = (sqrt(sin phi) cos theta, sqrt(sin phi) sin theta, +-cos phi)

with phi in (0, pi/2).  In these coordinates the intrinsic perimeter measure
is ``sqrt(sin phi) dphi dtheta`` on each hemisphere, and since
``sqrt(sin phi) = rho = sqrt(x^2 + y^2)`` on the sphere, the coarea weight
``1/|grad_H N| = 1/rho`` cancels it exactly.  Gauge-ball integrals therefore
use the flat weights ``dphi dtheta``::

    int_{B_r} f = int_0^r s^3 sum_nodes f(delta_s sigma) dphi dtheta ds

phi is sampled by Gauss-Legendre in v with phi = (pi/2) v^2.  Any integrand
built from polynomials and powers of rho (times the density) is then
analytic in v, including sqrt(sin phi) itself, which is only Hoelder at
phi = 0.

Integrands are vectorised: ``f(x, y, t)`` receives equal-shape float arrays.
All reductions go through :func:`pairwise_sum` in a fixed order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import DomainError, NonFiniteError
from .group import GaugePoint

__all__ = [
    "Integrand",
    "Orders",
    "DEFAULT_ORDERS",
    "SphereRule",
    "BallRule",
    "pairwise_sum",
    "koranyi_sphere_rule",
    "koranyi_perimeter",
    "integrate_sphere",
    "koranyi_ball_integrate",
    "euclid_sphere_rule",
    "euclid_ball_integrate",
    "gauss_legendre",
]

Integrand = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Orders:
    n_phi: int = 32
    n_theta: int = 64
    n_r: int = 16
    # multiplier on every order for integrands with a phase indicator
    escalation: int = 4

    def escalated(self) -> "Orders":
        e = self.escalation
        return Orders(self.n_phi * e, self.n_theta * e, self.n_r * e, e)

    def doubled(self) -> "Orders":
        return Orders(2 * self.n_phi, 2 * self.n_theta, 2 * self.n_r, self.escalation)


DEFAULT_ORDERS = Orders()


def pairwise_sum(v, axis: int = -1) -> np.ndarray | float:
    """Sum by repeated halving; the bracketing depends only on the length.

    numpy's own ``sum`` switches between pairwise and sequential blocks
    depending on memory layout, so we do not rely on it.
    """
    a = np.moveaxis(np.asarray(v, dtype=float), axis, -1)
    if a.shape[-1] == 0:
        out = np.zeros(a.shape[:-1])
        return float(out) if out.ndim == 0 else out
    while a.shape[-1] > 1:
        if a.shape[-1] % 2:
            a = np.concatenate([a, np.zeros(a.shape[:-1] + (1,))], axis=-1)
        a = a[..., 0::2] + a[..., 1::2]
    out = a[..., 0]
    return float(out) if out.ndim == 0 else out


@lru_cache(maxsize=None)
def gauss_legendre(n: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to (a, b)."""
    z, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    nodes = a + half * (z + 1.0)
    weights = half * w
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _mirrored_circle(n_theta: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Half-offset equispaced angles, built from the first quadrant by sign flips.

    Flipping x, y, or both maps the node set onto itself bit for bit, and
    no node lies on a coordinate axis.
    """
    q = n_theta // 4
    th = (np.arange(q) + 0.5) * (2 * math.pi / n_theta)
    c, s = np.cos(th), np.sin(th)
    theta = np.concatenate([th, math.pi - th, math.pi + th, 2 * math.pi - th])
    cos = np.concatenate([c, -c, -c, c])
    sin = np.concatenate([s, s, -s, -s])
    return theta, cos, sin


@dataclass(frozen=True, eq=False)
class SphereRule:
    """Tensor rule on the Koranyi unit sphere, both hemispheres.

    ``weights`` carry the perimeter density; ``flat_weights`` are the bare
    dphi dtheta weights, i.e. ``weights / rho``.
    """

    phi: np.ndarray
    theta: np.ndarray
    hemisphere: np.ndarray
    x: np.ndarray
    y: np.ndarray
    t: np.ndarray
    weights: np.ndarray
    flat_weights: np.ndarray
    order: tuple[int, int]

    @property
    def size(self) -> int:
        return self.x.size

    @property
    def rho(self) -> np.ndarray:
        return np.sqrt(self.x * self.x + self.y * self.y)

    def node(self, i: int) -> GaugePoint:
        return GaugePoint(float(self.x[i]), float(self.y[i]), float(self.t[i]))


@lru_cache(maxsize=32)
def koranyi_sphere_rule(n_phi: int = 32, n_theta: int = 64) -> SphereRule:
    if n_phi < 2 or n_theta < 4:
        raise DomainError(f"orders too small: n_phi={n_phi} (min 2), n_theta={n_theta} (min 4)")
    if n_theta % 4:
        raise DomainError(f"n_theta must be a multiple of 4, got {n_theta}")
    v, wv = gauss_legendre(n_phi, 0.0, 1.0)
    phi = 0.5 * math.pi * v * v
    w_phi = math.pi * v * wv  # dphi = pi v dv
    theta, cos, sin = _mirrored_circle(n_theta)
    w_theta = 2 * math.pi / n_theta

    root = np.sqrt(np.sin(phi))
    P, C = np.meshgrid(root, cos, indexing="ij")
    _, S = np.meshgrid(root, sin, indexing="ij")
    TH = np.broadcast_to(theta, (n_phi, n_theta))
    PH = np.broadcast_to(phi[:, None], (n_phi, n_theta))
    flat = np.broadcast_to((w_phi * w_theta)[:, None], (n_phi, n_theta))
    x = (P * C).ravel()
    y = (P * S).ravel()
    tt = np.broadcast_to(np.cos(phi)[:, None], (n_phi, n_theta)).ravel()
    dens = np.broadcast_to(root[:, None], (n_phi, n_theta)).ravel()
    flat = flat.ravel()

    def both(a, b=None):
        return np.concatenate([a, a if b is None else b])

    arrays = dict(
        phi=both(PH.ravel()),
        theta=both(TH.ravel()),
        hemisphere=both(np.ones(x.size), -np.ones(x.size)),
        x=both(x),
        y=both(y),
        t=both(tt, -tt),
        weights=both(dens * flat),
        flat_weights=both(flat),
    )
    for a in arrays.values():
        a.setflags(write=False)
    return SphereRule(order=(n_phi, n_theta), **arrays)


def koranyi_perimeter() -> float:
    """Perimeter of the unit Koranyi sphere, 4 pi int_0^{pi/2} sqrt(sin phi) dphi."""
    half_beta = 0.5 * math.sqrt(math.pi) * math.gamma(0.75) / math.gamma(1.25)
    return 4 * math.pi * half_beta


def _check_finite(values: np.ndarray, x: np.ndarray, y: np.ndarray, t: np.ndarray) -> None:
    bad = ~np.isfinite(values)
    if bad.any():
        i = int(np.flatnonzero(bad.ravel())[0])
        node = GaugePoint(float(x.ravel()[i]), float(y.ravel()[i]), float(t.ravel()[i]))
        raise NonFiniteError(f"integrand is not finite at {node}", node)


def _evaluate(f: Integrand, x, y, t) -> np.ndarray:
    vals = np.asarray(f(x, y, t), dtype=float)
    vals = np.broadcast_to(vals, np.broadcast(x, y, t).shape)
    _check_finite(vals, x, y, t)
    return vals


def integrate_sphere(f: Integrand, rule: SphereRule, flat: bool = False) -> float:
    """Integral of f against the perimeter measure on the unit Koranyi sphere.

    With ``flat=True`` the integral is of f / rho instead, which is the
    form every coarea-derived coefficient takes.
    """
    vals = _evaluate(f, rule.x, rule.y, rule.t)
    w = rule.flat_weights if flat else rule.weights
    return pairwise_sum(vals * w)


@dataclass(frozen=True, eq=False)
class BallRule:
    s: np.ndarray
    ws: np.ndarray
    sphere: SphereRule
    r: float


def ball_rule(r: float, n_r: int, sphere: SphereRule) -> BallRule:
    if not r > 0:
        raise DomainError(f"radius must be positive, got {r}")
    if n_r < 1:
        raise DomainError(f"n_r must be at least 1, got {n_r}")
    s, ws = gauss_legendre(n_r, 0.0, float(r))
    return BallRule(s, ws, sphere, float(r))


def koranyi_ball_integrate(f: Integrand, r: float, n_r: int = 16, rule: SphereRule | None = None) -> float:
    """Integral of f over the gauge ball of radius r."""
    rule = rule or koranyi_sphere_rule()
    br = ball_rule(r, n_r, rule)
    s = br.s[:, None]
    x, y, t = s * rule.x, s * rule.y, (s * s) * rule.t
    vals = _evaluate(f, x, y, t)
    shells = pairwise_sum(vals * rule.flat_weights, axis=-1)
    return pairwise_sum(br.s**3 * br.ws * shells)


@dataclass(frozen=True, eq=False)
class EuclidSphereRule:
    x: np.ndarray
    y: np.ndarray
    t: np.ndarray
    weights: np.ndarray
    order: int

    @property
    def size(self) -> int:
        return self.x.size


@lru_cache(maxsize=32)
def euclid_sphere_rule(n: int = 32) -> EuclidSphereRule:
    """Gauss-Legendre in cos(vartheta) times 2n-point trapezoid in azimuth on S^2."""
    if n < 2:
        raise DomainError(f"order too small: n={n} (min 2)")
    z, wz = np.polynomial.legendre.leggauss(n)
    # symmetrise so z -> -z is exact
    z = 0.5 * (z - z[::-1])
    wz = 0.5 * (wz + wz[::-1])
    _, cos, sin = _mirrored_circle(4 * ((2 * n + 3) // 4))
    m = cos.size
    rad = np.sqrt(1.0 - z * z)
    x = (rad[:, None] * cos[None, :]).ravel()
    y = (rad[:, None] * sin[None, :]).ravel()
    t = np.broadcast_to(z[:, None], (n, m)).ravel()
    w = np.broadcast_to((wz * (2 * math.pi / m))[:, None], (n, m)).ravel()
    arrays = dict(x=x, y=y, t=np.array(t), weights=np.array(w))
    for a in arrays.values():
        a.setflags(write=False)
    return EuclidSphereRule(order=n, **arrays)


def integrate_euclid_sphere(f: Integrand, rule: EuclidSphereRule) -> float:
    vals = _evaluate(f, rule.x, rule.y, rule.t)
    return pairwise_sum(vals * rule.weights)


def euclid_ball_integrate(f: Integrand, r: float, n_r: int = 16, rule: EuclidSphereRule | None = None) -> float:
    """Integral of f over the Euclidean ball of radius r in R^3."""
    if not r > 0:
        raise DomainError(f"radius must be positive, got {r}")
    rule = rule or euclid_sphere_rule()
    s, ws = gauss_legendre(n_r, 0.0, float(r))
    sc = s[:, None]
    vals = _evaluate(f, sc * rule.x, sc * rule.y, sc * rule.t)
    shells = pairwise_sum(vals * rule.weights, axis=-1)
    return pairwise_sum(s * s * ws * shells)
