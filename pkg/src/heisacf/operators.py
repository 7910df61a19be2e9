"""Horizontal vector fields, sub-Laplacian and related exact operators on H^1.

X = d/dx + 2y d/dt and Y = d/dy - 2x d/dt.  Every operator here maps
Poly3 to Poly3 exactly; no floating point is involved.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .poly import Poly3, X as _x, Y as _y

__all__ = [
    "HorizontalField",
    "apply_X",
    "apply_Y",
    "kohn_laplacian",
    "euclid_laplacian",
    "euclid_gradient",
    "horizontal_gradient",
    "commutator_check",
    "h_decompose",
    "e_decompose",
    "is_h_harmonic",
    "is_euclid_harmonic",
    "q_poly",
    "t_poly",
]


def apply_X(p: Poly3) -> Poly3:
    return p.diff(0) + 2 * _y * p.diff(2)


def apply_Y(p: Poly3) -> Poly3:
    return p.diff(1) - 2 * _x * p.diff(2)


def kohn_laplacian(p: Poly3) -> Poly3:
    """X^2 p + Y^2 p."""
    return apply_X(apply_X(p)) + apply_Y(apply_Y(p))


def euclid_laplacian(p: Poly3) -> Poly3:
    """Standard Laplacian in R^3, with t as the third coordinate."""
    return p.diff(0).diff(0) + p.diff(1).diff(1) + p.diff(2).diff(2)


def euclid_gradient(p: Poly3) -> tuple[Poly3, Poly3, Poly3]:
    return p.diff(0), p.diff(1), p.diff(2)


@dataclass(frozen=True)
class HorizontalField:
    """(Xu, Yu) for some polynomial u."""

    xc: Poly3
    yc: Poly3

    def norm_sq(self) -> Poly3:
        return self.xc * self.xc + self.yc * self.yc

    def dot(self, other: "HorizontalField") -> Poly3:
        return self.xc * other.xc + self.yc * other.yc


def horizontal_gradient(p: Poly3) -> HorizontalField:
    return HorizontalField(apply_X(p), apply_Y(p))


def commutator_check(p: Poly3) -> Poly3:
    """XYp - YXp + 4 dp/dt; identically zero since [X, Y] = -4 d/dt."""
    return apply_X(apply_Y(p)) - apply_Y(apply_X(p)) + 4 * p.diff(2)


def h_decompose(p: Poly3) -> dict[int, Poly3]:
    """Parts of pure Heisenberg degree (x, y weight 1; t weight 2)."""
    return p.parts("heisenberg")


def e_decompose(p: Poly3) -> dict[int, Poly3]:
    """Parts of pure Euclidean degree."""
    return p.parts("euclid")


def is_h_harmonic(p: Poly3) -> bool:
    return kohn_laplacian(p).is_zero()


def is_euclid_harmonic(p: Poly3) -> bool:
    return euclid_laplacian(p).is_zero()


def _require_homogeneous(p: Poly3, name: str) -> None:
    if not p.is_homogeneous("heisenberg"):
        raise DomainError(f"{name} must be homogeneous in the Heisenberg grading, got {p}")


def q_poly(pk: Poly3) -> Poly3:
    """|grad_H P_k|^2 as a polynomial.

    For P_k homogeneous of degree k this is homogeneous of degree 2(k-1),
    so |grad_H P_k(delta_s sigma)|^2 = s^(2(k-1)) q_poly(P_k)(sigma).
    """
    _require_homogeneous(pk, "P_k")
    return horizontal_gradient(pk).norm_sq()


def t_poly(ph: Poly3, pk: Poly3) -> Poly3:
    """<grad_H P_h, grad_H P_k>, homogeneous of degree h + k - 2."""
    _require_homogeneous(ph, "P_h")
    _require_homogeneous(pk, "P_k")
    return horizontal_gradient(ph).dot(horizontal_gradient(pk))
