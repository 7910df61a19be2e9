"""Points of the first Heisenberg group H^1 and their basic structure.

Group law: (x1, y1, t1) o (x2, y2, t2) = (x1+x2, y1+y2, t1+t2+2(x2 y1 - x1 y2)).
Coordinates may be floats or exact rationals; the operations only use
ring arithmetic (except the norm), so Fractions stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real

from .errors import DomainError
from .poly import Poly3, T, X, Y

__all__ = [
    "HOMOGENEOUS_DIMENSION",
    "GaugePoint",
    "group_mul",
    "group_inv",
    "dilate",
    "koranyi_norm",
    "translate_poly",
]

# Q = 2n + 2 with n = 1
HOMOGENEOUS_DIMENSION = 4


@dataclass(frozen=True)
class GaugePoint:
    x: Real
    y: Real
    t: Real

    def __iter__(self):
        return iter((self.x, self.y, self.t))

    def __matmul__(self, other: "GaugePoint") -> "GaugePoint":
        return group_mul(self, other)


ORIGIN = GaugePoint(0, 0, 0)


def group_mul(p: GaugePoint, m: GaugePoint) -> GaugePoint:
    return GaugePoint(p.x + m.x, p.y + m.y, p.t + m.t + 2 * (m.x * p.y - p.x * m.y))


def group_inv(p: GaugePoint) -> GaugePoint:
    return GaugePoint(-p.x, -p.y, -p.t)


def dilate(p: GaugePoint, r: Real) -> GaugePoint:
    """delta_r(x, y, t) = (r x, r y, r^2 t)."""
    if not r > 0:
        raise DomainError(f"dilation factor must be positive, got {r}")
    return GaugePoint(r * p.x, r * p.y, r * r * p.t)


def koranyi_norm(p: GaugePoint) -> float:
    """((x^2 + y^2)^2 + t^2)^(1/4)."""
    rho2 = float(p.x) ** 2 + float(p.y) ** 2
    return math.sqrt(math.sqrt(rho2 * rho2 + float(p.t) ** 2))


def translate_poly(p: Poly3, base: GaugePoint) -> Poly3:
    """The polynomial v(xi) = p(base o xi), computed exactly.

    ``base`` must have exact (int or Fraction) coordinates.
    """
    a, b, c = base
    tx = X + a
    ty = Y + b
    # t-component of base o xi: c + t + 2(x b - a y)
    tt = T + c + 2 * (X * b - Y * a)
    return p.compose(tx, ty, tt)
