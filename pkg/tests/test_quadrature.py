import math

import numpy as np
import pytest

from heisacf.errors import DomainError, NonFiniteError
from heisacf.quadrature import (
    Orders,
    euclid_ball_integrate,
    euclid_sphere_rule,
    integrate_euclid_sphere,
    integrate_sphere,
    koranyi_ball_integrate,
    koranyi_perimeter,
    koranyi_sphere_rule,
    pairwise_sum,
)

from oracles import cartesian_tplquad, cylinder_ball_integral, random_poly, shell_weighted_integral

PI = math.pi
RULE = koranyi_sphere_rule(32, 64)


def rho(x, y, t):
    return np.sqrt(x * x + y * y)


def one(x, y, t):
    return np.ones_like(x)


# -- the perimeter density ---------------------------------------------------------


def test_density_derived_from_perimeter_integrand():
    """Apply sqrt(<X,n>^2 + <Y,n>^2) |r_phi x r_theta| to the graph chart.

    With F = (x^2 + y^2)^2 + t^2 the unit normal is grad F / |grad F|, so the
    perimeter integrand is |grad_H F| / |grad F|; times the Euclidean area
    element of the chart it must reduce to sqrt(sin phi) on both hemispheres.
    """
    sp = pytest.importorskip("sympy")
    phi, th = sp.symbols("phi theta", positive=True)
    for sign in (1, -1):
        r = sp.Matrix([sp.sqrt(sp.sin(phi)) * sp.cos(th), sp.sqrt(sp.sin(phi)) * sp.sin(th), sign * sp.cos(phi)])
        x, y, t = r
        F_x = 4 * x * (x**2 + y**2)
        F_y = 4 * y * (x**2 + y**2)
        F_t = 2 * t
        grad = sp.Matrix([F_x, F_y, F_t])
        hor = sp.sqrt((F_x + 2 * y * F_t) ** 2 + (F_y - 2 * x * F_t) ** 2)
        area = r.diff(phi).cross(r.diff(th)).norm()
        density = hor / grad.norm() * area
        f = sp.lambdify((phi, th), density, "math")
        for p in np.linspace(0.05, 1.5, 9):
            for q in np.linspace(0.1, 6.0, 7):
                assert abs(f(p, q) - math.sqrt(math.sin(p))) < 1e-12


def test_density_matches_thin_shell_oracle():
    # coarea with Q = 4: int_{B1} |grad_H N| = perimeter / 4, |grad_H N| = rho / N
    shell = shell_weighted_integral(lambda x, y, t: 1.0)
    total = float(np.sum(RULE.weights))
    assert abs(shell - total / 4) <= 1e-8 * shell
    assert abs(total - koranyi_perimeter()) <= 1e-10 * total


@pytest.mark.parametrize(
    "g, m",
    [
        (lambda x, y, t: x * x, 2),
        (lambda x, y, t: t * t, 4),
        (lambda x, y, t: x**6 + 3 * t * t * x * x, 6),
        (lambda x, y, t: 1.0 / np.sqrt(x * x + y * y), -1),
    ],
)
def test_homogeneity_of_sphere_measure(g, m):
    lhs = shell_weighted_integral(g)
    rhs = integrate_sphere(g, RULE) / (4 + m)
    assert abs(lhs - rhs) <= 1e-8 * abs(rhs)


# -- sphere rule -----------------------------------------------------------------------


def test_rule_structure():
    r = koranyi_sphere_rule(8, 16)
    assert r.size == 2 * 8 * 16
    assert np.all(r.weights > 0) and np.all(r.flat_weights > 0)
    assert np.all((r.phi > 0) & (r.phi < PI / 2))
    assert set(np.unique(r.hemisphere)) == {-1.0, 1.0}
    assert np.allclose(r.x**4 + 2 * r.x**2 * r.y**2 + r.y**4 + r.t**2, 1.0, atol=1e-14)
    assert np.all(r.x != 0) and np.all(r.y != 0)


def test_rule_symmetric_node_set():
    r = koranyi_sphere_rule(6, 12)
    pts = {(a, b, c, w) for a, b, c, w in zip(r.x, r.y, r.t, r.weights)}
    for fx, fy, ft in [(-1, -1, 1), (-1, 1, 1), (1, -1, 1), (1, 1, -1)]:
        assert {(fx * a, fy * b, ft * c, w) for a, b, c, w in pts} == pts


@pytest.mark.parametrize("n_phi, n_theta", [(1, 8), (4, 2), (4, 6)])
def test_rule_rejects_bad_orders(n_phi, n_theta):
    with pytest.raises(DomainError):
        koranyi_sphere_rule(n_phi, n_theta)


def test_sphere_closed_forms():
    R = koranyi_sphere_rule(64, 128)
    a = integrate_sphere(lambda x, y, t: 1 / rho(x, y, t), R)
    b = integrate_sphere(rho, R)
    assert abs(a - 2 * PI**2) <= 1e-8 * 2 * PI**2
    assert abs(b - 4 * PI) <= 1e-8 * 4 * PI
    assert abs(integrate_sphere(one, R) - koranyi_perimeter()) <= 1e-10 * koranyi_perimeter()


@pytest.mark.parametrize(
    "f",
    [
        lambda x, y, t: x / np.sqrt(x * x + y * y),
        lambda x, y, t: t,
        lambda x, y, t: x * y,
        lambda x, y, t: y * t * t + x**3,
        lambda x, y, t: t**3 * (1 + x * x),
    ],
)
def test_odd_integrands_vanish(f):
    assert abs(integrate_sphere(f, RULE)) < 1e-13
    assert abs(koranyi_ball_integrate(f, 0.7, 16, RULE)) < 1e-13


def test_nonfinite_reports_node():
    with pytest.raises(NonFiniteError) as ei:
        integrate_sphere(lambda x, y, t: np.where(t > 0.99, np.inf, 1.0), RULE)
    assert ei.value.node is not None and ei.value.node.t > 0.99


# -- ball integration ----------------------------------------------------------------


def test_ball_examples():
    assert koranyi_ball_integrate(one, 1.0) == pytest.approx(PI**2 / 2, rel=1e-14)
    assert koranyi_ball_integrate(lambda x, y, t: (x > 0) * 1.0, 1.0) == pytest.approx(PI**2 / 4, rel=1e-14)
    for r in (0.3, 1.0, 2.5):
        val = koranyi_ball_integrate(lambda x, y, t: 1 / np.sqrt((x * x + y * y) ** 2 + t * t), r)
        assert val == pytest.approx(PI**2 * r * r, rel=1e-13)


def test_ball_volume_scales_with_Q():
    for r in (0.5, 2.0):
        assert koranyi_ball_integrate(one, r) == pytest.approx(r**4 * PI**2 / 2, rel=1e-13)


def test_ball_rejects_bad_radius():
    with pytest.raises(DomainError):
        koranyi_ball_integrate(one, 0.0)
    with pytest.raises(DomainError):
        koranyi_ball_integrate(one, -1.0)


def test_ball_matches_adaptive_cartesian():
    f = lambda x, y, t: 1.0 + x * x * t - 2 * y * y + t * t
    ref = cartesian_tplquad(f, 0.9)
    assert abs(koranyi_ball_integrate(f, 0.9) - ref) <= 1e-8 * abs(ref)


def test_ball_matches_cylinder_oracle_random():
    rng = np.random.default_rng(2024)
    for _ in range(5):
        p = random_poly(rng, 4)
        f = p.lambdify()
        r = float(rng.uniform(0.3, 1.5))
        ref = cylinder_ball_integral(f, r)
        assert abs(koranyi_ball_integrate(f, r) - ref) <= 1e-10 * abs(ref)


def test_convergence_under_doubling():
    o = Orders()
    d = o.doubled()
    for f in [lambda x, y, t: np.exp(x) * np.cos(t), lambda x, y, t: (1 + x * x + t) ** 3]:
        a = koranyi_ball_integrate(f, 0.8, o.n_r, koranyi_sphere_rule(o.n_phi, o.n_theta))
        b = koranyi_ball_integrate(f, 0.8, d.n_r, koranyi_sphere_rule(d.n_phi, d.n_theta))
        assert abs(a - b) <= 1e-9 * abs(b)


def test_deterministic_bits():
    f = lambda x, y, t: np.sin(3 * x) + y * t
    assert koranyi_ball_integrate(f, 0.6) == koranyi_ball_integrate(f, 0.6)


# -- Euclidean rules -------------------------------------------------------------------


def test_euclid_sphere_examples():
    R = euclid_sphere_rule(32)
    assert abs(integrate_euclid_sphere(one, R) - 4 * PI) <= 1e-12 * 4 * PI
    assert integrate_euclid_sphere(lambda x, y, t: x * x, R) == pytest.approx(4 * PI / 3, rel=1e-13)
    assert abs(integrate_euclid_sphere(lambda x, y, t: x * y, R)) < 1e-14
    with pytest.raises(DomainError):
        euclid_sphere_rule(1)


def test_euclid_ball_examples():
    assert euclid_ball_integrate(one, 1.0) == pytest.approx(4 * PI / 3, rel=1e-13)
    assert euclid_ball_integrate(lambda x, y, t: 1 / np.sqrt(x * x + y * y + t * t), 1.0) == pytest.approx(
        2 * PI, rel=1e-13
    )
    assert euclid_ball_integrate(lambda x, y, t: (x > 0) * 1.0, 1.0) == pytest.approx(2 * PI / 3, rel=1e-13)
    with pytest.raises(DomainError):
        euclid_ball_integrate(one, 0)


# -- pairwise summation ------------------------------------------------------------------


def test_pairwise_sum():
    assert pairwise_sum([]) == 0.0
    assert pairwise_sum([1.0, 2.0, 3.0]) == 6.0
    v = np.random.default_rng(0).normal(size=(3, 1001))
    out = pairwise_sum(v, axis=-1)
    assert out.shape == (3,)
    assert np.allclose(out, v.sum(axis=1), rtol=1e-13)
    # bracketing is fixed: reversed order of equal halves gives the same bits
    w = np.array([1e16, 1.0, -1e16, 1.0])
    assert pairwise_sum(w) == (1e16 + 1.0) + (-1e16 + 1.0)
