import numpy as np
import pytest

from heisacf.errors import DomainError
from heisacf.operators import (
    apply_X,
    apply_Y,
    commutator_check,
    e_decompose,
    euclid_gradient,
    euclid_laplacian,
    h_decompose,
    horizontal_gradient,
    is_euclid_harmonic,
    is_h_harmonic,
    kohn_laplacian,
    q_poly,
    t_poly,
)
from heisacf.parse import parse
from heisacf.poly import ONE, ZERO, Poly3, T, X, Y, monomials

U = parse("x - 3*y*t - 2*x^3")
P3 = parse("-3*y*t - 2*x^3")


def test_horizontal_fields_examples():
    assert apply_X(X) == ONE
    assert apply_X(T) == 2 * Y
    assert apply_Y(X) == ZERO
    assert apply_Y(T) == -2 * X
    assert apply_X(U) == parse("1 - 6*x^2 - 6*y^2")
    assert apply_Y(U) == parse("-3*t + 6*x*y")
    g = horizontal_gradient(T)
    assert (g.xc, g.yc) == (2 * Y, -2 * X)
    g = horizontal_gradient(X)
    assert (g.xc, g.yc) == (ONE, ZERO)


def test_kohn_laplacian_examples():
    assert kohn_laplacian(U).is_zero()
    assert kohn_laplacian(X**2 + Y**2) == 4 * ONE
    assert kohn_laplacian(Poly3.constant(7)).is_zero()
    assert kohn_laplacian(X**2) == 2 * ONE


def test_kohn_laplacian_expanded_form():
    # X^2 + Y^2 = dxx + dyy + 4y dxt - 4x dyt + 4(x^2 + y^2) dtt
    for p in [U, X**2 * T, Y**3 * T**2 + X * Y * T, T**3]:
        expanded = (
            p.diff(0).diff(0)
            + p.diff(1).diff(1)
            + 4 * Y * p.diff(0).diff(2)
            - 4 * X * p.diff(1).diff(2)
            + 4 * (X * X + Y * Y) * p.diff(2).diff(2)
        )
        assert kohn_laplacian(p) == expanded


def test_euclid_laplacian_examples():
    assert euclid_laplacian(X**2 - Y**2).is_zero()
    assert euclid_laplacian(X**2) == 2 * ONE
    assert euclid_laplacian(X * Y * T).is_zero()


def test_harmonic_predicates():
    assert is_h_harmonic(U)
    assert not is_h_harmonic(X**2)
    assert is_h_harmonic(X * Y)
    assert is_euclid_harmonic(X**2 - T**2)
    assert not is_euclid_harmonic(X * Y * T + X**2)


def test_commutator_vanishes_on_all_monomials_to_degree_6():
    for k in range(7):
        for m in monomials(k):
            assert commutator_check(Poly3.monomial(*m)).is_zero()
    assert commutator_check(T).is_zero()
    assert commutator_check(X**2 * Y * T).is_zero()
    # and the raw bracket is -4 d/dt
    assert apply_X(apply_Y(T)) - apply_Y(apply_X(T)) == -4 * ONE


def test_degree_bookkeeping():
    for k in range(1, 7):
        for m in monomials(k):
            p = Poly3.monomial(*m)
            for q in (apply_X(p), apply_Y(p)):
                assert q.is_zero() or q.homogeneous_degree() == k - 1


def test_h_decompose_examples():
    assert h_decompose(U) == {1: X, 3: P3}
    assert h_decompose(Poly3.constant(5)) == {0: Poly3.constant(5)}
    assert h_decompose(X + T) == {1: X, 2: T}


def test_h_decompose_parts_are_dilation_eigenfunctions():
    sp = pytest.importorskip("sympy")
    x, y, t, s = sp.symbols("x y t s")
    p = U + T**2 * X + Y * X + 4
    for k, part in h_decompose(p).items():
        e = sum(sp.Rational(c.numerator, c.denominator) * x**m.b1 * y**m.b2 * t**m.b3 for m, c in part.items())
        scaled = e.subs({x: s * x, y: s * y, t: s**2 * t}, simultaneous=True)
        assert sp.expand(scaled - s**k * e) == 0


def test_e_decompose():
    assert e_decompose(X + T + X * T) == {1: X + T, 2: X * T}


def test_q_poly_examples():
    assert q_poly(X) == ONE
    assert q_poly(X * Y) == X**2 + Y**2
    assert q_poly(P3) == 36 * (X**2 + Y**2) ** 2 + 9 * (-T + 2 * X * Y) ** 2
    with pytest.raises(DomainError):
        q_poly(U)


def test_t_poly_examples():
    assert t_poly(X, Y).is_zero()
    assert t_poly(X, P3) == -6 * (X**2 + Y**2)
    assert t_poly(X, X) == ONE
    with pytest.raises(DomainError):
        t_poly(X, U)


def _to_sympy(p, sp, x, y, t):
    return sum(sp.Rational(c.numerator, c.denominator) * x**m.b1 * y**m.b2 * t**m.b3 for m, c in p.items())


def test_q_and_t_homogeneity_identity_symbolic():
    sp = pytest.importorskip("sympy")
    x, y, t, s = sp.symbols("x y t s")
    dil = {x: s * x, y: s * y, t: s**2 * t}
    ph, pk = X * Y + 2 * T, P3
    h, k = 2, 3
    for a, b, deg in [(pk, pk, 2 * (k - 1)), (ph, pk, h + k - 2)]:
        ga, gb = horizontal_gradient(a), horizontal_gradient(b)
        lhs = _to_sympy(ga.xc, sp, x, y, t).subs(dil, simultaneous=True) * _to_sympy(gb.xc, sp, x, y, t).subs(
            dil, simultaneous=True
        ) + _to_sympy(ga.yc, sp, x, y, t).subs(dil, simultaneous=True) * _to_sympy(gb.yc, sp, x, y, t).subs(
            dil, simultaneous=True
        )
        rhs = s**deg * _to_sympy(t_poly(a, b), sp, x, y, t)
        assert sp.expand(lhs - rhs) == 0


def test_euclid_radial_identity():
    # <grad P_k, P> = k P_k for Euclidean-homogeneous P_k
    rng = np.random.default_rng(9)
    for k in range(1, 6):
        p = Poly3({tuple(m): int(rng.integers(-5, 6)) or 1 for m in monomials(k, "euclid")})
        gx, gy, gt = euclid_gradient(p)
        assert gx * X + gy * Y + gt * T == k * p
