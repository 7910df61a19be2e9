"""One-shot reproduction of the decreasing counterexample and its companions.

Every check is a named pass/fail record so callers (the CLI, the test
suite) can report exactly which claim failed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .functionals import (
    COUNTEREXAMPLE,
    DEFAULT_TOL,
    FunctionalCurve,
    MonotonicityVerdict,
    I_euclid,
    I_heis,
    classify,
    coeff_cross,
    coeff_diag,
    coeff_euclid,
    euclid_sphere_inner,
    fit_even_quartic,
    free_boundary_samples,
    generalized_identity_check,
    geometric_grid,
    phase_integrals,
    sample_curve,
    two_phase_residual,
)
from .operators import kohn_laplacian
from .parse import format_poly, parse
from .quadrature import DEFAULT_ORDERS, Orders

__all__ = ["Check", "Report", "run_counterexample", "EUCLID_EXAMPLE"]

EUCLID_EXAMPLE = parse("x + x^2 - y^2")


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


@dataclass
class Report:
    radii: list[float]
    I_curve: FunctionalCurve
    J_curve: FunctionalCurve
    fit: tuple[float, float, float]
    a3: float
    a31: float
    phase_residual: float
    I_verdict: MonotonicityVerdict
    J_verdict: MonotonicityVerdict
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


def run_counterexample(
    r_min: float = 0.02,
    r_max: float = 0.3,
    r_count: int = 16,
    orders: Orders = DEFAULT_ORDERS,
    tol: float = DEFAULT_TOL,
    alpha: tuple[float, float] | None = None,
    euclid_baseline: bool = False,
) -> Report:
    u = COUNTEREXAMPLE
    expr = format_poly(u)
    radii = geometric_grid(r_min, r_max, r_count)
    pi2 = math.pi**2

    I_curve = sample_curve(lambda r: I_heis(u, r, orders), radii, "I", expr, orders)
    phases = [phase_integrals(u, r, orders) for r in radii]
    J_curve = FunctionalCurve(tuple(radii), tuple(p * m for p, m in phases), "J", expr, orders)
    phase_res = max(abs(p - m) / i for (p, m), i in zip(phases, I_curve.values))

    fit = fit_even_quartic(I_curve)
    a3 = coeff_diag(u, 3)
    a31 = coeff_cross(u, 3, 1)
    vI, vJ = classify(I_curve, tol), classify(J_curve, tol)

    checks = [
        Check("harmonic", kohn_laplacian(u).is_zero(), f"kohn_laplacian(u) = {format_poly(kohn_laplacian(u))}"),
        Check("a1", _rel(fit[0], pi2) <= 1e-6, f"fitted a1 = {fit[0]:.12g}, rel err {_rel(fit[0], pi2):.2e}"),
        Check("c2", _rel(fit[1], -12 * math.pi) <= 1e-4, f"fitted c2 = {fit[1]:.12g} (expected -12 pi)"),
        Check("a3", _rel(fit[2], a3) <= 1e-5, f"fitted a3 = {fit[2]:.12g}, coefficient a3 = {a3:.12g}"),
        Check("a31", _rel(a31, -6 * math.pi) <= 1e-6, f"signed a31 = {a31:.12g} (expected -6 pi)"),
        Check("I_decreasing", vI.kind == "Decreasing", f"I: {vI.kind} (max_violation={vI.evidence:.3e})"),
        Check("J_decreasing", vJ.kind == "Decreasing", f"J: {vJ.kind} (max_violation={vJ.evidence:.3e})"),
        Check("phase_symmetry", phase_res <= 1e-8, f"max |I+ - I-| / I = {phase_res:.3e}"),
    ]
    notes = [
        f"curve I(r) = a1 + 2*a31*r^2 + a3*r^4 with signed a31 = {a31:.12g}",
        f"equivalently a1 - 2*a31'*r^2 + a3*r^4 with a31' = -a31 = {-a31:.12g}",
    ]

    if alpha is not None:
        a1_, a2_ = alpha
        worst = 0.0
        for r in (0.05, 0.1, 0.2):
            worst = max(worst, generalized_identity_check(a1_, a2_, r, orders) / I_heis(u, r, orders))
        res = two_phase_residual(a1_, a2_, free_boundary_samples(50))
        checks.append(Check("two_phase_identity", worst <= 1e-6, f"alpha=({a1_:g},{a2_:g}) rel err {worst:.3e}"))
        checks.append(Check("two_phase_residual", res <= 1e-9, f"free-boundary residual {res:.3e}"))

    if euclid_baseline:
        v = EUCLID_EXAMPLE
        e_curve = sample_curve(lambda r: I_euclid(v, r, orders), geometric_grid(), "Ieuclid", format_poly(v), orders)
        vE = classify(e_curve, tol)
        ea1, ea2 = coeff_euclid(v, 1), coeff_euclid(v, 2)
        ortho = abs(euclid_sphere_inner(parse("x^2 - y^2"), parse("x")))
        checks += [
            Check("euclid_increasing", vE.kind == "Increasing", f"Ieuclid: {vE.kind}"),
            Check("euclid_a1", _rel(ea1, 2 * math.pi) <= 1e-10, f"a1 = {ea1:.12g} (expected 2 pi)"),
            Check("euclid_a2", ea2 > 0 and _rel(ea2, 8 * math.pi / 3) <= 1e-10, f"a2 = {ea2:.12g}"),
            Check("euclid_orthogonality", ortho <= 1e-10, f"|int (x^2 - y^2) x| = {ortho:.3e}"),
        ]

    return Report(radii, I_curve, J_curve, fit, a3, a31, phase_res, vI, vJ, checks, notes)
