"""Heisenberg-group calculus and monotonicity functionals on H^1."""

from .errors import DomainError, NonFiniteError, ParseError, PreconditionError
from .functionals import (
    COUNTEREXAMPLE,
    FunctionalCurve,
    I_euclid,
    I_heis,
    I_heis_signed,
    I_two_phase,
    J_beta_heis,
    J_euclid,
    J_heis,
    J_heis_direct,
    MonotonicityVerdict,
    SeriesCoefficients,
    classify,
    coeff_cross,
    coeff_diag,
    coeff_euclid,
    euclid_series_coefficients,
    generalized_identity_check,
    geometric_grid,
    phase_integrals,
    series_coefficients,
    series_I_euclid,
    series_I_heis,
    two_phase_residual,
)
from .group import HOMOGENEOUS_DIMENSION, GaugePoint, dilate, group_inv, group_mul, koranyi_norm, translate_poly
from .harmonic import euclid_harmonic_basis, h_harmonic_basis
from .operators import (
    HorizontalField,
    apply_X,
    apply_Y,
    commutator_check,
    euclid_laplacian,
    h_decompose,
    horizontal_gradient,
    is_h_harmonic,
    kohn_laplacian,
    q_poly,
    t_poly,
)
from .parse import PolyExpr, format_poly, parse
from .poly import MultiIndex, Poly3
from .quadrature import (
    DEFAULT_ORDERS,
    Orders,
    SphereRule,
    euclid_ball_integrate,
    euclid_sphere_rule,
    integrate_sphere,
    koranyi_ball_integrate,
    koranyi_sphere_rule,
)

__version__ = "0.1.0"
