"""Bases of homogeneous harmonic polynomials via exact kernel computation.

For a degree k the Laplacian (Kohn or Euclidean) is written as a matrix
from the coefficients of degree-k monomials to the coefficients of its
image; a kernel basis of that matrix gives the harmonic polynomials.
Elimination runs over Fractions, so ranks and kernels are exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Sequence

from .errors import DomainError
from .operators import euclid_laplacian, kohn_laplacian
from .poly import DEFAULT_MAX_DEGREE, MultiIndex, Poly3, from_coefficients, graded_lex_key, monomials

__all__ = [
    "DEFAULT_MAX_DEGREE",
    "operator_matrix",
    "rref",
    "rank",
    "nullspace",
    "harmonic_basis",
    "h_harmonic_basis",
    "euclid_harmonic_basis",
]

Matrix = list[list[Fraction]]


def operator_matrix(
    op: Callable[[Poly3], Poly3], domain: Sequence[MultiIndex]
) -> tuple[Matrix, list[MultiIndex]]:
    """Matrix of a linear polynomial operator on span(domain).

    Columns follow ``domain``; rows follow the image monomials in
    graded-lex order.
    """
    images = [op(Poly3.monomial(*m)) for m in domain]
    rows = sorted({m for img in images for m in img.terms}, key=graded_lex_key)
    mat = [[img.coefficient(*r) for img in images] for r in rows]
    return mat, rows


def rref(mat: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q and the pivot columns.

    Columns are scanned left to right, so the pivots (and with them the
    kernel basis) depend only on the column order.
    """
    a = [[Fraction(v) for v in row] for row in mat]
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        sel = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if sel is None:
            continue
        a[r], a[sel] = a[sel], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(n_rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(mat: Matrix) -> int:
    return len(rref(mat)[1])


def _primitive(vec: list[Fraction]) -> list[Fraction]:
    den = lcm(*(v.denominator for v in vec)) if vec else 1
    ints = [int(v * den) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    g = g or 1
    return [Fraction(v, g) for v in ints]


def nullspace(mat: Matrix, n_cols: int | None = None) -> list[list[Fraction]]:
    """Kernel basis, one vector per free column, scaled to primitive integers."""
    if n_cols is None:
        n_cols = len(mat[0]) if mat else 0
    if not mat:
        return [[Fraction(int(i == j)) for i in range(n_cols)] for j in range(n_cols)]
    red, pivots = rref(mat)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * n_cols
        vec[f] = Fraction(1)
        for row, pc in enumerate(pivots):
            vec[pc] = -red[row][f]
        basis.append(_primitive(vec))
    return basis


def harmonic_basis(
    k: int,
    laplacian: Callable[[Poly3], Poly3],
    grading: str,
    max_degree: int = DEFAULT_MAX_DEGREE,
) -> list[Poly3]:
    if k < 0:
        raise DomainError(f"degree must be nonnegative, got {k}")
    if k > max_degree:
        raise DomainError(f"degree {k} exceeds the configured maximum {max_degree}")
    domain = monomials(k, grading)
    mat, _ = operator_matrix(laplacian, domain)
    return [from_coefficients(domain, vec) for vec in nullspace(mat, len(domain))]


def h_harmonic_basis(k: int, max_degree: int = DEFAULT_MAX_DEGREE) -> list[Poly3]:
    """Basis of H^1-harmonic polynomials of pure Heisenberg degree k."""
    return harmonic_basis(k, kohn_laplacian, "heisenberg", max_degree)


def euclid_harmonic_basis(k: int, max_degree: int = DEFAULT_MAX_DEGREE) -> list[Poly3]:
    """Basis of harmonic polynomials in R^3 of pure (Euclidean) degree k."""
    return harmonic_basis(k, euclid_laplacian, "euclid", max_degree)
