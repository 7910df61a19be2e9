"""Exact trivariate polynomials in (x, y, t) with rational coefficients.

Terms are keyed by exponent triples.  The grading used throughout the
package is the Heisenberg one, where ``x`` and ``y`` have weight 1 and
``t`` has weight 2, so that ``p(rx, ry, r^2 t)`` scales monomial-wise.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple

import numpy as np

__all__ = ["DEFAULT_MAX_DEGREE", "MultiIndex", "Poly3", "X", "Y", "T", "ONE", "ZERO", "monomials"]

# largest Heisenberg degree accepted by the parser and the basis solvers
DEFAULT_MAX_DEGREE = 8


class MultiIndex(NamedTuple):
    """Exponents of x, y and t in a monomial."""

    b1: int
    b2: int
    b3: int

    @property
    def heisenberg_degree(self) -> int:
        return self.b1 + self.b2 + 2 * self.b3

    @property
    def euclid_degree(self) -> int:
        return self.b1 + self.b2 + self.b3


def graded_lex_key(m: MultiIndex) -> tuple[int, int, int, int]:
    """Sort key putting higher Heisenberg degree first, then lex-descending."""
    return (-m.heisenberg_degree, -m.b1, -m.b2, -m.b3)


def _coerce_scalar(c) -> Fraction:
    if isinstance(c, bool):
        raise TypeError("booleans are not polynomial coefficients")
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(
        f"Poly3 coefficients must be exact rationals, got {type(c).__name__}; "
        "convert floats explicitly with Fraction(value)"
    )


class Poly3:
    """Immutable polynomial in x, y, t over the rationals.

    No zero coefficient is ever stored, so two polynomials are equal exactly
    when their term maps agree.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int, int], object] | None = None):
        clean: dict[MultiIndex, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            if len(exps) != 3 or any((not isinstance(e, int)) or e < 0 for e in exps):
                raise ValueError(f"invalid exponent triple {exps!r}")
            c = _coerce_scalar(coeff)
            if c:
                key = MultiIndex(*exps)
                c = clean.get(key, 0) + c
                if c:
                    clean[key] = c
                else:
                    clean.pop(key, None)
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, terms: dict[MultiIndex, Fraction]) -> "Poly3":
        # trusted constructor: keys are MultiIndex, values nonzero Fractions
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "Poly3":
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, b1: int, b2: int, b3: int, coeff=1) -> "Poly3":
        return cls({(b1, b2, b3): coeff})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[MultiIndex, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[MultiIndex, Fraction]]:
        """Terms in graded-lex order (highest Heisenberg degree first)."""
        for m in sorted(self._terms, key=graded_lex_key):
            yield m, self._terms[m]

    def coefficient(self, b1: int, b2: int, b3: int) -> Fraction:
        return self._terms.get(MultiIndex(b1, b2, b3), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def degree(self) -> int:
        """Largest Heisenberg degree present; -1 for the zero polynomial."""
        return max((m.heisenberg_degree for m in self._terms), default=-1)

    @property
    def euclid_degree(self) -> int:
        return max((m.euclid_degree for m in self._terms), default=-1)

    def homogeneous_degree(self, grading: str = "heisenberg") -> int | None:
        """The common degree of all terms, or None if mixed (or zero)."""
        degs = {_degree(m, grading) for m in self._terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self, grading: str = "heisenberg") -> bool:
        return self.is_zero() or self.homogeneous_degree(grading) is not None

    # -- arithmetic ---------------------------------------------------------

    def _lift(self, other) -> "Poly3":
        if isinstance(other, Poly3):
            return other
        return Poly3.constant(_coerce_scalar(other))

    def __add__(self, other) -> "Poly3":
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly3._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly3":
        return Poly3._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Poly3":
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly3":
        return (-self) + other

    def __mul__(self, other) -> "Poly3":
        if not isinstance(other, Poly3):
            try:
                c = _coerce_scalar(other)
            except TypeError:
                return NotImplemented
            if not c:
                return ZERO
            return Poly3._raw({m: v * c for m, v in self._terms.items()})
        out: dict[MultiIndex, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = MultiIndex(m1.b1 + m2.b1, m1.b2 + m2.b2, m1.b3 + m2.b3)
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Poly3._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Poly3":
        c = _coerce_scalar(other)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self * (1 / c)

    def __pow__(self, n: int) -> "Poly3":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly3):
            return self._terms == other._terms
        try:
            return self._terms == Poly3.constant(_coerce_scalar(other))._terms
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- calculus and substitution ------------------------------------------

    def diff(self, var: int | str) -> "Poly3":
        """Partial derivative with respect to x (0), y (1) or t (2)."""
        i = _VAR_INDEX[var] if isinstance(var, str) else var
        out: dict[MultiIndex, Fraction] = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                nm = list(m)
                nm[i] -= 1
                out[MultiIndex(*nm)] = c * e
        return Poly3._raw(out)

    def evaluate(self, x, y, t):
        """Evaluate with the arithmetic of the arguments (exact for Fractions)."""
        total = 0
        for m, c in self.items():
            total = total + c * x**m.b1 * y**m.b2 * t**m.b3
        return total

    __call__ = evaluate

    def compose(self, px: "Poly3", py: "Poly3", pt: "Poly3") -> "Poly3":
        """Substitute polynomials for x, y and t."""
        cache: dict[tuple[int, int], Poly3] = {}

        def power(i: int, e: int, base: Poly3) -> Poly3:
            key = (i, e)
            if key not in cache:
                cache[key] = base**e
            return cache[key]

        out = ZERO
        for m, c in self._terms.items():
            out = out + power(0, m.b1, px) * power(1, m.b2, py) * power(2, m.b3, pt) * c
        return out

    def parts(self, grading: str = "heisenberg") -> dict[int, "Poly3"]:
        """Split into homogeneous parts keyed by degree."""
        buckets: dict[int, dict[MultiIndex, Fraction]] = {}
        for m, c in self._terms.items():
            buckets.setdefault(_degree(m, grading), {})[m] = c
        return {k: Poly3._raw(v) for k, v in sorted(buckets.items())}

    def lambdify(self) -> Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]:
        """Vectorised float evaluator.

        Terms are accumulated in graded-lex order with powers built by
        repeated multiplication, so the result is exactly odd/even under
        sign flips of the arguments whenever the polynomial is.
        """
        terms = [(m, float(c)) for m, c in self.items()]
        top = [max((m[i] for m, _ in terms), default=0) for i in range(3)]

        def f(x, y, t):
            args = np.broadcast_arrays(
                np.asarray(x, dtype=float), np.asarray(y, dtype=float), np.asarray(t, dtype=float)
            )
            pows = []
            for a, e in zip(args, top):
                seq = [np.ones_like(a)]
                for _ in range(e):
                    seq.append(seq[-1] * a)
                pows.append(seq)
            out = np.zeros_like(args[0])
            for m, c in terms:
                out = out + c * (pows[0][m.b1] * pows[1][m.b2] * pows[2][m.b3])
            return out

        return f

    def __repr__(self) -> str:
        from .parse import format_poly

        return f"Poly3({format_poly(self)!r})"

    def __str__(self) -> str:
        from .parse import format_poly

        return format_poly(self)


_VAR_INDEX = {"x": 0, "y": 1, "t": 2}


def _degree(m: MultiIndex, grading: str) -> int:
    if grading == "heisenberg":
        return m.heisenberg_degree
    if grading == "euclid":
        return m.euclid_degree
    raise ValueError(f"unknown grading {grading!r}")


def monomials(k: int, grading: str = "heisenberg") -> list[MultiIndex]:
    """All exponent triples of degree ``k`` in graded-lex (descending) order."""
    if k < 0:
        return []
    out = []
    if grading == "heisenberg":
        for b3 in range(k // 2 + 1):
            rest = k - 2 * b3
            for b1 in range(rest + 1):
                out.append(MultiIndex(b1, rest - b1, b3))
    elif grading == "euclid":
        for b1 in range(k + 1):
            for b2 in range(k - b1 + 1):
                out.append(MultiIndex(b1, b2, k - b1 - b2))
    else:
        raise ValueError(f"unknown grading {grading!r}")
    return sorted(out, key=graded_lex_key)


def from_coefficients(monos: Iterable[MultiIndex], coeffs: Iterable) -> Poly3:
    return Poly3(dict(zip(monos, coeffs)))


ZERO = Poly3()
ONE = Poly3.constant(1)
X = Poly3.monomial(1, 0, 0)
Y = Poly3.monomial(0, 1, 0)
T = Poly3.monomial(0, 0, 1)
