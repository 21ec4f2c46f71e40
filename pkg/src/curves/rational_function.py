# === File: src/curves/rational_function.py ===

"""
Rational functions of the parameter t with rational coefficients.
"""

from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
from sympy import Expr, Poly, QQ, Rational, cancel, fraction, together

from src.exact.symbols import S, T
from src.exceptions import CurveValidationError

Scalar = Union[int, Rational]


def _t_poly(expr) -> Poly:
    return Poly(expr, T, domain=QQ)


@dataclass(frozen=True)
class RationalFunction:
    """
    Coprime pair numerator/denominator in Q[t].

    The denominator is monic, so its leading coefficient is positive.
    Build instances with from_polys or from_expr, which enforce both invariants.
    """
    numerator: Poly
    denominator: Poly

    # === Construction ===

    @classmethod
    def from_polys(cls, numerator: Poly, denominator: Poly) -> 'RationalFunction':
        numerator, denominator = _t_poly(numerator.as_expr()), _t_poly(denominator.as_expr())
        if denominator.is_zero:
            raise CurveValidationError("Zero denominator")
        if numerator.is_zero:
            return cls(numerator, _t_poly(1))
        common = numerator.gcd(denominator)
        numerator, denominator = numerator.exquo(common), denominator.exquo(common)
        lead = denominator.LC()
        return cls(numerator.quo_ground(lead), denominator.quo_ground(lead))

    @classmethod
    def from_expr(cls, expr: Expr) -> 'RationalFunction':
        unknown = getattr(expr, 'free_symbols', set()) - {T}
        if unknown:
            raise CurveValidationError(f"Unexpected symbols {sorted(map(str, unknown))}; only t is allowed")
        num, den = fraction(cancel(together(expr)))
        return cls.from_polys(_t_poly(num), _t_poly(den))

    @classmethod
    def constant(cls, value: Scalar) -> 'RationalFunction':
        return cls(_t_poly(Rational(value)), _t_poly(1))

    @classmethod
    def identity(cls) -> 'RationalFunction':
        return cls(_t_poly(T), _t_poly(1))

    # === Queries ===

    @property
    def degrees(self) -> Tuple[int, int]:
        """(deg numerator, deg denominator); the zero numerator has degree -1."""
        num = self.numerator.degree() if not self.numerator.is_zero else -1
        return num, self.denominator.degree()

    def is_constant(self) -> bool:
        return self.numerator.degree() <= 0 and self.denominator.degree() == 0

    def is_zero(self) -> bool:
        return self.numerator.is_zero

    def is_polynomial(self) -> bool:
        return self.denominator.degree() == 0

    def as_expr(self) -> Expr:
        return self.numerator.as_expr() / self.denominator.as_expr()

    def __call__(self, q: Scalar) -> Rational:
        """Exact value at a rational point; the denominator must not vanish there."""
        q = Rational(q)
        den = self.denominator.eval(q)
        if den == 0:
            raise ZeroDivisionError(f"Pole at t = {q}")
        return Rational(self.numerator.eval(q)) / Rational(den)

    def numeric(self, ts) -> np.ndarray:
        """Float evaluation over an array; poles give inf or nan."""
        ts = np.asarray(ts, dtype=float)
        num = np.polyval([float(c) for c in self.numerator.all_coeffs()], ts)
        den = np.polyval([float(c) for c in self.denominator.all_coeffs()], ts)
        with np.errstate(divide='ignore', invalid='ignore'):
            return num / den

    def difference_numerator(self, other_var=S, plus: bool = False) -> Poly:
        """
        N(t)D(s) - N(s)D(t), or with plus=True N(t)D(s) + N(s)D(t).

        This is the numerator of f(t) - f(s) (resp. f(t) + f(s)) over D(t)D(s).
        """
        n_t, d_t = self.numerator.as_expr(), self.denominator.as_expr()
        n_s, d_s = n_t.subs(T, other_var), d_t.subs(T, other_var)
        expr = n_t * d_s + n_s * d_t if plus else n_t * d_s - n_s * d_t
        return Poly(expr, T, other_var, domain=QQ)

    # === Arithmetic ===

    def _coerce(self, other) -> 'RationalFunction':
        if isinstance(other, RationalFunction):
            return other
        return RationalFunction.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        return RationalFunction.from_polys(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunction.from_polys(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("Division by the zero rational function")
        return RationalFunction.from_polys(self.numerator * other.denominator, self.denominator * other.numerator)

    def derivative(self) -> 'RationalFunction':
        n, d = self.numerator, self.denominator
        return RationalFunction.from_polys(n.diff(T) * d - n * d.diff(T), d * d)

    # === Display ===

    def to_text(self) -> str:
        """Canonical text accepted back by the parser, with ^ for powers."""
        num = str(self.numerator.as_expr()).replace('**', '^')
        if self.is_polynomial():
            return num
        den = str(self.denominator.as_expr()).replace('**', '^')
        if len(self.numerator.terms()) > 1:
            num = f"({num})"
        return f"{num}/({den})"

    def __str__(self) -> str:
        return self.to_text()
