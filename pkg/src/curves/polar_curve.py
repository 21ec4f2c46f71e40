# === File: src/curves/polar_curve.py ===

"""
Validated rational polar parametrizations phi(t) = (r(t), theta(t)).
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from sympy import Poly

from src.curves.parser import parse_expression
from src.curves.rational_function import RationalFunction
from src.exact.polynomials import gcd_poly
from src.exact.symbols import S, T
from src.exceptions import CurveValidationError
from src.logging_config import get_logger

logger = get_logger(__name__)

CONSTANT_COMPONENT_MESSAGE = (
    "{name} is constant: the curve is either a real circle centered at the origin "
    "or a line through the origin, and is not analyzed"
)


@dataclass(frozen=True)
class PolarCurve:
    """
    phi(t) = (A(t)/B(t), C(t)/D(t)) with gcd(A, B) = gcd(C, D) = 1.
    """
    r: RationalFunction
    theta: RationalFunction

    @property
    def A(self) -> Poly:
        return self.r.numerator

    @property
    def B(self) -> Poly:
        return self.r.denominator

    @property
    def C(self) -> Poly:
        return self.theta.numerator

    @property
    def D(self) -> Poly:
        return self.theta.denominator

    @property
    def texts(self) -> Tuple[str, str]:
        """Canonical (r, theta) texts; equal curves give equal texts."""
        return self.r.to_text(), self.theta.to_text()

    def numeric(self, ts) -> Tuple[np.ndarray, np.ndarray]:
        return self.r.numeric(ts), self.theta.numeric(ts)

    def __str__(self) -> str:
        r_text, theta_text = self.texts
        return f"({r_text}, {theta_text})"


def check_proper(curve: PolarCurve) -> bool:
    """
    True iff gcd(num(r(t) - r(s)), num(theta(t) - theta(s))) = c*(t - s).

    Both numerators vanish on t = s, so the gcd always contains t - s; the
    parametrization is proper exactly when nothing else is shared.
    """
    alpha = curve.r.difference_numerator(S)
    beta_0 = curve.theta.difference_numerator(S)
    common = gcd_poly(alpha, beta_0, main_var=T)
    return common.total_degree() == 1


def make_curve(r: RationalFunction, theta: RationalFunction) -> PolarCurve:
    """
    Validate a pair of rational functions.

    Raises:
        CurveValidationError: constant component or improper parametrization
    """
    if r.is_constant():
        raise CurveValidationError(CONSTANT_COMPONENT_MESSAGE.format(name='r'))
    if theta.is_constant():
        raise CurveValidationError(CONSTANT_COMPONENT_MESSAGE.format(name='theta'))
    curve = PolarCurve(r, theta)
    if not check_proper(curve):
        logger.warning(f"Rejected improper parametrization {curve}")
        raise CurveValidationError(
            "The parametrization is not proper (phi(t) = phi(s) for infinitely many t != s); "
            "reparametrize it properly first"
        )
    return curve


def parse_curve(r_text: str, theta_text: str) -> PolarCurve:
    """
    Parse and validate (r, theta) given as text.

    Args:
        r_text: rational expression for r(t)
        theta_text: rational expression for theta(t)

    Returns:
        PolarCurve with canonical coprime components

    Raises:
        CurveSyntaxError: either text does not parse
        CurveValidationError: zero denominator, constant component, improper map
    """
    r = parse_expression(r_text, 'r')
    theta = parse_expression(theta_text, 'theta')
    curve = make_curve(r, theta)
    logger.info(f"Parsed curve {curve}")
    return curve
