# === File: src/curves/parser.py ===

"""
Grammar for rational expressions in t.

    expr     :: product [ ('+' | '-') product ]*
    product  :: unary [ ('*' | '/') unary ]*
    unary    :: ('+' | '-') unary | power
    power    :: atom [ ('^' | '**') exponent ]
    exponent :: ['+' | '-'] digits | '(' ['+' | '-'] digits ')'
    atom     :: digits | 't' | '(' expr ')'

Rational literals are written a/b. Parse actions build sympy expressions
directly, so the result is exact from the start.
"""

from functools import lru_cache

from pyparsing import (
    Combine, Forward, Group, Literal, Opt, ParseException, ParserElement,
    Suppress, Word, ZeroOrMore, nums, one_of,
)
from sympy import Expr, Integer, cancel

from src.curves.rational_function import RationalFunction
from src.exact.symbols import T
from src.exceptions import CurveSyntaxError, CurveValidationError
from src.logging_config import get_logger

logger = get_logger(__name__)


def _is_zero(expr: Expr) -> bool:
    return cancel(expr) == 0


def _power(tokens):
    items = tokens[0]
    base = items[0]
    if len(items) == 1:
        return base
    exponent = items[2]
    if exponent < 0 and _is_zero(base):
        raise CurveValidationError("Zero denominator: negative power of zero")
    return base ** exponent


def _negate(tokens):
    sign, value = tokens[0]
    return -value if sign == '-' else value


def _fold_product(tokens):
    items = tokens[0]
    value = items[0]
    for op, rhs in zip(items[1::2], items[2::2]):
        if op == '*':
            value = value * rhs
        elif _is_zero(rhs):
            raise CurveValidationError("Zero denominator: division by an expression equal to zero")
        else:
            value = value / rhs
    return value


def _fold_sum(tokens):
    items = tokens[0]
    value = items[0]
    for op, rhs in zip(items[1::2], items[2::2]):
        value = value + rhs if op == '+' else value - rhs
    return value


@lru_cache(maxsize=1)
def build_grammar() -> ParserElement:
    expr = Forward()

    integer = Word(nums).set_parse_action(lambda toks: Integer(toks[0]))
    variable = Literal('t').set_parse_action(lambda: T)
    atom = integer | variable | (Suppress('(') + expr + Suppress(')'))

    signed_digits = Combine(Opt(one_of('+ -')) + Word(nums))
    exponent = (signed_digits | (Suppress('(') + signed_digits + Suppress(')'))).set_parse_action(
        lambda toks: int(toks[0]))
    power = Group(atom + Opt((Literal('**') | Literal('^')) + exponent)).set_parse_action(_power)

    unary = Forward()
    unary <<= Group(one_of('+ -') + unary).set_parse_action(_negate) | power

    product = Group(unary + ZeroOrMore(one_of('* /') + unary)).set_parse_action(_fold_product)
    expr <<= Group(product + ZeroOrMore(one_of('+ -') + product)).set_parse_action(_fold_sum)
    return expr


def parse_expression(text: str, label: str = 'expression') -> RationalFunction:
    """
    Parse one rational expression in t.

    Args:
        text: input such as "t^2/(t^2-11*t+30)"
        label: name used in error messages ("r", "theta")

    Returns:
        Canonical coprime RationalFunction

    Raises:
        CurveSyntaxError: the text does not follow the grammar; position is 1-based
        CurveValidationError: a divisor simplifies to zero
    """
    try:
        result = build_grammar().parse_string(text, parse_all=True)
    except ParseException as e:
        logger.debug(f"Parse failure in {label} at offset {e.loc}: {e.msg}")
        raise CurveSyntaxError(f"Invalid {label} expression: {e.msg}", e.loc + 1, text) from e
    return RationalFunction.from_expr(result[0])
