# ============================================================================
# algebra/literals.py - Text encodings of F_q elements, polynomials and moduli
# ============================================================================

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

from algebra.field import GENERATOR_SYMBOL, FieldCtx
from algebra.polynomial import VARIABLE, Poly
from utils.errors import LiteralError

_T = sympy.Symbol(VARIABLE)
_G = sympy.Symbol(GENERATOR_SYMBOL)
_TRANSFORMATIONS = standard_transformations + (convert_xor, implicit_multiplication_application)


def _terms(text: str):
    """Parse text into ((deg_T, deg_g), integer coefficient) pairs"""
    try:
        expr = parse_expr(text, local_dict={VARIABLE: _T, GENERATOR_SYMBOL: _G},
                          global_dict={'Integer': sympy.Integer, 'Symbol': sympy.Symbol},
                          transformations=_TRANSFORMATIONS)
        poly = sympy.Poly(sympy.expand(expr), _T, _G)
    except Exception as e:
        raise LiteralError(f"cannot parse literal '{text}': {e}") from e

    terms = []
    for (dt, dg), c in poly.terms():
        if not c.is_Integer:
            raise LiteralError(f"non-integer coefficient {c} in '{text}'")
        terms.append(((int(dt), int(dg)), int(c)))
    return terms


def _generator_power(field: FieldCtx, k: int, text: str) -> int:
    if k == 0:
        return 1
    if field.r == 1:
        raise LiteralError(f"generator '{GENERATOR_SYMBOL}' used in prime field literal '{text}'")
    return field.pow(field.generator, k)


def parse_element(text: str, field: FieldCtx) -> int:
    """Parse an F_q literal: '2' in prime fields, 'g+1' in extension fields"""
    value = 0
    for (dt, dg), c in _terms(text):
        if dt:
            raise LiteralError(f"'{VARIABLE}' is not allowed in field element '{text}'")
        value = field.add(value, field.mul(field.element(c), _generator_power(field, dg, text)))
    return value


def parse_poly(text: str, field: FieldCtx) -> Poly:
    """Parse a polynomial literal in T, e.g. 'T^2+2*T+1' or '(g+1)*T+g'"""
    terms = _terms(text)
    degree = max((dt for (dt, _), _ in terms), default=0)
    coeffs = [0] * (degree + 1)
    for (dt, dg), c in terms:
        coeffs[dt] = field.add(coeffs[dt], field.mul(field.element(c), _generator_power(field, dg, text)))
    return Poly(field, coeffs)


def _split_multiplicity(part: str):
    """Split 'root^mult' at the last '^' outside parentheses; no such '^' means mult 1"""
    depth = 0
    for i in range(len(part) - 1, -1, -1):
        ch = part[i]
        if ch == ')':
            depth += 1
        elif ch == '(':
            depth -= 1
        elif ch == '^' and depth == 0:
            return part[:i], part[i + 1:]
    return part, '1'


def parse_factored(text: str, field: FieldCtx):
    """Parse 'root^mult,root^mult,...' into (root, multiplicity) pairs.

    The last top-level '^' of a factor starts its multiplicity, so a root
    with a power must carry one explicitly ('g^2^1') or be parenthesized ('(g^2)').
    """
    factors = []
    for part in text.split(','):
        part = part.strip()
        if not part:
            raise LiteralError(f"empty factor in modulus '{text}'")
        root_text, mult_text = _split_multiplicity(part)
        try:
            mult = int(mult_text)
        except ValueError as e:
            raise LiteralError(f"bad multiplicity '{mult_text}' in '{text}'") from e
        factors.append((parse_element(root_text, field), mult))
    return factors


def is_coefficient_literal(text: str) -> bool:
    return VARIABLE in text
