"""Conversions to and from sympy, and factorisation over number fields.

Factoring over ``Q[a]/(m)`` follows the norm method: shift the squarefree
polynomial until its norm is squarefree, factor the norm over the rationals
with sympy, and pull each rational factor back with a gcd over the field.
"""
from fractions import Fraction
from functools import lru_cache
from tokenize import TokenError

import sympy
import toolz
from sympy.parsing.sympy_parser import parse_expr, standard_transformations, convert_xor

from ._errors import InvalidParameter, ParseError
from ._field import NumberField, as_fraction
from ._poly import UPoly, APoly, HPoly, upoly_gcd, squarefree_decomp

GENERATOR = sympy.Symbol("a")
LAMBDA = sympy.Symbol("lam")
X, Y = sympy.symbols("x y")
X0, X1, X2 = sympy.symbols("x0 x1 x2")
PARAMETER_SYMBOLS = {name: sympy.Symbol(name) for name in ("alpha0", "alpha1", "gamma0", "beta2", "omega")}


def elem_to_sympy(elem, gen=GENERATOR):
    return sum((sympy.Rational(c.numerator, c.denominator) * gen ** i
                for i, c in enumerate(elem.coeffs) if c), sympy.Integer(0))


@lru_cache(maxsize=None)
def modulus_to_sympy(field, gen=GENERATOR):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(field.modulus)], gen)


def sympy_to_elem(expr, field, gen=GENERATOR):
    """Reduce a polynomial expression in the generator modulo the field modulus."""
    expr = sympy.sympify(expr)
    if expr.free_symbols - {gen}:
        raise InvalidParameter(f"{expr} involves symbols other than {gen}")
    num, den = sympy.fraction(sympy.together(expr))
    num_elem = _poly_expr_to_elem(num, field, gen)
    if den == 1:
        return num_elem
    return num_elem / _poly_expr_to_elem(den, field, gen)


def _poly_expr_to_elem(expr, field, gen):
    poly = sympy.Poly(sympy.expand(expr), gen)
    coeffs = [sympy.Rational(c) for c in reversed(poly.all_coeffs())]
    return field.from_poly([Fraction(int(c.p), int(c.q)) for c in coeffs])


def upoly_to_sympy(p, var=LAMBDA, gen=GENERATOR):
    return sympy.expand(sum((elem_to_sympy(c, gen) * var ** i for i, c in enumerate(p.coeffs)),
                            sympy.Integer(0)))


def sympy_to_upoly(expr, field, var=LAMBDA, gen=GENERATOR):
    poly = sympy.Poly(sympy.expand(expr), var)
    coeffs = list(reversed(poly.all_coeffs()))
    return UPoly(field, [sympy_to_elem(c, field, gen) for c in coeffs])


def apoly_to_sympy(p, x=X, y=Y, gen=GENERATOR):
    return sum((elem_to_sympy(c, gen) * x ** ex * y ** ey for (ex, ey), c in p.terms.items()),
               sympy.Integer(0))


def sympy_to_apoly(expr, field, x=X, y=Y, gen=GENERATOR):
    expr = sympy.expand(expr)
    if expr == 0:
        return APoly(field, {})
    poly = sympy.Poly(expr, x, y)
    return APoly(field, {monom: sympy_to_elem(c, field, gen) for monom, c in poly.terms()})


def hpoly_to_sympy(p, names=(X0, X1, X2), gen=GENERATOR):
    return sum((elem_to_sympy(c, gen) * names[0] ** e[0] * names[1] ** e[1] * names[2] ** e[2]
                for e, c in p.terms.items()), sympy.Integer(0))


def sympy_to_hpoly(expr, field, names=(X0, X1, X2), gen=GENERATOR, degree=None):
    expr = sympy.expand(expr)
    if expr == 0:
        return HPoly(field, {}, degree)
    poly = sympy.Poly(expr, *names)
    return HPoly(field, {monom: sympy_to_elem(c, field, gen) for monom, c in poly.terms()}, degree)


def _rational_factor_list(p):
    """Irreducible factors over Q of a rational UPoly, as UPolys with multiplicities."""
    expr = upoly_to_sympy(p)
    _, factors = sympy.factor_list(expr, LAMBDA)
    out = []
    for factor, multiplicity in factors:
        if sympy.Poly(factor, LAMBDA).degree() > 0:
            out.append((sympy_to_upoly(factor, p.field).monic(), multiplicity))
    return out


def _shift_generator(p, s):
    """``p(lam - s*a)`` as a sympy expression in ``lam`` and ``a``."""
    return sympy.expand(upoly_to_sympy(p).subs(LAMBDA, LAMBDA - s * GENERATOR))


def _norm(p, s):
    field = p.field
    shifted = _shift_generator(p, s)
    return sympy.Poly(sympy.resultant(modulus_to_sympy(field).as_expr(), shifted, GENERATOR), LAMBDA)


def _factor_squarefree(p):
    """Irreducible monic factors of a squarefree polynomial over its number field."""
    field = p.field
    if p.degree <= 0:
        return []
    if p.degree == 1:
        return [p.monic()]
    if field.is_rationals:
        return [f for f, _ in _rational_factor_list(p)]
    for s in toolz.interleave([range(0, 64), range(-1, -64, -1)]):
        norm = _norm(p, s)
        if norm.is_sqf:
            break
    else:
        raise InvalidParameter(f"could not find a squarefree norm for {p}")
    shift = field.generator * s
    shifted = p.shift(-shift)
    factors = []
    for factor, _ in sympy.factor_list(norm.as_expr(), LAMBDA)[1]:
        if sympy.Poly(factor, LAMBDA).degree() <= 0:
            continue
        g = upoly_gcd(shifted, sympy_to_upoly(factor, field))
        if g.degree > 0:
            factors.append(g.shift(shift).monic())
    return factors


def factor_in_field(p):
    """
    Factor a univariate polynomial into monic irreducibles over its field.

    Returns
    -------
    list of (UPoly, int)
        Sorted by degree, then by coefficients.
    """
    if p.degree <= 0:
        return []
    out = []
    for part, multiplicity in squarefree_decomp(p):
        for factor in _factor_squarefree(part):
            out.append((factor, multiplicity))
    return sorted(out, key=lambda item: (item[0].degree, [str(c) for c in item[0].coeffs]))


def roots_in_field(p):
    """
    Roots of ``p`` lying in its field, and the irreducible factors without roots.

    Returns
    -------
    roots : list of (FieldElem, int)
        Each root with its multiplicity.
    rest : list of UPoly
        Irreducible factors of degree at least two.
    """
    roots, rest = [], []
    for factor, multiplicity in factor_in_field(p):
        if factor.degree == 1:
            roots.append((-factor[0] / factor[1], multiplicity))
        else:
            rest.append(factor)
    return roots, rest


def resultant_in_x(a, b):
    """Resultant with respect to ``x`` of two affine polynomials, as a UPoly in ``y``."""
    field = a.field
    res = sympy.resultant(apoly_to_sympy(a), apoly_to_sympy(b), X)
    res = sympy.expand(res)
    if res == 0:
        return UPoly(field)
    poly = sympy.Poly(res, Y)
    return UPoly(field, [sympy_to_elem(c, field) for c in reversed(poly.all_coeffs())])


def field_from_sympy(expr, gen=GENERATOR):
    """The number field defined by a polynomial expression in the generator."""
    poly = sympy.Poly(expr, gen)
    return NumberField([Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q))
                        for c in reversed(poly.all_coeffs())], name=str(gen))


_TRANSFORMATIONS = standard_transformations + (convert_xor,)


def parse_expression(text, field, variables=()):
    """
    Parse a fixture expression such as ``"(a^2 + 1)*x*y - 3/4"``.

    The field generator is written with the field's name (``a``, ``i``,
    ``w``); ``variables`` lists the polynomial variable names allowed besides
    it: ``x``, ``y``, ``x0``, ``x1``, ``x2`` or a family parameter name
    such as ``alpha1`` or ``omega``.

    Raises
    ------
    ParseError
        If the text is not an expression or uses unknown names.
    """
    symbols = {"x": X, "y": Y, "x0": X0, "x1": X1, "x2": X2, **PARAMETER_SYMBOLS}
    local = {name: symbols[name] for name in variables}
    local[field.name] = GENERATOR
    try:
        expr = parse_expr(text, local_dict=local, transformations=_TRANSFORMATIONS)
    except (SyntaxError, TokenError, TypeError, ValueError, sympy.SympifyError) as exc:
        raise ParseError(f"cannot parse expression {text!r}: {exc}") from exc
    unknown = expr.free_symbols - set(local.values())
    if unknown:
        names = ", ".join(sorted(str(s) for s in unknown))
        raise ParseError(f"unknown names {names} in {text!r}")
    return expr


def coefficient_from_json(value, field):
    """A field element from a rational string, a power-basis list or an expression in the generator."""
    if isinstance(value, (list, tuple, int)):
        return field.coerce(value)
    if not isinstance(value, str):
        raise ParseError(f"expected a coefficient, got {value!r}")
    try:
        return field.rational(as_fraction(value))
    except InvalidParameter:
        return sympy_to_elem(parse_expression(value, field), field)


def apoly_from_text(text, field):
    """An affine polynomial in ``x, y`` from an expression string."""
    expr = parse_expression(text, field, ("x", "y"))
    num, den = sympy.fraction(sympy.together(expr))
    if den.free_symbols & {X, Y}:
        raise ParseError(f"{text!r} is not a polynomial in x and y")
    return sympy_to_apoly(sympy.expand(num), field) * (1 / sympy_to_elem(den, field))


def rational_from_text(text, field):
    """Numerator and denominator, as affine polynomials, of a rational expression in ``x, y``."""
    expr = parse_expression(text, field, ("x", "y"))
    num, den = sympy.fraction(sympy.together(expr))
    return sympy_to_apoly(sympy.expand(num), field), sympy_to_apoly(sympy.expand(den), field)
