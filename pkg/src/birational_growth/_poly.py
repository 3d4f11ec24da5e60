"""Polynomials over the exact fields.

Three shapes are used throughout the package:

* :class:`UPoly`, dense univariate, lowest degree first;
* :class:`HPoly`, sparse homogeneous in ``x0, x1, x2``;
* :class:`APoly`, sparse affine in ``x, y`` (the chart ``x0 = 1``).

All of them are immutable by convention and carry the field they live over,
which may be a :class:`~birational_growth._field.NumberField` or a prime
field from :mod:`birational_growth._modular`.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import toolz

from ._errors import NotDivisible, DegreeMismatch, ResourceLimit, InvalidParameter

DEFAULT_TERM_CAP = 200_000


# ---------------------------------------------------------------------------
# univariate

class UPoly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        coeffs = [c if getattr(c, "field", None) is field else field.coerce(c) for c in coeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def x(cls, field):
        return cls(field, [field.zero, field.one])

    @classmethod
    def constant(cls, field, value):
        return cls(field, [field.coerce(value)])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def _coerce(self, other):
        if isinstance(other, UPoly):
            return other
        try:
            return UPoly(self.field, [self.field.coerce(other)])
        except (InvalidParameter, TypeError, ValueError):
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(self.field, [self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(self.field, [self[i] - other[i] for i in range(n)])

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return UPoly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UPoly(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return UPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        result = UPoly(self.field, [self.field.one])
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        inv = 1 / other.lc
        dq = len(rem) - len(other.coeffs)
        quot = [self.field.zero] * max(dq + 1, 0)
        for shift in range(dq, -1, -1):
            c = rem[shift + other.degree]
            if c:
                factor = c * inv
                quot[shift] = factor
                for i, b in enumerate(other.coeffs):
                    rem[shift + i] = rem[shift + i] - factor * b
        return UPoly(self.field, quot), UPoly(self.field, rem[:max(other.degree, 0)])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise NotDivisible(f"{other} does not divide {self}", witness=r)
        return q

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        other = self._coerce(other)
        return other is not None and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, value):
        """Horner evaluation; ``value`` may be a field element or another polynomial."""
        acc = self.field.zero if not isinstance(value, UPoly) else UPoly(self.field)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def monic(self):
        if not self.coeffs:
            return self
        inv = 1 / self.lc
        return UPoly(self.field, [c * inv for c in self.coeffs])

    def derivative(self):
        return UPoly(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def shift(self, c):
        """The polynomial ``p(x + c)``."""
        return self(UPoly(self.field, [self.field.coerce(c), self.field.one]))

    def valuation(self):
        """Multiplicity of the root 0."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def to_json(self):
        return [c.to_json() for c in self.coeffs]

    def __repr__(self):
        return f"UPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else "x" if i == 1 else f"x^{i}"
            text = str(c)
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append(f"-{mono}")
            elif mono:
                parts.append(f"({text})*{mono}" if (" " in text) else f"{text}*{mono}")
            else:
                parts.append(f"({text})" if " " in text else text)
        return " + ".join(parts).replace("+ -", "- ")


def upoly_gcd(a, b):
    """Monic greatest common divisor of two univariate polynomials (zero if both are)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def upoly_from_fractions(field, values):
    return UPoly(field, [field.rational(v) for v in values])


# ---------------------------------------------------------------------------
# sparse multivariate helpers shared by HPoly and APoly

def _add_terms(a, b, sign=1):
    out = dict(a)
    for e, c in b.items():
        prev = out.get(e)
        value = (c if sign > 0 else -c) if prev is None else (prev + c if sign > 0 else prev - c)
        if value:
            out[e] = value
        else:
            out.pop(e, None)
    return out


def _mul_terms(a, b, term_cap=None):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            prev = out.get(e)
            out[e] = ca * cb if prev is None else prev + ca * cb
    out = {e: c for e, c in out.items() if c}
    if term_cap is not None and len(out) > term_cap:
        raise ResourceLimit(f"intermediate polynomial has {len(out)} terms (cap {term_cap})")
    return out


def _divide_terms(a, b, order_key):
    """Exact sparse division; raises NotDivisible with the first obstructing term."""
    if not b:
        raise NotDivisible("division by the zero polynomial")
    lead_b = max(b, key=order_key)
    inv = 1 / b[lead_b]
    rem = dict(a)
    quot = {}
    while rem:
        lead = max(rem, key=order_key)
        q_exp = tuple(x - y for x, y in zip(lead, lead_b))
        if min(q_exp) < 0:
            raise NotDivisible("exact division left a remainder", witness=(lead, rem[lead]))
        qc = rem[lead] * inv
        quot[q_exp] = qc
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(q_exp, eb))
            value = rem.get(e)
            value = -(qc * cb) if value is None else value - qc * cb
            if value:
                rem[e] = value
            else:
                rem.pop(e, None)
    return quot


def _pow_terms(terms, exponent, one, term_cap=None):
    result = {tuple(0 for _ in next(iter(terms))) if terms else (0,): one}
    base = terms
    while exponent:
        if exponent & 1:
            result = _mul_terms(result, base, term_cap)
        exponent >>= 1
        if exponent:
            base = _mul_terms(base, base, term_cap)
    return result


# ---------------------------------------------------------------------------
# homogeneous polynomials in x0, x1, x2

def _grlex(e):
    return e


class HPoly:
    """A homogeneous polynomial in ``x0, x1, x2``.

    Terms map exponent triples to nonzero coefficients. The zero polynomial
    keeps a nominal degree so that it can still be added to forms of that
    degree.
    """

    __slots__ = ("field", "terms", "degree")

    def __init__(self, field, terms, degree=None):
        terms = {tuple(e): c for e, c in terms.items() if c}
        degrees = {sum(e) for e in terms}
        if len(degrees) > 1:
            raise DegreeMismatch(f"terms of degrees {sorted(degrees)} in one homogeneous polynomial")
        if degrees:
            (actual,) = degrees
            if degree is not None and degree != actual:
                raise DegreeMismatch(f"declared degree {degree}, terms have degree {actual}")
            degree = actual
        self.field = field
        self.terms = terms
        self.degree = 0 if degree is None else degree

    @classmethod
    def variable(cls, field, i):
        e = [0, 0, 0]
        e[i] = 1
        return cls(field, {tuple(e): field.one})

    @classmethod
    def constant(cls, field, value=1):
        return cls(field, {(0, 0, 0): field.coerce(value)})

    @classmethod
    def linear(cls, field, coefficients):
        """The form ``l0*x0 + l1*x1 + l2*x2``."""
        terms = {}
        for i, c in enumerate(coefficients):
            e = [0, 0, 0]
            e[i] = 1
            terms[tuple(e)] = field.coerce(c)
        return cls(field, terms, 1)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def _check(self, other):
        if not other.is_zero() and not self.is_zero() and other.degree != self.degree:
            raise DegreeMismatch(f"cannot add forms of degrees {self.degree} and {other.degree}")

    def _sum_degree(self, other):
        self._check(other)
        return other.degree if self.is_zero() else self.degree

    def __add__(self, other):
        return HPoly(self.field, _add_terms(self.terms, other.terms), self._sum_degree(other))

    def __sub__(self, other):
        return HPoly(self.field, _add_terms(self.terms, other.terms, -1), self._sum_degree(other))

    def __neg__(self):
        return HPoly(self.field, {e: -c for e, c in self.terms.items()}, self.degree)

    def __mul__(self, other):
        if isinstance(other, HPoly):
            return HPoly(self.field, _mul_terms(self.terms, other.terms), self.degree + other.degree)
        c = self.field.coerce(other)
        return HPoly(self.field, {e: v * c for e, v in self.terms.items()}, self.degree)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent == 0:
            return HPoly.constant(self.field)
        return HPoly(self.field, _pow_terms(self.terms, exponent, self.field.one), self.degree * exponent)

    def __eq__(self, other):
        return isinstance(other, HPoly) and self.terms == other.terms and (
            self.degree == other.degree or not self.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __call__(self, *point):
        return self.evaluate(point)

    def evaluate(self, point):
        """Value at a coordinate triple (of field elements or anything that multiplies with them)."""
        total = None
        powers = [{} for _ in range(3)]
        for e, c in self.terms.items():
            value = c
            for i in range(3):
                if e[i]:
                    cache = powers[i]
                    if e[i] not in cache:
                        cache[e[i]] = point[i] ** e[i]
                    value = value * cache[e[i]]
            total = value if total is None else total + value
        return self.field.zero if total is None else total

    def leading_term(self):
        """Exponent and coefficient of the grlex-largest term (x0 > x1 > x2)."""
        e = max(self.terms, key=_grlex)
        return e, self.terms[e]

    def normalized(self):
        """Scalar multiple with grlex leading coefficient one."""
        if self.is_zero():
            return self
        return self * (1 / self.leading_term()[1])

    def partial(self, i):
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                terms[tuple(f)] = c * e[i]
        return HPoly(self.field, terms, max(self.degree - 1, 0))

    def variable_valuation(self, i):
        """Largest power of ``x_i`` dividing the polynomial."""
        return min((e[i] for e in self.terms), default=0)

    def divide_variable(self, i, k):
        terms = {}
        for e, c in self.terms.items():
            f = list(e)
            f[i] -= k
            terms[tuple(f)] = c
        return HPoly(self.field, terms, self.degree - k)

    def dehomogenize(self):
        """Restriction to the chart ``x0 = 1`` as an APoly in ``x = x1, y = x2``."""
        terms = {}
        for e, c in self.terms.items():
            key = (e[1], e[2])
            prev = terms.get(key)
            terms[key] = c if prev is None else prev + c
        return APoly(self.field, terms)

    def map_coefficients(self, fn, field):
        return HPoly(field, {e: fn(c) for e, c in self.terms.items()}, self.degree)

    def variables(self):
        return {i for e in self.terms for i in range(3) if e[i]}

    def to_json(self):
        return [[e[0], e[1], e[2], c.to_json()] for e, c in sorted(self.terms.items(), reverse=True)]

    def __repr__(self):
        return f"HPoly({self})"

    def __str__(self):
        return _format_terms(self.terms, ("x0", "x1", "x2"))


def _format_terms(terms, names):
    if not terms:
        return "0"
    parts = []
    for e, c in sorted(terms.items(), key=lambda item: (sum(item[0]), item[0]), reverse=True):
        mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
        text = str(c)
        if " " in text:
            text = f"({text})"
        if not mono:
            parts.append(text)
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append(f"-{mono}")
        else:
            parts.append(f"{text}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


def _apoly_key(e):
    return (e[0] + e[1], e[0], e[1])


class APoly:
    """A polynomial in the affine coordinates ``x, y``."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms):
        self.field = field
        self.terms = {tuple(e): c for e, c in terms.items() if c}

    @classmethod
    def constant(cls, field, value=1):
        return cls(field, {(0, 0): field.coerce(value)})

    @classmethod
    def x(cls, field):
        return cls(field, {(1, 0): field.one})

    @classmethod
    def y(cls, field):
        return cls(field, {(0, 1): field.one})

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(e == (0, 0) for e in self.terms)

    @property
    def degree(self):
        return max((e[0] + e[1] for e in self.terms), default=-1)

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=-1)

    def _coerce(self, other):
        if isinstance(other, APoly):
            return other
        return APoly.constant(self.field, other)

    def __add__(self, other):
        return APoly(self.field, _add_terms(self.terms, self._coerce(other).terms))

    __radd__ = __add__

    def __sub__(self, other):
        return APoly(self.field, _add_terms(self.terms, self._coerce(other).terms, -1))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return APoly(self.field, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, APoly):
            return APoly(self.field, _mul_terms(self.terms, other.terms))
        c = self.field.coerce(other)
        return APoly(self.field, {e: v * c for e, v in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent == 0 or self.is_zero():
            return APoly.constant(self.field, 1 if exponent == 0 else 0)
        return APoly(self.field, _pow_terms(self.terms, exponent, self.field.one))

    def __eq__(self, other):
        if isinstance(other, APoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __call__(self, x, y):
        total = self.field.zero
        for (ex, ey), c in self.terms.items():
            total = total + c * (x ** ex) * (y ** ey)
        return total

    def leading_term(self):
        e = max(self.terms, key=_apoly_key)
        return e, self.terms[e]

    def normalized(self):
        if self.is_zero():
            return self
        return self * (1 / self.leading_term()[1])

    def partial(self, i):
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                terms[tuple(f)] = c * e[i]
        return APoly(self.field, terms)

    def homogenize(self, degree=None):
        """The form of degree ``degree`` (default: total degree) restricting to this polynomial."""
        degree = self.degree if degree is None else degree
        if self.terms and degree < self.degree:
            raise DegreeMismatch(f"cannot homogenize degree {self.degree} to {degree}")
        return HPoly(self.field, {(degree - ex - ey, ex, ey): c for (ex, ey), c in self.terms.items()},
                     max(degree, 0))

    def div_exact(self, other):
        return APoly(self.field, _divide_terms(self.terms, other.terms, _apoly_key))

    def map_coefficients(self, fn, field):
        return APoly(field, {e: fn(c) for e, c in self.terms.items()})

    def to_json(self):
        return [[e[0], e[1], c.to_json()] for e, c in sorted(self.terms.items(), key=lambda t: _apoly_key(t[0]),
                                                             reverse=True)]

    def __repr__(self):
        return f"APoly({self})"

    def __str__(self):
        return _format_terms(self.terms, ("x", "y"))


# ---------------------------------------------------------------------------
# gcd, exact division and substitution

def poly_div_exact(a, b):
    """
    Exact quotient ``a / b`` of homogeneous (or affine) polynomials.

    Raises
    ------
    NotDivisible
        With ``witness`` set to the first leading term the divisor cannot clear.
    """
    if isinstance(a, APoly):
        return a.div_exact(b)
    if b.is_zero():
        raise NotDivisible("division by the zero polynomial")
    if a.is_zero():
        return HPoly(a.field, {}, max(a.degree - b.degree, 0))
    return HPoly(a.field, _divide_terms(a.terms, b.terms, _grlex), a.degree - b.degree)


def _x_major(p):
    """Split an APoly as a polynomial in x with coefficients in K[y]."""
    rows = toolz.groupby(lambda item: item[0][0], p.terms.items())
    out = {}
    for ex, items in rows.items():
        degree = max(e[1] for e, _ in items)
        coeffs = [p.field.zero] * (degree + 1)
        for (_, ey), c in items:
            coeffs[ey] = c
        out[ex] = UPoly(p.field, coeffs)
    return out


def _from_x_major(field, rows):
    terms = {}
    for ex, poly in rows.items():
        for ey, c in enumerate(poly.coeffs):
            if c:
                terms[(ex, ey)] = c
    return APoly(field, terms)


def _content(rows):
    return toolz.reduce(upoly_gcd, rows.values())


def _primitive(rows):
    content = _content(rows)
    return content, {k: v.exact_div(content) for k, v in rows.items()}


def _pseudo_remainder(a, b):
    db = max(b)
    lcb = b[db]
    rem = {k: v for k, v in a.items() if not v.is_zero()}
    while rem and max(rem) >= db:
        dr = max(rem)
        lcr = rem[dr]
        shift = dr - db
        rem = {k: v * lcb for k, v in rem.items()}
        for k, v in b.items():
            rem[k + shift] = rem.get(k + shift, UPoly(lcb.field)) - lcr * v
        rem = {k: v for k, v in rem.items() if not v.is_zero()}
    return rem


def apoly_gcd(a, b):
    """Greatest common divisor of affine polynomials, grlex leading coefficient one.

    Primitive pseudo-remainder sequence in K[y][x]; contents are univariate
    gcds in K[y].
    """
    field = a.field
    if a.is_zero():
        return b.normalized()
    if b.is_zero():
        return a.normalized()
    ra, rb = _x_major(a), _x_major(b)
    ca, pa = _primitive(ra)
    cb, pb = _primitive(rb)
    content = upoly_gcd(ca, cb)
    if max(pa) == 0 or max(pb) == 0:
        g = {0: UPoly(field, [field.one])}
    else:
        if max(pa) < max(pb):
            pa, pb = pb, pa
        while True:
            r = _pseudo_remainder(pa, pb)
            if not r:
                g = pb
                break
            if max(r) == 0:
                g = {0: UPoly(field, [field.one])}
                break
            pa, pb = pb, _primitive(r)[1]
        g = _primitive(g)[1]
    result = _from_x_major(field, {k: v * content for k, v in g.items()})
    return result.normalized()


def poly_gcd(a, b):
    """
    Greatest common divisor of two homogeneous polynomials.

    The result is homogeneous and normalised to grlex leading coefficient one;
    ``poly_gcd(a, 0)`` is ``a`` normalised. Affine and univariate inputs are
    dispatched to :func:`apoly_gcd` and :func:`upoly_gcd`.
    """
    if isinstance(a, UPoly):
        return upoly_gcd(a, b)
    if isinstance(a, APoly):
        return apoly_gcd(a, b)
    if a.is_zero():
        return b.normalized()
    if b.is_zero():
        return a.normalized()
    ka, kb = a.variable_valuation(0), b.variable_valuation(0)
    da = a.divide_variable(0, ka).dehomogenize()
    db = b.divide_variable(0, kb).dehomogenize()
    g = apoly_gcd(da, db).homogenize()
    k = min(ka, kb)
    if k:
        g = g * (HPoly.variable(a.field, 0) ** k)
    return g.normalized()


def poly_subst(c, fx, fy, fz, term_cap=DEFAULT_TERM_CAP):
    """
    Substitute three forms of a common degree into a homogeneous polynomial.

    Returns ``c(fx, fy, fz)``, homogeneous of degree ``deg c * deg fx``.

    Raises
    ------
    DegreeMismatch
        If the substituted forms do not share a degree.
    ResourceLimit
        If an intermediate product exceeds ``term_cap`` terms.
    """
    forms = (fx, fy, fz)
    nonzero_degrees = {f.degree for f in forms if not f.is_zero()}
    if len(nonzero_degrees) > 1:
        raise DegreeMismatch(f"substituted forms have degrees {sorted(nonzero_degrees)}")
    d = nonzero_degrees.pop() if nonzero_degrees else fx.degree
    field = c.field
    target = c.degree * d
    f2_powers = [{(0, 0, 0): field.one}]

    def f2_power(k):
        while len(f2_powers) <= k:
            f2_powers.append(_mul_terms(f2_powers[-1], fz.terms, term_cap))
        return f2_powers[k]

    def scaled(terms, coeff):
        return {e: v * coeff for e, v in terms.items()}

    def inner(group):
        # Horner in fy over the terms x1^e1 x2^e2 of one x0-slice
        by_e1 = {e1: (e2, coeff) for (_, e1, e2), coeff in group}
        acc = {}
        for e1 in range(max(by_e1), -1, -1):
            acc = _mul_terms(acc, fy.terms, term_cap) if acc else acc
            if e1 in by_e1:
                e2, coeff = by_e1[e1]
                acc = _add_terms(acc, scaled(f2_power(e2), coeff))
        return acc

    slices = toolz.groupby(lambda item: item[0][0], c.terms.items())
    total = {}
    for e0 in range(max(slices, default=-1), -1, -1):
        total = _mul_terms(total, fx.terms, term_cap) if total else total
        if e0 in slices:
            total = _add_terms(total, inner(slices[e0]))
        if len(total) > term_cap:
            raise ResourceLimit(f"substitution result has {len(total)} terms (cap {term_cap})")
    return HPoly(field, total, target)


def apoly_subst(p, fx, fy):
    """Substitute affine polynomials for ``x`` and ``y``."""
    field = p.field
    total = APoly(field, {})
    xs, ys = {0: APoly.constant(field)}, {0: APoly.constant(field)}
    for (ex, ey), c in p.terms.items():
        if ex not in xs:
            xs[ex] = fx ** ex
        if ey not in ys:
            ys[ey] = fy ** ey
        total = total + xs[ex] * ys[ey] * c
    return total


# ---------------------------------------------------------------------------
# univariate structure: squarefree parts, real roots, cyclotomic factors

def squarefree_part(p):
    return p.exact_div(upoly_gcd(p, p.derivative())).monic()


def _yun(p):
    """Yun's squarefree factorisation of a monic polynomial (characteristic zero)."""
    out = []
    d = p.derivative()
    a = upoly_gcd(p, d)
    b = p.exact_div(a)
    c = d.exact_div(a)
    i = 1
    while b.degree > 0:
        c = c - b.derivative()
        factor = upoly_gcd(b, c)
        if factor.degree > 0:
            out.append((factor, i))
        b = b.exact_div(factor)
        c = c.exact_div(factor)
        i += 1
    return out


def squarefree_decomp(p):
    """
    Split ``p`` into pairwise coprime squarefree factors with multiplicities.

    Each squarefree part is further split into its power of ``x``, its
    cyclotomic components and the remainder, so that roots of unity of
    different orders end up in different factors.

    Returns
    -------
    list of (UPoly, int)
        Monic factors; the product of ``f**k`` equals ``p`` up to a constant.
    """
    if p.degree <= 0:
        return []
    field = p.field
    out = []
    x = UPoly.x(field)
    for part, multiplicity in _yun(p.monic()):
        rest = part
        if not rest[0]:
            out.append((x, multiplicity))
            rest = rest.exact_div(x)
        n = 1
        bound = 2 * rest.degree * rest.degree + 2
        while rest.degree > 0 and n <= bound:
            if euler_phi(n) <= rest.degree:
                g = upoly_gcd(rest, cyclotomic_polynomial(n, field))
                if g.degree > 0:
                    out.append((g, multiplicity))
                    rest = rest.exact_div(g)
            n += 1
        if rest.degree > 0:
            out.append((rest.monic(), multiplicity))
    return sorted(out, key=lambda item: (item[0].degree, [str(c) for c in item[0].coeffs], item[1]))


@lru_cache(maxsize=None)
def euler_phi(n):
    import sympy

    return int(sympy.totient(n))


@lru_cache(maxsize=None)
def _cyclotomic_integers(n):
    import sympy

    x = sympy.Symbol("x")
    return tuple(int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()))


def cyclotomic_polynomial(n, field):
    """The n-th cyclotomic polynomial over ``field``."""
    return UPoly(field, [field.rational(c) for c in _cyclotomic_integers(n)])


def cyclotomic_test(p):
    """
    Decide whether a squarefree rational polynomial divides ``x^N - 1``.

    Returns
    -------
    int or None
        The least such ``N`` (the lcm of the orders of the cyclotomic factors),
        or None when some factor is not cyclotomic or ``x`` divides ``p``.
    """
    if p.degree <= 0 or not p[0]:
        return None
    rest = p.monic()
    orders = []
    n = 1
    bound = 2 * p.degree * p.degree + 2
    while rest.degree > 0 and n <= bound:
        if euler_phi(n) <= rest.degree:
            phi = cyclotomic_polynomial(n, p.field)
            q, r = divmod(rest, phi)
            if r.is_zero():
                orders.append(n)
                rest = q
        n += 1
    if rest.degree > 0:
        return None
    order = math.lcm(*orders)
    field = p.field
    target = UPoly(field, [field.rational(-1)] + [field.zero] * (order - 1) + [field.one])
    if not (target % p).is_zero():
        return None
    return order


@dataclass(frozen=True)
class Interval:
    """A half-open rational interval ``(lo, hi]``."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def midpoint(self):
        return (self.lo + self.hi) / 2

    def contains(self, value):
        return self.lo < value <= self.hi

    def to_json(self):
        return {"lo": str(self.lo), "hi": str(self.hi)}


def _rational_coefficients(p):
    return [c.to_fraction() for c in p.coeffs]


def _eval_fraction(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def sturm_chain(p):
    """Sturm sequence of a rational polynomial as lists of Fractions."""
    field = p.field
    chain = [p, p.derivative()]
    while not chain[-1].is_zero():
        r = chain[-2] % chain[-1]
        if r.is_zero():
            break
        chain.append(-r)
    return [_rational_coefficients(q) for q in chain if not q.is_zero()]


def _sign_variations(chain, x):
    signs = [v for v in (_eval_fraction(q, x) for q in chain) if v]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a < 0) != (b < 0))


def sturm_isolate(p, lo, hi, width):
    """
    Isolate the real roots of a squarefree rational polynomial in ``(lo, hi]``.

    Parameters
    ----------
    p : UPoly
        Squarefree, rational coefficients.
    lo, hi : Fraction
    width : Fraction
        Maximal width of the returned intervals.

    Returns
    -------
    list of Interval
        Disjoint, each containing exactly one root, sorted by position.
    """
    lo, hi, width = Fraction(lo), Fraction(hi), Fraction(width)
    if width <= 0:
        raise InvalidParameter("isolation width must be positive")
    if p.degree <= 0 or hi <= lo:
        return []
    chain = sturm_chain(p)
    found = []
    stack = [(lo, hi, _sign_variations(chain, lo), _sign_variations(chain, hi))]
    while stack:
        a, b, va, vb = stack.pop()
        count = va - vb
        if count <= 0:
            continue
        if count == 1 and b - a <= width:
            found.append(Interval(a, b))
            continue
        mid = (a + b) / 2
        vm = _sign_variations(chain, mid)
        stack.append((a, mid, va, vm))
        stack.append((mid, b, vm, vb))
    return sorted(found, key=lambda interval: interval.lo)


def cauchy_bound(p):
    """An upper bound for the absolute values of the roots of a rational polynomial."""
    coeffs = _rational_coefficients(p)
    lead = abs(coeffs[-1])
    return 1 + max((abs(c) / lead for c in coeffs[:-1]), default=Fraction(0))
