"""Exact coefficient fields.

A :class:`NumberField` is the rationals extended by one root ``a`` of a monic
irreducible polynomial ``m``; elements are coefficient vectors in the power
basis ``1, a, ..., a^(deg m - 1)``. The rationals themselves are the field
with modulus ``x`` (so ``a = 0``).
"""
import math
from fractions import Fraction

from ._errors import ZeroInverse, ReducibleModulus, InvalidParameter


def as_fraction(value):
    """
    Convert an int, a Fraction or a string of the form ``"n"`` or ``"n/d"``.

    Parameters
    ----------
    value : int, Fraction or str

    Returns
    -------
    Fraction
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidParameter(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidParameter(f"not a rational number: {value!r}") from exc
    raise InvalidParameter(f"not a rational number: {value!r}")


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_divmod(a, b):
    """Quotient and remainder of Fraction coefficient lists (lowest degree first)."""
    a = _strip(a)
    b = _strip(b)
    quotient = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        factor = a[-1] / lead
        quotient[shift] = factor
        for i, c in enumerate(b):
            a[i + shift] -= factor * c
        a = _strip(a)
    return quotient, a


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _strip([x - y for x, y in zip(a, b)])


class NumberField:
    """The field Q[a]/(m(a)) for a monic irreducible ``m``.

    Irreducibility of ``m`` is the caller's promise; it is only detected when
    an inversion hits a proper factor (:class:`ReducibleModulus`).
    """

    __slots__ = ("modulus", "degree", "name", "zero", "one", "integral_modulus")

    def __init__(self, modulus=(0, 1), name="a"):
        coeffs = _strip(as_fraction(c) for c in modulus)
        if len(coeffs) < 2:
            raise InvalidParameter("the modulus of a number field must have degree >= 1")
        lead = coeffs[-1]
        self.modulus = tuple(c / lead for c in coeffs)
        self.degree = len(self.modulus) - 1
        self.name = name
        # integer coefficients of the monic modulus, when it has them
        self.integral_modulus = (tuple(int(c) for c in self.modulus)
                                 if all(c.denominator == 1 for c in self.modulus) else None)
        self.zero = FieldElem(self, (Fraction(0),) * self.degree)
        self.one = FieldElem(self, (Fraction(1),) + (Fraction(0),) * (self.degree - 1))

    # identity
    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("NumberField", self.modulus))

    def __repr__(self):
        if self.is_rationals:
            return "QQ"
        return f"NumberField({[str(c) for c in self.modulus]})"

    @property
    def is_rationals(self):
        return self.degree == 1

    @property
    def characteristic(self):
        return 0

    @property
    def generator(self):
        """The class of ``a``; for a degree-one modulus ``x + c`` this is ``-c``."""
        if self.degree == 1:
            return FieldElem(self, (-self.modulus[0],))
        return FieldElem(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.degree - 2))

    def __call__(self, value):
        return self.coerce(value)

    def coerce(self, value):
        """Embed ints, Fractions, rational strings or power-basis coefficient lists."""
        if isinstance(value, FieldElem):
            if value.field == self:
                return value
            if value.is_rational():
                return self.rational(value.coeffs[0])
            raise InvalidParameter(f"{value!r} does not belong to {self!r}")
        if isinstance(value, (list, tuple)):
            return self.from_poly([as_fraction(c) for c in value])
        return self.rational(as_fraction(value))

    def rational(self, value):
        value = Fraction(value)
        return FieldElem(self, (value,) + (Fraction(0),) * (self.degree - 1))

    def from_poly(self, coeffs):
        """Reduce an arbitrary polynomial in ``a`` modulo the field modulus."""
        coeffs = [Fraction(c) for c in coeffs]
        d = self.degree
        m = self.modulus
        for k in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[k]
            if c:
                for i in range(d):
                    coeffs[k - d + i] -= c * m[i]
        coeffs = coeffs[:d] + [Fraction(0)] * (d - len(coeffs))
        return FieldElem(self, tuple(coeffs))


class FieldElem:
    """An element of a :class:`NumberField`; immutable and hashable.

    Stored as integer numerators over one positive denominator, in lowest
    terms, so equal elements have equal representations.
    """

    __slots__ = ("field", "num", "den")

    def __init__(self, field, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        den = math.lcm(*(c.denominator for c in coeffs))
        self.field = field
        self.num = tuple(c.numerator * (den // c.denominator) for c in coeffs)
        self.den = den

    @classmethod
    def _make(cls, field, num, den):
        g = math.gcd(den, *num)
        if g != 1:
            num = tuple(n // g for n in num)
            den //= g
        elem = cls.__new__(cls)
        elem.field, elem.num, elem.den = field, tuple(num), den
        return elem

    @property
    def coeffs(self):
        """Power-basis coefficients as Fractions."""
        return tuple(Fraction(n, self.den) for n in self.num)

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.field is self.field or other.field == self.field:
                return other
            if other.is_rational():
                return self.field.rational(other.to_fraction())
            if self.is_rational():
                return NotImplemented
            raise InvalidParameter("cannot mix elements of different number fields")
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field.rational(other)
        return NotImplemented

    def _combine(self, other, sign):
        if self.den == other.den:
            num = tuple(x + sign * y for x, y in zip(self.num, other.num))
            return FieldElem._make(self.field, num, self.den)
        den = math.lcm(self.den, other.den)
        a, b = den // self.den, den // other.den
        return FieldElem._make(self.field, tuple(a * x + sign * b * y for x, y in zip(self.num, other.num)), den)

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self._combine(other, -1)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return FieldElem._make(self.field, tuple(-x for x in self.num), self.den)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        field = self.field
        den = self.den * other.den
        if field.degree == 1:
            return FieldElem._make(field, (self.num[0] * other.num[0],), den)
        m = field.integral_modulus
        if m is None:
            return field.from_poly(_poly_mul(self.coeffs, other.coeffs))
        d = field.degree
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(self.num):
            if x:
                for j, y in enumerate(other.num):
                    prod[i + j] += x * y
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                for i in range(d):
                    prod[k - d + i] -= c * m[i]
        return FieldElem._make(field, prod[:d], den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * field_inv(other)

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other * field_inv(self)

    def __pow__(self, exponent):
        if exponent < 0:
            return field_inv(self) ** (-exponent)
        result = self.field.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __bool__(self):
        return any(self.num)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            if other.field == self.field:
                return self.den == other.den and self.num == other.num
            return self.is_rational() and other.is_rational() and self.to_fraction() == other.to_fraction()
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational() and self.to_fraction() == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        return hash((self.field.modulus, self.num, self.den))

    def is_rational(self):
        return not any(self.num[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise InvalidParameter(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def to_json(self):
        """A rational string, or the list of power-basis coefficients."""
        if self.field.degree == 1:
            return str(self.coeffs[0])
        return [str(c) for c in self.coeffs]

    def __repr__(self):
        return f"FieldElem({self})"

    def __str__(self):
        if self.field.degree == 1 or self.is_rational():
            return str(self.coeffs[0])
        name = self.field.name
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                power = name if i == 1 else f"{name}^{i}"
                parts.append(power if c == 1 else f"-{power}" if c == -1 else f"({c})*{power}")
        return " + ".join(parts).replace("+ -", "- ")


QQ = NumberField((0, 1))


def field_inv(a):
    """
    Multiplicative inverse in Q[a]/(m) by the extended Euclidean algorithm.

    Parameters
    ----------
    a : FieldElem

    Returns
    -------
    FieldElem
        The unique ``b`` with ``a*b == 1``.

    Raises
    ------
    ZeroInverse
        If ``a`` is zero.
    ReducibleModulus
        If ``gcd(a, m)`` is a non-constant polynomial.
    """
    if not a:
        raise ZeroInverse("cannot invert zero")
    field = a.field
    if field.degree == 1:
        return FieldElem(field, (1 / a.coeffs[0],))
    r0, r1 = list(field.modulus), _strip(a.coeffs)
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if not r1:
            raise ReducibleModulus(f"modulus shares the factor {r0} with {a}", factor=r0)
    constant = r1[0]
    return field.from_poly([c / constant for c in s1])
