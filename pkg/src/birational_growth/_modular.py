"""Reduction modulo primes.

Two things live here: the prime field GF(p) with an element type that quacks
like :class:`~birational_growth._field.FieldElem` (so the generic polynomial
and orbit code runs unchanged over it), and the fast degree computation that
restricts a map to a random line and iterates on binary forms over GF(p).
"""
import math
import random
from fractions import Fraction

import sympy
import toolz

from ._errors import ZeroInverse, InvalidParameter, ResourceLimit, BadReduction
from ._field import NumberField
from ._utilities import log


PRIME_BITS = 61


class PrimeField:
    __slots__ = ("p", "zero", "one")

    def __init__(self, p):
        self.p = p
        self.zero = ModInt(self, 0)
        self.one = ModInt(self, 1)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    @property
    def is_rationals(self):
        return False

    @property
    def characteristic(self):
        return self.p

    def __call__(self, value):
        return self.coerce(value)

    def coerce(self, value):
        if isinstance(value, ModInt):
            return value
        return self.rational(value)

    def rational(self, value):
        value = Fraction(value)
        den = value.denominator % self.p
        if not den:
            raise BadReduction(f"{value} has a denominator divisible by {self.p}")
        return ModInt(self, value.numerator * pow(den, -1, self.p) % self.p)


class ModInt:
    __slots__ = ("field", "v")

    def __init__(self, field, v):
        self.field = field
        self.v = v

    def _other(self, other):
        if isinstance(other, ModInt):
            return other.v
        if isinstance(other, int) and not isinstance(other, bool):
            return other % self.field.p
        if isinstance(other, Fraction):
            return self.field.rational(other).v
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ModInt(self.field, (self.v + o) % self.field.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ModInt(self.field, (self.v - o) % self.field.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ModInt(self.field, (o - self.v) % self.field.p)

    def __neg__(self):
        return ModInt(self.field, -self.v % self.field.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ModInt(self.field, self.v * o % self.field.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroInverse("division by zero in GF(p)")
        return ModInt(self.field, self.v * pow(o, -1, self.field.p) % self.field.p)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not self.v:
            raise ZeroInverse("division by zero in GF(p)")
        return ModInt(self.field, o * pow(self.v, -1, self.field.p) % self.field.p)

    def __pow__(self, exponent):
        if exponent < 0:
            if not self.v:
                raise ZeroInverse("division by zero in GF(p)")
            return ModInt(self.field, pow(pow(self.v, -1, self.field.p), -exponent, self.field.p))
        return ModInt(self.field, pow(self.v, exponent, self.field.p))

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.v == o

    def __hash__(self):
        return hash(self.v)

    def __repr__(self):
        return f"ModInt({self.v} mod {self.field.p})"

    def __str__(self):
        return str(self.v)


class Reduction:
    """The ring map Q[a]/(m) -> GF(p) sending ``a`` to a chosen root of ``m`` mod p."""

    __slots__ = ("source", "target", "root", "_powers")

    def __init__(self, source, p, root):
        self.source = source
        self.target = PrimeField(p)
        self.root = root % p
        self._powers = [pow(self.root, i, p) for i in range(source.degree)]

    @property
    def p(self):
        return self.target.p

    def __call__(self, elem):
        p = self.target.p
        den = elem.den % p
        if not den:
            raise BadReduction(f"{elem} does not reduce modulo {p}")
        total = sum(n * power for n, power in zip(elem.num, self._powers))
        return ModInt(self.target, total * pow(den, -1, p) % p)


def _integer_modulus(field):
    """The modulus of ``field`` cleared of denominators, lowest degree first."""
    lcm = math.lcm(*(c.denominator for c in field.modulus))
    return [int(c * lcm) for c in field.modulus]


def _roots_mod_p(int_coeffs, p):
    """Roots in GF(p) of an integer polynomial given lowest degree first."""
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(int_coeffs)), x, modulus=p)
    if poly.degree() <= 0:
        return []
    roots = []
    for factor, _ in poly.factor_list()[1]:
        if factor.degree() == 1:
            c1, c0 = (int(c) for c in factor.all_coeffs())
            roots.append(-c0 * pow(c1, -1, p) % p)
    return sorted(set(roots))


def random_primes(seed, count, bits=PRIME_BITS):
    """An endless-looking but reproducible stream of large primes."""
    rng = random.Random(seed)
    produced = 0
    while count is None or produced < count:
        yield int(sympy.nextprime(rng.getrandbits(bits) | (1 << (bits - 1))))
        produced += 1


def reductions(field, seed=0, count=2, attempts=64):
    """
    Pick ``count`` reductions of ``field`` to prime fields.

    Primes are drawn from a stream seeded by ``seed``; primes modulo which the
    modulus has no root, or which divide a coefficient denominator, are
    skipped.

    Returns
    -------
    list of Reduction
    """
    if not isinstance(field, NumberField):
        raise InvalidParameter(f"cannot reduce {field!r}")
    modulus = _integer_modulus(field)
    chosen = []
    for p in toolz.take(attempts, random_primes(seed, None)):
        if modulus[-1] % p == 0 or any(c.denominator % p == 0 for c in field.modulus):
            continue
        if field.degree == 1:
            root = (-field.modulus[0]).numerator * pow((-field.modulus[0]).denominator, -1, p)
        else:
            roots = _roots_mod_p(modulus, p)
            if not roots:
                continue
            root = roots[0]
        chosen.append(Reduction(field, p, root))
        if len(chosen) == count:
            return chosen
    raise ResourceLimit(f"no usable prime found for {field!r} after {attempts} attempts")


# ---------------------------------------------------------------------------
# dense univariate arithmetic on lists of ints modulo p (lowest degree first)

_KRONECKER_THRESHOLD = 48


def _trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _mul(a, b, p):
    if not a or not b:
        return []
    if min(len(a), len(b)) < _KRONECKER_THRESHOLD:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return _trim([c % p for c in out])
    # pack into big integers and let the interpreter multiply
    slot = (2 * p.bit_length() + min(len(a), len(b)).bit_length() + 8 + 7) // 8 * 8
    pa = int.from_bytes(b"".join(c.to_bytes(slot // 8, "little") for c in a), "little")
    pb = int.from_bytes(b"".join(c.to_bytes(slot // 8, "little") for c in b), "little")
    raw = (pa * pb).to_bytes((len(a) + len(b)) * slot // 8, "little")
    width = slot // 8
    out = [int.from_bytes(raw[i * width:(i + 1) * width], "little") % p
           for i in range(len(a) + len(b) - 1)]
    return _trim(out)


def _add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _trim(out)


def _scale(a, c, p):
    return _trim([x * c % p for x in a]) if c % p else []


def _divmod(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        factor = a[-1] * inv % p
        q[shift] = factor
        for i, c in enumerate(b):
            a[i + shift] = (a[i + shift] - factor * c) % p
        _trim(a)
    return _trim(q), a


def _gcd_poly(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _divmod(a, b, p)[1]
    if not a:
        return []
    return _scale(a, pow(a[-1], -1, p), p)


def _pow(a, e, p, cache):
    key = (id(a), e)
    if e == 0:
        return [1]
    if e == 1:
        return a
    if key not in cache:
        half = _pow(a, e // 2, p, cache)
        sq = _mul(half, half, p)
        cache[key] = _mul(sq, a, p) if e % 2 else sq
    return cache[key]


class LineIteration:
    """
    Iterate a plane map on a generic line over GF(p).

    The line ``s*P + t*Q`` is kept as three binary forms of a common formal
    degree ``D``, stored dehomogenised at ``s = 1``. After each application the
    common factor (a power of ``s`` times a gcd in ``t``) is removed, so ``D``
    is exactly the degree of the current iterate.
    """

    def __init__(self, components, reduction, rng, degree_cap=None):
        self.p = reduction.p
        self.degree = components[0].degree
        self.terms = []
        for comp in components:
            self.terms.append([(e, reduction(c).v) for e, c in comp.terms.items()])
        p = self.p
        P = [rng.randrange(1, p) for _ in range(3)]
        Q = [rng.randrange(1, p) for _ in range(3)]
        self.forms = [_trim([P[i], Q[i]]) for i in range(3)]
        self.formal = 1
        self.degree_cap = degree_cap

    def step(self):
        p = self.p
        cache = {}
        images = []
        for terms in self.terms:
            acc = []
            for (e0, e1, e2), c in terms:
                prod = _scale([1], c, p)
                for form, e in ((self.forms[0], e0), (self.forms[1], e1), (self.forms[2], e2)):
                    if e:
                        prod = _mul(prod, _pow(form, e, p, cache), p)
                acc = _add(acc, prod, p)
            images.append(acc)
        formal = self.formal * self.degree
        nonzero = [f for f in images if f]
        if not nonzero:
            raise BadReduction("the line was mapped into the indeterminacy locus")
        s_power = min(formal - (len(f) - 1) for f in nonzero)
        g = toolz.reduce(lambda x, y: _gcd_poly(x, y, p), nonzero)
        if len(g) > 1:
            images = [_divmod(f, g, p)[0] if f else [] for f in images]
        self.forms = images
        self.formal = formal - s_power - (len(g) - 1)
        return self.formal


# reductions drawn beyond ``primes`` to replace ones that fail
SPARE_REDUCTIONS = 4


def line_degrees(components, n_max, seed=0, *, primes=2, degree_cap=None, term_cap=None):
    """
    Degrees ``d_1..d_n_max`` of the iterates of ``components`` on generic lines.

    Each prime gives a lower bound for the true degree; the maximum over
    ``primes`` independent primes and lines is returned. The sequence stops
    early, without error, once a degree exceeds ``degree_cap``.

    A binary form of degree ``d`` carries ``d + 1`` coefficients, so here
    ``term_cap`` bounds the degree of the iterates: :class:`ResourceLimit` is
    raised once ``d + 1`` exceeds it.

    A prime that does not reduce the coefficients, or a line sent into the
    indeterminacy locus, is logged and replaced by the next reduction; only
    when ``SPARE_REDUCTIONS`` replacements fail too is :class:`BadReduction`
    raised.
    """
    field = components[0].field
    best = None
    used = 0
    failures = []
    for index, reduction in enumerate(reductions(field, seed=seed, count=primes + SPARE_REDUCTIONS)):
        rng = random.Random(seed * 1_000_003 + index)
        degrees = []
        try:
            iteration = LineIteration(components, reduction, rng)
            for _ in range(n_max):
                d = iteration.step()
                if term_cap is not None and d + 1 > term_cap:
                    raise ResourceLimit(f"iterate degree {d} exceeds the term cap {term_cap}")
                degrees.append(d)
                if degree_cap is not None and d > degree_cap:
                    break
        except BadReduction as exc:
            log("Line degrees", f"reduction modulo {reduction.p} skipped: {exc}")
            failures.append(exc)
            continue
        if best is None:
            best = degrees
        else:
            n = min(len(best), len(degrees))
            best = [max(x, y) for x, y in zip(best[:n], degrees[:n])]
        used += 1
        if used == primes:
            return best
    raise BadReduction(f"{len(failures)} of {primes + SPARE_REDUCTIONS} reductions failed; last: {failures[-1]}")
