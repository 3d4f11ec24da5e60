"""Orbit lists, characteristic polynomials and growth of degree sequences."""
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import toolz

from ._errors import (InconsistentChain, UnsupportedListSize, InsufficientData, UnclassifiableSpectrum,
                      InvalidParameter)
from ._field import QQ, NumberField
from ._poly import (UPoly, Interval, squarefree_part, squarefree_decomp, cyclotomic_test, sturm_isolate,
                    cauchy_bound, upoly_from_fractions)
from ._utilities import log, warn

DEFAULT_TOLERANCE = Fraction(1, 10 ** 9)
DEFAULT_DEGREE_TERMS = 24
DEGREE_CAP = 512


@dataclass(frozen=True)
class ListedOrbit:
    start: int
    end: int
    length: int


@dataclass(frozen=True)
class OrbitList:
    orbits: Tuple[ListedOrbit, ...]
    closed: bool

    @property
    def total(self):
        """``N_L``, the number of points over all orbits of the list."""
        return sum(o.length for o in self.orbits)

    @property
    def lengths(self):
        return [o.length for o in self.orbits]

    def to_json(self):
        return {"closed": self.closed, "orbits": [{"start": f"A{o.start}", "end": f"O{o.end}", "length": o.length}
                                                  for o in self.orbits]}


@dataclass(frozen=True)
class OrbitListSet:
    lists: Tuple[OrbitList, ...] = ()

    def to_json(self):
        return [lst.to_json() for lst in self.lists]


def build_lists(profile):
    """
    Chain the singular elementary orbits into lists.

    An orbit ending at ``O_j`` is followed by the orbit starting at ``A_j``;
    a list is closed when its last orbit ends where its first starts.

    Parameters
    ----------
    profile : SEProfile or iterable of (start, end, length)

    Raises
    ------
    InconsistentChain
        If two orbits end at the same indeterminacy point.
    """
    orbits = getattr(profile, "orbits", profile)
    se = []
    for o in orbits:
        if isinstance(o, tuple):
            se.append(ListedOrbit(*o))
        elif o.se:
            se.append(ListedOrbit(o.start, o.end, o.length))
    by_start = {o.start: o for o in se}
    ends = toolz.groupby(lambda o: o.end, se)
    for end, group in ends.items():
        if len(group) > 1:
            raise InconsistentChain(f"orbits of {', '.join(f'A{o.start}' for o in group)} all end at O{end}")
    predecessor = {o.end: o for o in se if o.end in by_start}
    used = set()
    lists = []
    # open lists begin at an orbit nothing chains into
    for o in sorted(se, key=lambda o: o.start):
        if o.start in predecessor:
            continue
        chain = []
        current = o
        while current is not None and current.start not in used:
            chain.append(current)
            used.add(current.start)
            current = by_start.get(current.end)
        lists.append(OrbitList(tuple(chain), False))
    for o in sorted(se, key=lambda o: o.start):
        if o.start in used:
            continue
        chain = []
        current = o
        while current.start not in used:
            chain.append(current)
            used.add(current.start)
            current = by_start[current.end]
        lists.append(OrbitList(tuple(chain), True))
    return OrbitListSet(tuple(lists))


def _monomial(n, c=1, field=QQ):
    return UPoly(field, [field.zero] * n + [field.rational(c)])


def list_polynomials(lst, field=QQ):
    """
    The polynomials ``T_L`` and ``S_L`` of one orbit list.

    ``T_L`` is ``x^N - 1`` for a closed list and ``x^N`` for an open one.

    Raises
    ------
    UnsupportedListSize
        For lists of more than three orbits.
    """
    n = lst.lengths
    N = lst.total
    T = _monomial(N, field=field) - (1 if lst.closed else 0)
    one = UPoly.constant(field, 1)
    if len(n) == 1:
        S = one
    elif len(n) == 2:
        S = _monomial(n[0], field=field) + _monomial(n[1], field=field) + (2 if lst.closed else 1)
    elif len(n) == 3 and lst.closed:
        S = toolz.reduce(lambda a, b: a + b, (_monomial(N - ni, field=field) + _monomial(ni, field=field)
                                              for ni in n)) + 3
    elif len(n) == 3:
        warn("Lists", "open list of three orbits: the second orbit is left out of the x^n_i sum")
        warnings.warn("open three-orbit list polynomial used", RuntimeWarning, stacklevel=2)
        S = toolz.reduce(lambda a, b: a + b, [_monomial(N - ni, field=field) for ni in n]
                         + [_monomial(ni, field=field) for i, ni in enumerate(n) if i != 1]) + 1
    else:
        raise UnsupportedListSize(f"lists of {len(n)} orbits are not supported")
    return T, S


def char_poly_bk(lists, field=QQ):
    """
    ``(x - 2) prod T_L + (x - 1) sum_L S_L prod_{L2 != L} T_L2`` over all orbit lists.
    """
    x = UPoly.x(field)
    pairs = [list_polynomials(lst, field) for lst in lists.lists]
    one = UPoly.constant(field, 1)
    product = toolz.reduce(lambda a, b: a * b, (T for T, _ in pairs), one)
    total = UPoly(field)
    for index, (_, S) in enumerate(pairs):
        others = toolz.reduce(lambda a, b: a * b, (T for i, (T, _) in enumerate(pairs) if i != index), one)
        total = total + S * others
    return (x - 2) * product + (x - 1) * total


def fit_recurrence(d):
    """
    Minimal monic annihilator of a finite sequence (Berlekamp-Massey over Q).

    Returns
    -------
    UPoly
        ``x^L + c1 x^(L-1) + ... + cL`` with ``d[n] + c1 d[n-1] + ... + cL d[n-L] = 0``
        for every ``n >= L`` in range.

    Raises
    ------
    InsufficientData
        When ``2 L`` exceeds the number of terms; the fit is attached as
        ``provisional``.
    """
    s = [Fraction(v) for v in d]
    if len(s) < 4:
        raise InvalidParameter("fit_recurrence needs at least four terms")
    C, B = [Fraction(1)], [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for n in range(len(s)):
        delta = s[n] + sum(C[i] * s[n - i] for i in range(1, L + 1) if i < len(C))
        if delta == 0:
            m += 1
            continue
        T = list(C)
        scale = delta / b
        if len(C) < len(B) + m:
            C = C + [Fraction(0)] * (len(B) + m - len(C))
        for i, coeff in enumerate(B):
            C[i + m] -= scale * coeff
        if 2 * L <= n:
            L, B, b, m = n + 1 - L, T, delta, 1
        else:
            m += 1
    C = C + [Fraction(0)] * (L + 1 - len(C))
    result = upoly_from_fractions(QQ, list(reversed(C[:L + 1])))
    if 2 * L > len(s):
        raise InsufficientData(f"order {L} recurrence fitted to {len(s)} terms", provisional=result)
    return result


def annihilates(p, d):
    """Whether the coefficients of ``p`` applied as a recurrence kill ``d`` wherever defined."""
    coeffs = [c.to_fraction() for c in p.coeffs]
    L = p.degree
    return all(sum(coeffs[i] * d[n - L + i] for i in range(L + 1)) == 0 for n in range(L, len(d)))


def _rational(p):
    if p.field.is_rationals:
        return p
    if not all(c.is_rational() for c in p.coeffs):
        raise InvalidParameter("real-root isolation needs rational coefficients")
    return UPoly(QQ, [c.to_fraction() for c in p.coeffs])


def largest_real_root(p, tol=DEFAULT_TOLERANCE):
    """
    Isolating interval for the largest real root strictly greater than one.

    Returns
    -------
    Interval or None
        Width at most ``tol``; None when no root exceeds one.
    """
    if p.is_zero():
        raise InvalidParameter("the zero polynomial has no largest root")
    q = squarefree_part(_rational(p))
    if q.degree <= 0:
        return None
    bound = cauchy_bound(q)
    if bound <= 1:
        return None
    intervals = sturm_isolate(q, Fraction(1), bound, Fraction(tol))
    return intervals[-1] if intervals else None


def minimal_polynomial_of(p, interval):
    """The irreducible rational factor of ``p`` with a root in ``interval``."""
    from ._factor import factor_in_field

    for factor, _ in factor_in_field(_rational(p)):
        if sturm_isolate(factor, interval.lo, interval.hi, interval.width or Fraction(1)):
            return factor
    return None


@dataclass(frozen=True)
class GrowthClass:
    kind: str
    period: Optional[int] = None
    delta: Optional[Interval] = None
    minimal_polynomial: Optional[UPoly] = None

    def to_json(self):
        out = {"class": self.kind.capitalize()}
        if self.period is not None:
            out["period"] = self.period
        if self.delta is not None:
            out["delta"] = self.delta.to_json()
        if self.minimal_polynomial is not None:
            out["minimal_polynomial"] = self.minimal_polynomial.to_json()
        return out


GROWTH_KINDS = {0: "bounded", 1: "linear", 2: "quadratic"}


def _spectrum_class(p, d):
    delta = largest_real_root(p)
    if delta is not None:
        return GrowthClass("exponential", delta=delta, minimal_polynomial=minimal_polynomial_of(p, delta))
    parts = squarefree_decomp(_rational(p))
    x = UPoly.x(QQ)
    unit_parts = [(f, k) for f, k in parts if f != x]
    transient = sum(k for f, k in parts if f == x)
    for f, _ in unit_parts:
        if cyclotomic_test(f) is None:
            raise UnclassifiableSpectrum(f"factor {f} has roots off the unit circle but none above one")
    e = max((k for _, k in unit_parts), default=1) - 1
    if e not in GROWTH_KINDS:
        raise UnclassifiableSpectrum(f"multiplicity {e + 1} at a root of unity")
    if e:
        return GrowthClass(GROWTH_KINDS[e])
    product = toolz.reduce(lambda a, b: a * b, (f for f, _ in unit_parts), UPoly.constant(QQ, 1))
    order = cyclotomic_test(product) if product.degree > 0 else 1
    return GrowthClass("bounded", period=_minimal_period(d, order, transient))


def _minimal_period(d, order, transient):
    for candidate in range(1, order + 1):
        if order % candidate:
            continue
        if all(d[n + candidate] == d[n] for n in range(transient, len(d) - candidate)):
            return candidate
    return order


def classify_growth(annihilator, d):
    """
    Growth class of a degree sequence from an annihilating polynomial.

    When the minimal recurrence fitted to ``d`` divides ``annihilator`` the
    minimal one is classified instead, since initial conditions may switch
    off modes of a larger annihilator.

    Raises
    ------
    InvalidParameter
        If ``annihilator`` does not annihilate ``d``.
    UnclassifiableSpectrum
        If a non-cyclotomic factor without a real root above one survives.
    """
    d = [Fraction(v) for v in d]
    annihilator = _rational(annihilator)
    if not annihilates(annihilator, d):
        raise InvalidParameter("the polynomial does not annihilate the sequence")
    spectrum = annihilator
    try:
        minimal = fit_recurrence(d)
        if (annihilator % minimal).is_zero():
            spectrum = minimal
    except InsufficientData:
        pass
    return _spectrum_class(spectrum, d)


@dataclass(frozen=True)
class DynamicalDegree:
    charpoly: UPoly
    delta: Interval
    growth: GrowthClass
    degrees: Tuple[int, ...]
    empirical: Optional[UPoly]
    profile: object = None
    lists: Optional[OrbitListSet] = None
    discrepancy: Optional[str] = None

    def to_json(self):
        out = {"charpoly": self.charpoly.to_json(), "delta": self.delta.to_json(), "class": self.growth.kind.capitalize(),
               "degrees": list(self.degrees),
               "empirical_annihilator": None if self.empirical is None else self.empirical.to_json()}
        if self.growth.period is not None:
            out["period"] = self.growth.period
        if self.lists is not None:
            out["lists"] = self.lists.to_json()
        if self.discrepancy:
            out["discrepancy"] = self.discrepancy
        return out


def dynamical_degree(f, max_steps=64, n_terms=None, tol=DEFAULT_TOLERANCE, seed=0, degree_cap=DEGREE_CAP,
                     profile=None):
    """
    Characteristic polynomial, dynamical degree and growth class of a family map.

    The polynomial comes from the singular elementary orbit lists; it is
    reconciled with the recurrence fitted to the degrees computed on random
    lines (``d_0 = 1`` prepended). When the two disagree the empirical data
    decides and ``discrepancy`` says why.
    """
    from ._maps import degree_sequence
    from ._orbits import se_profile

    profile = profile or se_profile(f, max_steps, seed=seed)
    lists = build_lists(profile)
    chi = char_poly_bk(lists)
    n = n_terms or max(DEFAULT_DEGREE_TERMS, 2 * chi.degree + 4)
    degrees = [1] + degree_sequence(f, n, method="line", seed=seed, degree_cap=degree_cap)
    log("Degrees", ", ".join(str(v) for v in degrees))
    try:
        empirical = fit_recurrence(degrees)
    except InsufficientData as exc:
        empirical = exc.provisional
    discrepancy = None
    source = chi
    if annihilates(chi, degrees):
        growth = classify_growth(chi, degrees)
        if not (chi % empirical).is_zero():
            discrepancy = "the fitted recurrence does not divide the characteristic polynomial"
    else:
        discrepancy = "the characteristic polynomial does not annihilate the computed degrees"
        source = empirical
        growth = classify_growth(empirical, degrees)
    if growth.kind == "exponential":
        delta = largest_real_root(source, tol)
    else:
        delta = Interval(Fraction(1), Fraction(1))
        if largest_real_root(chi) is not None:
            discrepancy = discrepancy or "the characteristic polynomial has a root above one the degrees do not show"
    if discrepancy:
        warn("Degrees", f"Discrepancy: {discrepancy}")
    return DynamicalDegree(chi, delta, growth, tuple(int(v) for v in degrees), empirical, profile, lists,
                           discrepancy)


# closed-form degree sequences, evaluated exactly over the field of the roots of unity involved

GAUSSIAN = NumberField((1, 0, 1), name="i")
EISENSTEIN = NumberField((1, 1, 1), name="w")


def degree_formula(kind, n):
    """
    Exact value of a closed-form degree sequence.

    Parameters
    ----------
    kind : {"family_b", "k1_p4", "k2_p3_rational"}
        ``5/4 + n/2 - (-1)^n/4``;
        ``23/16 + 3n^2/8 - 3(-1)^n/16 - (i^n + (-i)^n)/8``;
        ``97/72 + 5n^2/12 - (-1)^n/8 - (w^n + w'^n)/9`` with ``w`` a primitive cube root of unity.
    n : int
    """
    sign = Fraction((-1) ** n)
    if kind == "family_b":
        return Fraction(5, 4) + Fraction(n, 2) - sign / 4
    if kind == "k1_p4":
        i = GAUSSIAN.generator
        value = (Fraction(23, 16) + Fraction(3 * n * n, 8) - 3 * sign / 16) - (i ** n + (-i) ** n) * Fraction(1, 8)
        return value.to_fraction()
    if kind == "k2_p3_rational":
        w = EISENSTEIN.generator
        conjugate = -1 - w
        value = (Fraction(97, 72) + Fraction(5 * n * n, 12) - sign / 8) - (w ** n + conjugate ** n) * Fraction(1, 9)
        return value.to_fraction()
    raise InvalidParameter(f"unknown degree formula {kind!r}")
