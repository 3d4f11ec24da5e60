"""Invariant fibrations ``V = P/Q`` with ``V o f = psi(V)``.

Every check here is an exact polynomial identity: ``P`` and ``Q`` are
homogenised to a common degree and pulled back by the homogeneous
components of the map, so no denominators are ever divided out.
"""
import itertools
from dataclasses import dataclass
from typing import Tuple

import toolz

from ._errors import DegenerateSolutionSpace, InvalidParameter, NotDivisible, NotFiniteOrder, ParseError
from ._field import QQ
from ._linalg import charpoly, nullspace, rref
from ._maps import (INDETERMINATE, exceptional_locus, identity_map, map_compose, map_evaluate, map_inverse, maps_equal,
                    degree_sequence, random_affine_points)
from ._poly import APoly, HPoly, DEFAULT_TERM_CAP, apoly_gcd, poly_div_exact, poly_subst
from ._utilities import log

MAX_MOBIUS_ORDER = 720


@dataclass(frozen=True)
class Mobius:
    """``psi(t) = (w1 t + w2) / (w3 t + w4)``, stored with ``w4 = 1`` or else ``w3 = 1``."""

    w1: object
    w2: object
    w3: object
    w4: object

    def __post_init__(self):
        if not (self.w1 * self.w4 - self.w2 * self.w3):
            raise InvalidParameter("a Mobius transformation needs w1*w4 - w2*w3 != 0")

    @classmethod
    def of(cls, w1, w2, w3, w4, field=QQ):
        return cls(*(field.coerce(w) for w in (w1, w2, w3, w4))).normalized()

    @classmethod
    def identity(cls, field=QQ):
        return cls(field.one, field.zero, field.zero, field.one)

    @classmethod
    def affine(cls, scale, shift, field=QQ):
        """``t -> scale*t + shift``."""
        return cls.of(scale, shift, 0, 1, field)

    @property
    def field(self):
        return self.w1.field

    def normalized(self):
        scale = self.w4 if self.w4 else self.w3
        inv = 1 / scale
        return Mobius(self.w1 * inv, self.w2 * inv, self.w3 * inv, self.w4 * inv)

    def __call__(self, t):
        """The image of a field element, or None where the denominator vanishes."""
        den = self.w3 * t + self.w4
        if not den:
            return None
        return (self.w1 * t + self.w2) / den

    def compose(self, other):
        """``self o other``."""
        return Mobius(self.w1 * other.w1 + self.w2 * other.w3, self.w1 * other.w2 + self.w2 * other.w4,
                      self.w3 * other.w1 + self.w4 * other.w3, self.w3 * other.w2 + self.w4 * other.w4).normalized()

    def __pow__(self, n):
        if n < 0:
            raise InvalidParameter("negative Mobius powers are not supported")
        result = Mobius.identity(self.field)
        for _ in range(n):
            result = result.compose(self)
        return result

    def is_identity(self):
        return not self.w2 and not self.w3 and self.w1 == self.w4

    def is_scaling(self):
        """Whether ``psi(t) = lambda*t``."""
        return not self.w2 and not self.w3

    def order(self, max_order=MAX_MOBIUS_ORDER):
        """
        Smallest ``n >= 1`` with ``psi^n`` the identity.

        Raises
        ------
        NotFiniteOrder
            If no such ``n`` up to ``max_order`` exists.
        """
        current = self
        for n in range(1, max_order + 1):
            if current.is_identity():
                return n
            current = current.compose(self)
        raise NotFiniteOrder(f"{self} has no finite order up to {max_order}")

    def to_json(self):
        return [w.to_json() for w in (self.w1, self.w2, self.w3, self.w4)]

    def __str__(self):
        if not self.w3:
            return f"t -> ({self.w1})*t + ({self.w2})"
        return f"t -> (({self.w1})*t + ({self.w2})) / (({self.w3})*t + ({self.w4}))"


@dataclass(frozen=True, eq=False)
class Fibration:
    """A rational function ``P/Q`` of the affine coordinates, in lowest terms."""

    P: APoly
    Q: APoly

    def __post_init__(self):
        if self.Q.is_zero():
            raise InvalidParameter("the denominator of a fibration cannot be zero")

    @classmethod
    def of(cls, P, Q=None):
        """Build ``P/Q`` (default ``Q = 1``) after removing common factors."""
        if Q is None:
            Q = APoly.constant(P.field)
        if not P.is_zero():
            g = apoly_gcd(P, Q)
            if not g.is_constant():
                P, Q = P.div_exact(g), Q.div_exact(g)
        return cls(P, Q)

    @property
    def field(self):
        return self.Q.field

    @property
    def degree(self):
        return max(self.P.degree, self.Q.degree, 0)

    def forms(self):
        """``P`` and ``Q`` homogenised to their common degree."""
        D = self.degree
        return self.P.homogenize(D), self.Q.homogenize(D)

    def over(self, field):
        if field == self.field:
            return self
        if not self.field.is_rationals:
            raise InvalidParameter(f"cannot move a fibration over {self.field!r} to {field!r}")
        return Fibration(self.P.map_coefficients(field.coerce, field), self.Q.map_coefficients(field.coerce, field))

    def __call__(self, x, y):
        q = self.Q(x, y)
        if not q:
            return None
        return self.P(x, y) / q

    def at(self, point):
        if not point.is_affine():
            return None
        return self(*point.affine())

    def is_constant(self):
        if self.P.is_zero():
            return True
        _, p = self.P.leading_term()
        _, q = self.Q.leading_term()
        return self.P * q == self.Q * p

    def __pow__(self, n):
        if n < 0:
            return Fibration(self.Q ** -n, self.P ** -n)
        return Fibration(self.P ** n, self.Q ** n)

    def __mul__(self, other):
        return Fibration.of(self.P * other.P, self.Q * other.Q)

    def __eq__(self, other):
        return isinstance(other, Fibration) and self.P * other.Q == other.P * self.Q

    def to_json(self):
        return {"P": self.P.to_json(), "Q": self.Q.to_json()}

    def __str__(self):
        return f"({self.P}) / ({self.Q})"


def _apoly_from_json(value, field):
    from ._factor import apoly_from_text, coefficient_from_json

    if isinstance(value, str):
        return apoly_from_text(value, field)
    if not isinstance(value, list):
        raise ParseError(f"expected a term list or an expression, got {value!r}")
    terms = {}
    for item in value:
        if not isinstance(item, list) or len(item) != 3:
            raise ParseError(f"fibration terms are [e_x, e_y, coeff], got {item!r}")
        ex, ey, coeff = item
        key = (int(ex), int(ey))
        c = coefficient_from_json(coeff, field)
        terms[key] = terms[key] + c if key in terms else c
    return APoly(field, terms)


def fibration_from_json(data, field=QQ):
    """
    Read ``{"P": ..., "Q": ..., "mobius": [w1, w2, w3, w4]}``.

    Instead of ``P`` and ``Q`` a single rational expression ``"V"`` may be
    given. ``P`` and ``Q`` are term lists ``[[e_x, e_y, coeff], ...]`` or expression
    strings in ``x``, ``y`` and the field generator; ``Q`` defaults to 1.

    Returns
    -------
    (Fibration, Mobius or None)
    """
    from ._factor import rational_from_text

    if not isinstance(data, dict) or not ("P" in data or "V" in data):
        raise ParseError("a fibration needs the key 'P' or 'V'")
    if "V" in data:
        P, Q = rational_from_text(data["V"], field)
        if Q.is_zero():
            raise ParseError(f"{data['V']!r} has a zero denominator")
        return Fibration.of(P, Q), _mobius_from_json(data, field)
    P = _apoly_from_json(data["P"], field)
    Q = _apoly_from_json(data["Q"], field) if "Q" in data else APoly.constant(field)
    if Q.is_zero():
        raise ParseError("the denominator of a fibration cannot be zero")
    return Fibration(P, Q), _mobius_from_json(data, field)


def _mobius_from_json(data, field):
    from ._factor import coefficient_from_json

    psi = None
    if data.get("mobius") is not None:
        w = data["mobius"]
        if len(w) != 4:
            raise ParseError("'mobius' needs four coefficients")
        psi = Mobius(*(coefficient_from_json(v, field) for v in w)).normalized()
    return psi


def fibration_to_json(V, psi=None):
    out = V.to_json()
    if psi is not None:
        out["mobius"] = psi.to_json()
    return out


def _pullback_forms(f, V, term_cap):
    P, Q = V.over(f.field).forms()
    return P, Q, poly_subst(P, *f.components, term_cap=term_cap), poly_subst(Q, *f.components, term_cap=term_cap)


def check_fibration(f, V, psi, term_cap=DEFAULT_TERM_CAP):
    """
    Exact test of ``V o f = psi(V)``.

    With ``~`` the pullback by the homogeneous components of ``f`` this is
    the polynomial identity ``~P (w3 P + w4 Q) = (w1 P + w2 Q) ~Q``.
    """
    P, Q, Pf, Qf = _pullback_forms(f, V, term_cap)
    K = f.field
    w1, w2, w3, w4 = (K.coerce(w) for w in (psi.w1, psi.w2, psi.w3, psi.w4))
    lhs = Pf * (P * w3 + Q * w4)
    rhs = (P * w1 + Q * w2) * Qf
    return lhs == rhs


def check_first_integral(f, W, term_cap=DEFAULT_TERM_CAP):
    """Exact test of ``W o f = W``."""
    return check_fibration(f, W, Mobius.identity(f.field), term_cap=term_cap)


def check_fibration_pointwise(f, V, psi, samples=20, seed=0):
    """
    Compare ``V(f(p))`` with ``psi(V(p))`` at seeded random rational points.

    Points where ``V``, ``f`` or ``psi`` is undefined are skipped.
    """
    K = f.field
    checked = 0
    for point in random_affine_points(K, samples * 4, seed=seed):
        v = V.over(K).at(point)
        if v is None:
            continue
        image = map_evaluate(f, point)
        if image is INDETERMINATE:
            continue
        w = V.over(K).at(image)
        expected = psi(v)
        if w is None or expected is None:
            continue
        if w != expected:
            log("Fibration", f"V(f(p)) = {w} but psi(V(p)) = {expected} at p = {point}")
            return False
        checked += 1
        if checked == samples:
            break
    return True


def find_mobius(f, V, term_cap=DEFAULT_TERM_CAP):
    """
    The Mobius transformation relating ``V o f`` to ``V``, if any.

    Solves the linear system in ``(w1, w2, w3, w4)`` obtained by matching
    coefficients in ``w1 P ~Q + w2 Q ~Q - w3 ~P P - w4 ~P Q = 0``.

    Raises
    ------
    DegenerateSolutionSpace
        When the solutions form a space of dimension two or more, which
        happens when ``V`` is constant.
    """
    K = f.field
    P, Q, Pf, Qf = _pullback_forms(f, V, term_cap)
    columns = [P * Qf, Q * Qf, -(Pf * P), -(Pf * Q)]
    monomials = sorted(set(itertools.chain.from_iterable(c.terms for c in columns)))
    rows = [[c.terms.get(m, K.zero) for c in columns] for m in monomials]
    basis = nullspace(rows, 4, K)
    if not basis:
        return None
    if len(basis) > 1:
        raise DegenerateSolutionSpace(f"{len(basis)}-dimensional space of Mobius solutions; V is constant along f",
                                      dimension=len(basis))
    w1, w2, w3, w4 = basis[0]
    if not (w1 * w4 - w2 * w3):
        return None
    return Mobius(w1, w2, w3, w4).normalized()


def _orbit_terms(V, psi, order):
    """Numerators and denominators of ``psi^i(V)`` for ``i < order``."""
    nums, dens = [], []
    current = Mobius.identity(psi.field)
    for _ in range(order):
        nums.append(V.P * current.w1 + V.Q * current.w2)
        dens.append(V.P * current.w3 + V.Q * current.w4)
        current = current.compose(psi)
    return nums, dens


def _product(polys, field):
    return toolz.reduce(lambda a, b: a * b, polys, APoly.constant(field))


def build_first_integral(f, V, psi, order, verify=True, term_cap=DEFAULT_TERM_CAP):
    """
    A first integral from a fibration whose Mobius transformation has finite order.

    For ``psi(t) = lambda*t`` the result is ``V^order``; otherwise it is the
    orbit product ``V * V(f) * ... * V(f^(order-1))``, computed as
    ``prod psi^i(V)``. When that product is constant the orbit sum is used.

    Raises
    ------
    NotFiniteOrder
        If ``psi^order`` is not the identity.
    InvalidParameter
        If ``verify`` is set and ``V o f = psi(V)`` fails.
    """
    if order < 1:
        raise InvalidParameter("the order must be positive")
    psi = psi.normalized()
    if not (psi ** order).is_identity():
        raise NotFiniteOrder(f"{psi} does not have order dividing {order}")
    V = V.over(psi.field) if V.field.is_rationals else V
    if verify and not check_fibration(f, V, psi, term_cap=term_cap):
        raise InvalidParameter("V o f = psi(V) does not hold")
    if psi.is_identity():
        return V
    if psi.is_scaling():
        return V ** order
    K = V.field
    nums, dens = _orbit_terms(V, psi, order)
    W = Fibration.of(_product(nums, K), _product(dens, K))
    if W.is_constant():
        total = APoly(K, {})
        for i, num in enumerate(nums):
            total = total + num * _product(dens[:i] + dens[i + 1:], K)
        W = Fibration.of(total, _product(dens, K))
    if W.is_constant():
        raise InvalidParameter(f"the orbit of V under {psi} only yields constants")
    return W


def transversality_check(V1, V2):
    """Whether the Jacobian determinant of ``(V1, V2)`` is not identically zero."""

    def gradient(V):
        P, Q = V.P, V.Q
        return (P.partial(0) * Q - P * Q.partial(0), P.partial(1) * Q - P * Q.partial(1))

    if V1.field != V2.field:
        V1, V2 = (V1.over(V2.field), V2) if V1.field.is_rationals else (V1, V2.over(V1.field))
    a, b = gradient(V1)
    c, d = gradient(V2)
    return not (a * d - b * c).is_zero()


def _divisible(poly, divisor):
    try:
        poly_div_exact(poly, divisor)
    except NotDivisible:
        return False
    return True


def curve_pullback(f, C, term_cap=DEFAULT_TERM_CAP):
    """
    Pull a curve back and strip the exceptional part.

    Returns
    -------
    (HPoly, tuple of int)
        ``C~`` and the multiplicities ``s_i`` with
        ``C o F = prod S_i^s_i * C~`` and each ``s_i`` maximal, in the order
        of :func:`exceptional_locus`.
    """
    image = poly_subst(C, *f.components, term_cap=term_cap)
    multiplicities = []
    for S in exceptional_locus(f):
        s = 0
        while image.degree >= S.degree and _divisible(image, S):
            image = poly_div_exact(image, S)
            s += 1
        multiplicities.append(s)
    return image, tuple(multiplicities)


def _remainder(poly, divisor):
    """Remainder of a form on division by one form (grlex, ``x0 > x1 > x2``)."""
    lead_b = max(divisor.terms)
    inv = 1 / divisor.terms[lead_b]
    rem = dict(poly.terms)
    out = {}
    while rem:
        lead = max(rem)
        shift = tuple(a - b for a, b in zip(lead, lead_b))
        if min(shift) < 0:
            out[lead] = rem.pop(lead)
            continue
        q = rem[lead] * inv
        for e, c in divisor.terms.items():
            key = tuple(a + b for a, b in zip(shift, e))
            value = rem.get(key)
            value = -(q * c) if value is None else value - q * c
            if value:
                rem[key] = value
            else:
                rem.pop(key, None)
    return out


def _monomials(D):
    return [(D - i - j, i, j) for i in range(D + 1) for j in range(D + 1 - i)]


@dataclass(frozen=True)
class InvariantCurve:
    curve: HPoly
    eigenvalue: object
    profile: Tuple[int, ...]

    def to_json(self):
        return {"curve": self.curve.to_json(), "eigenvalue": self.eigenvalue.to_json(),
                "profile": list(self.profile)}


@dataclass(frozen=True)
class NeedsExtension:
    """An eigenvalue factor without roots in the field, for one multiplicity profile."""

    minimal_polynomial: object
    profile: Tuple[int, ...]

    def to_json(self):
        return {"minimal_polynomial": self.minimal_polynomial.to_json(), "profile": list(self.profile)}


@dataclass(frozen=True)
class CurveSearch:
    curves: Tuple[InvariantCurve, ...]
    extensions: Tuple[NeedsExtension, ...]

    def to_json(self):
        return {"curves": [c.to_json() for c in self.curves],
                "needs_extension": [e.to_json() for e in self.extensions]}


def _profiles(lines, total):
    ranges = [range(total // S.degree + 1) for S in lines]
    for profile in itertools.product(*ranges):
        if sum(s * S.degree for s, S in zip(profile, lines)) == total:
            yield profile


def search_invariant_curves(f, D, term_cap=DEFAULT_TERM_CAP):
    """
    Curves of degree ``D`` mapped to themselves by the pullback ``C -> C~``.

    For each multiplicity profile ``(s_i)`` with ``sum s_i deg S_i = (d-1) D``
    the pullback is restricted to the forms whose pullback is divisible by
    every ``S_i^s_i``; on that subspace ``C~`` is again of degree ``D`` and
    the eigenvectors of ``C -> C~`` are the invariant curves.

    Returns
    -------
    CurveSearch
        Eigen-curves (normalised) with eigenvalue and profile, and the
        characteristic-polynomial factors that need a field extension.
    """
    if not 1 <= D <= 8:
        raise InvalidParameter(f"the curve degree must lie in 1..8, got {D}")
    K = f.field
    lines = exceptional_locus(f)
    monomials = _monomials(D)
    N = len(monomials)
    images = [poly_subst(HPoly(K, {m: K.one}, D), *f.components, term_cap=term_cap) for m in monomials]
    curves, extensions = [], []
    for profile in _profiles(lines, (f.degree - 1) * D):
        rows = []
        divisor = HPoly.constant(K)
        for S, s in zip(lines, profile):
            if not s:
                continue
            power = S ** s
            divisor = divisor * power
            remainders = [_remainder(img, power) for img in images]
            for key in sorted(set(itertools.chain.from_iterable(remainders))):
                rows.append([r.get(key, K.zero) for r in remainders])
        _, pivots = rref(rows, N, K)
        free = [c for c in range(N) if c not in set(pivots)]
        basis = nullspace(rows, N, K)
        if not basis:
            continue
        reduced = []
        for vector in basis:
            combined = HPoly(K, {}, f.degree * D)
            for v, img in zip(vector, images):
                if v:
                    combined = combined + img * v
            reduced.append(poly_div_exact(combined, divisor))
        # columns: basis vectors; Z restricted to the free rows is the identity
        Z = [[vector[r] for vector in basis] for r in range(N)]
        Wm = [[c.terms.get(m, K.zero) for c in reduced] for m in monomials]
        chi = charpoly([Wm[r] for r in free], K)
        roots, rest = _eigenvalues(chi)
        extensions.extend(NeedsExtension(r, profile) for r in rest)
        for lam, _ in roots:
            system = [[Wm[r][j] - lam * Z[r][j] for j in range(len(basis))] for r in range(N)]
            space = [_curve_from(v, basis, monomials, D, K) for v in nullspace(system, len(basis), K)]
            for i, C in enumerate(space):
                # a member divisible by an exceptional line is swapped for a
                # generic member of the same eigenspace
                others = space[:i] + space[i + 1:]
                for candidate in [C] + [C + other for other in others] + [C - other for other in others]:
                    if _is_eigencurve(f, candidate, lam, profile, term_cap):
                        curves.append(InvariantCurve(candidate.normalized(), lam, profile))
                        break
                else:
                    log("Curves", f"dropping {C}: it carries an exceptional factor")
    log("Curves", f"degree {D}: {len(curves)} invariant curve(s), {len(extensions)} factor(s) need an extension")
    return CurveSearch(tuple(curves), tuple(extensions))


def _curve_from(v, basis, monomials, D, K):
    terms = {}
    for coeff, vector in zip(v, basis):
        for m, c in zip(monomials, vector):
            if coeff and c:
                terms[m] = terms.get(m, K.zero) + coeff * c
    return HPoly(K, terms, D)


def _is_eigencurve(f, C, lam, profile, term_cap):
    if C.is_zero():
        return False
    image, multiplicities = curve_pullback(f, C, term_cap=term_cap)
    return multiplicities == profile and image == C * lam


def _eigenvalues(chi):
    from ._factor import roots_in_field

    return roots_in_field(chi)


def check_periodicity(f, n_max, seed=0, term_cap=DEFAULT_TERM_CAP, degree_cap=512):
    """
    Minimal ``n <= n_max`` with ``F^n`` the identity, or None.

    Only iterates of degree one (read from the degree sequence on random
    lines) are candidates; each candidate is confirmed by exact composition.
    When the inverse is attached, ``F^n = id`` is confirmed as
    ``F^ceil(n/2) = F^-floor(n/2)``, which halves the number of compositions.

    Raises
    ------
    ResourceLimit
        If an exact iterate exceeds ``term_cap`` terms.
    """
    if n_max < 1:
        raise InvalidParameter("n_max must be at least 1")
    degrees = degree_sequence(f, n_max, method="line", seed=seed, degree_cap=degree_cap)
    candidates = [n for n, d in enumerate(degrees, 1) if d == 1]
    inverse = map_inverse(f) if f.inverse is not None else None
    forward, a = f, 1
    backward, b = identity_map(f.field), 0
    for target in candidates:
        half = (target + 1) // 2 if inverse is not None else target
        while a < half:
            forward = map_compose(forward, f, term_cap=term_cap)
            a += 1
        while b < target - half:
            backward = inverse if b == 0 else map_compose(backward, inverse, term_cap=term_cap)
            b += 1
        if maps_equal(forward, backward):
            log("Period", f"F^{target} is the identity")
            return target
    return None


def pullback_fibration(f, V, term_cap=DEFAULT_TERM_CAP):
    """The fibration ``V o f`` in lowest terms."""
    _, _, Pf, Qf = _pullback_forms(f, V, term_cap)
    return Fibration.of(Pf.dehomogenize(), Qf.dehomogenize())
