"""Birational maps of the projective plane.

A :class:`BiMap` holds three homogeneous components of one degree. The
family constructors also attach, in closed form, the inverse map, the
indeterminacy points ``O_i``, the exceptional lines ``S_i`` (with
``F(S_i) = A_i``), the inverse indeterminacy points ``A_i`` and the lines
``T_i`` collapsed by the inverse (with ``F^-1(T_i) = O_i``).
"""
import random
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Optional, Tuple

import toolz

from ._errors import (InvalidParameter, NotCollapsed, NoInverseAvailable, NonLinearFactor,
                      ExtensionNeeded, NonIsolatedFixedPoints, NotDivisible)
from ._field import QQ
from ._poly import (HPoly, APoly, UPoly, poly_gcd, poly_div_exact, poly_subst, apoly_gcd,
                    upoly_gcd, DEFAULT_TERM_CAP)
from ._linalg import nullspace


@dataclass(frozen=True)
class PPoint:
    """A point of the projective plane in canonical form (first nonzero coordinate 1)."""

    coords: tuple

    @classmethod
    def of(cls, coords, field=None):
        if field is not None:
            coords = [field.coerce(c) for c in coords]
        lead = next((c for c in coords if c), None)
        if lead is None:
            raise InvalidParameter("[0:0:0] is not a projective point")
        inv = 1 / lead
        return cls(tuple(c * inv for c in coords))

    @property
    def field(self):
        return self.coords[0].field

    def is_affine(self):
        return bool(self.coords[0])

    def affine(self):
        """Chart coordinates ``(x, y) = (x1/x0, x2/x0)``."""
        return self.coords[1], self.coords[2]

    def to_json(self):
        return [c.to_json() if hasattr(c, "to_json") else str(c) for c in self.coords]

    def __str__(self):
        return "[" + " : ".join(str(c) for c in self.coords) + "]"


class Indeterminate:
    """Marker returned by :func:`map_evaluate` where all components vanish."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Indeterminate"

    def __bool__(self):
        return False


INDETERMINATE = Indeterminate()


@dataclass(frozen=True)
class FamilyA:
    alpha0: object
    alpha1: object
    gamma0: object


@dataclass(frozen=True)
class FamilyB:
    alpha0: object
    alpha1: object
    beta2: object


@dataclass(frozen=True)
class Raw:
    name: str = "raw"


@dataclass(frozen=True)
class BiMap:
    """A birational map ``[F0 : F1 : F2]`` with optional closed-form data."""

    components: Tuple[HPoly, HPoly, HPoly]
    family: object = dataclass_field(default_factory=Raw)
    inverse: Optional[Tuple[HPoly, HPoly, HPoly]] = None
    indeterminacy: Tuple[PPoint, ...] = ()
    exceptional: Tuple[HPoly, ...] = ()
    inverse_indeterminacy: Tuple[PPoint, ...] = ()
    inverse_exceptional: Tuple[HPoly, ...] = ()

    @property
    def degree(self):
        return self.components[0].degree

    @property
    def field(self):
        return self.components[0].field

    def __call__(self, point):
        return map_evaluate(self, point)


def _variables(field):
    return tuple(HPoly.variable(field, i) for i in range(3))


def _common_field(*values):
    for v in values:
        f = getattr(v, "field", None)
        if f is not None and not f.is_rationals:
            return f
    for v in values:
        f = getattr(v, "field", None)
        if f is not None:
            return f
    return QQ


def make_family_A(alpha0, alpha1, gamma0, field=None):
    """
    The normalised family ``f(x, y) = (a0 + a1*x + y, x / (g0 + y))``.

    Homogeneously ``F = [x0(g0 x0 + x2) : (a0 x0 + a1 x1 + x2)(g0 x0 + x2) : x0 x1]``.

    Raises
    ------
    InvalidParameter
        If ``alpha1`` is zero.
    """
    K = field or _common_field(alpha0, alpha1, gamma0)
    a0, a1, g0 = K.coerce(alpha0), K.coerce(alpha1), K.coerce(gamma0)
    if not a1:
        raise InvalidParameter("alpha1 must be nonzero")
    x0, x1, x2 = _variables(K)
    s1 = x0 * g0 + x2
    s2 = x0 * g0 + x2 + x1 * a1
    components = (x0 * s1, (x0 * a0 + x1 * a1 + x2) * s1, x0 * x1)
    inverse = (x0 * (x0 + x2 * a1),
               x2 * (x0 * (g0 - a0) + x1),
               x0 * (x1 - x0 * a0 - x2 * (a1 * g0)))
    one, zero = K.one, K.zero
    return BiMap(
        components=components,
        family=FamilyA(a0, a1, g0),
        inverse=inverse,
        indeterminacy=(PPoint.of((one, zero, -g0)), PPoint.of((zero, one, -a1)), PPoint.of((zero, one, zero))),
        exceptional=(x0, s1, s2),
        inverse_indeterminacy=(PPoint.of((zero, one, zero)), PPoint.of((zero, zero, one)),
                               PPoint.of((-a1, -a1 * (a0 - g0), one))),
        inverse_exceptional=(x0 * (a0 - g0) - x1, x0 + x2 * a1, x0),
    )


def make_family_B(alpha0, alpha1, beta2, field=None):
    """The normalised family ``f(x, y) = (a0 + a1*x, (x + b2*y) / y)``."""
    K = field or _common_field(alpha0, alpha1, beta2)
    a0, a1, b2 = K.coerce(alpha0), K.coerce(alpha1), K.coerce(beta2)
    if not a1:
        raise InvalidParameter("alpha1 must be nonzero")
    x0, x1, x2 = _variables(K)
    components = (x0 * x2, (x0 * a0 + x1 * a1) * x2, x0 * (x1 + x2 * b2))
    inverse = ((x0 * (x2 - x0 * b2)) * a1,
               (x1 - x0 * a0) * (x2 - x0 * b2),
               x0 * (x1 - x0 * a0))
    one, zero = K.one, K.zero
    return BiMap(
        components=components,
        family=FamilyB(a0, a1, b2),
        inverse=inverse,
        indeterminacy=(PPoint.of((one, zero, zero)), PPoint.of((zero, zero, one)), PPoint.of((zero, one, zero))),
        exceptional=(x0, x2, x1),
        inverse_indeterminacy=(PPoint.of((zero, one, zero)), PPoint.of((zero, zero, one)),
                               PPoint.of((one, a0, b2))),
        inverse_exceptional=(x0 * a0 - x1, x0 * b2 - x2, x0),
    )


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def make_fractional_map(alpha0, alpha1, alpha2, beta0, beta1, beta2, gamma0, gamma2, field=None):
    """
    The fractional family ``(a0 + a1 x + a2 y, (b0 + b1 x + b2 y) / (g0 + g2 y))``.

    Returned as a Raw map with its closed-form inverse and indeterminacy points.
    """
    K = field or _common_field(alpha0, alpha1, alpha2, beta0, beta1, beta2, gamma0, gamma2)
    a0, a1, a2, b0, b1, b2, g0, g2 = (K.coerce(v) for v in
                                      (alpha0, alpha1, alpha2, beta0, beta1, beta2, gamma0, gamma2))
    if not a1:
        raise InvalidParameter("alpha1 must be nonzero")
    if not g2:
        raise InvalidParameter("gamma2 must be nonzero")
    x0, x1, x2 = _variables(K)
    L = x0 * g0 + x2 * g2
    M = x0 * a0 + x1 * a1 + x2 * a2
    N = x0 * b0 + x1 * b1 + x2 * b2
    components = (x0 * L, M * L, x0 * N)
    # inverse: solve u = M/x0, v = N/L for the preimage
    num = x0 * (a1 * b0 - b1 * a0) + x1 * b1 - x2 * (a1 * g0)
    den = x2 * (a1 * g2) + x0 * (b1 * a2 - a1 * b2)
    inverse = (x0 * den * a1, (x1 - x0 * a0) * den - x0 * num * a2, x0 * num * a1)
    if any(c.is_zero() for c in inverse):
        inverse = None
    else:
        g = toolz.reduce(poly_gcd, inverse)
        if g.degree:
            inverse = tuple(poly_div_exact(c, g) for c in inverse)
    points = []
    zero, one = K.zero, K.one
    points.append(PPoint.of((zero, one, zero)))
    points.append(PPoint.of(_cross((one, zero, zero), (a0, a1, a2))))
    try:
        points.append(PPoint.of(_cross((g0, zero, g2), (b0, b1, b2))))
    except InvalidParameter:
        pass
    points = [p for p in toolz.unique(points) if all(not c.evaluate(p.coords) for c in components)]
    return BiMap(components=components, family=Raw("fractional"), inverse=inverse,
                 indeterminacy=tuple(points))


@dataclass(frozen=True)
class Conjugation:
    """The affine change of coordinates ``h`` with ``h^-1 o f o h`` normalised."""

    forward: BiMap
    backward: BiMap
    scale_x: object
    shift_x: object
    scale_y: object
    shift_y: object

    def to_json(self):
        return {"x": [self.scale_x.to_json(), self.shift_x.to_json()],
                "y": [self.scale_y.to_json(), self.shift_y.to_json()]}


def _affine_map(K, sx, tx, sy, ty):
    x0, x1, x2 = _variables(K)
    return BiMap(components=(x0, x1 * sx + x0 * tx, x2 * sy + x0 * ty), family=Raw("affine"),
                 inverse=(x0, (x1 - x0 * tx) * (1 / sx), (x2 - x0 * ty) * (1 / sy)))


def normalize_family_B(beta0, beta1, beta2, gamma0, gamma2, alpha0, alpha1, field=None):
    """
    Conjugate ``(a0 + a1 x, (b0 + b1 x + b2 y)/(g0 + g2 y))`` to family B.

    Uses ``h(x, y) = (b1 g2 x - c, b1 y - g0/g2)`` with
    ``c = (b0 g2 - b2 g0)/(b1 g2)``; the identity ``h^-1 o f o h = normalised``
    is checked by exact composition before returning.

    Returns
    -------
    (BiMap, Conjugation)
    """
    K = field or _common_field(beta0, beta1, beta2, gamma0, gamma2, alpha0, alpha1)
    b0, b1, b2, g0, g2, a0, a1 = (K.coerce(v) for v in (beta0, beta1, beta2, gamma0, gamma2, alpha0, alpha1))
    for name, value in (("beta1", b1), ("gamma2", g2), ("alpha1", a1)):
        if not value:
            raise InvalidParameter(f"{name} must be nonzero")
    scale = b1 * g2
    c = (b0 * g2 - b2 * g0) / scale
    h = _affine_map(K, scale, -c, b1, -g0 / g2)
    h_inv = map_inverse(h)
    normalized = make_family_B((a0 + c * (1 - a1)) / scale, a1, (b2 + g0) / scale)
    original = make_fractional_map(a0, a1, K.zero, b0, b1, b2, g0, g2)
    conjugated = map_compose(h_inv, map_compose(original, h))
    if not maps_equal(conjugated, normalized):
        raise InvalidParameter("conjugation did not produce the normalised family")
    return normalized, Conjugation(h, h_inv, scale, -c, b1, -g0 / g2)


def maps_equal(f, g):
    """Projective equality of two maps (components proportional by one scalar)."""
    if f.degree != g.degree:
        return False
    ratio = None
    for a, b in zip(f.components, g.components):
        if a.is_zero() or b.is_zero():
            if not (a.is_zero() and b.is_zero()):
                return False
            continue
        if set(a.terms) != set(b.terms):
            return False
        e = next(iter(a.terms))
        r = a.terms[e] / b.terms[e]
        if ratio is None:
            ratio = r
        elif r != ratio:
            return False
        if any(a.terms[k] != b.terms[k] * ratio for k in a.terms):
            return False
    return True


def identity_map(field=QQ):
    return BiMap(components=_variables(field), family=Raw("identity"), inverse=_variables(field))


def is_identity(f):
    return maps_equal(f, identity_map(f.field))


def map_evaluate(f, p):
    """Canonical image of ``p``, or :data:`INDETERMINATE` when all components vanish there."""
    values = [c.evaluate(p.coords) for c in f.components]
    if not any(values):
        return INDETERMINATE
    return PPoint.of(values)


def _cancel(components, inner, term_cap):
    """Remove the common factor of composed components.

    The factor is supported on curves collapsed by the inner map, so trial
    division by its exceptional lines suffices when those are known.
    """
    removed = 0
    if inner.exceptional:
        for line in inner.exceptional:
            while all(c.is_zero() or _divides(line, c) for c in components) and any(
                    not c.is_zero() for c in components):
                components = tuple(c if c.is_zero() else poly_div_exact(c, line) for c in components)
                removed += line.degree
        return components, removed
    nonzero = [c for c in components if not c.is_zero()]
    g = toolz.reduce(poly_gcd, nonzero)
    if g.degree:
        components = tuple(c if c.is_zero() else poly_div_exact(c, g) for c in components)
        removed = g.degree
    return components, removed


def _divides(line, c):
    try:
        poly_div_exact(c, line)
    except NotDivisible:
        return False
    return True


def map_compose(f, g, term_cap=DEFAULT_TERM_CAP, with_cancelled=False):
    """
    The reduced composition ``f o g``.

    Components are ``f_i(g0, g1, g2)`` divided by their common factor; the
    degree drops by the degree of that factor. With ``with_cancelled`` the
    cancelled degree is returned too.
    """
    raw = tuple(poly_subst(c, *g.components, term_cap=term_cap) for c in f.components)
    target = f.degree * g.degree
    components, removed = _cancel(raw, g, term_cap)
    degree = target - removed
    components = tuple(HPoly(c.field, c.terms, degree) if c.is_zero() else c for c in components)
    h = BiMap(components=components, family=Raw("composition"))
    return (h, removed) if with_cancelled else h


def map_power(f, n, term_cap=DEFAULT_TERM_CAP):
    """The reduced n-th iterate, built as ``F^n = F^(n-1) o F``."""
    result = f
    for _ in range(n - 1):
        result = map_compose(result, f, term_cap=term_cap)
    return result


def degree_sequence(f, n_max, method="line", seed=0, term_cap=DEFAULT_TERM_CAP, degree_cap=None):
    """
    Degrees ``d_1 .. d_n_max`` of the reduced iterates of ``f``.

    Parameters
    ----------
    method : {"line", "compose"}
        "line" restricts the map to random lines over two large prime fields
        and iterates binary forms; "compose" builds every iterate exactly.
    degree_cap : int, optional
        Stop (without error) once a degree exceeds this bound. Only honoured by
        the line method.

    Raises
    ------
    ResourceLimit
        When an intermediate object exceeds ``term_cap`` terms. Under the line
        method the objects are binary forms, so the cap bounds the degree: a
        degree-``d`` iterate counts as ``d + 1`` terms.
    BadReduction
        When every prime tried for the line method fails to reduce the map.
    """
    if n_max < 1:
        raise InvalidParameter("n_max must be at least 1")
    if method == "line":
        from ._modular import line_degrees

        return line_degrees(f.components, n_max, seed=seed, degree_cap=degree_cap, term_cap=term_cap)
    if method != "compose":
        raise InvalidParameter(f"unknown degree method {method!r}")
    degrees = [f.degree]
    current = f
    for _ in range(n_max - 1):
        current = map_compose(current, f, term_cap=term_cap)
        degrees.append(current.degree)
    return degrees


def jacobian_determinant(f):
    F = f.components
    d = [[F[i].partial(j) for j in range(3)] for i in range(3)]
    return (d[0][0] * (d[1][1] * d[2][2] - d[1][2] * d[2][1])
            - d[0][1] * (d[1][0] * d[2][2] - d[1][2] * d[2][0])
            + d[0][2] * (d[1][0] * d[2][1] - d[1][1] * d[2][0]))


def _split_binary_form(form):
    """Linear factors of a form in ``x0, x1`` only (returns lines, leftover)."""
    from ._factor import roots_in_field

    K = form.field
    lines = []
    k = form.variable_valuation(0)
    if k:
        lines.extend([HPoly.variable(K, 0)] * k)
        form = form.divide_variable(0, k)
    # dehomogenise at x0 = 1: a univariate polynomial in x1
    coeffs = [K.zero] * (form.degree + 1)
    for e, c in form.terms.items():
        coeffs[e[1]] = c
    poly = UPoly(K, coeffs)
    roots, rest = roots_in_field(poly)
    for r, multiplicity in roots:
        lines.extend([HPoly.linear(K, (-r, K.one, K.zero))] * multiplicity)
    return lines, rest


def _linear_factors(J):
    """Split a form into lines over its field, or raise NonLinearFactor."""
    from ._factor import roots_in_field

    K = J.field
    lines = []
    for i in (0, 1, 2):
        k = J.variable_valuation(i)
        if k:
            lines.extend([HPoly.variable(K, i)] * k)
            J = J.divide_variable(i, k)
    # lines with a nonzero x2 coefficient: intersect with x0 = 1, x1 = t for two values of t
    x2_degree = max((e[2] for e in J.terms), default=0)
    samples = []
    for t in range(16):
        if len(samples) == 2 or not x2_degree:
            break
        values = [K.zero] * (J.degree + 1)
        for e, c in J.terms.items():
            values[e[2]] = values[e[2]] + c * K.rational(t) ** e[1]
        restricted = UPoly(K, values)
        if restricted.degree == x2_degree:
            samples.append((K.rational(t), restricted))
    if len(samples) == 2:
        (t0, r0), (t1, r1) = samples
        roots0 = [r for r, _ in roots_in_field(r0)[0]]
        roots1 = [r for r, _ in roots_in_field(r1)[0]]
        for y0 in roots0:
            for y1 in roots1:
                # the line x2 = y0 x0 + (y1 - y0)/(t1 - t0) (x1 - t0 x0)
                slope = (y1 - y0) / (t1 - t0)
                candidate = HPoly.linear(K, (-(y0 - slope * t0), -slope, K.one))
                while J.degree and _divides(candidate, J):
                    J = poly_div_exact(J, candidate)
                    lines.append(candidate)
    if any(e[2] for e in J.terms):
        raise NonLinearFactor("Jacobian determinant has a non-linear factor", remainder=J)
    rest_lines, rest = _split_binary_form(J) if J.degree else ([], [])
    if rest:
        raise NonLinearFactor("Jacobian determinant has a non-linear factor", remainder=J)
    return lines + rest_lines


def exceptional_locus(f):
    """
    The exceptional lines of ``f``: distinct linear factors of its Jacobian
    determinant, each checked to collapse to a point.

    Family maps return their closed-form list ``S_0, S_1, S_2``.

    Raises
    ------
    NonLinearFactor
        If the determinant does not split into lines over the field.
    """
    if f.exceptional:
        return list(f.exceptional)
    J = jacobian_determinant(f)
    if J.is_zero():
        raise InvalidParameter("the Jacobian determinant vanishes identically; the map is not birational")
    lines = list(toolz.unique(l.normalized() for l in _linear_factors(J)))
    for line in lines:
        collapse_image(f, line)
    return lines


def _line_parametrization(s):
    K = s.field
    row = [s.terms.get(e, K.zero) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    basis = nullspace([row], 3, K)
    return basis[0], basis[1]


def collapse_image(f, s):
    """
    The point onto which ``f`` collapses the line ``s``.

    Samples ``P + t Q`` for ``t = 0, 1, 2, ...`` on a parametrisation of the
    line, skipping indeterminacy points, until three images are found.

    Raises
    ------
    NotCollapsed
        If two sampled images differ.
    """
    if s.degree != 1:
        raise InvalidParameter("collapse_image expects a line")
    P, Q = _line_parametrization(s)
    images = []
    t = 0
    while len(images) < 3 and t < 32:
        point = PPoint.of([p + q * t for p, q in zip(P, Q)])
        image = map_evaluate(f, point)
        if image is not INDETERMINATE:
            images.append(image)
        t += 1
    if not images:
        raise NotCollapsed(f"{s} lies in the indeterminacy locus")
    if any(img != images[0] for img in images[1:]):
        raise NotCollapsed(f"{s} is not collapsed: sampled images {', '.join(map(str, images))}")
    return images[0]


def map_inverse(f):
    """
    The inverse map with the roles of the closed-form data exchanged.

    Raises
    ------
    NoInverseAvailable
        For Raw maps without an attached inverse.
    """
    if f.inverse is None:
        raise NoInverseAvailable("no inverse attached to this map")
    return BiMap(components=tuple(f.inverse), family=Raw("inverse"), inverse=tuple(f.components),
                 indeterminacy=f.inverse_indeterminacy, exceptional=f.inverse_exceptional,
                 inverse_indeterminacy=f.indeterminacy, inverse_exceptional=f.exceptional)


def _evaluate_apoly_in_x(p, y0):
    """Restrict an affine polynomial to ``y = y0`` as a univariate polynomial in ``x``."""
    K = p.field
    coeffs = [K.zero] * (p.degree_in(0) + 1)
    for (ex, ey), c in p.terms.items():
        coeffs[ex] = coeffs[ex] + c * y0 ** ey
    return UPoly(K, coeffs)


def _strip_factor(h, g0):
    while True:
        g = apoly_gcd(h, g0)
        if g.is_constant():
            return h
        h = h.div_exact(g)


def _affine_fixed_points(g):
    from ._factor import roots_in_field, resultant_in_x

    K = g.field
    G0, G1, G2 = (c.dehomogenize() for c in g.components)
    x, y = APoly.x(K), APoly.y(K)
    P1 = G1 - x * G0
    P2 = G2 - y * G0
    common = apoly_gcd(P1, P2)
    if not common.is_constant():
        curve = _strip_factor(common, G0)
        if not curve.is_constant():
            raise NonIsolatedFixedPoints(f"fixed points fill the curve {curve}", curve=curve)
        P1, P2 = P1.div_exact(common), P2.div_exact(common)
    res = resultant_in_x(P1, P2)
    points, missing = [], []
    if res.is_zero():
        raise NonIsolatedFixedPoints("the fixed-point equations share a component")
    y_roots, y_rest = roots_in_field(res)
    missing.extend(y_rest)
    for y0, _ in y_roots:
        gx = upoly_gcd(_evaluate_apoly_in_x(P1, y0), _evaluate_apoly_in_x(P2, y0))
        if gx.is_zero():
            raise NonIsolatedFixedPoints(f"the line y = {y0} is fixed pointwise")
        x_roots, x_rest = roots_in_field(gx)
        missing.extend(x_rest)
        for x0, _ in x_roots:
            p = PPoint.of((K.one, x0, y0))
            if G0(x0, y0) and map_evaluate(g, p) == p:
                points.append(p)
    return points, missing


def fixed_points(f, periods=(1,)):
    """
    Affine points with ``f(p) = p`` (period 1) or ``f(f(p)) = p != f(p)`` (period 2).

    Returns
    -------
    list of (PPoint, int)

    Raises
    ------
    ExtensionNeeded
        When a coordinate is a root of an irreducible factor of degree two or
        more; the points found so far travel with the exception.
    NonIsolatedFixedPoints
        When the fixed points of an iterate fill a curve.
    """
    found, missing = [], []
    for period in periods:
        if period not in (1, 2):
            raise InvalidParameter("only periods 1 and 2 are supported")
        g = f if period == 1 else map_compose(f, f)
        points, rest = _affine_fixed_points(g)
        if period == 2:
            points = [p for p in points if map_evaluate(f, p) != p]
        found.extend((p, period) for p in points)
        missing.extend(rest)
    found = sorted(toolz.unique(found), key=lambda item: (item[1], [str(c) for c in item[0].coords]))
    if missing:
        raise ExtensionNeeded(f"fixed-point coordinates need the extension by {missing[0]}",
                              minimal_polynomial=missing[0], points=found)
    return found


def random_affine_points(field, count, seed=0, height=7):
    """Reproducible rational sample points ``[1 : x : y]``."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        x = Fraction(rng.randint(-height, height), rng.randint(1, height))
        y = Fraction(rng.randint(-height, height), rng.randint(1, height))
        out.append(PPoint.of((field.one, field.rational(x), field.rational(y))))
    return out


def reduce_map(f, reduction):
    """The map with every coefficient sent through ``reduction`` (a ring map to GF(p))."""
    target = reduction.target

    def red_poly(p):
        return p.map_coefficients(reduction, target)

    def red_point(p):
        return PPoint.of([reduction(c) for c in p.coords])

    return BiMap(components=tuple(red_poly(c) for c in f.components), family=f.family,
                 inverse=tuple(red_poly(c) for c in f.inverse) if f.inverse else None,
                 indeterminacy=tuple(red_point(p) for p in f.indeterminacy),
                 exceptional=tuple(red_poly(c) for c in f.exceptional),
                 inverse_indeterminacy=tuple(red_point(p) for p in f.inverse_indeterminacy),
                 inverse_exceptional=tuple(red_poly(c) for c in f.inverse_exceptional))
