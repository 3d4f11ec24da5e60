"""Orbits of the inverse indeterminacy points under the induced map.

A point of the blown-up plane is a :class:`JetPoint`: an ordinary point
(depth 0), a direction ``[u:v]`` on the fiber over a blown-up point (depth 1),
or a direction on the fiber over such a fiber point (depth 2). The induced
map is evaluated by pushing short curve germs through the plane map and
reading the image off the lowest orders in the germ parameter.

Exact orbits of a quadratic map double their coordinate height at every
step, so every orbit is first walked modulo two large primes. The exact walk
then runs without limits up to the predicted end and under a bit budget
beyond it.
"""
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Tuple

from ._errors import (IndeterminateJet, TowerTooDeep, NotOnCollapsedCurve, InvalidParameter,
                      ZeroInverse, ResourceLimit)
from ._maps import FamilyA, PPoint, collapse_image, exceptional_locus, reduce_map, _divides
from ._modular import BadReduction, reductions
from ._poly import UPoly, poly_div_exact
from ._utilities import log, bit_height

DEFAULT_JET_ORDER = 6
MAX_JET_ORDER = 12
DEFAULT_MAX_STEPS = 64
HEIGHT_BUDGET = 2048

# (g1, g2, h1, h2): first-order direction of a plane germ and second-order terms
GERM_VARIANTS = (
    (1, Fraction(7, 13), Fraction(3, 5), Fraction(-2, 9)),
    (1, Fraction(-5, 11), Fraction(2, 7), Fraction(5, 3)),
    (Fraction(2, 3), 1, Fraction(-4, 7), Fraction(1, 2)),
)


def _canonical_pair(u, v):
    if u:
        inv = 1 / u
    elif v:
        inv = 1 / v
    else:
        raise IndeterminateJet("[0:0] is not a fiber direction")
    return (u * inv, v * inv)


def _pair_to_json(pair):
    if pair is None:
        return None
    return [c.to_json() if hasattr(c, "to_json") else str(c) for c in pair]


@dataclass(frozen=True)
class JetPoint:
    """A point of the plane or of an exceptional fiber over a blown-up point.

    Identity is the center plus the canonical fiber directions; the germ that
    produced the point travels along in ``jet`` but is not compared.
    """

    center: PPoint
    depth: int = 0
    direction: Optional[tuple] = None
    direction2: Optional[tuple] = None
    jet: Optional[tuple] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not 0 <= self.depth <= 2:
            raise TowerTooDeep(f"depth {self.depth} is beyond the supported tower")
        if (self.direction is None) != (self.depth < 1) or (self.direction2 is None) != (self.depth < 2):
            raise InvalidParameter(f"a depth-{self.depth} point needs exactly {self.depth} fiber directions")

    @property
    def field(self):
        return self.center.field

    def base(self):
        """The point this one lies over (one level down the tower)."""
        if self.depth == 0:
            return None
        if self.depth == 1:
            return JetPoint(self.center)
        return JetPoint(self.center, 1, self.direction)

    def to_json(self):
        return {"center": self.center.to_json(), "depth": self.depth,
                "direction": _pair_to_json(self.direction), "direction2": _pair_to_json(self.direction2)}

    def __str__(self):
        if self.depth == 0:
            return str(self.center)
        text = f"[{self.direction[0]}:{self.direction[1]}] over {self.center}"
        if self.depth == 2:
            text = f"[{self.direction2[0]}:{self.direction2[1]}] over {text}"
        return text


@dataclass(frozen=True)
class BlowupRegistry:
    """Blown-up points in blow-up order, each with a unique label."""

    entries: Tuple[Tuple[str, JetPoint], ...] = ()

    def label_of(self, point):
        for label, center in self.entries:
            if center == point:
                return label
        return None

    def center_label(self, center):
        return self.label_of(JetPoint(center))

    def fiber_label(self, point):
        """Label of the exceptional fiber a point lies on, if any."""
        base = point.base()
        return None if base is None else self.label_of(base)

    def register(self, label, point):
        if self.label_of(point) is not None:
            raise InvalidParameter(f"{point} is already blown up")
        if any(existing == label for existing, _ in self.entries):
            raise InvalidParameter(f"label {label} is already in use")
        return BlowupRegistry(self.entries + ((label, replace(point, jet=None)),))

    def map_points(self, fn):
        return BlowupRegistry(tuple((label, fn(point)) for label, point in self.entries))

    def to_json(self):
        return [{"label": label, "center": point.center.to_json(), "direction": _pair_to_json(point.direction),
                 "direction2": _pair_to_json(point.direction2)} for label, point in self.entries]


def _chart(center):
    i = next(index for index, c in enumerate(center.coords) if c)
    j, k = (m for m in range(3) if m != i)
    return i, j, k


def _germ(point, variant):
    """Projective coordinates (UPolys in t) of a germ through ``point``."""
    K = point.field
    g1, g2, h1, h2 = (K.rational(Fraction(v)) for v in variant)
    t = UPoly.x(K)
    t2 = t * t
    if point.depth == 0:
        a, b = t * g1 + t2 * h1, t * g2 + t2 * h2
    elif point.depth == 1:
        u, v = point.direction
        a, b = t * u + t2 * h1, t * v + t2 * h2
    else:
        u, v = point.direction
        p, q = point.direction2
        if u:
            a = t * p + t2 * h1
            b = a * ((t * q + t2 * h2) + v / u)
        else:
            b = t * p + t2 * h1
            a = (t * q + t2 * h2) * b
    i, j, k = _chart(point.center)
    coords = [None, None, None]
    coords[i] = UPoly.constant(K, 1)
    coords[j] = a + point.center.coords[j]
    coords[k] = b + point.center.coords[k]
    return coords


def _apply(components, germ):
    out = []
    for comp in components:
        value = comp.evaluate(germ)
        out.append(value if isinstance(value, UPoly) else UPoly(comp.field, [value]))
    return out


def _check_order(order, jet_order):
    if order <= jet_order:
        return
    if order <= max(jet_order, MAX_JET_ORDER):
        log("Jet", f"raising the jet order from {jet_order} to {MAX_JET_ORDER}")
        return
    raise IndeterminateJet(f"all components vanish to order {MAX_JET_ORDER}")


def _lowest_pair(first, second):
    """Canonical ratio of the lowest-order coefficients of two series, with that order.

    Each argument is ``(order, lead)`` with ``order`` None for the zero series.
    """
    (o1, c1), (o2, c2) = first, second
    if o1 is None and o2 is None:
        raise IndeterminateJet("the germ is mapped into the blown-up point")
    if o2 is None or (o1 is not None and o1 < o2):
        return _canonical_pair(c1, c1 * 0), o1
    if o1 is None or o2 < o1:
        return _canonical_pair(c2 * 0, c2), o2
    return _canonical_pair(c1, c2), o1


def _series(p, shift=0, scale=None):
    v = p.valuation()
    if v is None:
        return None, None
    lead = p[v] if scale is None else p[v] / scale
    return v - shift, lead


def _image_of_germ(polys, registry, jet_order):
    orders = [p.valuation() for p in polys if not p.is_zero()]
    if not orders:
        raise IndeterminateJet("all components vanish identically on the germ")
    m = min(orders)
    _check_order(m, jet_order)
    center = PPoint.of([p[m] for p in polys])
    if registry.center_label(center) is None:
        return JetPoint(center)
    i, j, k = _chart(center)
    lead = polys[i][m]
    na = polys[j] - polys[i] * center.coords[j]
    nb = polys[k] - polys[i] * center.coords[k]
    direction, order = _lowest_pair(_series(na), _series(nb))
    _check_order(order, jet_order)
    point = JetPoint(center, 1, direction)
    if registry.label_of(point) is None:
        return point
    # coordinates on the blow-up of the fiber point: (a, s = b/a) or (r = a/b, b)
    u, v = direction
    if u:
        normal = _series(na, shift=m, scale=lead)
        d = nb - na * v
        va = na.valuation()
        along = (None, None) if d.is_zero() else (d.valuation() - va, d[d.valuation()] / na[va])
    else:
        normal = _series(nb, shift=m, scale=lead)
        vb = nb.valuation()
        along = (None, None) if na.is_zero() else (na.valuation() - vb, na[na.valuation()] / nb[vb])
    direction2, _ = _lowest_pair(normal, along)
    deep = JetPoint(center, 2, direction, direction2)
    if registry.label_of(deep) is not None:
        raise TowerTooDeep(f"{deep} is blown up; depth 3 is not supported")
    return deep


def jet_evaluate(f, p, registry=None, jet_order=DEFAULT_JET_ORDER):
    """
    Image of a point of the blown-up plane under the induced map.

    Three germs through ``p`` with different higher-order terms are pushed
    through ``f``; their images must agree.

    Raises
    ------
    IndeterminateJet
        When the germs disagree or vanish identically. ``center`` is set on
        the exception when only the fiber direction disagrees.
    TowerTooDeep
        When the image would lie on a fiber over a depth-2 point.
    """
    registry = registry or BlowupRegistry()
    results = []
    jets = []
    for variant in GERM_VARIANTS:
        germ = _germ(p, variant)
        polys = _apply(f.components, germ)
        jets.append(tuple(polys))
        results.append(_image_of_germ(polys, registry, jet_order))
    first = results[0]
    if any(r.center != first.center for r in results[1:]):
        raise IndeterminateJet(f"the image of {p} depends on the germ")
    if any(r != first for r in results[1:]):
        raise IndeterminateJet(f"the fiber direction of the image of {p} depends on the germ",
                               center=first.center)
    return replace(first, jet=jets[0])


def _line_order(poly, line):
    order = 0
    while not poly.is_zero() and _divides(line, poly):
        poly = poly_div_exact(poly, line)
        order += 1
    return order, poly


def fiber_direction_image(f, p, registry):
    """
    Image on an exceptional fiber of a point on a curve collapsed onto a blown-up point.

    With ``c`` the blown-up image of the curve ``S`` through ``p`` and chart
    index ``i``, the fiber coordinates of the image are
    ``(F_j - c_j F_i, F_k - c_k F_i)``, both divided by ``S`` to their common
    vanishing order and evaluated at ``p``.

    Raises
    ------
    NotOnCollapsedCurve
        If ``p`` is a fiber point or lies on no curve collapsed onto a
        blown-up point.
    """
    if p.depth != 0:
        raise NotOnCollapsedCurve(f"{p} is a fiber point, not a point of a collapsed curve")
    F = f.components
    for line in exceptional_locus(f):
        if line.evaluate(p.center.coords):
            continue
        c = collapse_image(f, line)
        if registry.center_label(c) is None:
            continue
        i, j, k = _chart(c)
        na = F[j] - F[i] * c.coords[j]
        nb = F[k] - F[i] * c.coords[k]
        oa, qa = _line_order(na, line)
        ob, qb = _line_order(nb, line)
        m = min(o for o, q in ((oa, na), (ob, nb)) if not q.is_zero())
        if oa > m:
            qa = qa * line ** (oa - m)
        if ob > m:
            qb = qb * line ** (ob - m)
        u = qa.evaluate(p.center.coords) if not na.is_zero() else c.coords[0] * 0
        v = qb.evaluate(p.center.coords) if not nb.is_zero() else c.coords[0] * 0
        if not u and not v:
            raise IndeterminateJet(f"{p} is an indeterminacy point of the induced map")
        point = JetPoint(c, 1, _canonical_pair(u, v))
        if registry.label_of(point) is not None:
            # the image sits on a second-level fiber; only the germ carries that order
            return jet_evaluate(f, p, registry)
        return point
    raise NotOnCollapsedCurve(f"{p} lies on no curve collapsed onto a blown-up point")


@dataclass(frozen=True)
class Reached:
    index: int

    def to_json(self):
        return {"kind": "reached", "indeterminacy_point": self.index}


@dataclass(frozen=True)
class Collapsed:
    reason: str

    def to_json(self):
        return {"kind": "collapsed", "reason": self.reason}


@dataclass(frozen=True)
class Truncated:
    reason: str
    height_limited: bool = False

    def to_json(self):
        return {"kind": "truncated", "reason": self.reason}


@dataclass(frozen=True)
class OrbitRecord:
    start: int
    points: Tuple[JetPoint, ...]
    terminal: object

    @property
    def is_se(self):
        return isinstance(self.terminal, Reached)

    @property
    def length(self):
        return len(self.points)

    def to_json(self, registry=None):
        registry = registry or BlowupRegistry()
        points = [dict(point.to_json(), step=step, fiber=registry.fiber_label(point),
                       label=registry.label_of(point)) for step, point in enumerate(self.points)]
        return {"start": f"A{self.start}", "points": points, "terminal": self.terminal.to_json()}


def _height(point):
    values = list(point.center.coords) + list(point.direction or ()) + list(point.direction2 or ())
    return sum(bit_height(v) for v in values)


def _walk(f, start, point, registry, max_steps, jet_order, budget=None, budget_from=0):
    points = [point]
    seen = {point}
    for step in range(max_steps + 1):
        if point.depth == 0:
            for index, o in enumerate(f.indeterminacy):
                if o == point.center and registry.center_label(o) is None:
                    return OrbitRecord(start, tuple(points), Reached(index))
        if step == max_steps:
            return OrbitRecord(start, tuple(points), Truncated(f"no indeterminacy point within {max_steps} steps"))
        try:
            point = jet_evaluate(f, point, registry, jet_order)
        except IndeterminateJet as exc:
            if exc.center is not None:
                return OrbitRecord(start, tuple(points),
                                   Collapsed(f"merges into the blown-up point {exc.center} at step {step + 1}"))
            return OrbitRecord(start, tuple(points), Truncated(str(exc)))
        except TowerTooDeep as exc:
            return OrbitRecord(start, tuple(points), Truncated(str(exc)))
        if point in seen:
            return OrbitRecord(start, tuple(points), Collapsed(f"revisits {point} at step {step + 1}"))
        if budget is not None and step + 1 >= budget_from and _height(point) > budget:
            return OrbitRecord(start, tuple(points),
                               Truncated(f"coordinate height exceeds {budget} bits at step {step + 1}", True))
        points.append(point)
        seen.add(point)


def _reduce_point(point, reduction):
    def pair(values):
        return None if values is None else _canonical_pair(*(reduction(c) for c in values))

    return JetPoint(PPoint.of([reduction(c) for c in point.center.coords]), point.depth,
                    pair(point.direction), pair(point.direction2))


def _screen(f, start, point, registry, max_steps, jet_order, seed):
    """Walk the orbit modulo two primes; None unless both walks agree."""
    records = []
    try:
        for reduction in reductions(f.field, seed=seed, count=2):
            reduced = registry.map_points(lambda q: _reduce_point(q, reduction))
            records.append(_walk(reduce_map(f, reduction), start, _reduce_point(point, reduction), reduced,
                                 max_steps, jet_order))
    except (BadReduction, ZeroInverse, ResourceLimit, InvalidParameter) as exc:
        log(f"Orbit A{start}", f"modular screening skipped: {exc}")
        return None
    signatures = {(type(r.terminal).__name__, getattr(r.terminal, "index", None), r.length) for r in records}
    if len(signatures) != 1:
        log(f"Orbit A{start}", "modular screening disagrees between primes")
        return None
    return records[0]


def track_orbit(f, start, max_steps=DEFAULT_MAX_STEPS, registry=None, jet_order=DEFAULT_JET_ORDER, seed=0,
                height_budget=HEIGHT_BUDGET, screen=True):
    """
    Orbit of ``A_start`` under the induced map.

    Parameters
    ----------
    f : BiMap
        A family-tagged map (the points ``A_i`` and ``O_j`` must be known).
    start : int
        0, 1 or 2.
    max_steps : int
        Maximal number of applications of the induced map.
    registry : BlowupRegistry, optional
        Blown-up points; by default those of the orbits of ``A_0 .. A_{start-1}``
        that are singular elementary, as built by :func:`se_profile`.

    Returns
    -------
    OrbitRecord
        Its terminal is ``Reached(j)`` when the orbit ends at ``O_j``.
    """
    if start not in (0, 1, 2):
        raise InvalidParameter(f"start must be 0, 1 or 2, not {start}")
    if max_steps < 1:
        raise InvalidParameter("max_steps must be at least 1")
    if len(f.inverse_indeterminacy) != 3:
        raise InvalidParameter("orbit tracking needs a family-tagged map")
    if registry is None:
        registry = _profile(f, range(start), max_steps, jet_order, seed, height_budget, screen)[1]
    point = JetPoint(f.inverse_indeterminacy[start])
    prediction = _screen(f, start, point, registry, max_steps, jet_order, seed) if screen else None
    budget_from = 0
    if prediction is not None and not isinstance(prediction.terminal, Truncated):
        budget_from = prediction.length
    record = _walk(f, start, point, registry, max_steps, jet_order, height_budget, budget_from)
    terminal = record.terminal
    if isinstance(terminal, Truncated) and terminal.height_limited and prediction is not None:
        record = replace(record, terminal=Truncated(
            f"{_describe(prediction)} (modulo primes); exact orbit kept for {record.length - 1} steps", True))
    log(f"Orbit A{start}", f"{_describe(record)} after {record.length - 1} steps")
    return record


def _describe(record):
    terminal = record.terminal
    if isinstance(terminal, Reached):
        return f"reaches O{terminal.index}"
    return terminal.reason


@dataclass(frozen=True)
class OrbitSummary:
    start: int
    se: bool
    length: Optional[int]
    end: Optional[int]
    record: OrbitRecord
    note: Optional[str] = None

    def to_json(self, registry=None):
        out = {"start": f"A{self.start}", "se": self.se, "length": self.length,
               "end": None if self.end is None else f"O{self.end}", "orbit": self.record.to_json(registry)}
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class SEProfile:
    orbits: Tuple[OrbitSummary, ...]
    registry: BlowupRegistry

    def __getitem__(self, index):
        return self.orbits[index]

    def se_orbits(self):
        return [o for o in self.orbits if o.se]

    def to_json(self):
        return {"orbits": [o.to_json(self.registry) for o in self.orbits], "registry": self.registry.to_json()}


def _labels(start, length, next_e):
    if start == 1 and length > 1:
        return [f"G{i}" for i in range(length)], next_e
    return [f"E{next_e + i}" for i in range(length)], next_e + length


def is_collision_locus(f):
    """The family-A parameters ``alpha1 = gamma0 = -1`` with ``A2 != O0``."""
    family = f.family
    return (isinstance(family, FamilyA) and family.alpha1 == -1 and family.gamma0 == -1
            and f.inverse_indeterminacy[2] != f.indeterminacy[0])


def _profile(f, starts, max_steps, jet_order, seed, height_budget, screen):
    registry = BlowupRegistry()
    next_e = 0
    summaries = []
    for start in starts:
        record = track_orbit(f, start, max_steps, registry, jet_order, seed, height_budget, screen)
        note = None
        if start == 2 and is_collision_locus(f) and not (record.is_se and record.terminal.index == 0
                                                        and record.length == 5):
            note = "collision locus alpha1 = gamma0 = -1: A2 reaches O0 after four steps"
            summaries.append(OrbitSummary(start, True, 5, 0, record, note))
            continue
        if record.is_se:
            labels, next_e = _labels(start, record.length, next_e)
            for label, point in zip(labels, record.points):
                registry = registry.register(label, point)
            summaries.append(OrbitSummary(start, True, record.length, record.terminal.index, record, note))
        else:
            summaries.append(OrbitSummary(start, False, None, None, record, note))
    return summaries, registry


def se_profile(f, max_steps=DEFAULT_MAX_STEPS, jet_order=DEFAULT_JET_ORDER, seed=0,
               height_budget=HEIGHT_BUDGET, screen=True):
    """
    Singular-elementary profile of a family map.

    ``A0`` is tracked first and blown up when singular elementary; then
    ``A1`` (its orbit blown up when it ends at an indeterminacy point), then
    ``A2``. Each orbit that ends at ``O_j`` is reported with its length
    (number of points, both ends included) and ``j``.
    """
    summaries, registry = _profile(f, range(3), max_steps, jet_order, seed, height_budget, screen)
    return SEProfile(tuple(summaries), registry)
