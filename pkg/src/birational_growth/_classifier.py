"""Case detection for the two normalised families and the zero-entropy catalog."""
import json
from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache
from pathlib import Path
from typing import Optional, Tuple

import toolz

from ._entropy import GrowthClass, dynamical_degree
from ._errors import InvalidParameter, ParseError, ReducibleModulus, ValidationError
from ._field import QQ, NumberField, as_fraction
from ._maps import FamilyA, FamilyB, _common_field, make_family_A, make_family_B
from ._orbits import DEFAULT_MAX_STEPS, is_collision_locus, se_profile
from ._poly import UPoly
from ._utilities import log, warn

CATALOG_DIR = Path(__file__).parent / "fixtures" / "catalog"

DEFAULT_K_MAX = 16
DEFAULT_P_MAX = 32
ROOT_OF_UNITY_ORDER = 64

PARAMETERS = {"A": ("alpha0", "alpha1", "gamma0"), "B": ("alpha0", "alpha1", "beta2")}


def condition_k(alpha1, gamma0, k):
    """``alpha1^2 gamma0 (1 + alpha1 + ... + alpha1^(k-1)) + 1 == 0``, evaluated exactly."""
    if k < 1:
        raise InvalidParameter("condition k needs k >= 1")
    K = _common_field(alpha1, gamma0)
    a1, g0 = K.coerce(alpha1), K.coerce(gamma0)
    total, power = K.zero, K.one
    for _ in range(k):
        total = total + power
        power = power * a1
    return not (a1 * a1 * g0 * total + K.one)


def find_k(alpha1, gamma0, k_max=DEFAULT_K_MAX):
    """Smallest ``k <= k_max`` satisfying condition k, or None."""
    return next((k for k in range(1, k_max + 1) if condition_k(alpha1, gamma0, k)), None)


def find_p_A(f, p_max=DEFAULT_P_MAX, profile=None, seed=0):
    """
    Smallest ``p`` with ``F^p(A2) = O0`` on the blown-up plane, or None.

    ``A2 = O0`` gives 0 and the collision locus ``alpha1 = gamma0 = -1``
    gives 4 without tracking. Otherwise the ``A2`` orbit of the
    singular-elementary profile decides; ``profile`` may be passed in to
    share the work with :func:`dynamical_degree`.
    """
    if p_max < 0:
        raise InvalidParameter("p_max must be non-negative")
    if not isinstance(f.family, FamilyA):
        raise InvalidParameter("find_p_A needs a family-A map")
    if f.inverse_indeterminacy[2] == f.indeterminacy[0]:
        return 0
    if is_collision_locus(f):
        return 4 if p_max >= 4 else None
    if profile is None:
        profile = se_profile(f, max(p_max + 1, DEFAULT_MAX_STEPS), seed=seed)
    orbit = profile[2]
    if orbit.se and orbit.end == 0 and orbit.length - 1 <= p_max:
        return orbit.length - 1
    return None


def find_p_B(alpha0, beta2, alpha1, p_max=DEFAULT_P_MAX):
    """
    Smallest ``p`` with ``f^p(alpha0, beta2) = (0, 0)`` for
    ``f(x, y) = (alpha0 + alpha1 x, (x + beta2 y) / y)``, or None.

    The iteration stops as soon as ``y`` vanishes before the origin is hit.
    """
    if p_max < 0:
        raise InvalidParameter("p_max must be non-negative")
    K = _common_field(alpha0, beta2, alpha1)
    a0, b2, a1 = K.coerce(alpha0), K.coerce(beta2), K.coerce(alpha1)
    x, y = a0, b2
    for p in range(p_max + 1):
        if not x and not y:
            return p
        if not y:
            return None
        x, y = a0 + a1 * x, (x + b2 * y) / y
    return None


def is_root_of_unity(value, max_order=ROOT_OF_UNITY_ORDER):
    """Whether ``value != 1`` has finite multiplicative order at most ``max_order``."""
    if value == 1 or not value:
        return False
    power = value
    for _ in range(1, max_order):
        if power == 1:
            return True
        power = power * value
    return power == 1


def closed_form_charpoly(family, k=None, p=None):
    """
    The characteristic polynomial the case analysis predicts for ``(k, p)``.

    Family A: ``x^(p+1)(x^2-x-1) + x^2``, ``x^(2k+1)(x^2-x-1) + 1``,
    ``x^(p+1)(x^(2k+3) - x^(2k+2) - x^(2k+1) + 1) + x^(2k+3) - x^2 - x + 1``
    or ``x^2 - x - 1``. Family B: ``(x^(p+1) + 1)(x-1)^2(x+1)`` or ``(x-1)^2(x+1)``.
    """
    x = UPoly.x(QQ)
    one = UPoly.constant(QQ, 1)
    golden = x * x - x - 1
    if family == "B":
        base = (x - 1) * (x - 1) * (x + 1)
        return base if p is None else (x ** (p + 1) + 1) * base
    if k is None and p is None:
        return golden
    if k is None:
        return x ** (p + 1) * golden + x * x
    if p is None:
        return x ** (2 * k + 1) * golden + one
    return (x ** (p + 1) * (x ** (2 * k + 3) - x ** (2 * k + 2) - x ** (2 * k + 1) + 1)
            + x ** (2 * k + 3) - x * x - x + 1)


def in_zero_entropy_set(k, p):
    """Whether ``(k, p)`` is one of the family-A cases that can have zero entropy."""
    if p is None:
        return False
    if k is None:
        return p in (0, 1, 2)
    return p in (0, 1, 2) or (k, p) in ((1, 3), (2, 3), (1, 4))


def family_of(f):
    if isinstance(f.family, FamilyA):
        return "A", {"alpha0": f.family.alpha0, "alpha1": f.family.alpha1, "gamma0": f.family.gamma0}
    if isinstance(f.family, FamilyB):
        return "B", {"alpha0": f.family.alpha0, "alpha1": f.family.alpha1, "beta2": f.family.beta2}
    raise InvalidParameter("classification needs a family-tagged map")


@dataclass(frozen=True)
class CaseLabel:
    """Where a family map sits in the case analysis."""

    family: str
    k: Optional[int]
    p: Optional[int]
    growth: GrowthClass
    proposition: Optional[str]
    branch: Optional[str] = None
    degrees: Tuple[int, ...] = ()
    charpoly: Optional[UPoly] = None
    notes: Tuple[str, ...] = ()

    def to_json(self):
        out = {"family": self.family, "se_structure": {"k": self.k, "p": self.p},
               "proposition": self.proposition, "degrees": list(self.degrees)}
        out.update(self.growth.to_json())
        if self.charpoly is not None:
            out["charpoly"] = self.charpoly.to_json()
        if self.branch is not None:
            out["branch"] = self.branch
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def classify_map(f, k_max=DEFAULT_K_MAX, p_max=DEFAULT_P_MAX, seed=0, max_steps=DEFAULT_MAX_STEPS):
    """
    Detect ``(k, p)``, the growth class and the matching catalog entry of a family map.

    For the ``(2, 3)`` and ``(1, 4)`` cases, which are either periodic or
    quadratic, the computed degrees decide and ``branch`` records the outcome.
    """
    family, params = family_of(f)
    notes = []
    if family == "A":
        k = find_k(params["alpha1"], params["gamma0"], k_max)
        profile = se_profile(f, max(max_steps, p_max + 1, 2 * k_max + 2), seed=seed)
        p = find_p_A(f, p_max, profile=profile, seed=seed)
    else:
        k = None
        profile = None
        p = find_p_B(params["alpha0"], params["beta2"], params["alpha1"], p_max)
    dyn = dynamical_degree(f, max_steps, seed=seed, profile=profile)
    if dyn.discrepancy:
        notes.append(dyn.discrepancy)
    expected = closed_form_charpoly(family, k, p)
    if dyn.charpoly != expected:
        notes.append(f"the orbit lists give {dyn.charpoly}, the case analysis predicts {expected}")
    growth = dyn.growth
    branch = None
    if family == "A" and (k, p) in ((2, 3), (1, 4)):
        branch = "periodic" if growth.kind == "bounded" else growth.kind
    proposition = None
    if growth.kind != "exponential":
        entry = match_catalog(f)
        if entry is None:
            warn("Classify", "zero-entropy map with no matching catalog entry")
            notes.append("no catalog entry matches these parameters")
        else:
            proposition = entry.name
            if entry.expected.get("growth") not in (None, growth.kind):
                notes.append(f"catalog entry {entry.name} expects {entry.expected['growth']} growth")
    elif family == "A" and in_zero_entropy_set(k, p):
        notes.append(f"(k, p) = ({k}, {p}) admits zero entropy but the degrees grow exponentially")
    log("Classify", f"family {family}, k = {k}, p = {p}, {growth.kind}, entry {proposition}")
    return CaseLabel(family, k, p, growth, proposition, branch, dyn.degrees, dyn.charpoly, tuple(notes))


# catalog


@dataclass(frozen=True)
class CatalogEntry:
    """
    One zero-entropy case: its parameter constraints, a representative map
    and the fibrations and first integrals known for that representative.

    Constraints are polynomials in the family parameters (and an auxiliary
    ``omega`` when the case is parametrised by a root of ``auxiliary``) that
    must vanish; ``nonvanishing`` polynomials must not. ``predicates`` holds
    conditions that are not polynomial: ``p`` (an int, ``"positive"`` or
    null for family B) and ``alpha1_root_of_unity``.
    """

    name: str
    family: str
    group: str
    summary: str
    field: NumberField
    params: dict
    constraints: Tuple[str, ...] = ()
    nonvanishing: Tuple[str, ...] = ()
    auxiliary: Optional[str] = None
    predicates: dict = dataclass_field(default_factory=dict)
    expected: dict = dataclass_field(default_factory=dict)
    fibrations: Tuple[dict, ...] = ()
    first_integrals: Tuple[dict, ...] = ()
    transverse: Tuple[Tuple[str, str], ...] = ()

    @property
    def weight(self):
        return len(self.constraints) + len(self.predicates) + (self.auxiliary is not None)

    def representative(self):
        from ._factor import coefficient_from_json

        values = [coefficient_from_json(self.params[name], self.field) for name in PARAMETERS[self.family]]
        make = make_family_A if self.family == "A" else make_family_B
        return make(*values, field=self.field)

    def fibration_data(self):
        """``[(name, Fibration, Mobius), ...]`` over the representative's field."""
        from ._fibrations import fibration_from_json

        out = []
        for item in self.fibrations:
            V, psi = fibration_from_json(item, self.field)
            out.append((item["name"], V, psi))
        return out

    def first_integral_data(self, f=None, term_cap=None):
        """
        ``[(name, Fibration), ...]``: integrals given explicitly, or built from
        a named fibration with :func:`build_first_integral`.
        """
        from ._fibrations import build_first_integral, fibration_from_json

        f = f or self.representative()
        fibrations = {name: (V, psi) for name, V, psi in self.fibration_data()}
        out = []
        for item in self.first_integrals:
            if "of" in item:
                V, psi = fibrations[item["of"]]
                kwargs = {} if term_cap is None else {"term_cap": term_cap}
                W = build_first_integral(f, V, psi, item.get("order") or psi.order(), verify=False, **kwargs)
            else:
                W, _ = fibration_from_json(item, self.field)
            out.append((item["name"], W))
        return out

    def matches(self, f):
        """Whether the parameters of ``f`` satisfy every condition of this entry."""
        family, params = family_of(f)
        if family != self.family:
            return False
        K = f.field
        if not self._predicates_hold(params):
            return False
        if self.auxiliary is None:
            return self._polynomials_hold(params, K)
        return any(self._polynomials_hold(toolz.assoc(params, "omega", omega), K)
                   for omega in self._auxiliary_roots(params, K))

    def _predicates_hold(self, params):
        for key, wanted in self.predicates.items():
            if key == "p":
                p = find_p_B(params["alpha0"], params["beta2"], params["alpha1"])
                if wanted == "positive":
                    if p is None or p < 1:
                        return False
                elif p != wanted:
                    return False
            elif key == "alpha1_root_of_unity":
                if is_root_of_unity(params["alpha1"]) != wanted:
                    return False
            else:
                raise ValidationError(f"unknown predicate {key!r}", f"{self.name}.predicates")
        return True

    def _polynomials_hold(self, params, K):
        return (all(not _evaluate(c, params, K) for c in self.constraints)
                and all(_evaluate(c, params, K) for c in self.nonvanishing))

    def _auxiliary_roots(self, params, K):
        from ._factor import PARAMETER_SYMBOLS, roots_in_field, sympy_to_upoly

        expr = _substituted(self.auxiliary, params)
        poly = sympy_to_upoly(expr, K, var=PARAMETER_SYMBOLS["omega"])
        roots, _ = roots_in_field(poly)
        return [r for r, _ in roots]

    def to_json(self):
        out = {"name": self.name, "family": self.family, "group": self.group, "summary": self.summary,
               "params": dict(self.params), "constraints": list(self.constraints),
               "nonvanishing": list(self.nonvanishing), "predicates": dict(self.predicates),
               "expected": dict(self.expected), "fibrations": list(self.fibrations),
               "first_integrals": list(self.first_integrals), "transverse": [list(t) for t in self.transverse]}
        if not self.field.is_rationals:
            out["field"] = {"modulus": [str(c) for c in self.field.modulus], "name": self.field.name}
        if self.auxiliary is not None:
            out["auxiliary"] = self.auxiliary
        return out


@lru_cache(maxsize=None)
def _parsed(text):
    from ._factor import PARAMETER_SYMBOLS, parse_expression

    return parse_expression(text, QQ, tuple(PARAMETER_SYMBOLS))


def _substituted(text, params):
    from ._factor import PARAMETER_SYMBOLS, elem_to_sympy

    return _parsed(text).subs({PARAMETER_SYMBOLS[name]: elem_to_sympy(value) for name, value in params.items()})


def _evaluate(text, params, K):
    from ._factor import sympy_to_elem

    return sympy_to_elem(_substituted(text, params), K)


_ENTRY_KEYS = {"name", "family", "group", "summary", "field", "params", "constraints", "nonvanishing",
               "auxiliary", "predicates", "expected", "fibrations", "first_integrals", "transverse"}


def entry_from_json(data, source="<catalog>"):
    """
    Validate and build a :class:`CatalogEntry`.

    ``field.modulus`` lists the coefficients of the defining polynomial from
    the constant term up; without ``field`` the entry lives over the rationals.
    """
    if not isinstance(data, dict):
        raise ValidationError("a catalog entry must be an object", source)
    unknown = set(data) - _ENTRY_KEYS
    if unknown:
        raise ValidationError(f"unknown keys {sorted(unknown)}", source)
    for key in ("name", "family", "params"):
        if key not in data:
            raise ValidationError(f"missing key {key!r}", source)
    family = data["family"]
    if family not in PARAMETERS:
        raise ValidationError(f"family must be 'A' or 'B', got {family!r}", f"{source}.family")
    missing = set(PARAMETERS[family]) - set(data["params"])
    if missing:
        raise ValidationError(f"missing parameters {sorted(missing)}", f"{source}.params")
    field = QQ
    if data.get("field"):
        spec = data["field"]
        try:
            field = NumberField([as_fraction(c) for c in spec["modulus"]], name=spec.get("name", "a"))
        except (KeyError, TypeError, InvalidParameter, ReducibleModulus) as exc:
            raise ValidationError(f"bad field: {exc}", f"{source}.field") from exc
    return CatalogEntry(
        name=data["name"], family=family, group=data.get("group", data["name"]), summary=data.get("summary", ""),
        field=field, params=dict(data["params"]), constraints=tuple(data.get("constraints", ())),
        nonvanishing=tuple(data.get("nonvanishing", ())), auxiliary=data.get("auxiliary"),
        predicates=dict(data.get("predicates", {})), expected=dict(data.get("expected", {})),
        fibrations=tuple(data.get("fibrations", ())), first_integrals=tuple(data.get("first_integrals", ())),
        transverse=tuple(tuple(pair) for pair in data.get("transverse", ())),
    )


@lru_cache(maxsize=None)
def zero_entropy_catalog(directory=None):
    """
    Every zero-entropy case descriptor shipped with the package, sorted by name.

    Raises
    ------
    ParseError
        If a fixture is not valid JSON.
    """
    directory = Path(directory) if directory else CATALOG_DIR
    entries = []
    for path in sorted(directory.glob("*.json")):
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path.name}: {exc}") from exc
        entries.append(entry_from_json(data, path.name))
    return tuple(sorted(entries, key=lambda e: e.name))


def catalog_entry(name):
    for entry in zero_entropy_catalog():
        if entry.name == name:
            return entry
    raise InvalidParameter(f"no catalog entry named {name!r}")


def match_catalog(f, entries=None):
    """
    The catalog entry whose conditions ``f`` satisfies, preferring the most
    specific one (most conditions), or None.
    """
    candidates = [e for e in (entries or zero_entropy_catalog()) if e.matches(f)]
    if not candidates:
        return None
    return max(candidates, key=lambda e: (e.weight, e.name))
