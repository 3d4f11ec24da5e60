"""Map specifications: the JSON documents the command line reads maps from.

A specification names a coefficient field (``modulus``, lowest degree first,
and the ``generator`` name used in expressions) and either a family with its
parameters or three raw homogeneous components::

    {"family": "A", "params": {"alpha0": "1", "alpha1": "2", "gamma0": "3"}}

    {"modulus": [1, 0, 0, 1, 0, 0, 1], "family": "A",
     "params": {"alpha0": "-2*a^5 + a^3 - a^2 - a", "alpha1": "a", "gamma0": "a + a^4"}}

    {"family": "raw", "components": ["x0^2", "x0*x1", "x1*x2"]}
"""
import json
from dataclasses import dataclass
from typing import Optional, Tuple

import sympy
import toolz

from ._errors import (BirationalGrowthError, DegreeMismatch, InvalidParameter, ParseError, ReducibleModulus,
                      ValidationError)
from ._field import QQ, NumberField
from ._maps import (BiMap, Raw, make_family_A, make_family_B, make_fractional_map, normalize_family_B)
from ._poly import HPoly, poly_gcd

FAMILY_PARAMETERS = {
    "A": ("alpha0", "alpha1", "gamma0"),
    "B": ("alpha0", "alpha1", "beta2"),
    "fractional": ("alpha0", "alpha1", "alpha2", "beta0", "beta1", "beta2", "gamma0", "gamma2"),
    "raw": (),
}

NONZERO_PARAMETERS = {"A": ("alpha1",), "B": ("alpha1",), "fractional": ("alpha1", "gamma2")}

SPEC_KEYS = {"name", "family", "modulus", "generator", "params", "components", "inverse"}

RESERVED_NAMES = {"x", "y", "x0", "x1", "x2", "alpha0", "alpha1", "gamma0", "beta2", "omega"}


@dataclass(frozen=True)
class MapSpec:
    family: str
    field: NumberField
    params: Tuple[Tuple[str, object], ...] = ()
    components: Optional[Tuple[HPoly, HPoly, HPoly]] = None
    inverse: Optional[Tuple[HPoly, HPoly, HPoly]] = None
    name: Optional[str] = None

    @property
    def parameters(self):
        return dict(self.params)

    def build(self):
        """The :class:`BiMap` this specification describes."""
        values = [value for _, value in self.params]
        try:
            if self.family == "A":
                return make_family_A(*values, field=self.field)
            if self.family == "B":
                return make_family_B(*values, field=self.field)
            if self.family == "fractional":
                return make_fractional_map(*values, field=self.field)
        except InvalidParameter as exc:
            raise ValidationError(str(exc), "params") from exc
        return BiMap(components=self.components, family=Raw(self.name or "raw"), inverse=self.inverse)

    def normalized(self):
        """
        The map, brought to family B when it is a fractional map with ``alpha2 = 0``.

        Returns
        -------
        (BiMap, Conjugation or None)
        """
        p = self.parameters
        if self.family != "fractional" or p["alpha2"]:
            return self.build(), None
        try:
            return normalize_family_B(p["beta0"], p["beta1"], p["beta2"], p["gamma0"], p["gamma2"], p["alpha0"],
                                      p["alpha1"], field=self.field)
        except InvalidParameter as exc:
            raise ValidationError(str(exc), "params") from exc

    def to_json(self):
        out = {"family": self.family}
        if self.name is not None:
            out["name"] = self.name
        if self.field != QQ:
            out["modulus"] = [str(c) for c in self.field.modulus]
            out["generator"] = self.field.name
        if self.params:
            out["params"] = {name: value.to_json() for name, value in self.params}
        if self.components is not None:
            out["components"] = [c.to_json() for c in self.components]
        if self.inverse is not None:
            out["inverse"] = [c.to_json() for c in self.inverse]
        return out


def parse_map_spec(text):
    """
    Parse and validate a map specification.

    Parameters
    ----------
    text : bytes or str
        UTF-8 JSON.

    Raises
    ------
    ParseError
        If the text is not UTF-8 JSON; the message carries line and column.
    ValidationError
        If a key is unknown or missing or a value is inadmissible; the error
        carries the path of the offending field, e.g. ``params.alpha1``.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"map specification is not UTF-8: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return map_spec_from_json(data)


def map_spec_from_json(data):
    if not isinstance(data, dict):
        raise ValidationError("a map specification is a JSON object")
    unknown = set(data) - SPEC_KEYS
    if unknown:
        raise ValidationError(f"unknown key(s) {', '.join(sorted(unknown))}")
    family = data.get("family", "raw" if "components" in data else None)
    if family not in FAMILY_PARAMETERS:
        raise ValidationError(f"expected one of {', '.join(FAMILY_PARAMETERS)}, got {family!r}", "family")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise ValidationError("expected a string", "name")
    field = _field_from_json(data)
    if family == "raw":
        if "params" in data:
            raise ValidationError("a raw map takes components, not parameters", "params")
        components = _components_from_json(data.get("components"), field, "components")
        inverse = None
        if data.get("inverse") is not None:
            inverse = _components_from_json(data["inverse"], field, "inverse")
        return MapSpec(family, field, (), components, inverse, name)
    for key in ("components", "inverse"):
        if key in data:
            raise ValidationError(f"family {family} maps are built from parameters", key)
    params = _params_from_json(data.get("params"), family, field)
    return MapSpec(family, field, params, None, None, name)


def _field_from_json(data):
    from ._factor import modulus_to_sympy

    generator = data.get("generator", "a")
    if not isinstance(generator, str) or not generator.isidentifier() or generator in RESERVED_NAMES:
        raise ValidationError(f"{generator!r} cannot name the field generator", "generator")
    if "modulus" not in data:
        return QQ
    modulus = data["modulus"]
    if not isinstance(modulus, list):
        raise ValidationError("expected a list of rational coefficients, lowest degree first", "modulus")
    try:
        field = NumberField(modulus, name=generator)
    except InvalidParameter as exc:
        raise ValidationError(str(exc), "modulus") from exc
    if field == QQ:
        return QQ
    if not modulus_to_sympy(field).is_irreducible:
        raise ValidationError(f"the modulus {modulus_to_sympy(field).as_expr()} is reducible over Q", "modulus")
    return field


def _params_from_json(params, family, field):
    from ._factor import coefficient_from_json

    names = FAMILY_PARAMETERS[family]
    if not isinstance(params, dict):
        raise ValidationError(f"expected an object with {', '.join(names)}", "params")
    unknown = set(params) - set(names)
    if unknown:
        raise ValidationError(f"unknown parameter(s) {', '.join(sorted(unknown))}", "params")
    values = []
    for name in names:
        path = f"params.{name}"
        if name not in params:
            raise ValidationError("missing", path)
        try:
            value = coefficient_from_json(params[name], field)
        except (ParseError, InvalidParameter, ReducibleModulus) as exc:
            raise ValidationError(str(exc), path) from exc
        if name in NONZERO_PARAMETERS[family] and not value:
            raise ValidationError(f"{name} must be nonzero", path)
        values.append((name, value))
    return tuple(values)


def _components_from_json(components, field, path):
    if not isinstance(components, list) or len(components) != 3:
        raise ValidationError("expected three homogeneous components", path)
    forms = tuple(_form_from_json(c, field, f"{path}[{i}]") for i, c in enumerate(components))
    degrees = {c.degree for c in forms if not c.is_zero()}
    if len(degrees) != 1:
        raise ValidationError(f"components must be nonzero forms of one degree, got degrees {sorted(degrees)}",
                              path)
    (degree,) = degrees
    if degree < 1:
        raise ValidationError("components must have positive degree", path)
    forms = tuple(HPoly(c.field, c.terms, degree) for c in forms)
    common = toolz.reduce(poly_gcd, [c for c in forms if not c.is_zero()])
    if common.degree:
        raise ValidationError(f"components share the factor {common}", path)
    return forms


def _form_from_json(value, field, path):
    from ._factor import GENERATOR, coefficient_from_json, parse_expression, sympy_to_elem, sympy_to_hpoly

    try:
        if isinstance(value, str):
            expr = parse_expression(value, field, ("x0", "x1", "x2"))
            num, den = sympy.fraction(sympy.together(expr))
            if den.free_symbols - {GENERATOR}:
                raise ValidationError(f"{value!r} is not a polynomial in x0, x1, x2", path)
            return sympy_to_hpoly(sympy.expand(num), field) * (1 / sympy_to_elem(den, field))
        if not isinstance(value, list):
            raise ValidationError("expected an expression or a term list [[e0, e1, e2, coeff], ...]", path)
        terms = {}
        for item in value:
            if not isinstance(item, list) or len(item) != 4:
                raise ValidationError(f"terms are [e0, e1, e2, coeff], got {item!r}", path)
            *exponents, coeff = item
            if not all(isinstance(e, int) and e >= 0 for e in exponents):
                raise ValidationError(f"exponents must be non-negative integers, got {exponents}", path)
            key = tuple(exponents)
            c = coefficient_from_json(coeff, field)
            terms[key] = terms[key] + c if key in terms else c
        return HPoly(field, terms)
    except DegreeMismatch as exc:
        raise ValidationError(f"not homogeneous: {exc}", path) from exc
    except ValidationError:
        raise
    except (BirationalGrowthError, sympy.PolynomialError) as exc:
        raise ValidationError(str(exc), path) from exc


def map_spec_of(f, name=None):
    """The specification of a family map, or of a raw map by its components."""
    from ._maps import FamilyA, FamilyB

    family = f.family
    if isinstance(family, FamilyA):
        params = (("alpha0", family.alpha0), ("alpha1", family.alpha1), ("gamma0", family.gamma0))
        return MapSpec("A", f.field, params, name=name)
    if isinstance(family, FamilyB):
        params = (("alpha0", family.alpha0), ("alpha1", family.alpha1), ("beta2", family.beta2))
        return MapSpec("B", f.field, params, name=name)
    return MapSpec("raw", f.field, (), tuple(f.components), f.inverse, name)
