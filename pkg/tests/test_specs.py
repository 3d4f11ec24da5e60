def _maps_dir():
    from pathlib import Path
    import birational_growth

    return Path(birational_growth.__file__).parent / "fixtures" / "maps"


def test_parse_family_a():
    from birational_growth import FamilyA, parse_map_spec

    spec = parse_map_spec('{"family": "A", "params": {"alpha0": "1", "alpha1": "2", "gamma0": "3"}}')
    assert spec.family == "A"
    assert spec.parameters["alpha1"] == 2
    assert spec.build().family == FamilyA(1, 2, 3)


def test_parse_number_field_parameters():
    from birational_growth import parse_map_spec

    spec = parse_map_spec((_maps_dir() / "k1_p3_periodic.json").read_bytes())
    f = spec.build()
    assert f.field.degree == 6
    a = f.field.generator
    assert f.family.alpha1 == a
    assert f.family.gamma0 == a + a ** 4


def test_parse_raw_components():
    from birational_growth import QQ, HPoly, parse_map_spec

    x0, x1, x2 = (HPoly.variable(QQ, i) for i in range(3))
    spec = parse_map_spec('{"components": ["x1*x2", "x0*x2", [[1, 1, 0, "1"]]]}')
    assert spec.family == "raw"
    assert spec.build().components == (x1 * x2, x0 * x2, x0 * x1)

    spec = parse_map_spec('{"family": "raw", "components": ["x0^2/2", "x0*x1", "x1*x2"]}')
    assert spec.components[0] == x0 * x0 * QQ("1/2")


def test_zero_alpha1_is_rejected_with_path():
    import pytest
    from birational_growth import ValidationError, parse_map_spec

    with pytest.raises(ValidationError) as info:
        parse_map_spec('{"family": "A", "params": {"alpha0": "1", "alpha1": "0", "gamma0": "3"}}')
    assert info.value.path == "params.alpha1"


def test_specification_errors():
    import pytest
    from birational_growth import ParseError, ValidationError, parse_map_spec

    with pytest.raises(ParseError) as info:
        parse_map_spec('{"family": "A",')
    assert "line 1" in str(info.value)
    with pytest.raises(ParseError):
        parse_map_spec(b"\xff\xfe")
    bad = [
        '{"family": "A", "params": {"alpha0": "1", "alpha1": "2", "gamma0": "3"}, "colour": "red"}',
        '{"family": "C", "params": {}}',
        '{"family": "A", "params": {"alpha0": "1", "alpha1": "2"}}',
        '{"family": "A", "params": {"alpha0": "1", "alpha1": "2", "gamma0": "3", "beta2": "1"}}',
        '{"family": "A", "params": {"alpha0": "q", "alpha1": "2", "gamma0": "3"}}',
        '{"modulus": ["-1", "0", "1"], "family": "A", "params": {"alpha0": "1", "alpha1": "2", "gamma0": "3"}}',
        '{"modulus": ["1", "0", "1"], "generator": "x", "family": "B", '
        '"params": {"alpha0": "1", "alpha1": "2", "beta2": "3"}}',
        '{"components": ["x0^2", "x1"]}',
        '{"components": ["x0^2 + x1", "x0*x1", "x1*x2"]}',
        '{"components": ["x0^2", "x0*x1", "x0*x2"]}',
        '{"components": ["x0^2", "x0*x1", "x1*x2"], "params": {}}',
        '{"family": "A", "components": ["x0^2", "x0*x1", "x1*x2"]}',
    ]
    for text in bad:
        with pytest.raises(ValidationError):
            parse_map_spec(text)


def test_missing_parameter_path():
    import pytest
    from birational_growth import ValidationError, parse_map_spec

    with pytest.raises(ValidationError) as info:
        parse_map_spec('{"family": "B", "params": {"alpha0": "1", "alpha1": "2"}}')
    assert info.value.path == "params.beta2"


def test_fixtures_survive_json_round_trip():
    import json
    from birational_growth import parse_map_spec

    paths = sorted(_maps_dir().glob("*.json"))
    assert len(paths) >= 9
    for path in paths:
        spec = parse_map_spec(path.read_bytes())
        assert parse_map_spec(json.dumps(spec.to_json())) == spec, path.name


def test_map_spec_of_round_trips_catalog_representatives():
    import json
    from birational_growth import catalog_entry, map_spec_of, maps_equal, parse_map_spec

    for name in ("k2_p3_rational", "k1_p4_c", "family_b_periodic"):
        f = catalog_entry(name).representative()
        spec = parse_map_spec(json.dumps(map_spec_of(f, name).to_json()))
        assert spec.name == name
        assert maps_equal(spec.build(), f)


def test_fractional_map_is_normalized():
    from birational_growth import FamilyB, parse_map_spec

    spec = parse_map_spec((_maps_dir() / "fractional_b.json").read_bytes())
    f, conjugation = spec.normalized()
    assert f.family == FamilyB(1, 1, 2)
    assert conjugation is not None

    spec = parse_map_spec((_maps_dir() / "generic_a.json").read_bytes())
    f, conjugation = spec.normalized()
    assert conjugation is None
