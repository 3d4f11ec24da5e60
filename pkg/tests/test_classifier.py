def test_condition_k():
    import pytest
    from fractions import Fraction
    from birational_growth import InvalidParameter, condition_k, find_k

    assert condition_k(2, Fraction(-1, 4), 1)
    assert condition_k(1, Fraction(-1, 2), 2)
    assert not condition_k(1, Fraction(-1, 2), 1)
    assert find_k(1, Fraction(-1, 2)) == 2
    assert find_k(2, 3) is None
    with pytest.raises(InvalidParameter):
        condition_k(1, 1, 0)


def test_find_p():
    from birational_growth import make_family_A, find_p_A, find_p_B

    assert find_p_A(make_family_A("1/4", 4, "1/4")) == 0
    assert find_p_A(make_family_A(2, -1, -1)) == 4
    assert find_p_A(make_family_A(2, -1, -1), p_max=3) is None
    assert find_p_B(1, 1, 1) is None
    assert find_p_B(-1, 1, -1) == 1
    assert find_p_B(0, 0, 4) == 0


def test_zero_entropy_set():
    from birational_growth._classifier import in_zero_entropy_set

    assert in_zero_entropy_set(None, 2)
    assert not in_zero_entropy_set(None, 3)
    assert in_zero_entropy_set(2, 3) and in_zero_entropy_set(1, 4)
    assert not in_zero_entropy_set(2, 4)
    assert not in_zero_entropy_set(1, None)


def test_catalog_loads_every_entry():
    from birational_growth import zero_entropy_catalog

    entries = zero_entropy_catalog()
    names = [e.name for e in entries]
    assert len(entries) == 22
    assert names == sorted(names)
    assert {"a2_equals_o0", "k1_p4_collision", "k2_p3_rational", "family_b_linear", "p2"} <= set(names)


def test_each_representative_matches_only_its_own_entry():
    from birational_growth import zero_entropy_catalog, match_catalog

    for entry in zero_entropy_catalog():
        f = entry.representative()
        assert entry.matches(f), entry.name
        assert match_catalog(f).name == entry.name


def test_generic_map_matches_no_entry():
    from birational_growth import make_family_A, make_family_B, match_catalog

    assert match_catalog(make_family_A(1, 2, 3)) is None
    assert match_catalog(make_family_B(1, 2, 3)).name == "family_b_linear"


def test_classify_family_b_linear():
    from birational_growth import make_family_B, classify_map

    label = classify_map(make_family_B(1, 1, 1))
    assert label.family == "B"
    assert label.p is None
    assert label.growth.kind == "linear"
    assert label.proposition == "family_b_linear"
    assert label.to_json()["class"] == "Linear"
    assert label.degrees[:7] == (1, 2, 2, 3, 3, 4, 4)


def test_classify_bounded_and_linear_family_a():
    from birational_growth import make_family_A, classify_map

    label = classify_map(make_family_A("1/4", 4, "1/4"))
    assert (label.k, label.p, label.growth.kind) == (None, 0, "bounded")
    assert label.proposition == "a2_equals_o0"

    label = classify_map(make_family_A("5/27", 4, "1/6"))
    assert (label.k, label.p, label.growth.kind) == (None, 2, "linear")
    assert label.proposition == "p2"


def test_classify_quadratic_branch():
    from birational_growth import make_family_A, classify_map
    from birational_growth._classifier import closed_form_charpoly

    label = classify_map(make_family_A(2, -1, -1))
    assert (label.k, label.p) == (1, 4)
    assert label.growth.kind == "quadratic"
    assert label.branch == "quadratic"
    assert label.charpoly == closed_form_charpoly("A", k=1, p=4)
    assert label.proposition == "k1_p4_collision"


def test_classify_generic_map():
    from birational_growth import make_family_A, classify_map

    label = classify_map(make_family_A(1, 2, 3))
    assert label.growth.kind == "exponential"
    assert label.proposition is None
    assert (label.k, label.p) == (None, None)


def test_classify_needs_family_map():
    import pytest
    from birational_growth import BiMap, QQ, HPoly, InvalidParameter, classify_map

    x0, x1, x2 = (HPoly.variable(QQ, i) for i in range(3))
    with pytest.raises(InvalidParameter):
        classify_map(BiMap(components=(x1 * x2, x0 * x2, x0 * x1)))


def test_catalog_entry_validation():
    import pytest
    from birational_growth import ValidationError
    from birational_growth._classifier import entry_from_json

    with pytest.raises(ValidationError):
        entry_from_json({"name": "x", "family": "A", "params": {}, "colour": "red"})
    with pytest.raises(ValidationError):
        entry_from_json({"name": "x", "family": "A", "params": {"alpha0": "1"}})
    with pytest.raises(ValidationError):
        entry_from_json({"name": "x", "family": "C", "params": {}})
    entry = entry_from_json({"name": "x", "family": "B", "params": {"alpha0": "1", "alpha1": "2", "beta2": "3"}})
    assert entry.representative().degree == 2
