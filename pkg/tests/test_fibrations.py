import pytest


def test_mobius_order():
    import pytest
    from birational_growth import InvalidParameter, Mobius, NotFiniteOrder

    assert Mobius.of(-1, -1, 0, 1).order() == 2
    assert Mobius.of(0, -1, 1, 1).order() == 3
    assert Mobius.identity().order() == 1
    with pytest.raises(NotFiniteOrder):
        Mobius.affine(1, 1).order(max_order=50)
    with pytest.raises(InvalidParameter):
        Mobius.of(1, 2, 2, 4)


def test_fibration_identity_on_bounded_map():
    from birational_growth import Mobius, catalog_entry, check_fibration, transversality_check

    entry = catalog_entry("a2_equals_o0")
    f = entry.representative()
    fibrations = {name: (V, psi) for name, V, psi in entry.fibration_data()}
    V1, psi1 = fibrations["V1"]
    V2, psi2 = fibrations["V2"]
    assert psi1 == Mobius.of(-2, 0, 0, 1)
    assert check_fibration(f, V1, psi1)
    assert check_fibration(f, V2, psi2)
    assert not check_fibration(f, V1, Mobius.of(2, 0, 0, 1))
    assert transversality_check(V1, V2)
    assert not transversality_check(V1, V1)


def test_find_mobius():
    from birational_growth import Mobius, catalog_entry, find_mobius, fibration_from_json, make_family_B

    entry = catalog_entry("a2_equals_o0")
    f = entry.representative()
    (_, V1, _), _ = entry.fibration_data()
    assert find_mobius(f, V1) == Mobius.of(-2, 0, 0, 1)

    V, psi = fibration_from_json({"P": [[1, 0, "1"]]})
    assert psi is None
    assert find_mobius(make_family_B(1, 1, 1), V) == Mobius.affine(1, 1)
    assert find_mobius(make_family_B(3, 2, 1), V) == Mobius.affine(2, 3)


def test_find_mobius_rejects_constant():
    import pytest
    from birational_growth import DegenerateSolutionSpace, QQ, Fibration, find_mobius, make_family_B
    from birational_growth._poly import APoly

    with pytest.raises(DegenerateSolutionSpace):
        find_mobius(make_family_B(1, 1, 1), Fibration.of(APoly.constant(QQ, 5)))


def test_pointwise_check_agrees():
    from birational_growth import Mobius, catalog_entry
    from birational_growth._fibrations import check_fibration_pointwise

    entry = catalog_entry("a2_equals_o0")
    f = entry.representative()
    (_, V1, psi1), _ = entry.fibration_data()
    assert check_fibration_pointwise(f, V1, psi1)
    assert not check_fibration_pointwise(f, V1, Mobius.of(2, 0, 0, 1))


def test_first_integrals_of_periodic_family_b():
    import pytest
    from birational_growth import (NotFiniteOrder, build_first_integral, catalog_entry, check_first_integral,
                                   transversality_check)

    entry = catalog_entry("family_b_periodic")
    f = entry.representative()
    (_, V, psi), = entry.fibration_data()
    integrals = dict(entry.first_integral_data(f))
    assert check_first_integral(f, integrals["W"])
    assert check_first_integral(f, integrals["H"])
    assert transversality_check(integrals["W"], integrals["H"])
    assert not check_first_integral(f, V)
    assert build_first_integral(f, V, psi, psi.order()) == integrals["W"]
    with pytest.raises(NotFiniteOrder):
        build_first_integral(f, V, psi, 3)


def test_scaling_fibration_gives_power_integral():
    from birational_growth import build_first_integral, catalog_entry, check_first_integral

    entry = catalog_entry("k1_p4_b")
    f = entry.representative()
    (_, V, psi), = entry.fibration_data()
    W = build_first_integral(f, V, psi, 2)
    assert W == V ** 2
    assert check_first_integral(f, W)


def test_curve_pullback_of_invariant_curves():
    from birational_growth import QQ, HPoly, curve_pullback, make_family_A

    x0, x1, x2 = (HPoly.variable(QQ, i) for i in range(3))
    conic = x0 * x0 + x0 * x1 * 4 - x2 * x2 * 4
    assert curve_pullback(make_family_A("1/4", 1, "-1/2"), conic) == (conic * -1, (1, 0, 1))

    cubic = x1 * x2 * (x1 + x2)
    assert curve_pullback(make_family_A(0, 1, -1), cubic) == (cubic, (1, 1, 1))


def test_search_invariant_curves():
    import pytest
    from birational_growth import QQ, HPoly, InvalidParameter, make_family_A, search_invariant_curves

    x0, x1, x2 = (HPoly.variable(QQ, i) for i in range(3))
    conic = x0 * x0 + x0 * x1 * 4 - x2 * x2 * 4
    found = search_invariant_curves(make_family_A("1/4", 1, "-1/2"), 2)
    assert any(c.curve == conic and c.eigenvalue == -1 and c.profile == (1, 0, 1) for c in found.curves)

    found = search_invariant_curves(make_family_A(0, 1, -1), 3)
    assert any(c.eigenvalue == 1 and c.profile == (1, 1, 1) for c in found.curves)

    with pytest.raises(InvalidParameter):
        search_invariant_curves(make_family_A(1, 2, 3), 9)


def test_periodicity():
    from birational_growth import BiMap, QQ, HPoly, catalog_entry, check_periodicity, make_family_A, make_family_B

    assert check_periodicity(make_family_B(-1, -1, 1), 12) == 4
    assert check_periodicity(catalog_entry("a2_equals_o0_period4").representative(), 12) == 4
    assert check_periodicity(make_family_A(1, 2, 3), 8) is None

    x0, x1, x2 = (HPoly.variable(QQ, i) for i in range(3))
    involution = BiMap(components=(x1 * x2, x0 * x2, x0 * x1))
    assert check_periodicity(involution, 6) == 2


def test_fibration_json_errors():
    import pytest
    from birational_growth import ParseError, fibration_from_json

    with pytest.raises(ParseError):
        fibration_from_json({"Q": "x"})
    with pytest.raises(ParseError):
        fibration_from_json({"P": "x", "Q": "0"})
    with pytest.raises(ParseError):
        fibration_from_json({"V": "x", "mobius": ["1", "0", "1"]})
    with pytest.raises(ParseError):
        fibration_from_json({"P": [[1, 0]]})


def test_periodicity_without_inverse_matches_with_inverse():
    from birational_growth import BiMap, catalog_entry, check_periodicity

    f = catalog_entry("a2_equals_o0_period6").representative()
    bare = BiMap(components=f.components)
    assert check_periodicity(f, 8) == check_periodicity(bare, 8) == 6


@pytest.mark.slow
def test_periodicity_over_number_fields():
    from birational_growth import catalog_entry, check_periodicity

    assert check_periodicity(catalog_entry("p2_period10").representative(), 12) == 10
    assert check_periodicity(catalog_entry("k1_p3").representative(), 18) == 18
