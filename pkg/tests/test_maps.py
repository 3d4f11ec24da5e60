def test_family_a_rejects_zero_alpha1():
    import pytest
    from birational_growth import InvalidParameter, make_family_A, make_family_B

    with pytest.raises(InvalidParameter):
        make_family_A(1, 0, 3)
    with pytest.raises(InvalidParameter):
        make_family_B(1, 0, 1)


def test_indeterminacy_points_are_indeterminate():
    from birational_growth import INDETERMINATE, make_family_A, make_family_B, map_evaluate, map_inverse

    for f in (make_family_A(1, 2, 3), make_family_B(1, 1, 1)):
        for point in f.indeterminacy:
            assert map_evaluate(f, point) is INDETERMINATE
        for point in f.inverse_indeterminacy:
            assert map_evaluate(map_inverse(f), point) is INDETERMINATE


def test_composition_with_inverse_is_identity():
    from birational_growth import make_family_A, make_family_B, map_compose, map_inverse, is_identity

    for f in (make_family_A(1, 2, 3), make_family_A("1/4", 1, "-1/2"), make_family_B(-1, -1, 1)):
        assert is_identity(map_compose(f, map_inverse(f)))
        assert is_identity(map_compose(map_inverse(f), f))


def test_composition_agrees_with_evaluation():
    import random
    from fractions import Fraction
    from birational_growth import INDETERMINATE, QQ, PPoint, make_family_A, make_family_B, map_compose, map_evaluate

    rng = random.Random(2)

    def parameter(nonzero=False):
        while True:
            value = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            if value or not nonzero:
                return value

    def random_map():
        make = rng.choice((make_family_A, make_family_B))
        return make(parameter(), parameter(nonzero=True), parameter())

    compared = 0
    for _ in range(200):
        f, g = random_map(), random_map()
        h = map_compose(f, g)
        point = PPoint.of([QQ(rng.randint(1, 5)), QQ(parameter()), QQ(parameter())])
        inner = map_evaluate(g, point)
        if inner is INDETERMINATE:
            continue
        chained = map_evaluate(f, inner)
        direct = map_evaluate(h, point)
        if chained is INDETERMINATE or direct is INDETERMINATE:
            continue
        assert chained == direct
        compared += 1
    assert compared > 100


def test_family_b_degrees_follow_formula():
    from birational_growth import make_family_B, degree_sequence, degree_formula

    f = make_family_B(1, 1, 1)
    degrees = degree_sequence(f, 12)
    assert degrees == [2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 7]
    assert degrees == [degree_formula("family_b", n) for n in range(1, 13)]


def test_line_and_compose_methods_agree():
    from birational_growth import make_family_A, make_family_B, degree_sequence

    for f, n in ((make_family_A(2, -1, -1), 7), (make_family_A(1, 2, 3), 5), (make_family_B(1, 1, 1), 7)):
        assert degree_sequence(f, n, method="line") == degree_sequence(f, n, method="compose")


def test_quadratic_degree_sequences():
    from birational_growth import make_family_A, degree_sequence

    assert degree_sequence(make_family_A(2, -1, -1), 10) == [2, 3, 5, 7, 11, 15, 20, 25, 32, 39]
    assert degree_sequence(make_family_A("1/4", 1, "-1/2"), 11) == [2, 3, 5, 8, 12, 16, 22, 28, 35, 43, 52]


def test_degree_sequence_rejects_bad_input():
    import pytest
    from birational_growth import InvalidParameter, make_family_A, degree_sequence

    f = make_family_A(1, 2, 3)
    with pytest.raises(InvalidParameter):
        degree_sequence(f, 0)
    with pytest.raises(InvalidParameter):
        degree_sequence(f, 3, method="guess")


def test_exceptional_lines_collapse_onto_inverse_indeterminacy():
    from birational_growth import make_family_A, make_family_B, collapse_image, exceptional_locus

    for f in (make_family_A(1, 2, 3), make_family_A(2, -1, -1)):
        for S, A in zip(exceptional_locus(f), f.inverse_indeterminacy):
            assert collapse_image(f, S) == A
    f = make_family_B(1, 1, 1)
    images = {collapse_image(f, S) for S in exceptional_locus(f)}
    assert images == set(f.inverse_indeterminacy)


def test_exceptional_locus_of_raw_map():
    from birational_growth import BiMap, QQ, HPoly, PPoint, exceptional_locus, collapse_image

    x0, x1, x2 = (HPoly.variable(QQ, i) for i in range(3))
    f = BiMap(components=(x1 * x2, x0 * x2, x0 * x1))
    lines = exceptional_locus(f)
    assert set(lines) == {x0, x1, x2}
    assert collapse_image(f, x0) == PPoint.of((1, 0, 0), QQ)


def test_collapse_image_rejects_invariant_line():
    import pytest
    from birational_growth import NotCollapsed, QQ, HPoly, make_family_A, collapse_image

    f = make_family_A(1, 2, 3)
    with pytest.raises(NotCollapsed):
        collapse_image(f, HPoly.variable(QQ, 1) - HPoly.variable(QQ, 2))


def test_fixed_points():
    import pytest
    from birational_growth import ExtensionNeeded, QQ, PPoint, make_family_A, fixed_points

    points = fixed_points(make_family_A(0, 2, 3))
    assert points == [(PPoint.of((1, 0, 0), QQ), 1), (PPoint.of((1, 4, -4), QQ), 1)]

    with pytest.raises(ExtensionNeeded) as info:
        fixed_points(make_family_A(1, 2, 3))
    assert info.value.minimal_polynomial.degree == 2


def test_fractional_map_normalizes_to_family_b():
    from birational_growth import FamilyB, normalize_family_B

    f, conjugation = normalize_family_B(2, 1, 1, 1, 1, 1, 1)
    assert f.family == FamilyB(1, 1, 2)
    assert conjugation is not None


def test_term_cap_bounds_line_degrees():
    import pytest
    from birational_growth import ResourceLimit, make_family_A, degree_sequence

    f = make_family_A(2, -1, -1)
    # a degree-d iterate restricted to a line is a binary form with d + 1 coefficients
    assert degree_sequence(f, 10, method="line", term_cap=40)[-1] == 39
    with pytest.raises(ResourceLimit):
        degree_sequence(f, 10, method="line", term_cap=39)
    assert degree_sequence(f, 3, method="compose", term_cap=40) == [2, 3, 5]
    with pytest.raises(ResourceLimit):
        degree_sequence(f, 6, method="compose", term_cap=10)


def test_bad_reduction_falls_back_to_next_prime(monkeypatch):
    from birational_growth import QQ, make_family_A, degree_sequence
    from birational_growth import _modular

    f = make_family_A("1/7", 2, "3/7")
    expected = degree_sequence(f, 6)
    real = _modular.reductions

    def with_bad_prime(field, seed=0, count=2, attempts=64):
        return [_modular.Reduction(QQ, 7, 0)] + real(field, seed=seed, count=count - 1, attempts=attempts)

    monkeypatch.setattr(_modular, "reductions", with_bad_prime)
    assert degree_sequence(f, 6) == expected
    assert len(expected) == 6


def test_bad_reduction_gives_up_after_spare_primes(monkeypatch):
    import pytest
    from birational_growth import QQ, BadReduction, BirationalGrowthError, make_family_A, degree_sequence
    from birational_growth import _modular

    monkeypatch.setattr(_modular, "reductions",
                        lambda field, seed=0, count=2, attempts=64: [_modular.Reduction(QQ, 7, 0)] * count)
    with pytest.raises(BadReduction) as info:
        degree_sequence(make_family_A("1/7", 2, 3), 4)
    assert isinstance(info.value, BirationalGrowthError)
