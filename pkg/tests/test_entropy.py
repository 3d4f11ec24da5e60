def test_orbit_lists_chain_and_close():
    from birational_growth import build_lists

    lists = build_lists([(0, 2, 1), (2, 0, 3), (1, 1, 5)])
    assert [(lst.closed, lst.lengths) for lst in lists.lists] == [(True, [1, 3]), (True, [5])]

    lists = build_lists([(0, 2, 1)])
    assert [(lst.closed, lst.lengths) for lst in lists.lists] == [(False, [1])]


def test_orbit_lists_reject_shared_endpoint():
    import pytest
    from birational_growth import InconsistentChain, build_lists

    with pytest.raises(InconsistentChain):
        build_lists([(0, 2, 1), (1, 2, 3)])


def test_list_polynomials():
    from birational_growth import QQ, UPoly, build_lists, list_polynomials

    x = UPoly.x(QQ)
    closed, = build_lists([(0, 2, 1), (2, 0, 3)]).lists
    T, S = list_polynomials(closed)
    assert T == x ** 4 - 1
    assert S == x + x ** 3 + 2
    opened, = build_lists([(0, 2, 1)]).lists
    assert list_polynomials(opened) == (x, UPoly.constant(QQ, 1))


def test_charpoly_matches_closed_forms():
    from birational_growth import build_lists, char_poly_bk
    from birational_growth._classifier import closed_form_charpoly

    assert char_poly_bk(build_lists([(0, 2, 1)])) == closed_form_charpoly("A")
    for p in range(7):
        lists = build_lists([(0, 2, 1), (2, 0, p + 1)])
        assert char_poly_bk(lists) == closed_form_charpoly("A", p=p)
    for k in range(1, 5):
        lists = build_lists([(0, 2, 1), (1, 1, 2 * k + 1)])
        assert char_poly_bk(lists) == closed_form_charpoly("A", k=k)
    for k, p in ((1, 0), (1, 3), (2, 3), (1, 4), (3, 2)):
        lists = build_lists([(0, 2, 1), (1, 1, 2 * k + 1), (2, 0, p + 1)])
        assert char_poly_bk(lists) == closed_form_charpoly("A", k=k, p=p)


def test_charpoly_with_three_blown_up_orbits():
    from birational_growth import QQ, UPoly, build_lists, char_poly_bk

    x = UPoly.x(QQ)
    chi = char_poly_bk(build_lists([(0, 2, 1), (1, 1, 3), (2, 0, 1)]))
    assert chi == x ** 6 - x ** 4 - x ** 2 + 1


def test_fit_recurrence():
    import pytest
    from birational_growth import QQ, UPoly, InsufficientData, InvalidParameter, fit_recurrence

    x = UPoly.x(QQ)
    assert fit_recurrence([1, 2, 3, 5, 8, 13, 21, 34]) == x * x - x - 1
    assert fit_recurrence([n * n + 1 for n in range(10)]) == (x - 1) ** 3
    with pytest.raises(InsufficientData) as info:
        fit_recurrence([0, 0, 0, 1])
    assert info.value.provisional.degree == 4
    with pytest.raises(InvalidParameter):
        fit_recurrence([1, 2, 3])


def test_largest_real_root():
    from fractions import Fraction
    from birational_growth import QQ, UPoly, largest_real_root

    x = UPoly.x(QQ)
    interval = largest_real_root(x * x - x - 1)
    assert interval.hi - interval.lo <= Fraction(1, 10 ** 9)
    assert interval.lo ** 2 - interval.lo - 1 < 0 <= interval.hi ** 2 - interval.hi - 1
    tol = Fraction(1, 10 ** 9)
    assert interval.lo - tol <= Fraction("1.6180339887") <= interval.hi + tol
    assert largest_real_root((x - 1) ** 2 * (x + 1)) is None


def test_classify_growth():
    from birational_growth import QQ, UPoly, classify_growth, degree_formula
    from birational_growth._classifier import closed_form_charpoly

    x = UPoly.x(QQ)
    family_b = [degree_formula("family_b", n) for n in range(16)]
    assert family_b[:4] == [1, 2, 2, 3]
    assert classify_growth(closed_form_charpoly("B"), family_b).kind == "linear"

    growth = classify_growth(x ** 4 - 1, [1, 2, 2, 1] * 5)
    assert (growth.kind, growth.period) == ("bounded", 4)

    assert classify_growth((x - 1) ** 3, [n * n + 1 for n in range(12)]).kind == "quadratic"

    fibonacci = [1, 2, 3, 5, 8, 13, 21, 34, 55, 89]
    growth = classify_growth(x * x - x - 1, fibonacci)
    assert growth.kind == "exponential"
    assert growth.minimal_polynomial == x * x - x - 1


def test_classify_growth_errors():
    import pytest
    from fractions import Fraction
    from birational_growth import QQ, UPoly, InvalidParameter, UnclassifiableSpectrum, classify_growth

    x = UPoly.x(QQ)
    with pytest.raises(InvalidParameter):
        classify_growth(x - 1, [1, 2, 3, 4, 5])
    with pytest.raises(UnclassifiableSpectrum):
        classify_growth(x - Fraction(1, 2), [Fraction(1, 2 ** n) for n in range(8)])


def test_dynamical_degree_of_generic_map_is_golden_ratio():
    from fractions import Fraction
    from birational_growth import QQ, UPoly, make_family_A, dynamical_degree

    x = UPoly.x(QQ)
    dyn = dynamical_degree(make_family_A(1, 2, 3))
    assert dyn.charpoly == x * x - x - 1
    assert dyn.growth.kind == "exponential"
    tol = Fraction(1, 10 ** 9)
    assert dyn.delta.lo - tol <= Fraction("1.6180339887") <= dyn.delta.hi + tol
    assert dyn.discrepancy is None
    assert dyn.degrees[:6] == (1, 2, 3, 5, 8, 13)


def test_dynamical_degree_approaches_golden_ratio_from_below():
    from birational_growth import largest_real_root
    from birational_growth._classifier import closed_form_charpoly

    golden = largest_real_root(closed_form_charpoly("A"))
    roots = [largest_real_root(closed_form_charpoly("A", k=k)) for k in range(1, 7)]
    assert all(a.hi < b.lo for a, b in zip(roots, roots[1:]))
    assert all(r.hi < golden.lo for r in roots)


def test_degree_formulas():
    from birational_growth import degree_formula

    assert [degree_formula("k1_p4", n) for n in range(1, 11)] == [2, 3, 5, 7, 11, 15, 20, 25, 32, 39]
    assert [degree_formula("k2_p3_rational", n) for n in range(1, 12)] == [2, 3, 5, 8, 12, 16, 22, 28, 35, 43, 52]
    assert [degree_formula("family_b", n) for n in range(1, 7)] == [2, 2, 3, 3, 4, 4]
