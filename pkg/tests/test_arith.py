def test_field_inverse_examples():
    from fractions import Fraction
    from birational_growth import QQ, NumberField, field_inv

    assert field_inv(QQ(Fraction(3, 4))) == QQ(Fraction(4, 3))

    gaussian = NumberField((1, 0, 1), name="i")
    i = gaussian.generator
    assert field_inv(i) == -i

    ninth = NumberField((1, 0, 0, 1, 0, 0, 1))
    a = ninth.generator
    assert field_inv(a) == -(a ** 5) - a ** 2
    assert a * field_inv(a) == ninth.one


def test_field_inverse_errors():
    import pytest
    from birational_growth import NumberField, ReducibleModulus, ZeroInverse, field_inv

    K = NumberField((1, 0, 1))
    with pytest.raises(ZeroInverse):
        field_inv(K.zero)

    reducible = NumberField((-1, 0, 1))
    with pytest.raises(ReducibleModulus):
        field_inv(reducible.generator - 1)


def test_field_laws_randomised():
    import random
    from fractions import Fraction
    from birational_growth import NumberField

    rng = random.Random(0)
    fields = [NumberField((0, 1)), NumberField((1, 1, 1), name="w"), NumberField((1, 0, 0, 0, 1)),
              NumberField((1, 0, 0, 1, 0, 0, 1))]

    def element(K):
        return K.from_poly([Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(K.degree)])

    for case in range(1000):
        K = fields[case % len(fields)]
        a, b, c = element(K), element(K), element(K)
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        assert (a - b) + b == a
        if a:
            assert a * (1 / a) == K.one
            assert (b / a) * a == b


def test_poly_gcd_examples():
    from birational_growth import QQ, HPoly, poly_gcd

    x0, x1, x2 = (HPoly.variable(QQ, i) for i in range(3))
    assert poly_gcd(x0 * x1, x0 * x2) == x0
    assert poly_gcd(x0 * x0 - x1 * x1, x0 * x0 + x0 * x1 * 2 + x1 * x1) == x0 + x1


def test_poly_div_exact():
    import pytest
    from birational_growth import QQ, HPoly, NotDivisible, poly_div_exact

    x0, x1, x2 = (HPoly.variable(QQ, i) for i in range(3))
    assert poly_div_exact(x0 * x0 - x1 * x1, x0 - x1) == x0 + x1
    with pytest.raises(NotDivisible) as info:
        poly_div_exact(x0 * x0 + x1 * x2, x0 - x1)
    assert info.value.witness is not None


def test_poly_subst_degree_law():
    import random
    from fractions import Fraction
    from birational_growth import QQ, HPoly, poly_subst, make_family_A

    rng = random.Random(1)
    for _ in range(100):
        D = rng.randint(1, 3)
        terms = {(D - i - j, i, j): QQ(Fraction(rng.randint(-5, 5), rng.randint(1, 3)))
                 for i in range(D + 1) for j in range(D + 1 - i) if rng.random() < 0.6}
        C = HPoly(QQ, terms, D)
        if C.is_zero():
            continue
        f = make_family_A(rng.randint(-4, 4), rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(-4, 4))
        image = poly_subst(C, *f.components)
        assert image.degree == D * f.degree
        point = [QQ(rng.randint(-6, 6)) for _ in range(3)]
        values = [c.evaluate(point) for c in f.components]
        assert image.evaluate(point) == C.evaluate(values)


def test_squarefree_decomposition():
    from birational_growth import QQ, UPoly, squarefree_decomp

    x = UPoly.x(QQ)
    p = (x - 1) * (x - 1) * (x + 1) * x
    assert set(squarefree_decomp(p)) == {(x, 1), (x + 1, 1), (x - 1, 2)}


def test_cyclotomic_test():
    from birational_growth import QQ, UPoly, cyclotomic_test

    x = UPoly.x(QQ)
    assert cyclotomic_test(x * x + x + 1) == 3
    assert cyclotomic_test(x ** 4 + 1) == 8
    assert cyclotomic_test((x - 1) * (x + 1)) == 2
    assert cyclotomic_test(x * x - x - 1) is None


def test_sturm_isolation():
    from fractions import Fraction
    from birational_growth import QQ, UPoly, sturm_isolate

    x = UPoly.x(QQ)
    p = x * x - 2
    intervals = sturm_isolate(p, Fraction(-2), Fraction(2), Fraction(1, 1000))
    assert len(intervals) == 2
    positive = intervals[-1]
    assert positive.hi - positive.lo <= Fraction(1, 1000)
    assert positive.lo * positive.lo < 2 <= positive.hi * positive.hi


def test_factor_in_field():
    from birational_growth import UPoly, NumberField, roots_in_field

    gaussian = NumberField((1, 0, 1), name="i")
    i = gaussian.generator
    x = UPoly.x(gaussian)
    roots, rest = roots_in_field(x * x + 1)
    assert {r for r, _ in roots} == {i, -i}
    assert rest == []

    roots, rest = roots_in_field(x * x - 2)
    assert roots == []
    assert len(rest) == 1 and rest[0].degree == 2


def test_rationals_field_at_import():
    from fractions import Fraction
    import birational_growth
    from birational_growth import QQ

    assert birational_growth.QQ is QQ
    assert QQ.degree == 1 and QQ.is_rationals
    assert QQ.one + QQ.one == 2
    assert QQ("1/2") * 2 == 1
    assert QQ(Fraction(3, 4)).to_fraction() == Fraction(3, 4)


def test_field_elements_are_normalised():
    from fractions import Fraction
    from birational_growth import QQ, NumberField

    K = NumberField((1, 0, 1), name="i")
    a = K.from_poly([Fraction(2, 4), Fraction(3, 6)])
    b = K.from_poly([Fraction(1, 2), Fraction(1, 2)])
    assert (a.num, a.den) == (b.num, b.den) == ((1, 1), 2)
    assert hash(a) == hash(b)
    assert a.coeffs == (Fraction(1, 2), Fraction(1, 2))
    assert (a - b).den == 1 and not (a - b)

    # rational elements hash like the Fractions they equal
    assert hash(K(Fraction(3, 7))) == hash(Fraction(3, 7)) == hash(QQ(Fraction(3, 7)))
    assert hash(K(5)) == hash(5)
    assert {K(5): "five"}[5] == "five"


def test_field_multiplication_matches_polynomial_reduction():
    import random
    from fractions import Fraction
    from birational_growth import NumberField

    def product(a, b):
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return out

    rng = random.Random(2)
    integral = NumberField((1, 0, 0, 1, 0, 0, 1))
    fractional = NumberField((Fraction(1, 2), Fraction(-1, 3), 1))
    assert integral.integral_modulus == (1, 0, 0, 1, 0, 0, 1)
    assert fractional.integral_modulus is None
    for K in (integral, fractional):
        for _ in range(200):
            a = [Fraction(rng.randint(-30, 30), rng.randint(1, 12)) for _ in range(K.degree)]
            b = [Fraction(rng.randint(-30, 30), rng.randint(1, 12)) for _ in range(K.degree)]
            assert K.from_poly(a) * K.from_poly(b) == K.from_poly(product(a, b))


def test_poly_subst_with_a_vanishing_form():
    from fractions import Fraction
    from birational_growth import QQ, HPoly, poly_subst

    x0, x1, x2 = (HPoly.variable(QQ, i) for i in range(3))
    C = x0 * x0 * x2 + x1 * x1 * x1 * 3 - x0 * x1 * x2 * Fraction(1, 2) + x2 * x2 * x2
    zero = HPoly(QQ, {}, 2)
    image = poly_subst(C, x0 * x1, x1 * x2 + x0 * x0, zero)
    assert image.degree == 6
    assert image == poly_subst(x1 * x1 * x1 * 3, x0 * x1, x1 * x2 + x0 * x0, zero)
    assert poly_subst(HPoly(QQ, {}, 3), x0, x1, x2).is_zero()


def _to_sympy(p, x):
    import sympy

    coeffs = [c.to_fraction() for c in reversed(p.coeffs)]
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], x, domain="QQ")


def test_squarefree_decomposition_agrees_with_sympy():
    import random
    from functools import reduce
    import sympy
    from birational_growth import QQ, UPoly, squarefree_decomp

    t = sympy.Symbol("t")
    x = UPoly.x(QQ)
    rng = random.Random(3)
    pieces = [x, x - 1, x + 1, x * x + 1, x * x + x + 1, x * x - 2, x * x * x - x - 1, x * 2 - 3]
    for _ in range(40):
        p = UPoly.constant(QQ, rng.choice([1, -2, 3]))
        for piece in rng.sample(pieces, rng.randint(1, 4)):
            p = p * piece ** rng.randint(1, 3)
        ours = squarefree_decomp(p)
        assert all(q.monic() == q for q, _ in ours)
        _, theirs = _to_sympy(p, t).sqf_list()
        by_multiplicity = {}
        for q, k in ours:
            by_multiplicity[k] = by_multiplicity.get(k, UPoly.constant(QQ, 1)) * q
        expected = {k: q.monic() for q, k in theirs}
        assert set(by_multiplicity) == set(expected)
        for k, q in by_multiplicity.items():
            assert _to_sympy(q, t) == expected[k]
        total = reduce(lambda acc, item: acc * item[0] ** item[1], ours, UPoly.constant(QQ, 1))
        assert total == p.monic()


def test_sturm_isolation_agrees_with_sympy():
    from fractions import Fraction
    import sympy
    from birational_growth import QQ, UPoly, sturm_isolate

    t = sympy.Symbol("t")
    x = UPoly.x(QQ)
    width = Fraction(1, 10 ** 6)
    for p in (x * x - 2, x * x * x - x - 1, (x * x - 3) * (x * x - 5) * (x + Fraction(1, 3)),
              x ** 4 - x * 10 + 1, x * x + 1, x ** 5 - x * 4 + 2):
        intervals = sturm_isolate(p, Fraction(-100), Fraction(100), width)
        q = _to_sympy(p, t)
        assert len(intervals) == len(q.intervals()) == q.count_roots()
        for interval in intervals:
            assert interval.hi - interval.lo <= width
            lo = sympy.Rational(interval.lo.numerator, interval.lo.denominator)
            hi = sympy.Rational(interval.hi.numerator, interval.hi.denominator)
            assert q.count_roots(lo, hi) == 1
