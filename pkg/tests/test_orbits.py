def test_generic_profile():
    from birational_growth import make_family_A
    from birational_growth._orbits import se_profile

    f = make_family_A(1, 2, 3)
    profile = se_profile(f)
    assert profile[0].se and profile[0].length == 1 and profile[0].end == 2
    assert not profile[1].se
    assert not profile[2].se
    assert [label for label, _ in profile.registry.entries] == ["E0"]


def test_condition_k_gives_a1_orbit_of_length_2k_plus_1():
    import random
    from fractions import Fraction
    from birational_growth import make_family_A, find_k
    from birational_growth._orbits import se_profile

    rng = random.Random(3)
    for draw in range(20):
        k = draw % 4 + 1
        alpha1 = rng.choice([Fraction(2), Fraction(3), Fraction(1, 2), Fraction(-2), Fraction(2, 3), Fraction(-3, 2)])
        alpha0 = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        gamma0 = -1 / (alpha1 * alpha1 * sum(alpha1 ** i for i in range(k)))
        f = make_family_A(alpha0, alpha1, gamma0)
        assert find_k(alpha1, gamma0) == k
        orbit = se_profile(f)[1]
        assert orbit.se and orbit.end == 1 and orbit.length == 2 * k + 1


def test_collision_locus():
    from birational_growth import make_family_A
    from birational_growth._orbits import is_collision_locus, se_profile

    f = make_family_A(2, -1, -1)
    assert is_collision_locus(f)
    profile = se_profile(f)
    assert (profile[1].se, profile[1].end, profile[1].length) == (True, 1, 3)
    assert (profile[2].se, profile[2].end, profile[2].length) == (True, 0, 5)


def test_track_orbit_rejects_bad_start():
    import pytest
    from birational_growth import InvalidParameter, make_family_A, track_orbit

    f = make_family_A(1, 2, 3)
    with pytest.raises(InvalidParameter):
        track_orbit(f, 3)
    with pytest.raises(InvalidParameter):
        track_orbit(f, 0, max_steps=0)


def test_jet_point_validation():
    import pytest
    from birational_growth import InvalidParameter, TowerTooDeep, QQ, PPoint, JetPoint

    center = PPoint.of((0, 1, 0), QQ)
    with pytest.raises(InvalidParameter):
        JetPoint(center, 1)
    with pytest.raises(TowerTooDeep):
        JetPoint(center, 3, (QQ.one, QQ.zero), (QQ.one, QQ.zero))
    assert JetPoint(center, 1, (QQ.one, QQ.zero)).base() == JetPoint(center)


def test_image_of_a1_lies_on_blown_up_fiber():
    from birational_growth import make_family_A, JetPoint, jet_evaluate
    from birational_growth._orbits import se_profile

    f = make_family_A(1, 2, 3)
    registry = se_profile(f).registry
    image = jet_evaluate(f, JetPoint(f.inverse_indeterminacy[1]), registry)
    assert image.depth == 1
    assert image.center == f.inverse_indeterminacy[0]
    assert registry.fiber_label(image) == "E0"


def test_fiber_direction_image_matches_jets():
    import pytest
    from birational_growth import NotOnCollapsedCurve, QQ, PPoint, make_family_A, JetPoint, jet_evaluate
    from birational_growth import fiber_direction_image
    from birational_growth._orbits import se_profile

    f = make_family_A(1, 2, 3)
    registry = se_profile(f).registry
    for coords in ((0, 1, 1), (0, 1, 5), (0, 2, -1)):
        point = JetPoint(PPoint.of(coords, QQ))
        image = fiber_direction_image(f, point, registry)
        assert image.center == f.inverse_indeterminacy[0] and image.depth == 1
        assert image == jet_evaluate(f, point, registry)

    with pytest.raises(NotOnCollapsedCurve):
        fiber_direction_image(f, image, registry)
    with pytest.raises(NotOnCollapsedCurve):
        fiber_direction_image(f, JetPoint(PPoint.of((1, 1, 1), QQ)), registry)


def test_profile_json_names_orbits():
    from birational_growth import make_family_A
    from birational_growth._orbits import se_profile

    out = se_profile(make_family_A(2, -1, -1)).to_json()
    assert [o["start"] for o in out["orbits"]] == ["A0", "A1", "A2"]
    assert out["orbits"][2]["end"] == "O0"
