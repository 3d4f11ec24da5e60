def test_defaults():
    from birational_growth import Settings, load_settings

    assert load_settings() == Settings()
    assert load_settings(seed=None, workers=None).workers == 4


def test_config_file_and_overrides(tmp_path):
    from birational_growth import load_settings

    config = tmp_path / "run.env"
    config.write_text("SEED=3\nMAX_STEPS=128\n# a comment\nWORKERS=2\n")
    settings = load_settings(config)
    assert (settings.seed, settings.max_steps, settings.workers) == (3, 128, 2)
    assert settings.p_max == 32

    settings = load_settings(config, seed=11)
    assert (settings.seed, settings.max_steps) == (11, 128)


def test_config_file_errors(tmp_path):
    import pytest
    from birational_growth import ValidationError, load_settings
    from birational_growth._settings import read_config

    with pytest.raises(ValidationError):
        read_config(tmp_path / "missing.env")

    config = tmp_path / "unknown.env"
    config.write_text("COLOUR=3\n")
    with pytest.raises(ValidationError):
        load_settings(config)

    config = tmp_path / "text.env"
    config.write_text("SEED=three\n")
    with pytest.raises(ValidationError):
        load_settings(config)


def test_minima_and_unknown_overrides():
    import pytest
    from birational_growth import ValidationError, load_settings

    with pytest.raises(ValidationError) as info:
        load_settings(jet_order=1)
    assert info.value.path == "jet_order"
    with pytest.raises(ValidationError):
        load_settings(workers=0)
    with pytest.raises(ValidationError):
        load_settings(colour=1)
    assert load_settings(p_max=0).p_max == 0
