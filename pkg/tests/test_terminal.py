def _fixture(*parts):
    from pathlib import Path
    import birational_growth

    return str(Path(birational_growth.__file__).parent.joinpath("fixtures", *parts))


def _json_run(capsys, *argv):
    import json
    from birational_growth import command_line_interface

    code = command_line_interface(["birational-growth", *argv])
    return code, json.loads(capsys.readouterr().out)


def test_degrees_csv(capsys):
    from birational_growth import command_line_interface

    code = command_line_interface(["birational-growth", "degrees", "--map", _fixture("maps", "k1_p4_collision.json"),
                                   "--n", "10", "--format", "csv"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "2,3,5,7,11,15,20,25,32,39"


def test_classify_report(capsys):
    code, report = _json_run(capsys, "classify", "--map", _fixture("maps", "family_b_linear.json"))
    assert code == 0
    assert report["command"] == "classify"
    assert report["inputs"]["map"].endswith("family_b_linear.json")
    assert report["results"]["class"] == "Linear"
    assert report["results"]["proposition"] == "family_b_linear"


def test_classify_fractional_map_reports_conjugation(capsys):
    code, report = _json_run(capsys, "classify", "--map", _fixture("maps", "fractional_b.json"))
    assert code == 0
    assert "conjugation" in report["results"]


def test_check_fibration(capsys, tmp_path):
    import json

    spec = tmp_path / "a2_equals_o0.json"
    spec.write_text(json.dumps({"family": "A", "params": {"alpha0": "1/4", "alpha1": "4", "gamma0": "1/4"}}))
    code, report = _json_run(capsys, "check-fibration", "--map", str(spec),
                             "--fibration", _fixture("fibrations", "a2_equals_o0_v1.json"))
    assert code == 0
    assert report["results"]["verdict"] is True
    assert report["results"]["pointwise"] is True

    code, report = _json_run(capsys, "check-fibration", "--map", str(spec),
                             "--fibration", _fixture("fibrations", "a2_equals_o0_v1_wrong_mobius.json"))
    assert code == 1
    assert report["results"]["verdict"] is False


def test_check_fibration_finds_mobius(capsys):
    code, report = _json_run(capsys, "check-fibration", "--map", _fixture("maps", "family_b_linear.json"),
                             "--fibration", _fixture("fibrations", "family_b_linear_v.json"))
    assert code == 0
    assert report["results"]["mobius"] == ["1", "1", "0", "1"]


def test_invalid_input_exits_with_usage_code(capsys, tmp_path):
    from birational_growth import command_line_interface

    spec = tmp_path / "bad.json"
    spec.write_text('{"family": "A", "params": {"alpha0": "1", "alpha1": "0", "gamma0": "3"}}')
    assert command_line_interface(["birational-growth", "classify", "--map", str(spec)]) == 2
    assert "params.alpha1" in capsys.readouterr().err

    spec.write_text('{"family": "A",')
    assert command_line_interface(["birational-growth", "degrees", "--map", str(spec)]) == 2
    assert command_line_interface(["birational-growth", "degrees", "--map", str(tmp_path / "missing.json")]) == 2
    assert command_line_interface(["birational-growth", "degrees"]) == 2
    assert command_line_interface(["birational-growth", "search-curves", "--map", _fixture("maps", "generic_a.json"),
                                   "--degree", "9"]) == 2
    assert capsys.readouterr().out == ""


def test_period(capsys):
    code, report = _json_run(capsys, "period", "--map", _fixture("maps", "quadratic_involution.json"), "--n-max", "6")
    assert code == 0
    assert report["results"] == {"period": 2, "n_max": 6}


def test_catalog_listing(capsys):
    code, report = _json_run(capsys, "catalog")
    assert code == 0
    assert len(report["results"]) == 22

    code, report = _json_run(capsys, "catalog", "--name", "k1_p4_c", "--spec")
    assert code == 0
    assert report["results"]["family"] == "A"
    assert report["results"]["generator"] == "i"


def test_verify_selected_entries(capsys):
    code, report = _json_run(capsys, "verify-all", "--entries", "family_b_linear", "a2_equals_o0", "--workers", "2")
    assert code == 0
    assert report["results"]["passed"]
    assert [v["name"] for v in report["results"]["verdicts"]] == ["a2_equals_o0", "family_b_linear"]


def test_json_output_is_deterministic(capsys):
    from birational_growth import run_command

    outputs = []
    for _ in range(2):
        assert run_command(["dyndeg", "--map", _fixture("maps", "generic_a.json"), "--seed", "5"]) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]


def test_config_file_feeds_settings(capsys, tmp_path):
    config = tmp_path / "run.env"
    config.write_text("SEED=7\n")
    code, report = _json_run(capsys, "orbit", "--map", _fixture("maps", "generic_a.json"), "--start", "0",
                             "--config", str(config))
    assert code == 0
    assert [o["start"] for o in report["results"]["orbits"]] == ["A0"]

    config.write_text("SEED=seven\n")
    from birational_growth import command_line_interface

    assert command_line_interface(["birational-growth", "orbit", "--map", _fixture("maps", "generic_a.json"),
                                   "--config", str(config)]) == 2


def test_degrees_help_names_the_probabilistic_method(capsys):
    from birational_growth import command_line_interface

    assert command_line_interface(["birational-growth", "degrees", "--help"]) == 0
    text = " ".join(capsys.readouterr().out.split())
    assert "two large primes (probabilistic)" in text
