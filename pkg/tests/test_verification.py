def test_jobs_cross_the_process_boundary_by_name():
    import pickle
    from birational_growth import load_settings
    from birational_growth._verification import _job

    settings = load_settings(workers=2)
    assert pickle.loads(pickle.dumps(settings)) == settings

    verdict = _job("entry", "family_b_linear", settings)
    assert verdict.name == "family_b_linear" and verdict.passed
    assert pickle.loads(pickle.dumps(verdict)) == verdict


def test_failing_job_becomes_a_failed_verdict():
    from birational_growth import load_settings
    from birational_growth._verification import _job

    verdict = _job("entry", "no_such_entry", load_settings())
    assert not verdict.passed
    assert verdict.errors[0].startswith("InvalidParameter")


def test_verify_all_runs_in_worker_processes():
    from birational_growth import catalog_entry, load_settings
    from birational_growth._verification import verify_all

    entries = [catalog_entry(name) for name in ("p1", "family_b_periodic", "a2_equals_o0")]
    verdicts = verify_all(entries, load_settings(workers=2), suite=False)
    assert [v.name for v in verdicts] == ["a2_equals_o0", "family_b_periodic", "p1"]
    assert all(v.passed for v in verdicts)
