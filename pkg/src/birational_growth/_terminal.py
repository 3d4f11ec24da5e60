EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def _parser():
    import argparse

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text", "csv"), default="json")
    common.add_argument("--seed", type=int)
    common.add_argument("--max-steps", type=int)
    common.add_argument("--term-cap", type=int)
    common.add_argument("--config", help="dotenv file with defaults (SEED, MAX_STEPS, TERM_CAP, ...)")
    loudness = common.add_mutually_exclusive_group()
    loudness.add_argument("--quiet", action="store_true")
    loudness.add_argument("--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="birational-growth",
                                     description="Degree growth of birational maps of the plane.")
    commands = parser.add_subparsers(dest="command", required=True)

    def command(name, help, needs_map=True):
        sub = commands.add_parser(name, parents=[common], help=help)
        if needs_map:
            sub.add_argument("--map", required=True, help="map specification (JSON file, - for stdin)")
        return sub

    sub = command("degrees", "degrees d_1 .. d_n of the iterates")
    sub.add_argument("--n", type=int, default=10)
    sub.add_argument("--method", choices=("line", "compose"), default="line",
                     help="line: random lines over two large primes (probabilistic); compose: exact iterates")
    command("charpoly", "characteristic polynomial from the singular-elementary orbit lists")
    sub = command("dyndeg", "dynamical degree and growth class")
    sub.add_argument("--terms", type=int)
    command("classify", "case analysis, growth class and catalog entry")
    sub = command("orbit", "orbits of the inverse indeterminacy points")
    sub.add_argument("--start", type=int, choices=(0, 1, 2))
    sub = command("check-fibration", "exact test of V o f = psi(V)")
    sub.add_argument("--fibration", required=True, help="JSON file with P, Q (or V) and optionally mobius")
    sub.add_argument("--first-integral", action="store_true", help="test V o f = V")
    sub = command("search-curves", "invariant curves of a given degree")
    sub.add_argument("--degree", type=int, required=True)
    sub = command("period", "minimal n with f^n the identity")
    sub.add_argument("--n-max", type=int, default=24)
    sub = command("catalog", "list, show or verify the zero-entropy catalog", needs_map=False)
    sub.add_argument("--name")
    sub.add_argument("--spec", action="store_true", help="print the map specification of the representative")
    sub.add_argument("--verify", action="store_true")
    sub.add_argument("--workers", type=int)
    sub = command("verify-all", "verify every catalog entry and the closed-form degree data", needs_map=False)
    sub.add_argument("--workers", type=int)
    sub.add_argument("--entries", nargs="+", help="restrict to these catalog entries")
    return parser


def _read_map(path):
    import sys
    from pathlib import Path
    from ._specs import parse_map_spec

    text = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    return parse_map_spec(text)


def _run_degrees(args, settings):
    from ._maps import degree_sequence

    f = _read_map(args.map).build()
    degrees = degree_sequence(f, args.n, method=args.method, seed=settings.seed, term_cap=settings.term_cap)
    return {"degrees": degrees}, [degrees]


def _run_charpoly(args, settings):
    from ._entropy import build_lists, char_poly_bk
    from ._orbits import se_profile

    f = _read_map(args.map).build()
    profile = se_profile(f, settings.max_steps, settings.jet_order, seed=settings.seed)
    lists = build_lists(profile)
    chi = char_poly_bk(lists)
    return {"charpoly": chi.to_json(), "polynomial": str(chi), "lists": lists.to_json()}, [chi.to_json()]


def _run_dyndeg(args, settings):
    from ._entropy import dynamical_degree

    f = _read_map(args.map).build()
    dyn = dynamical_degree(f, settings.max_steps, n_terms=args.terms or settings.degree_terms, seed=settings.seed)
    out = dyn.to_json()
    return out, [["delta_lo", out["delta"]["lo"]], ["delta_hi", out["delta"]["hi"]], ["class", out["class"]]]


def _run_classify(args, settings):
    from ._classifier import classify_map

    f, conjugation = _read_map(args.map).normalized()
    label = classify_map(f, settings.k_max, settings.p_max, seed=settings.seed, max_steps=settings.max_steps)
    out = label.to_json()
    if conjugation is not None:
        out["conjugation"] = conjugation.to_json()
    return out, [["class", out["class"]], ["k", label.k], ["p", label.p], ["entry", label.proposition]]


def _run_orbit(args, settings):
    from ._orbits import se_profile

    f = _read_map(args.map).build()
    profile = se_profile(f, settings.max_steps, settings.jet_order, seed=settings.seed)
    out = profile.to_json()
    if args.start is not None:
        out["orbits"] = [o for o in out["orbits"] if o["start"] == f"A{args.start}"]
    rows = [["start", "step", "depth", "center", "direction", "label"]]
    for orbit in out["orbits"]:
        for point in orbit["orbit"]["points"]:
            rows.append([orbit["start"], point["step"], point["depth"], " ".join(_flat(point["center"])),
                         " ".join(_flat(point["direction"] or [])), point["label"] or ""])
    return out, rows


def _run_check_fibration(args, settings):
    import json
    from pathlib import Path
    from ._errors import ParseError
    from ._fibrations import (Mobius, check_fibration, check_fibration_pointwise, find_mobius, fibration_from_json)

    f = _read_map(args.map).build()
    try:
        data = json.loads(Path(args.fibration).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{args.fibration}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    V, psi = fibration_from_json(data, f.field)
    if args.first_integral:
        psi = Mobius.identity(f.field)
    if psi is None:
        psi = find_mobius(f, V, term_cap=settings.term_cap)
        verdict = psi is not None
    else:
        verdict = check_fibration(f, V, psi, term_cap=settings.term_cap)
    out = {"verdict": verdict, "mobius": None if psi is None else psi.to_json()}
    if psi is not None:
        out["pointwise"] = check_fibration_pointwise(f, V, psi, seed=settings.seed)
    return out, [["verdict", verdict]]


def _run_search_curves(args, settings):
    from ._fibrations import search_invariant_curves

    f = _read_map(args.map).build()
    found = search_invariant_curves(f, args.degree, term_cap=settings.term_cap)
    rows = [["eigenvalue", "profile", "curve"]]
    rows.extend([str(c.eigenvalue), " ".join(map(str, c.profile)), str(c.curve)] for c in found.curves)
    return found.to_json(), rows


def _run_period(args, settings):
    from ._fibrations import check_periodicity

    f = _read_map(args.map).build()
    period = check_periodicity(f, args.n_max, seed=settings.seed, term_cap=settings.term_cap)
    return {"period": period, "n_max": args.n_max}, [["period", period]]


def _run_catalog(args, settings):
    from ._classifier import catalog_entry, zero_entropy_catalog
    from ._specs import map_spec_of

    entries = [catalog_entry(args.name)] if args.name else list(zero_entropy_catalog())
    if args.verify:
        return _verify(entries, settings, suite=False)
    if args.spec:
        specs = [map_spec_of(e.representative(), e.name).to_json() for e in entries]
        return (specs[0] if args.name else specs), None
    if args.name:
        return entries[0].to_json(), None
    rows = [["name", "family", "group", "summary"]]
    rows.extend([e.name, e.family, e.group, e.summary] for e in entries)
    return [{"name": e.name, "family": e.family, "group": e.group, "summary": e.summary} for e in entries], rows


def _run_verify_all(args, settings):
    from ._classifier import catalog_entry, zero_entropy_catalog

    entries = [catalog_entry(name) for name in args.entries] if args.entries else list(zero_entropy_catalog())
    return _verify(entries, settings, suite=not args.entries)


def _verify(entries, settings, suite):
    from ._verification import verify_all

    verdicts = verify_all(entries, settings, suite=suite)
    out = {"passed": all(v.passed for v in verdicts), "verdicts": [v.to_json() for v in verdicts]}
    rows = [["name", "passed"]] + [[v.name, v.passed] for v in verdicts]
    return out, rows


RUNNERS = {
    "degrees": _run_degrees,
    "charpoly": _run_charpoly,
    "dyndeg": _run_dyndeg,
    "classify": _run_classify,
    "orbit": _run_orbit,
    "check-fibration": _run_check_fibration,
    "search-curves": _run_search_curves,
    "period": _run_period,
    "catalog": _run_catalog,
    "verify-all": _run_verify_all,
}


def _flat(value):
    if isinstance(value, list):
        return [item for v in value for item in _flat(v)]
    return [str(value)]


def _text(value, indent=0):
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for key in sorted(value):
            item = value[key]
            if isinstance(item, (dict, list)) and item and any(isinstance(v, (dict, list)) for v in
                                                                (item.values() if isinstance(item, dict) else item)):
                lines.append(f"{pad}{key}:")
                lines.append(_text(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(item)}")
        return "\n".join(lines)
    if isinstance(value, list):
        return "\n".join(_text(item, indent) if isinstance(item, (dict, list)) else f"{pad}- {_scalar(item)}"
                         for item in value)
    return f"{pad}{_scalar(value)}"


def _scalar(value):
    if isinstance(value, list):
        return ", ".join(_scalar(v) for v in value)
    if isinstance(value, dict):
        return ", ".join(f"{k}={_scalar(v)}" for k, v in sorted(value.items()))
    if value is None:
        return "-"
    return str(value).lower() if isinstance(value, bool) else str(value)


def _emit(report, rows, fmt):
    import csv
    import json
    import sys

    if fmt == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    elif fmt == "text":
        print(f"{report['command']}")
        print(_text(report["results"], 1))
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        for row in rows if rows is not None else [[report["command"]]]:
            writer.writerow(["" if v is None else _scalar(v) for v in row])


def _succeeded(command, results):
    if command in ("verify-all", "catalog") and isinstance(results, dict) and "passed" in results:
        return results["passed"]
    if command == "check-fibration":
        return results["verdict"]
    return True


def command_line_interface(argv=None):
    """Command-line interface of the birational_growth package; returns the exit code."""
    import sys
    import time

    from ._errors import BirationalGrowthError, InvalidParameter, ParseError, ValidationError
    from ._settings import load_settings
    from ._utilities import NORMAL, QUIET, VERBOSE, error, log, set_verbosity

    if argv is None:
        argv = sys.argv
    try:
        args = _parser().parse_args(argv[1:])
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    set_verbosity(QUIET if args.quiet else VERBOSE if args.verbose else NORMAL)
    start = time.perf_counter()
    try:
        settings = load_settings(args.config, seed=args.seed, max_steps=args.max_steps, term_cap=args.term_cap,
                                 workers=getattr(args, "workers", None))
        results, rows = RUNNERS[args.command](args, settings)
    except (ParseError, ValidationError, InvalidParameter, OSError) as exc:
        error(args.command, str(exc))
        return EXIT_USAGE
    except BirationalGrowthError as exc:
        error(args.command, f"{type(exc).__name__}: {exc}")
        return EXIT_FAILED

    inputs = {key: value for key, value in sorted(vars(args).items())
              if key not in ("command", "format", "quiet", "verbose") and value not in (None, False)}
    report = {"command": args.command, "inputs": inputs, "results": results}
    _emit(report, rows, args.format)
    log("Timing", f"{args.command} took {time.perf_counter() - start:.2f}s", level=NORMAL)
    return EXIT_OK if _succeeded(args.command, results) else EXIT_FAILED


def run_command(argv):
    """Run one subcommand, ``argv`` without the program name; the report goes to stdout."""
    return command_line_interface(["birational-growth", *argv])
