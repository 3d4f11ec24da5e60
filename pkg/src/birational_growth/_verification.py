"""Batch verification of the catalog and of the closed-form degree data.

Every catalog entry is checked on its representative: the entry resolves to
itself, the case analysis and the computed degrees agree with what the entry
expects, the map has the expected period, and each listed fibration, first
integral and transverse pair passes its exact test. Entries run in a pool of
``Settings.workers`` processes; jobs cross the process boundary by name, so
only entry names and the settings are pickled.
"""
import asyncio
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from ._errors import BirationalGrowthError
from ._utilities import NORMAL, banner, error, log, set_verbosity, verbosity

GOLDEN_RATIO_DIGITS = Fraction("1.6180339887")
TOLERANCE = Fraction(1, 10 ** 9)


@dataclass(frozen=True)
class Verdict:
    name: str
    checks: Tuple[Tuple[str, bool], ...]
    errors: Tuple[str, ...] = ()

    @property
    def passed(self):
        return not self.errors and all(ok for _, ok in self.checks)

    def to_json(self):
        return {"name": self.name, "passed": self.passed, "checks": dict(self.checks), "errors": list(self.errors)}


class _Checks:
    """Collects named verdicts; a check that raises is recorded as failed."""

    def __init__(self, tag):
        self.tag = tag
        self.results = []
        self.errors = []

    def run(self, name, check, *args, **kwargs):
        try:
            ok = bool(check(*args, **kwargs))
        except BirationalGrowthError as exc:
            error(self.tag, f"{name}: {exc}")
            self.errors.append(f"{name}: {exc}")
            ok = False
        log(self.tag, f"{name}: {'ok' if ok else 'FAILED'}")
        self.results.append((name, ok))
        return ok

    def verdict(self, name):
        return Verdict(name, tuple(self.results), tuple(self.errors))


def verify_entry(entry, settings):
    """Check one catalog entry on its representative map."""
    from ._classifier import classify_map, closed_form_charpoly, match_catalog
    from ._entropy import annihilates
    from ._fibrations import Mobius, check_fibration, check_first_integral, check_periodicity, transversality_check

    tag = f"Catalog {entry.name}"
    checks = _Checks(tag)
    f = entry.representative()
    expected = entry.expected
    match = match_catalog(f)
    checks.run("matches", lambda: match is not None and match.name == entry.name)
    label = classify_map(f, settings.k_max, settings.p_max, seed=settings.seed, max_steps=settings.max_steps)
    checks.run("growth", lambda: label.growth.kind == expected.get("growth", label.growth.kind))
    for key in ("k", "p"):
        if key in expected:
            checks.run(key, lambda key=key: getattr(label, key) == expected[key])
    checks.run("charpoly", lambda: label.charpoly == closed_form_charpoly(entry.family, label.k, label.p))
    checks.run("recurrence", annihilates, label.charpoly, label.degrees)
    if expected.get("degrees"):
        wanted = list(expected["degrees"])
        checks.run("degrees", lambda: list(label.degrees[1:len(wanted) + 1]) == wanted)
    if "map_period" in expected:
        period = expected["map_period"]
        checks.run("map_period", lambda: check_periodicity(f, period or settings.degree_terms, seed=settings.seed,
                                                           term_cap=settings.term_cap) == period)
    named = {}
    for name, V, psi in entry.fibration_data():
        named[name] = V
        checks.run(f"fibration {name}", check_fibration, f, V, psi or Mobius.identity(f.field),
                   term_cap=settings.term_cap)
    for name, W in entry.first_integral_data(f, term_cap=settings.term_cap):
        named[name] = W
        checks.run(f"integral {name}", check_first_integral, f, W, term_cap=settings.term_cap)
    for first, second in entry.transverse:
        checks.run(f"transverse {first} {second}", transversality_check, named[first], named[second])
    return checks.verdict(entry.name)


# closed-form degree data and dynamical degrees


def _golden_ratio(settings):
    from ._entropy import dynamical_degree
    from ._maps import make_family_A
    from ._poly import UPoly
    from ._field import QQ

    checks = _Checks("Suite golden_ratio")
    dyn = dynamical_degree(make_family_A(1, 2, 3), settings.max_steps, seed=settings.seed)
    x = UPoly.x(QQ)
    checks.run("charpoly", lambda: dyn.charpoly == x * x - x - 1)
    checks.run("delta", lambda: dyn.delta.lo - TOLERANCE <= GOLDEN_RATIO_DIGITS <= dyn.delta.hi + TOLERANCE)
    return checks.verdict("golden_ratio")


def _delta_limit(settings):
    from ._classifier import closed_form_charpoly
    from ._entropy import largest_real_root

    checks = _Checks("Suite delta_limit")
    roots = [largest_real_root(closed_form_charpoly("A", k=k)) for k in range(1, 7)]
    golden = largest_real_root(closed_form_charpoly("A"))
    checks.run("increasing", lambda: all(a.hi < b.lo for a, b in zip(roots, roots[1:])))
    checks.run("below_golden_ratio", lambda: all(r.hi < golden.lo for r in roots))
    return checks.verdict("delta_limit")


DEGREE_DATA = (
    # (catalog entry, closed-form degree formula, number of terms, expected degrees)
    ("family_b_linear", None, 12, None),
    ("k1_p4_collision", "k1_p4", 10, (2, 3, 5, 7, 11, 15, 20, 25, 32, 39)),
    ("k1_p4_b", "k1_p4", 10, (2, 3, 5, 7, 11, 15, 20, 25, 32, 39)),
    ("k1_p4_c", "k1_p4", 10, (2, 3, 5, 7, 11, 15, 20, 25, 32, 39)),
    ("k1_p4_d", "k1_p4", 10, (2, 3, 5, 7, 11, 15, 20, 25, 32, 39)),
    ("k2_p3_rational", "k2_p3_rational", 11, (2, 3, 5, 8, 12, 16, 22, 28, 35, 43, 52)),
)


def _closed_form_degrees(settings):
    from ._classifier import catalog_entry
    from ._entropy import degree_formula
    from ._maps import degree_sequence

    checks = _Checks("Suite degrees")
    for name, formula, n, prefix in DEGREE_DATA:
        formula = formula or "family_b"
        f = catalog_entry(name).representative()
        degrees = degree_sequence(f, n, seed=settings.seed, term_cap=settings.term_cap)
        checks.run(f"{name} formula", lambda: degrees == [degree_formula(formula, m) for m in range(1, n + 1)])
        if prefix:
            checks.run(f"{name} degrees", lambda: tuple(degrees) == prefix)
    f = catalog_entry("p2").representative()
    degrees = degree_sequence(f, 12, seed=settings.seed, term_cap=settings.term_cap)
    checks.run("p2 linear", lambda: all(d == 2 * m - 1 for m, d in enumerate(degrees, 1) if m >= 2))
    return checks.verdict("closed_form_degrees")


SUITE = (_golden_ratio, _delta_limit, _closed_form_degrees)


def _failed(name, exc):
    error(f"Entry {name}", str(exc))
    return Verdict(name, (), (f"{type(exc).__name__}: {exc}",))


def _job(kind, name, settings):
    """Run one catalog entry or suite check in a worker process; never raises."""
    from ._classifier import catalog_entry

    try:
        if kind == "entry":
            return verify_entry(catalog_entry(name), settings)
        return _SUITE_BY_NAME[name](settings)
    except Exception as exc:
        return _failed(name, exc)


_SUITE_BY_NAME = {check.__name__.strip("_"): check for check in SUITE}


async def _verify_async(kind, name, settings, executor, semaphore):
    async with semaphore:
        start = time.perf_counter()
        loop = asyncio.get_running_loop()
        try:
            verdict = await loop.run_in_executor(executor, _job, kind, name, settings)
        except Exception as exc:
            return _failed(name, exc)
        log(f"Entry {name}", f"{'passed' if verdict.passed else 'FAILED'} in {time.perf_counter() - start:.1f}s",
            level=NORMAL)
        return verdict


async def verify_all_async(entries, settings, suite=True):
    """Verify ``entries`` (and the closed-form suite) concurrently; verdicts sorted by name."""
    semaphore = asyncio.Semaphore(settings.workers)
    banner(f"Verifying {len(entries)} catalog entries with {settings.workers} worker(s)")
    jobs = [("entry", entry.name) for entry in entries]
    if suite:
        jobs.extend(("suite", name) for name in _SUITE_BY_NAME)
    with ProcessPoolExecutor(max_workers=settings.workers, initializer=set_verbosity,
                             initargs=(verbosity(),)) as executor:
        verdicts = await asyncio.gather(*(_verify_async(kind, name, settings, executor, semaphore)
                                          for kind, name in jobs))
    failed = sum(not v.passed for v in verdicts)
    banner(f"{len(verdicts) - failed} of {len(verdicts)} passed")
    return sorted(verdicts, key=lambda v: v.name)


def verify_all(entries, settings, suite=True):
    return asyncio.run(verify_all_async(entries, settings, suite))
