"""Per-criterion PASS/FAIL summary for the acceptance suite."""

from collections import defaultdict

import pytest

CRITERIA = {
    1: "central binomial sequence and ECO rows",
    2: "Bell terms and egf e^(e^z-1)",
    3: "Riordan table: ECO iteration = printed terms = gf pipeline",
    4: "noncrossing graphs: (1+zf)^3 = f(1-zf), terms",
    5: "ternary family and p = 3, 4, 5 generalization",
    6: "Stirling -> Pascal via c = r = exp",
    7: "falling factorial -> Bessel",
    8: "divisor chain of the 4x4 matrix",
    9: "Krylov examples, equivalence, alpha-family",
    10: "quadratic-column recurrence coefficients",
    11: "randomized property suites",
}

_outcomes: dict[int, list[str]] = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            item.user_properties.append(("criterion", mark.args[0]))


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        if hasattr(report, "wasxfail"):
            _outcomes[crit].append("xfail")
        else:
            _outcomes[crit].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in CRITERIA.items():
        results = _outcomes.get(n)
        if not results:
            continue
        status = "PASS" if all(r == "passed" for r in results) else "FAIL"
        note = " (known unattainable, see test)" if "xfail" in results else ""
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {title}{note}")
