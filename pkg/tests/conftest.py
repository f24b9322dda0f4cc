from fractions import Fraction as F

import pytest

from patternwait import Distribution

FAIR = Distribution.of(F(1, 2), F(1, 2))
BIASED = Distribution.of(F(1, 3), F(2, 3))
THREE = Distribution.of(F(1, 2), F(1, 3), F(1, 6))


@pytest.fixture(params=[FAIR, BIASED], ids=["fair", "biased"])
def binary(request):
    return request.param


_criteria: dict[int, dict] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        report.criterion = mark.args


def pytest_runtest_logreport(report):
    args = getattr(report, "criterion", None)
    if args is None or not (report.when == "call" or report.failed):
        return
    num, title = args
    entry = _criteria.setdefault(num, {"title": title, "outcomes": []})
    entry["outcomes"].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        entry = _criteria[num]
        ok = all(o == "passed" for o in entry["outcomes"])
        terminalreporter.write_line(
            f"criterion {num}: {'PASS' if ok else 'FAIL'}  {entry['title']} ({len(entry['outcomes'])} check(s))"
        )
