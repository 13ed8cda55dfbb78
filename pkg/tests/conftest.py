import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from homjordan.corpus import named_corpus  # noqa: E402

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, title = mark.args
    failed = rep.failed or (rep.when == "setup" and rep.skipped)
    prev = _criteria.get(num, (title, True))
    _criteria[num] = (title, prev[1] and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        title, ok = _criteria[num]
        terminalreporter.write_line("criterion %d: %s  %s" % (num, "PASS" if ok else "FAIL", title))


@pytest.fixture(scope="session")
def corpus():
    return named_corpus()
