import os
from collections import defaultdict

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

EXTENDED = os.environ.get("MAJORANA_EXTENDED", "") not in ("", "0")

# criterion number -> list of (test name, passed)
_CRITERIA = defaultdict(list)
_TITLES = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion a test belongs to")


def pytest_collection_modifyitems(config, items):
    skip = pytest.mark.skip(reason="set MAJORANA_EXTENDED=1 to run")
    for item in items:
        if "extended" in item.keywords and not EXTENDED:
            item.add_marker(skip)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = _markers.get(report.nodeid)
    if marker is None:
        return
    number, title = marker
    _TITLES[number] = title
    if report.skipped:
        return
    _CRITERIA[number].append((report.nodeid.split("::")[-1], report.passed))


_markers = {}


def pytest_itemcollected(item):
    m = item.get_closest_marker("criterion")
    if m is not None:
        _markers[item.nodeid] = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        results = _CRITERIA[number]
        ok = all(p for _, p in results)
        failed = [name for name, p in results if not p]
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {_TITLES[number]}"
        if failed:
            line += f"  (failing: {', '.join(failed)})"
        tr.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
