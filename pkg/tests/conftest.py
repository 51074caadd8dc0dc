"""Per-criterion PASS/FAIL summary for the acceptance suite."""

from __future__ import annotations

import pytest

_TITLES: dict[str, str] = {}
_ITEMS: dict[str, str] = {}  # nodeid -> criterion label
_FAILED: set[str] = set()
_SEEN: set[str] = set()


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            label, title = mark.args
            _TITLES.setdefault(label, title)
            _ITEMS[item.nodeid] = label


def pytest_runtest_logreport(report):
    label = _ITEMS.get(report.nodeid)
    if label is None:
        return
    _SEEN.add(label)
    if report.failed or (report.when == "call" and report.skipped):
        _FAILED.add(label)


def _key(label: str):
    head = label.rstrip("abcdefghij")
    return int(head), label[len(head):]


@pytest.hookimpl(trylast=True)
def pytest_terminal_summary(terminalreporter):
    if not _TITLES:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_TITLES, key=_key):
        if label not in _SEEN:
            status = "NOT RUN"
        else:
            status = "FAIL" if label in _FAILED else "PASS"
        terminalreporter.write_line(f"{status} [{label}] {_TITLES[label]}")
