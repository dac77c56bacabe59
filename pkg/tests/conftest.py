import random

import pytest

from mlvc.mgroup import MlmParams


@pytest.fixture
def rng():
    return random.Random(20261016)


@pytest.fixture
def tiny():
    """p=5, q=7, N=35: small enough to check by hand."""
    return MlmParams(lambda_bits=3, k=3, p=5, q=7)


_CRITERIA: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.outcome != "passed":
        doc = _CRITERIA.get(name, ("", ""))[1]
        _CRITERIA[name] = ("PASS" if report.passed else "FAIL", doc)


def pytest_collection_modifyitems(items):
    for item in items:
        if "test_acceptance.py" in item.nodeid:
            doc = (item.function.__doc__ or "").strip().splitlines()[0]
            _CRITERIA.setdefault(item.name, ("NOT RUN", doc))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, (status, doc) in _CRITERIA.items():
        terminalreporter.write_line(f"{status:7} {name}: {doc}")
