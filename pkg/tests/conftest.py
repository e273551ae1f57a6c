import pytest

from qcenter.center import CenterPipeline
from qcenter.pbw import AlgebraKind


@pytest.fixture(scope="session")
def sl3_5():
    return AlgebraKind("sl3", 5)


@pytest.fixture(scope="session")
def sl3_pipeline(sl3_5):
    """K-invariant domain pipeline for sl3, l = 5 (matrices built lazily)."""
    return CenterPipeline(sl3_5, "k-invariant")


@pytest.fixture(scope="session")
def sl3_wz_pipeline(sl3_5):
    """Weight-zero domain pipeline for sl3, l = 5."""
    return CenterPipeline(sl3_5, "weight-zero")


# -- one pass/fail line per acceptance criterion ---------------------------------

_CRITERIA: dict[str, list[str]] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    if report.when == "call" or report.outcome != "passed":
        key = name.split("_")[2]
        _CRITERIA.setdefault(key, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA, key=int):
        outcomes = _CRITERIA[key]
        status = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {key}: {status} ({len(outcomes)} checks)")
