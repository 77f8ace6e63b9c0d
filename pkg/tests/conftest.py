import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


@pytest.fixture
def files(tmp_path):
    from helpers import write_cli_files

    return write_cli_files(tmp_path)

# ---------------------------------------------------------------- acceptance summary

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion the test belongs to")


def pytest_runtest_logreport(report):
    number = getattr(report, "criterion", None)
    if number is None:
        return
    if report.when == "call" or report.failed or report.skipped:
        entry = _criteria.setdefault(number, {"title": report.criterion_title, "passed": 0, "failed": []})
        if report.passed:
            entry["passed"] += 1
        elif report.failed:
            entry["failed"].append(report.nodeid.split("::")[-1])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        report = outcome.get_result()
        report.criterion, report.criterion_title = mark.args


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        verdict = "FAIL" if entry["failed"] else "PASS"
        line = f"criterion {number} {verdict}: {entry['title']} ({entry['passed']} passed"
        if entry["failed"]:
            line += f", failed: {', '.join(entry['failed'])}"
        terminalreporter.write_line(line + ")")
