import pytest

_CRITERIA: dict[str, list[bool]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    _CRITERIA.setdefault(marker.args[0], []).append(rep.passed)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion this test belongs to")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_CRITERIA, key=lambda s: int(s.split(".")[0])):
        results = _CRITERIA[label]
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"{status}  {label}  ({sum(results)}/{len(results)} checks)")
