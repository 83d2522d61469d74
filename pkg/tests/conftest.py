from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=150, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


# -- acceptance criteria roll-up -------------------------------------------

_criteria: dict[int, list[bool]] = {}
_marked: dict[str, tuple[int, ...]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and not report.passed):
        for k in _marked.get(report.nodeid, ()):
            _criteria.setdefault(k, []).append(report.passed)


def pytest_collection_modifyitems(items):
    for item in items:
        marks = [m.args[0] for m in item.iter_markers("criterion")]
        if marks:
            _marked[item.nodeid] = tuple(marks)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_criteria):
        runs = _criteria[k]
        status = "PASS" if all(runs) else "FAIL"
        terminalreporter.write_line(f"criterion {k:2d}: {status} ({sum(runs)}/{len(runs)} checks)")
