import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=150, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def letters(ngens):
    return st.sampled_from([g for g in range(1, ngens + 1)] + [-g for g in range(1, ngens + 1)])


def raw_words(ngens, max_size=12):
    return st.lists(letters(ngens), max_size=max_size)


# --- acceptance reporting: one pass/fail line per criterion ---------------------------

_registry: dict[str, tuple[int, str]] = {}
_outcomes: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion checked by a test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _registry[item.nodeid] = mark.args


def pytest_runtest_logreport(report):
    if report.nodeid not in _registry:
        return
    if report.when == "call" or report.failed:
        number, text = _registry[report.nodeid]
        _outcomes[number] = ("PASS" if report.passed else "FAIL", text)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        status, text = _outcomes[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {text}")
