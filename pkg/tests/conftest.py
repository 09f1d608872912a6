import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion a test belongs to")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            item.user_properties.append(("criterion", m.args))


_results = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None or rep.when not in ("setup", "call"):
        return
    number, title = m.args
    entry = _results.setdefault(number, {"title": title, "tests": {}})
    if rep.when == "setup" and not rep.failed:
        return
    entry["tests"][item.name] = rep.outcome


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_results):
        entry = _results[number]
        outcomes = entry["tests"].values()
        verdict = "PASS" if outcomes and all(o == "passed" for o in outcomes) else "FAIL"
        tr.write_line(f"criterion {number}: {verdict}  {entry['title']}")
        for name, outcome in entry["tests"].items():
            tr.write_line(f"    {outcome:7s} {name}")
