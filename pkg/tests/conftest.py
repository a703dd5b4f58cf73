import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_RESULTS = pytest.StashKey[dict]()
_NOTES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_RESULTS] = {}
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion check")


@pytest.fixture
def note(request):
    """Attach a line of detail to the acceptance summary for this test."""
    notes = request.node.stash.setdefault(_NOTES, [])
    return notes.append


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        status = "SKIP" if rep.skipped else "PASS" if rep.passed else "FAIL"
        number, title = mark.args
        entry = item.config.stash[_RESULTS].setdefault(number, {"title": title, "parts": []})
        entry["parts"].append((item.name, status, list(item.stash.get(_NOTES, []))))


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash[_RESULTS]
    if not results:
        return
    tr = terminalreporter
    tr.write_sep("=", "acceptance criteria")
    for number in sorted(results):
        entry = results[number]
        statuses = [s for _, s, _ in entry["parts"]]
        overall = "FAIL" if "FAIL" in statuses else "SKIP" if all(s == "SKIP" for s in statuses) else "PASS"
        tr.write_line(f"criterion {number:>2} {overall}  {entry['title']}")
        for name, status, notes in entry["parts"]:
            tr.write_line(f"      {status}  {name}")
            for n in notes:
                tr.write_line(f"            {n}")
