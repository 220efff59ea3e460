import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def P():
    from magic4 import rp3
    return rp3.build_P()


@pytest.fixture(scope="session")
def delta_data():
    from magic4 import ktheory
    return ktheory.load_delta_data()


ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    """Append (criterion, passed, seconds, limit, detail) lines for the end-of-run summary."""
    return request.config.stash.setdefault(ACCEPTANCE_KEY, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for num, ok, secs, limit, detail in sorted(lines):
        state = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{state}  criterion {num:>2}  {secs:8.2f}s / {limit:g}s  {detail}")
