import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("smt", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("smt")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(autouse=True, scope="session")
def _cache_dir(tmp_path_factory):
    # keep catalog caches out of the user's home directory
    path = tmp_path_factory.mktemp("smt-cache")
    old = os.environ.get("SMT_CACHE_DIR")
    os.environ["SMT_CACHE_DIR"] = str(path)
    yield path
    if old is None:
        os.environ.pop("SMT_CACHE_DIR", None)
    else:
        os.environ["SMT_CACHE_DIR"] = old


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
