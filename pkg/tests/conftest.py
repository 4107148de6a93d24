import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def catalog():
    from qcorr.corpus import load_catalog

    return {e.id: e for e in load_catalog()}


TARGETS = [
    "[4 3 / 4 3 / 2^2 3]",
    "[5 3 / 5 3 / 2^4]",
    "[3^3 / 3^3 / 2^2 5]",
    "[3^2 4 / 3^2 4 / 3^2 2^2]",
    "[4^2 3 / 4^2 3 / 2^4 3]",
    "[3^2 5 / 3^2 5 / 2^4 3]",
    "[3^2 6 / 3^2 6 / 2^6]",
    "[5 4 3 / 5 4 3 / 2^6]",
]

_cache: dict = {}


def enumerated(text):
    """Enumerate once per test session."""
    from qcorr.dessin import enumerate_dessins
    from qcorr.passport import Passport

    if text not in _cache:
        _cache[text] = enumerate_dessins(Passport.parse(text))
    return _cache[text]


# acceptance criteria report: one line per criterion, printed after the run
ACCEPTANCE: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
