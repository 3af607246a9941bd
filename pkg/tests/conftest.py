import os

import pytest
from hypothesis import HealthCheck, settings

from galois_closure.graphs import derived_cover

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

S3_GENERATORS = [(1, 0, 2), (0, 2, 1)]
CYCLIC3_GENERATORS = [(1, 2, 0), (0, 1, 2)]
CYCLIC4_GENERATORS = [(1, 2, 3, 0), (0, 1, 2, 3)]

_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def s3_cover():
    return derived_cover(S3_GENERATORS)


@pytest.fixture
def cyclic3_cover():
    return derived_cover(CYCLIC3_GENERATORS)


@pytest.fixture
def cyclic4_cover():
    return derived_cover(CYCLIC4_GENERATORS)


@pytest.fixture
def report_line(request):
    """Record one PASS/FAIL line for the end-of-run acceptance summary."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def record(criterion: int, ok: bool, detail: str):
        line = f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}"
        lines.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
