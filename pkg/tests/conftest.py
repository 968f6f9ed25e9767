import pytest

from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[key])


@pytest.fixture
def criterion(request):
    """Time a criterion body, enforce its wall-clock limit, record a PASS/FAIL line."""
    import contextlib
    import time

    @contextlib.contextmanager
    def run(number, title, limit_s):
        start = time.perf_counter()
        status = "FAIL"
        try:
            yield
            elapsed = time.perf_counter() - start
            assert elapsed < limit_s, f"took {elapsed:.1f}s, limit {limit_s}s"
            status = "PASS"
        finally:
            elapsed = time.perf_counter() - start
            ACCEPTANCE_RESULTS[number] = (
                f"[{status}] {number}. {title} ({elapsed:.2f}s, limit {limit_s}s)"
            )

    return run
