import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=int(os.environ.get("PLANEFLOW_EXAMPLES", "40")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


import pytest

_VERDICTS = pytest.StashKey[dict]()


@pytest.fixture
def verdict(request):
    """Record one acceptance line: ``verdict(number, ok, detail)``."""
    store = request.config.stash.setdefault(_VERDICTS, {})

    def record(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        store[number] = line
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, config):
    store = config.stash.get(_VERDICTS, {})
    if store:
        terminalreporter.section("acceptance criteria")
        for number in sorted(store):
            terminalreporter.write_line(store[number])
