import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

TYPES = ("A1", "A2", "B2", "C2")


@pytest.fixture(autouse=True)
def _no_disk_cache(monkeypatch):
    """Tests run cold unless they opt into a cache directory themselves."""
    monkeypatch.delenv("SATAKECHECK_CACHE_DIR", raising=False)


CRITERIA: dict[int, tuple[str, str]] = {}


def record_criterion(n: int, ok: bool, detail: str) -> None:
    CRITERIA[n] = ("PASS" if ok else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        status, detail = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {detail}")
