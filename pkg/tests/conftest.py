from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "sodforge",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("sodforge")

DATA = Path(__file__).resolve().parents[1] / "src" / "sodforge" / "data"


@pytest.fixture
def quaternion_path():
    return DATA / "paper-quaternion.design"


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
