import json
from pathlib import Path

import pytest

_FROZEN = Path(__file__).parent / "oracles" / "frozen_values.json"


@pytest.fixture(scope="session")
def frozen():
    """Reference values produced once by ``oracles/generate_oracles.py``."""
    return json.loads(_FROZEN.read_text())


def cplx(pair):
    return complex(pair[0], pair[1])


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[0][1:])):
            terminalreporter.write_line(line)
