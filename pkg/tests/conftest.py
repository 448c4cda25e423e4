import math

import pytest

from multirrt.environment import Box, Circle, Workspace
from multirrt.geometry import Point2, Rect
from multirrt.scenario import BUNDLED, load_bundled

GAMMA_75 = math.radians(75.0)


@pytest.fixture
def open_ws():
    return Workspace(Rect(Point2(0, 0), Point2(100, 100)))


@pytest.fixture
def mixed_ws():
    return Workspace(
        Rect(Point2(0, 0), Point2(200, 200)),
        (Circle((60, 60), 15), Box((110, 30), (150, 90)), Circle((120, 150), 20)),
        inflation=1.0,
    )


@pytest.fixture(scope="session")
def bundled():
    return {name: load_bundled(name) for name in (*BUNDLED, "scalability")}


_ACCEPTANCE = pytest.StashKey[dict]()


class AcceptanceRecorder:
    """Collects one verdict per acceptance criterion for the terminal summary."""

    def __init__(self, store: dict):
        self.store = store

    def check(self, number: int, title: str, ok: bool, detail: str = "") -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")
        self.store[number] = line
        print(line)
        assert ok, line


@pytest.fixture(scope="session")
def acceptance(request):
    return AcceptanceRecorder(request.config.stash.setdefault(_ACCEPTANCE, {}))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_ACCEPTANCE, {})
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(store):
        terminalreporter.write_line(store[n])
