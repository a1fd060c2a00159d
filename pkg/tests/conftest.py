"""Shared fixtures: a session-wide cache for exact-diagonalisation builds.

Building the n=12 spectrum costs tens of seconds; several test modules and the
acceptance gate reuse the same quench configurations, so EDState instances are
memoised for the whole session.
"""
import pytest

from xyquench.oracle import EDState

_ED_CACHE: dict[tuple, EDState] = {}


@pytest.fixture(scope="session")
def ed_state():
    def build(n: int, j: float = 1.0, gamma: float = 1.0,
              h0: float = 0.7, h1: float = 1.0) -> EDState:
        key = (n, j, gamma, h0, h1)
        if key not in _ED_CACHE:
            _ED_CACHE[key] = EDState.from_fields(n, j, gamma, h0, h1)
        return _ED_CACHE[key]

    return build


@pytest.fixture(scope="session")
def acceptance(request):
    """Collector for the one-line verdicts of the acceptance tests.

    Lines are printed immediately (visible with -s or on failure) and echoed
    in the terminal summary, which capture does not swallow.
    """
    store = getattr(request.config, "_acceptance_lines", None)
    if store is None:
        store = []
        request.config._acceptance_lines = store

    def report(criterion: str, ok: bool, detail: str) -> None:
        line = f"ACCEPTANCE {criterion} {'PASS' if ok else 'FAIL'}: {detail}"
        store.append(line)
        print(line, flush=True)

    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
