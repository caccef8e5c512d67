import pytest

_LINES = pytest.StashKey[list]()


@pytest.fixture
def record(request):
    """Record the PASS/FAIL line of an acceptance criterion and assert it."""
    lines = request.config.stash.setdefault(_LINES, [])

    def _record(number: int, title: str, ok: bool, detail: str) -> None:
        line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title} ({detail})"
        lines.append(line)
        print(line)
        assert ok, line

    return _record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
