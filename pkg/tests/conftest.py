import pytest

_CRITERIA = []


class _Recorder:
    def __call__(self, number, name, passed, detail=""):
        _CRITERIA.append((number, name, bool(passed), detail))
        return bool(passed)


@pytest.fixture
def criterion():
    """Record an acceptance-criterion outcome for the end-of-run summary."""
    return _Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, passed, detail in sorted(_CRITERIA, key=lambda c: c[0]):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {number} {name}: {detail}")
