import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE: list[tuple[str, str, list[str]]] = []


def pytest_runtest_makereport(item, call):
    if call.when != "call" or item.get_closest_marker("acceptance") is None:
        return
    status = "PASS" if call.excinfo is None else "FAIL"
    _ACCEPTANCE.append((item.name, status, getattr(item, "criterion_lines", [])))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, status, lines in _ACCEPTANCE:
        terminalreporter.write_line(f"{status}  {name}")
        for line in lines:
            terminalreporter.write_line(f"      {line}")
