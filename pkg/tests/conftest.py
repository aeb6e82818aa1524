from pathlib import Path

import pytest

TABLE = Path(__file__).resolve().parents[1] / "data" / "zeros_100k.txt"
CONFIG = Path(__file__).resolve().parents[1] / "configs" / "acceptance.toml"


@pytest.fixture(scope="session")
def table():
    if not TABLE.exists():
        pytest.skip("bundled zero table not present")
    from zetacorr.zeros import load_zeros

    return load_zeros(TABLE)


def pytest_terminal_summary(terminalreporter):
    lines = [
        v
        for rep in terminalreporter.getreports("passed") + terminalreporter.getreports("failed")
        if rep.when == "call"
        for k, v in rep.user_properties
        if k == "criterion"
    ]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split()[1])):
            terminalreporter.write_line(line)
