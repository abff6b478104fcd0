import pytest

from hecke_reduce.core import HeckePolynomial

ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def T(n: int, k: int) -> HeckePolynomial:
    return HeckePolynomial.generator(n, k)


@pytest.fixture
def gen():
    return T


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split(".")[0])):
        ok, detail = ACCEPTANCE_RESULTS[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
