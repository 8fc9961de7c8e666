import pytest

from bentmodes.modes import assemble_catalog
from bentmodes.slab import Geometry, solve_z_modes


@pytest.fixture(scope="session")
def table1():
    """The worked example: r1=0.5 um, r2=1.5 um, b=0.5 um, n_w=2.3, n_s=1, 800 nm."""
    return Geometry(r1=0.5, r2=1.5, b=0.5, n_w=2.3, n_s=1.0, lambda0=0.8)


@pytest.fixture(scope="session")
def table1_zmodes(table1):
    return solve_z_modes(table1)


@pytest.fixture(scope="session")
def table1_catalog(table1):
    return assemble_catalog(table1)


@pytest.fixture(scope="session")
def table1_modes(table1_catalog):
    return {(rec.i, rec.l): rec for rec in table1_catalog}


_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def criterion():
    """Record one acceptance outcome, then assert on it.

    ``criterion(n, title, ok, detail)`` stores the result for the summary
    printed at the end of the run.
    """

    def record(number: int, title: str, ok: bool, detail: str) -> None:
        _ACCEPTANCE[number] = (bool(ok), f"{title}: {detail}")
        print(f"criterion {number:2d} {'PASS' if ok else 'FAIL'} {title}: {detail}")
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        ok, text = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {text}")
