import functools
from fractions import Fraction

import pytest

from rspin import catalog


@functools.lru_cache(maxsize=None)
def cat(family: str, r: int, kappa=None):
    """Cached catalog constructor; algebras are immutable."""
    return catalog.make(catalog.FamilySpec(family, r, None if kappa is None else Fraction(kappa)))


def catalog_upto(rmax: int, kappas=("2",)):
    """Every catalog family available at each r <= rmax."""
    out = []
    for r in range(1, rmax + 1):
        if r % 2 == 0:
            out.append(cat("A", r))
        if r % 2 and r > 1:
            out.append(cat("B", r))
        if r % 2 == 0 and r > 2:
            out.append(cat("C", r))
        for k in kappas:
            out.append(cat("E", r, k))
        out.append(cat("F", r))
        if r > 1:
            out.append(cat("D", r))
    return out


_LINES_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES_KEY] = []


@pytest.fixture
def criterion(request):
    lines = request.config.stash[_LINES_KEY]

    def report(n: int, ok: bool, detail: str = ""):
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        print(line)
        lines.append((n, line))
        assert ok, line

    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
