import functools

import pytest

from fqdyn.extension import build_extension, derive_deltas
from fqdyn.field import build_field


@functools.lru_cache(maxsize=None)
def field(p, s=1, gen=None):
    return build_field(p, s, generator=gen)


@functools.lru_cache(maxsize=None)
def ext(p, s=1, b=None, gen=None):
    return build_extension(field(p, s, gen), b)


def instance(p, n, a, c, s=1, b=None, gen=None):
    E = ext(p, s, b, gen)
    return E, derive_deltas(E, a, c, n, allow_trivial=True)


@pytest.fixture
def f13():
    return field(13)


# criterion number -> one-line verdict, filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[num])
