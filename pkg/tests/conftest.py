import pytest

from zetakit import PrecisionContext


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext()


@pytest.fixture(scope="session")
def mp(ctx):
    return ctx.mp
