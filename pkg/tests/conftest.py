from __future__ import annotations

import pytest

from layerlat import fixtures
from layerlat.chain import Chain


@pytest.fixture(scope="session")
def s3_chain() -> Chain:
    return Chain(fixtures.s3())


@pytest.fixture(scope="session")
def zb_chain() -> Chain:
    return Chain(fixtures.zb())


@pytest.fixture(scope="session")
def ze_chain() -> Chain:
    return Chain(fixtures.ze())


@pytest.fixture(scope="session")
def lz_chain() -> Chain:
    return Chain(fixtures.lz())


@pytest.fixture(scope="session")
def lz2_chain() -> Chain:
    return Chain(fixtures.lz2())


@pytest.fixture(scope="session")
def jz_chain() -> Chain:
    return Chain(fixtures.jz())
