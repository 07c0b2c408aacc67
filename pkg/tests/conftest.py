from __future__ import annotations

import pytest

from weylext.schur import build_mu


@pytest.fixture(scope="session")
def mu32():
    return build_mu(3, 2)


@pytest.fixture(scope="session")
def mu52():
    return build_mu(5, 2)


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path_factory, monkeypatch):
    monkeypatch.setenv("WEYLEXT_CACHE", str(tmp_path_factory.getbasetemp() / "cache"))
