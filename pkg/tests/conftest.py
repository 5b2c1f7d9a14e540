"""Shared fixtures and builders."""

from __future__ import annotations

import json

import pytest

from hookforge import bundled
from hookforge.blocks import parse_workspace


def accept_all_doc() -> dict:
    """Minimal accept-all workspace as a plain document."""
    return json.loads(bundled.workspace_text("accept-all"))


@pytest.fixture
def accept_all_program():
    return parse_workspace(bundled.workspace_text("accept-all"))


@pytest.fixture
def carbon_offset_program():
    return parse_workspace(bundled.workspace_text("carbon-offset"))


@pytest.fixture(scope="session")
def mock_compiler():
    from hookforge.compilerbridge import serve_mock_compiler

    handle = serve_mock_compiler()
    yield handle
    handle.stop()


@pytest.fixture(scope="session")
def mocknet():
    from hookforge.mocknet import serve_mocknet

    handle = serve_mocknet()
    yield handle
    handle.stop()
