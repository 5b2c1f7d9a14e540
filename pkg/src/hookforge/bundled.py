"""Bundled example workspaces and scenarios shipped as package data.

Every bundled workspace must clear the full generate pipeline; the test
suite enforces that as a packaging gate.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

EXAMPLE_NAMES = ("accept-all", "carbon-offset", "deny-under-20", "blacklist")

_FILES = {
    "accept-all": "accept_all.workspace.json",
    "carbon-offset": "carbon_offset.workspace.json",
    "deny-under-20": "deny_under_20.workspace.json",
    "blacklist": "blacklist.workspace.json",
}

SCENARIO_FILES = {"carbon-offset": "carbon_offset.scenario.json"}

# Fixture identities used by the bundled examples and scenarios.
BOB = "rRxcsL2tJkg5SiYFAeihcFrnw1Cb6PUdA"
ALICE = "rBumbgTNuubyPvHHDod9H7Hcy58Jhw6jhz"
CARBON = "rUwj5vpQqLbhiXCEzT3UfkBbe8NAhtGCg5"
MALLORY = "rH2SsiWJYdNLT99rPidRK9KB9MBZpqdET2"  # blacklisted in the example


def data_dir() -> Path:
    return Path(str(resources.files("hookforge") / "data"))


def workspace_text(name: str) -> str:
    try:
        filename = _FILES[name]
    except KeyError:
        raise KeyError(f"no bundled example named {name!r}; have {EXAMPLE_NAMES}") from None
    return (resources.files("hookforge") / "data" / filename).read_text("utf-8")


def workspace_document(name: str) -> dict:
    return json.loads(workspace_text(name))


def scenario_text(name: str) -> str:
    filename = SCENARIO_FILES[name]
    return (resources.files("hookforge") / "data" / filename).read_text("utf-8")


def examples_listing() -> list[dict]:
    """The /api/examples payload: name, description, workspace document."""
    out = []
    for name in EXAMPLE_NAMES:
        doc = workspace_document(name)
        out.append(
            {
                "name": name,
                "description": doc.get("metadata", {}).get("description", ""),
                "workspace": doc,
            }
        )
    return out
