"""Scenario document loading.

Schema (UTF-8 JSON):

    { "genesis": {"<addr>": <drops>},
      "installs": [{"account", "workspace_file" | "workspace", "trigger"}],
      "transactions": [{"from", "to", "amount_drops"}],
      "fee_drops": <int, optional, default 0> }

``workspace_file`` paths resolve relative to the scenario file and are only
honored when a ``base_dir`` is given (the CLI); callers without a file
context (the HTTP API) must embed the workspace document inline under
``workspace``. The first structural problem is surfaced as a
``ScenarioError`` carrying a line number when the document itself is
malformed JSON.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..blocks.parser import PARSE_ERRORS, parse_workspace
from ..errors import HookforgeError
from ..xrpl.addresses import is_classic_address
from .ledger import TRIGGERS


class ScenarioError(HookforgeError):
    code = "SCENARIO_ERROR"

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message, **({"line": line} if line is not None else {}))
        self.line = line


def load_scenario(text: str, base_dir: str | Path | None = None) -> dict:
    """Parse and resolve a scenario document into the engine's input form."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"invalid JSON at line {exc.lineno}: {exc.msg}", line=exc.lineno)
    if not isinstance(doc, dict):
        raise ScenarioError("scenario must be an object")

    for key in doc:
        if key not in ("genesis", "installs", "transactions", "fee_drops"):
            raise ScenarioError(f"unexpected scenario key {key!r}")

    fee_drops = doc.get("fee_drops", 0)
    if isinstance(fee_drops, bool) or not isinstance(fee_drops, int) or fee_drops < 0:
        raise ScenarioError('"fee_drops" must be a non-negative integer')

    genesis = doc.get("genesis", {})
    if not isinstance(genesis, dict):
        raise ScenarioError('"genesis" must map addresses to drops')
    for addr, drops in genesis.items():
        if not is_classic_address(addr):
            raise ScenarioError(f"genesis account {addr!r} is not a classic address")
        if isinstance(drops, bool) or not isinstance(drops, int) or drops < 0:
            raise ScenarioError(f"genesis balance for {addr} must be a non-negative integer")

    installs = []
    raw_installs = doc.get("installs", [])
    if not isinstance(raw_installs, list):
        raise ScenarioError('"installs" must be a list')
    for i, item in enumerate(raw_installs):
        installs.append(_load_install(item, i, base_dir))

    transactions = []
    raw_txs = doc.get("transactions", [])
    if not isinstance(raw_txs, list):
        raise ScenarioError('"transactions" must be a list')
    for i, item in enumerate(raw_txs):
        transactions.append(_load_tx(item, i))

    return {
        "genesis": dict(genesis),
        "installs": installs,
        "transactions": transactions,
        "fee_drops": fee_drops,
    }


def _load_install(item, index: int, base_dir: str | Path | None) -> dict:
    where = f"installs[{index}]"
    if not isinstance(item, dict):
        raise ScenarioError(f"{where} must be an object")
    account = item.get("account")
    if not isinstance(account, str) or not is_classic_address(account):
        raise ScenarioError(f"{where}: \"account\" must be a classic address")
    trigger = item.get("trigger")
    if trigger not in TRIGGERS:
        raise ScenarioError(f"{where}: \"trigger\" must be one of {TRIGGERS}")

    if "workspace" in item:
        workspace_text = json.dumps(item["workspace"])
    elif "workspace_file" in item:
        if base_dir is None:
            raise ScenarioError(
                f"{where}: \"workspace_file\" needs a file context; embed \"workspace\" instead"
            )
        rel = item["workspace_file"]
        if not isinstance(rel, str):
            raise ScenarioError(f"{where}: \"workspace_file\" must be a path string")
        path = Path(base_dir) / rel
        try:
            workspace_text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ScenarioError(f"{where}: cannot read workspace file {rel!r}: {exc}")
    else:
        raise ScenarioError(f"{where}: needs \"workspace\" or \"workspace_file\"")

    try:
        program = parse_workspace(workspace_text)
    except PARSE_ERRORS as exc:
        raise ScenarioError(f"{where}: workspace does not parse: {exc}")
    return {"account": account, "trigger": trigger, "program": program}


def _load_tx(item, index: int) -> dict:
    where = f"transactions[{index}]"
    if not isinstance(item, dict):
        raise ScenarioError(f"{where} must be an object")
    sender = item.get("from")
    dest = item.get("to")
    amount = item.get("amount_drops")
    if not isinstance(sender, str) or not is_classic_address(sender):
        raise ScenarioError(f"{where}: \"from\" must be a classic address")
    if not isinstance(dest, str) or not is_classic_address(dest):
        raise ScenarioError(f"{where}: \"to\" must be a classic address")
    if isinstance(amount, bool) or not isinstance(amount, int) or amount < 1:
        raise ScenarioError(f"{where}: \"amount_drops\" must be a positive integer")
    if sender == dest:
        raise ScenarioError(f"{where}: sender and destination must differ")
    return {"from": sender, "to": dest, "amount_drops": amount}
