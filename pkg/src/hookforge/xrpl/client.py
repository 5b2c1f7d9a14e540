"""Testnet-facing client: faucet provisioning, SetHook build/sign/submit.

Signing happens entirely in-process with the account's family seed; no
operation ever places the seed in an outbound request. Endpoints come from
explicit arguments with env-var defaults (``HOOKFORGE_TESTNET_URL``,
``HOOKFORGE_FAUCET_URL``).
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass

import requests

from ..errors import HookforgeError
from . import codec, keys
from .addresses import is_classic_address

log = logging.getLogger(__name__)

DEFAULT_FAUCET_URL = "https://hooks-testnet-v3.xrpl-labs.com/accounts"
DEFAULT_NODE_URL = "https://hooks-testnet-v3.xrpl-labs.com"

FEE_FLOOR_DROPS = 10

# 256-bit trigger mask, one bit per transaction type; a cleared bit means the
# hook fires for that type. Default: fire on Payment (type 0) only.
HOOK_ON_PAYMENT = ((1 << 256) - 2).to_bytes(32, "big").hex().upper()
DEFAULT_NAMESPACE = "00" * 32
DEFAULT_API_VERSION = 0


class FaucetUnreachableError(HookforgeError):
    code = "FAUCET_UNREACHABLE"


class FaucetRefusedError(HookforgeError):
    code = "FAUCET_REFUSED"


class NodeUnreachableError(HookforgeError):
    code = "NODE_UNREACHABLE"


class MalformedResponseError(HookforgeError):
    code = "MALFORMED_RESPONSE"


class EmptyArtifactError(HookforgeError):
    code = "EMPTY_ARTIFACT"


@dataclass(frozen=True)
class TestnetAccount:
    __test__ = False  # not a pytest class, despite the name

    address: str
    secret_seed: str  # family seed; stays on this machine
    balance_drops: int

    def __repr__(self) -> str:  # keep seeds out of logs and tracebacks
        return f"TestnetAccount(address={self.address!r}, balance_drops={self.balance_drops})"


@dataclass(frozen=True)
class UnsignedSetHookTx:
    account: str
    wasm_hex: str  # uppercase hex of the wasm module
    sequence: int
    fee_drops: int
    hook_on: str = HOOK_ON_PAYMENT
    namespace: str = DEFAULT_NAMESPACE
    api_version: int = DEFAULT_API_VERSION

    def to_fields(self, signing_pub_key: bytes | None = None) -> dict:
        fields: dict = {
            "TransactionType": codec.TT_SET_HOOK,
            "Account": self.account,
            "Sequence": self.sequence,
            "Fee": self.fee_drops,
            "Hooks": [
                {
                    "Hook": {
                        "CreateCode": self.wasm_hex,
                        "HookOn": self.hook_on,
                        "HookNamespace": self.namespace,
                        "HookApiVersion": self.api_version,
                    }
                }
            ],
        }
        if signing_pub_key is not None:
            fields["SigningPubKey"] = signing_pub_key
        return fields


@dataclass(frozen=True)
class SubmitResult:
    status: str  # "success" | "failure"
    engine_code: str
    tx_hash: str | None = None

    def to_dict(self) -> dict:
        return {"status": self.status, "engine_code": self.engine_code, "tx_hash": self.tx_hash}


def faucet_url() -> str:
    return os.environ.get("HOOKFORGE_FAUCET_URL", DEFAULT_FAUCET_URL)


def node_url() -> str:
    return os.environ.get("HOOKFORGE_TESTNET_URL", DEFAULT_NODE_URL)


def faucet_create_account(url: str | None = None, timeout: float = 15.0) -> TestnetAccount:
    """Request a funded account from a faucet."""
    url = url or faucet_url()
    try:
        resp = requests.post(url, json={}, timeout=timeout)
    except requests.RequestException as exc:
        raise FaucetUnreachableError(f"faucet unreachable: {exc}") from exc
    if resp.status_code != 200:
        raise FaucetRefusedError(f"faucet refused: HTTP {resp.status_code}")
    try:
        body = resp.json()
        account = body["account"]
        address = account["address"]
        seed = account["secret"]
        balance = int(body["balance"])
    except (ValueError, KeyError, TypeError) as exc:
        raise MalformedResponseError(f"unexpected faucet response: {exc}") from exc
    if not is_classic_address(address):
        raise MalformedResponseError(f"faucet returned a bad address: {address!r}")
    return TestnetAccount(address=address, secret_seed=seed, balance_drops=balance)


def build_sethook_tx(
    account: str,
    artifact,
    sequence: int,
    fee_drops: int = FEE_FLOOR_DROPS,
    hook_on: str = HOOK_ON_PAYMENT,
    namespace: str = DEFAULT_NAMESPACE,
    api_version: int = DEFAULT_API_VERSION,
) -> UnsignedSetHookTx:
    """Build an unsigned SetHook installing ``artifact`` (a WasmArtifact or bytes)."""
    wasm = artifact.wasm_bytes if hasattr(artifact, "wasm_bytes") else bytes(artifact)
    if not wasm:
        raise EmptyArtifactError("refusing to build a SetHook with an empty module")
    if sequence < 1:
        raise HookforgeError("sequence must be >= 1")
    if fee_drops < FEE_FLOOR_DROPS:
        log.warning("fee %d drops below floor; clamping to %d", fee_drops, FEE_FLOOR_DROPS)
        fee_drops = FEE_FLOOR_DROPS
    return UnsignedSetHookTx(
        account=account,
        wasm_hex=wasm.hex().upper(),
        sequence=sequence,
        fee_drops=fee_drops,
        hook_on=hook_on.upper(),
        namespace=namespace.upper(),
        api_version=api_version,
    )


def sign_tx(tx: UnsignedSetHookTx, account: TestnetAccount) -> str:
    """Sign with the account's seed; returns the uppercase hex signed blob."""
    pub = keys.public_key_from_seed(account.secret_seed)
    fields = tx.to_fields(signing_pub_key=pub)
    signature = keys.sign(codec.signing_payload(fields), account.secret_seed)
    fields["TxnSignature"] = signature
    return codec.serialize(fields).hex().upper()


def submit(blob_hex: str, url: str | None = None, timeout: float = 15.0) -> SubmitResult:
    """Submit a signed blob to a node; maps the engine result."""
    url = url or node_url()
    payload = {"method": "submit", "params": [{"tx_blob": blob_hex}]}
    try:
        resp = requests.post(url, json=payload, timeout=timeout)
    except requests.RequestException as exc:
        raise NodeUnreachableError(f"node unreachable: {exc}") from exc
    try:
        result = resp.json()["result"]
        engine = str(result["engine_result"])
    except (ValueError, KeyError, TypeError) as exc:
        raise MalformedResponseError(f"unexpected node response: {exc}") from exc
    local_hash = codec.tx_hash(bytes.fromhex(blob_hex))
    reported = result.get("tx_json", {}).get("hash")
    status = "success" if engine.startswith("tes") else "failure"
    return SubmitResult(
        status=status,
        engine_code=engine,
        tx_hash=str(reported) if reported else (local_hash if status == "success" else None),
    )
