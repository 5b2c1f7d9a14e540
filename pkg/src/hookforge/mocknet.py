"""Hermetic stand-ins for the testnet faucet and submission node.

Both speak the same wire shapes as their real counterparts and record every
request body, so tests can audit outbound traffic (for example, that an
account seed never leaves the client). The faucet funds each new account
with 10,000 XRP = 10,000,000,000 drops.
"""

from __future__ import annotations

import http.server
import json
import os
import threading
from dataclasses import dataclass, field

from .compilerbridge import PortInUseError
from .xrpl import codec
from .xrpl.addresses import encode_ed25519_seed
from .xrpl.keys import address_from_seed

FAUCET_BALANCE_DROPS = 10_000_000_000  # 10,000 XRP


@dataclass
class _ServerState:
    requests: list[dict] = field(default_factory=list)
    reject_engine_code: str | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)


class _Handler(http.server.BaseHTTPRequestHandler):
    state: _ServerState

    def do_POST(self):  # noqa: N802 (http.server API)
        length = int(self.headers.get("Content-Length", "0"))
        raw = self.rfile.read(length).decode("utf-8", errors="replace")
        try:
            body = json.loads(raw) if raw else {}
        except ValueError:
            body = {"_raw": raw}
        with self.state.lock:
            self.state.requests.append({"path": self.path, "body": body})

        if self.path == "/accounts":
            self._reply(200, self._faucet_account())
        elif body.get("method") == "submit":
            self._reply(200, self._submit(body))
        else:
            self.send_error(404)

    def _faucet_account(self) -> dict:
        entropy = os.urandom(16)
        seed = encode_ed25519_seed(entropy)
        return {
            "account": {"address": address_from_seed(seed), "secret": seed},
            "balance": FAUCET_BALANCE_DROPS,
        }

    def _submit(self, body: dict) -> dict:
        try:
            blob_hex = body["params"][0]["tx_blob"]
            blob = bytes.fromhex(blob_hex)
        except (KeyError, IndexError, TypeError, ValueError):
            return {"result": {"engine_result": "temMALFORMED", "status": "error"}}
        if self.state.reject_engine_code:
            return {
                "result": {
                    "engine_result": self.state.reject_engine_code,
                    "status": "error",
                }
            }
        return {
            "result": {
                "engine_result": "tesSUCCESS",
                "status": "success",
                "tx_json": {"hash": codec.tx_hash(blob)},
            }
        }

    def _reply(self, status: int, payload: dict) -> None:
        data = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def log_message(self, *args):
        pass


@dataclass
class MockNetHandle:
    """One server playing both faucet (POST /accounts) and node (submit)."""

    server: http.server.ThreadingHTTPServer
    thread: threading.Thread
    state: _ServerState

    @property
    def port(self) -> int:
        return self.server.server_address[1]

    @property
    def url(self) -> str:
        return f"http://127.0.0.1:{self.port}"

    @property
    def faucet_url(self) -> str:
        return self.url + "/accounts"

    def recorded_requests(self) -> list[dict]:
        with self.state.lock:
            return list(self.state.requests)

    def reject_submissions(self, engine_code: str | None) -> None:
        """Script the node to reject submissions (None restores success)."""
        self.state.reject_engine_code = engine_code

    def stop(self) -> None:
        self.server.shutdown()
        self.server.server_close()
        self.thread.join(timeout=5)

    def __enter__(self) -> "MockNetHandle":
        return self

    def __exit__(self, *exc) -> None:
        self.stop()


def serve_mocknet(port: int = 0) -> MockNetHandle:
    state = _ServerState()
    handler = type("BoundHandler", (_Handler,), {"state": state})
    try:
        server = http.server.ThreadingHTTPServer(("127.0.0.1", port), handler)
    except OSError as exc:
        raise PortInUseError(f"cannot bind mocknet to port {port}: {exc}") from exc
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return MockNetHandle(server=server, thread=thread, state=state)
