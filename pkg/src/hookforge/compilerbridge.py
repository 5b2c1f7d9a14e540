"""Client for the remote C-to-wasm compile service, plus a hermetic mock.

Wire protocol (HTTP POST /compile):
    request  {"source": "<C text>", "output": "wasm"}
    success  {"success": true, "wasm_base64": "...", "compiler_id": "..."}
    failure  {"success": false, "errors": [{"line", "column", "message"}]}

A compile failure is a successful round-trip reporting bad C; transport
problems raise distinct error types. Returned artifacts must start with the
wasm magic + version header or they are rejected outright.

The mock server speaks the same protocol. Directive comments in the C text
script its behavior (``//mock:fail:<line>:<message>``); anything unscripted
compiles to a canned minimal module. An optional pass-through mode runs a
locally installed toolchain instead: pass ``endpoint="cmd:<shell command>"``
and the command receives C on stdin and must write wasm to stdout.
"""

from __future__ import annotations

import base64
import hashlib
import http.server
import json
import re
import subprocess
import threading
from dataclasses import dataclass, field

import requests

from .codegen import CSource
from .errors import HookforgeError

WASM_MAGIC = b"\x00\x61\x73\x6d\x01\x00\x00\x00"

# Magic + version alone is the canonical empty module; every wasm validator
# accepts it, which is all the deploy pipeline needs from a mock.
MOCK_WASM_MODULE = WASM_MAGIC
MOCK_COMPILER_ID = "mock"

_DIRECTIVE = re.compile(r"^//mock:fail:(\d+):(.*)$")


class EndpointUnreachableError(HookforgeError):
    code = "ENDPOINT_UNREACHABLE"


class CompileTimeoutError(HookforgeError):
    code = "TIMEOUT"


class ProtocolError(HookforgeError):
    code = "PROTOCOL_ERROR"


class ArtifactInvalidError(HookforgeError):
    code = "ARTIFACT_INVALID"


class PortInUseError(HookforgeError):
    code = "PORT_IN_USE"


@dataclass(frozen=True)
class WasmArtifact:
    wasm_bytes: bytes
    source_digest: str
    compiler_id: str

    @property
    def size_bytes(self) -> int:
        return len(self.wasm_bytes)

    def to_dict(self) -> dict:
        return {
            "wasm_base64": base64.b64encode(self.wasm_bytes).decode("ascii"),
            "source_digest": self.source_digest,
            "compiler_id": self.compiler_id,
            "size_bytes": self.size_bytes,
        }


@dataclass(frozen=True)
class CompileError:
    line: int  # 1-based in the submitted C; 0 for global errors
    message: str
    column: int | None = None
    mapped_block_id: str | None = None

    def to_dict(self) -> dict:
        return {
            "line": self.line,
            "column": self.column,
            "message": self.message,
            "mapped_block_id": self.mapped_block_id,
        }


def compile_c(
    source: CSource, endpoint: str, timeout: float = 30.0
) -> WasmArtifact | list[CompileError]:
    """Compile C via the service; exactly one of artifact / error list results."""
    if endpoint.startswith("cmd:"):
        return _compile_local(source, endpoint[4:], timeout)

    try:
        resp = requests.post(
            endpoint.rstrip("/") + "/compile",
            json={"source": source.text, "output": "wasm"},
            timeout=timeout,
        )
    except requests.Timeout as exc:
        raise CompileTimeoutError(f"compile service timed out: {exc}") from exc
    except requests.RequestException as exc:
        raise EndpointUnreachableError(f"compile service unreachable: {exc}") from exc

    try:
        body = resp.json()
        success = body["success"]
    except (ValueError, KeyError, TypeError) as exc:
        raise ProtocolError(f"malformed compile response: {exc}") from exc

    if success:
        try:
            wasm = base64.b64decode(body["wasm_base64"], validate=True)
            compiler_id = str(body["compiler_id"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ProtocolError(f"malformed success response: {exc}") from exc
        return _validated_artifact(wasm, source, compiler_id)

    try:
        raw_errors = body["errors"]
        errors = [
            CompileError(
                line=int(e["line"]),
                column=e.get("column"),
                message=str(e["message"]),
                mapped_block_id=source.block_for_line(int(e["line"])),
            )
            for e in raw_errors
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise ProtocolError(f"malformed failure response: {exc}") from exc
    if not errors:
        raise ProtocolError("failure response carried no errors")
    return errors


def _compile_local(source: CSource, command: str, timeout: float) -> WasmArtifact:
    try:
        proc = subprocess.run(
            command,
            shell=True,
            input=source.text.encode("utf-8"),
            capture_output=True,
            timeout=timeout,
        )
    except subprocess.TimeoutExpired as exc:
        raise CompileTimeoutError(f"local toolchain timed out: {exc}") from exc
    except OSError as exc:
        raise EndpointUnreachableError(f"local toolchain failed to start: {exc}") from exc
    if proc.returncode != 0:
        raise ProtocolError(
            f"local toolchain exited {proc.returncode}: {proc.stderr.decode(errors='replace')[:500]}"
        )
    return _validated_artifact(proc.stdout, source, "local-toolchain")


def _validated_artifact(wasm: bytes, source: CSource, compiler_id: str) -> WasmArtifact:
    if not wasm.startswith(WASM_MAGIC):
        raise ArtifactInvalidError("payload does not start with the wasm magic header")
    digest = hashlib.sha256(source.text.encode("utf-8")).hexdigest()
    return WasmArtifact(wasm_bytes=wasm, source_digest=digest, compiler_id=compiler_id)


# -- mock server ------------------------------------------------------------


def _mock_response(c_text: str) -> dict:
    errors = []
    for line in c_text.splitlines():
        m = _DIRECTIVE.match(line.strip())
        if m:
            errors.append(
                {"line": int(m.group(1)), "column": 1, "message": m.group(2)}
            )
    if errors:
        return {"success": False, "errors": errors}
    return {
        "success": True,
        "wasm_base64": base64.b64encode(MOCK_WASM_MODULE).decode("ascii"),
        "compiler_id": MOCK_COMPILER_ID,
    }


class _MockHandler(http.server.BaseHTTPRequestHandler):
    def do_POST(self):  # noqa: N802 (http.server API)
        if self.path != "/compile":
            self.send_error(404)
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            body = json.loads(self.rfile.read(length).decode("utf-8"))
            source = body["source"]
        except (ValueError, KeyError) as exc:
            self._reply(400, {"error": f"bad request: {exc}"})
            return
        self._reply(200, _mock_response(source))

    def _reply(self, status: int, payload: dict) -> None:
        data = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def log_message(self, *args):  # keep tests quiet
        pass


@dataclass
class MockCompilerHandle:
    server: http.server.ThreadingHTTPServer
    thread: threading.Thread
    port: int = field(init=False)

    def __post_init__(self):
        self.port = self.server.server_address[1]

    @property
    def url(self) -> str:
        return f"http://127.0.0.1:{self.port}"

    def stop(self) -> None:
        self.server.shutdown()
        self.server.server_close()
        self.thread.join(timeout=5)

    def __enter__(self) -> "MockCompilerHandle":
        return self

    def __exit__(self, *exc) -> None:
        self.stop()


def serve_mock_compiler(port: int = 0) -> MockCompilerHandle:
    """Start the mock service on ``port`` (0 = ephemeral); returns a handle."""
    try:
        server = http.server.ThreadingHTTPServer(("127.0.0.1", port), _MockHandler)
    except OSError as exc:
        raise PortInUseError(f"cannot bind mock compiler to port {port}: {exc}") from exc
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return MockCompilerHandle(server=server, thread=thread)
