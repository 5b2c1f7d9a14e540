"""HTTP backend gluing the editor to generator, checker, simulator and
compile bridge.

Error taxonomy: 400 malformed request body, 422 domain-valid-but-rejected
(with the producing module's structured report), 502 upstream compiler
trouble. Signing and submission are deliberately absent from the route
table; private credentials never reach this service.
"""

from __future__ import annotations

import hashlib
import json
import os

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .. import bundled, compilerbridge
from ..blocks import PARSE_ERRORS, catalog_document, parse_workspace, validate
from ..codegen import BlockSpan, CSource, generate
from ..errors import HookforgeError
from ..guard import analyze
from ..vm.engine import run_scenario
from ..vm.scenario import ScenarioError, load_scenario
from .sessions import DEFAULT_TTL_SECONDS, SessionStore

DEFAULT_ALLOWED_ORIGINS = ["http://localhost:5173", "http://127.0.0.1:5173"]


def compiler_url_default() -> str | None:
    return os.environ.get("HOOKFORGE_COMPILER_URL")


def create_app(
    compiler_url: str | None = None,
    session_ttl: float = DEFAULT_TTL_SECONDS,
    allowed_origins: list[str] | None = None,
) -> FastAPI:
    app = FastAPI(title="hookforge backend", version="0.1.0")
    sessions = SessionStore(ttl_seconds=session_ttl)
    app.state.sessions = sessions
    app.state.compiler_url = compiler_url

    if allowed_origins is None:
        env = os.environ.get("HOOKFORGE_ALLOWED_ORIGINS")
        allowed_origins = env.split(",") if env else list(DEFAULT_ALLOWED_ORIGINS)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=allowed_origins,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def _bad_body(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"code": "MALFORMED_BODY", "error": "malformed request body"},
        )

    @app.post("/api/generate")
    async def api_generate(request: Request):
        body = await _json_body(request)
        if isinstance(body, JSONResponse):
            return body
        try:
            program = parse_workspace(_as_text(body))
        except PARSE_ERRORS as exc:
            return _stage_rejection("parse", [exc.to_dict()])

        report = validate(program)
        if not report.ok:
            return _stage_rejection("validate", [i.to_dict() for i in report.issues])
        guard_report = analyze(program)
        if not guard_report.ok:
            return _stage_rejection(
                "guard_check", [v.to_dict() for v in guard_report.violations]
            )
        source = generate(program)
        return {
            "c_source": source.text,
            "source_digest": source.source_digest,
            "block_map": [span.to_dict() for span in source.block_map],
            "static_step_bound": guard_report.static_step_bound,
            "warnings": [i.to_dict() for i in report.warnings()],
        }

    @app.post("/api/compile")
    async def api_compile(request: Request):
        body = await _json_body(request)
        if isinstance(body, JSONResponse):
            return body
        c_source = body.get("c_source") if isinstance(body, dict) else None
        if not isinstance(c_source, str):
            return JSONResponse(
                status_code=400,
                content={"code": "MALFORMED_BODY", "error": 'body needs a "c_source" string'},
            )
        block_map = []
        for item in body.get("block_map", []):
            try:
                block_map.append(
                    BlockSpan(int(item["start_line"]), int(item["end_line"]), str(item["block_id"]))
                )
            except (KeyError, TypeError, ValueError):
                return JSONResponse(
                    status_code=400,
                    content={"code": "MALFORMED_BODY", "error": "bad block_map entry"},
                )

        endpoint = app.state.compiler_url or compiler_url_default()
        if not endpoint:
            return JSONResponse(
                status_code=502,
                content={"error": "no compiler endpoint configured", "code": "ENDPOINT_UNREACHABLE"},
            )
        source = CSource(
            text=c_source,
            source_digest=hashlib.sha256(c_source.encode("utf-8")).hexdigest(),
            block_map=block_map,
        )
        try:
            outcome = compilerbridge.compile_c(source, endpoint)
        except (
            compilerbridge.EndpointUnreachableError,
            compilerbridge.CompileTimeoutError,
            compilerbridge.ProtocolError,
            compilerbridge.ArtifactInvalidError,
        ) as exc:
            return JSONResponse(status_code=502, content=exc.to_dict())
        if isinstance(outcome, list):
            return JSONResponse(
                status_code=422, content={"errors": [e.to_dict() for e in outcome]}
            )
        return outcome.to_dict()

    @app.post("/api/simulate")
    async def api_simulate(request: Request):
        raw = await request.body()
        try:
            body = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, ValueError):
            # let the scenario loader produce the line-carrying error
            try:
                load_scenario(raw.decode("utf-8", errors="replace"))
            except ScenarioError as exc:
                return JSONResponse(status_code=400, content=exc.to_dict())
            return JSONResponse(
                status_code=400,
                content={"code": "MALFORMED_BODY", "error": "request body is not valid JSON"},
            )
        if not isinstance(body, dict):
            return JSONResponse(
                status_code=400,
                content={"code": "MALFORMED_BODY", "error": "scenario must be an object"},
            )
        session_id = body.pop("session", None)
        try:
            scenario = load_scenario(json.dumps(body))
        except ScenarioError as exc:
            return JSONResponse(status_code=400, content=exc.to_dict())

        try:
            if session_id is not None:
                session = sessions.get_or_create(str(session_id))
                with session.lock:  # one in-flight mutation per session
                    report = run_scenario(scenario, ledger=session.ledger)
                    session.ledger = report.final_ledger
            else:
                report = run_scenario(scenario)
        except HookforgeError as exc:
            return JSONResponse(status_code=422, content=exc.to_dict())
        return report.to_dict()

    @app.get("/api/examples")
    async def api_examples():
        return bundled.examples_listing()

    @app.get("/api/catalog")
    async def api_catalog():
        return catalog_document()

    return app


async def _json_body(request: Request):
    raw = await request.body()
    try:
        return json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, ValueError):
        return JSONResponse(
            status_code=400,
            content={"code": "MALFORMED_BODY", "error": "request body is not valid JSON"},
        )


def _as_text(body) -> str:
    return json.dumps(body)


def _stage_rejection(stage: str, issues: list[dict]) -> JSONResponse:
    return JSONResponse(status_code=422, content={"stage": stage, "issues": issues})
