"""hookforge command line: check, gen, sim, compile, deploy, faucet, serve."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import __version__, compilerbridge
from .blocks import PARSE_ERRORS, parse_workspace, validate
from .codegen import generate
from .errors import HookforgeError
from .guard import DEFAULT_STEP_CEILING, analyze
from .vm.engine import run_scenario
from .vm.scenario import ScenarioError, load_scenario
from .xrpl import client as xrpl_client


@click.group()
@click.version_option(version=__version__)
def main():
    """Build, check, simulate and deploy XRPL hooks from visual blocks."""


def _load_program(path: str):
    text = Path(path).read_text(encoding="utf-8")
    return parse_workspace(text)


@main.command()
@click.argument("workspace_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["text", "json-like"]), default="text")
@click.option("--step-ceiling", type=int, default=DEFAULT_STEP_CEILING, show_default=True)
def check(workspace_file: str, fmt: str, step_ceiling: int):
    """Validate and guard-check a workspace; exit 0 iff clean."""
    try:
        program = _load_program(workspace_file)
    except PARSE_ERRORS as exc:
        _fail_parse(exc, fmt)

    report = validate(program)
    guard_report = analyze(program, step_ceiling=step_ceiling)
    ok = report.ok and guard_report.ok
    if fmt == "json-like":
        click.echo(
            json.dumps(
                {"ok": ok, "validation": report.to_dict(), "guard": guard_report.to_dict()},
                indent=2,
            )
        )
    else:
        for issue in report.issues:
            click.echo(f"{issue.severity}: [{issue.rule}] {issue.message} (block {issue.block_id})")
        for violation in guard_report.violations:
            click.echo(f"error: [{violation.rule}] {violation.message} (block {violation.block_id})")
        click.echo(
            f"{'OK' if ok else 'NOT OK'}: static step bound {guard_report.static_step_bound}, "
            f"guard ids {sorted(guard_report.guard_ids_used)}"
        )
    sys.exit(0 if ok else 1)


def _fail_parse(exc: HookforgeError, fmt: str):
    if fmt == "json-like":
        click.echo(json.dumps({"ok": False, "parse_error": exc.to_dict()}, indent=2))
    else:
        click.echo(f"parse error: [{exc.code}] {exc.message}")
    sys.exit(1)


@main.command()
@click.argument("workspace_file", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
def gen(workspace_file: str, output: str | None):
    """Generate Hooks C from a workspace."""
    try:
        program = _load_program(workspace_file)
        source = generate(program)
    except (*PARSE_ERRORS, HookforgeError) as exc:
        raise click.ClickException(f"[{exc.code}] {exc.message}")
    if output:
        Path(output).write_bytes(source.text.encode("utf-8"))
        click.echo(f"wrote {output} ({len(source.text.splitlines())} lines)")
    else:
        click.echo(source.text, nl=False)


@main.command()
@click.argument("scenario_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["text", "machine"]), default="text")
def sim(scenario_file: str, fmt: str):
    """Run a scenario on the local simulated ledger."""
    path = Path(scenario_file)
    try:
        scenario = load_scenario(path.read_text(encoding="utf-8"), base_dir=path.parent)
        report = run_scenario(scenario)
    except (ScenarioError, HookforgeError) as exc:
        raise click.ClickException(f"[{exc.code}] {exc.message}")
    if fmt == "machine":
        click.echo(json.dumps(report.to_dict(), indent=2))
        return
    for i, tx_report in enumerate(report.tx_reports):
        tx = tx_report.tx
        status = "applied" if tx_report.applied else f"rejected ({tx_report.reason})"
        click.echo(f"tx[{i}] {tx.account} -> {tx.destination} {tx.amount} drops: {status}")
        for result, label in (
            (tx_report.sender_result, "sender hook"),
            (tx_report.receiver_result, "receiver hook"),
        ):
            if result is None:
                continue
            click.echo(f"  {label}: {result.disposition} steps={result.steps_executed}")
            for line in result.trace_log:
                click.echo(f"    trace: {line}")
        for emitted in tx_report.emitted:
            estatus = "applied" if emitted.applied else f"failed ({emitted.reason})"
            click.echo(
                f"  emitted {emitted.tx.account} -> {emitted.tx.destination} "
                f"{emitted.tx.amount} drops: {estatus}"
            )
            if emitted.cbak_result is not None:
                for line in emitted.cbak_result.trace_log:
                    click.echo(f"    cbak trace: {line}")
    click.echo("final balances:")
    for addr in sorted(report.final_ledger.accounts):
        click.echo(f"  {addr}: {report.final_ledger.accounts[addr]}")


@main.command(name="compile")
@click.argument("c_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--mock", is_flag=True, help="Compile against an ephemeral local mock server.")
@click.option("--endpoint", default=None, help="Compile service URL (default $HOOKFORGE_COMPILER_URL).")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
def compile_cmd(c_file: str, mock: bool, endpoint: str | None, output: str | None):
    """Compile a C file to wasm via the remote (or mock) service."""
    import hashlib
    import os

    from .codegen import CSource

    text = Path(c_file).read_text(encoding="utf-8")
    source = CSource(
        text=text, source_digest=hashlib.sha256(text.encode("utf-8")).hexdigest()
    )
    handle = None
    if mock:
        handle = compilerbridge.serve_mock_compiler()
        endpoint = handle.url
    endpoint = endpoint or os.environ.get("HOOKFORGE_COMPILER_URL")
    if not endpoint:
        raise click.ClickException("no compiler endpoint: pass --endpoint, --mock or set HOOKFORGE_COMPILER_URL")
    try:
        outcome = compilerbridge.compile_c(source, endpoint)
    except HookforgeError as exc:
        raise click.ClickException(f"[{exc.code}] {exc.message}")
    finally:
        if handle is not None:
            handle.stop()
    if isinstance(outcome, list):
        for error in outcome:
            where = f"line {error.line}" + (f", block {error.mapped_block_id}" if error.mapped_block_id else "")
            click.echo(f"compile error ({where}): {error.message}")
        sys.exit(1)
    out_path = output or (str(Path(c_file).with_suffix(".wasm")))
    Path(out_path).write_bytes(outcome.wasm_bytes)
    click.echo(
        f"wrote {out_path} ({outcome.size_bytes} bytes, compiler {outcome.compiler_id})"
    )


@main.command()
@click.option("--url", default=None, help="Faucet URL (default $HOOKFORGE_FAUCET_URL).")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default="account.json")
def faucet(url: str | None, out_path: str):
    """Create a funded testnet account and save it to an account file."""
    try:
        account = xrpl_client.faucet_create_account(url)
    except HookforgeError as exc:
        raise click.ClickException(f"[{exc.code}] {exc.message}")
    Path(out_path).write_text(
        json.dumps(
            {
                "address": account.address,
                "secret_seed": account.secret_seed,
                "balance_drops": account.balance_drops,
            },
            indent=2,
        )
        + "\n",
        encoding="utf-8",
    )
    click.echo(f"account {account.address} ({account.balance_drops} drops) -> {out_path}")


@main.command()
@click.argument("wasm_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--account-file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--node", default=None, help="Node URL (default $HOOKFORGE_TESTNET_URL).")
@click.option("--sequence", type=int, default=1, show_default=True)
@click.option("--fee", type=int, default=xrpl_client.FEE_FLOOR_DROPS, show_default=True)
def deploy(wasm_file: str, account_file: str, node: str | None, sequence: int, fee: int):
    """Build, sign and submit a SetHook for a compiled wasm module."""
    wasm = Path(wasm_file).read_bytes()
    info = json.loads(Path(account_file).read_text(encoding="utf-8"))
    account = xrpl_client.TestnetAccount(
        address=info["address"],
        secret_seed=info.get("secret_seed") or info["secret"],
        balance_drops=int(info.get("balance_drops", 0)),
    )
    try:
        tx = xrpl_client.build_sethook_tx(account.address, wasm, sequence=sequence, fee_drops=fee)
        blob = xrpl_client.sign_tx(tx, account)
        result = xrpl_client.submit(blob, node)
    except HookforgeError as exc:
        raise click.ClickException(f"[{exc.code}] {exc.message}")
    click.echo(json.dumps(result.to_dict(), indent=2))
    sys.exit(0 if result.status == "success" else 1)


@main.command()
@click.option("--port", type=int, default=8400, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option(
    "--with-mocks",
    is_flag=True,
    help="Also run the mock compiler and mock faucet/node, and wire the compiler in.",
)
def serve(port: int, host: str, with_mocks: bool):
    """Run the backend HTTP service."""
    import uvicorn

    from .backend.app import create_app

    compiler_url = None
    if with_mocks:
        from .mocknet import serve_mocknet

        compiler = compilerbridge.serve_mock_compiler()
        mocknet = serve_mocknet()
        compiler_url = compiler.url
        click.echo(f"mock compiler: {compiler.url}")
        click.echo(f"mock node:     {mocknet.url}")
        click.echo(f"mock faucet:   {mocknet.faucet_url}")
    uvicorn.run(create_app(compiler_url=compiler_url), host=host, port=port)


if __name__ == "__main__":
    main()
