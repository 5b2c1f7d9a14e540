"""Transaction pipeline over the simulated ledger.

Hooks run strictly before application: sender hook first (outgoing trigger),
then receiver hook (incoming). Only when every hook accepted and the sender
can cover the amount does the ledger change, atomically. Transactions the
hooks emitted are then applied FIFO without triggering further hooks
(generation cap 1), and each emitting hook's cbak runs once per emitted
transaction with the result code exposed as the ``emit_result`` variable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..blocks.model import BlockProgram
from ..blocks.validate import validate
from ..guard import DEFAULT_STEP_CEILING, analyze
from ..blocks.catalog import EMIT_RESULT_VAR
from .executor import ExecutionContext, ExecutionResult, execute_hook
from .ledger import (
    InstalledHook,
    LedgerState,
    ProgramNotCleanError,
    Transaction,
    TRIGGERS,
    UnknownAccountError,
)

EMIT_OK = 0
EMIT_FAILED = 1


@dataclass
class EmittedReport:
    tx: Transaction
    applied: bool
    reason: str | None = None
    cbak_result: ExecutionResult | None = None

    def to_dict(self) -> dict:
        return {
            "tx": self.tx.to_dict(),
            "applied": self.applied,
            "reason": self.reason,
            "cbak": self.cbak_result.to_dict() if self.cbak_result else None,
        }


@dataclass
class TxReport:
    tx: Transaction
    applied: bool
    reason: str | None = None
    sender_result: ExecutionResult | None = None
    receiver_result: ExecutionResult | None = None
    ledger_seq: int | None = None
    emitted: list[EmittedReport] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "tx": self.tx.to_dict(),
            "applied": self.applied,
            "reason": self.reason,
            "ledger_seq": self.ledger_seq,
            "sender_hook": self.sender_result.to_dict() if self.sender_result else None,
            "receiver_hook": self.receiver_result.to_dict() if self.receiver_result else None,
            "emitted": [e.to_dict() for e in self.emitted],
        }


@dataclass
class SimulationReport:
    genesis: dict[str, int]
    tx_reports: list[TxReport] = field(default_factory=list)
    final_ledger: LedgerState = field(default_factory=LedgerState)

    def to_dict(self) -> dict:
        return {
            "genesis": {addr: self.genesis[addr] for addr in sorted(self.genesis)},
            "transactions": [r.to_dict() for r in self.tx_reports],
            "final_ledger": self.final_ledger.to_dict(),
        }


def install_hook(
    ledger: LedgerState,
    account: str,
    program: BlockProgram,
    trigger: str,
    step_ceiling: int = DEFAULT_STEP_CEILING,
) -> LedgerState:
    """Install (or replace) the hook on an existing account."""
    if account not in ledger.accounts:
        raise UnknownAccountError(f"cannot install hook on unknown account {account!r}")
    if trigger not in TRIGGERS:
        raise ProgramNotCleanError(f"trigger must be one of {TRIGGERS}, got {trigger!r}")
    report = validate(program)
    if not report.ok:
        codes = sorted({i.rule for i in report.errors()})
        raise ProgramNotCleanError(f"program fails validation: {', '.join(codes)}")
    guard_report = analyze(program, step_ceiling=step_ceiling)
    if not guard_report.ok:
        codes = sorted({v.rule for v in guard_report.violations})
        raise ProgramNotCleanError(f"program fails guard analysis: {', '.join(codes)}")
    return ledger.with_hook(account, InstalledHook(program=program, trigger=trigger))


def apply_transaction(
    ledger: LedgerState, tx: Transaction, fee_drops: int = 0
) -> tuple[LedgerState, TxReport]:
    """Run the hook pipeline and apply the transaction atomically.

    Returns the original ledger object unchanged when the transaction is
    rejected, so rejection is bit-identical by construction. The default is
    the zero-fee model (total supply conserved); with ``fee_drops`` set,
    every applied transaction burns that fee from its sender.
    """
    if tx.account not in ledger.accounts:
        raise UnknownAccountError(f"unknown sender {tx.account!r}")
    if tx.destination not in ledger.accounts:
        return ledger, TxReport(tx=tx, applied=False, reason="UNKNOWN_DESTINATION")

    report = TxReport(tx=tx, applied=False)

    sender_hook = ledger.hooks.get(tx.account)
    if sender_hook is not None and sender_hook.matches("outgoing"):
        report.sender_result = execute_hook(
            sender_hook.program,
            ExecutionContext(tx=tx, hook_account=tx.account, state_view=ledger.state_store),
        )
        if not report.sender_result.accepted:
            report.reason = "SENDER_HOOK_REJECTED"
            return ledger, report

    receiver_hook = ledger.hooks.get(tx.destination)
    if receiver_hook is not None and receiver_hook.matches("incoming"):
        report.receiver_result = execute_hook(
            receiver_hook.program,
            ExecutionContext(tx=tx, hook_account=tx.destination, state_view=ledger.state_store),
        )
        if not report.receiver_result.accepted:
            report.reason = "RECEIVER_HOOK_REJECTED"
            return ledger, report

    if ledger.accounts[tx.account] < tx.amount + fee_drops:
        report.reason = "INSUFFICIENT_FUNDS"
        return ledger, report

    new_ledger = ledger.with_balances(
        {
            tx.account: ledger.accounts[tx.account] - tx.amount - fee_drops,
            tx.destination: ledger.accounts[tx.destination] + tx.amount,
        }
    )
    for result in (report.sender_result, report.receiver_result):
        if result is not None:
            new_ledger = new_ledger.with_state_writes(result.state_writes)
    new_ledger = new_ledger.next_seq()
    report.applied = True
    report.ledger_seq = new_ledger.ledger_seq

    emitted_queue: list[Transaction] = []
    for result in (report.sender_result, report.receiver_result):
        if result is not None:
            emitted_queue.extend(result.emitted)
    for emitted_tx in emitted_queue:
        new_ledger, emitted_report = _apply_emitted(new_ledger, emitted_tx, fee_drops)
        report.emitted.append(emitted_report)

    return new_ledger, report


def _apply_emitted(
    ledger: LedgerState, tx: Transaction, fee_drops: int = 0
) -> tuple[LedgerState, EmittedReport]:
    """Apply one emitted transaction (no hooks run), then tell its cbak."""
    report = EmittedReport(tx=tx, applied=False)
    if tx.destination not in ledger.accounts:
        report.reason = "UNKNOWN_DESTINATION"
    elif ledger.accounts[tx.account] < tx.amount + fee_drops:
        report.reason = "INSUFFICIENT_FUNDS"
    else:
        ledger = ledger.with_balances(
            {
                tx.account: ledger.accounts[tx.account] - tx.amount - fee_drops,
                tx.destination: ledger.accounts[tx.destination] + tx.amount,
            }
        ).next_seq()
        report.applied = True

    emitter = tx.emitted_by[0] if tx.emitted_by else tx.account
    hook = ledger.hooks.get(emitter)
    if hook is not None and hook.program.entry_cbak is not None:
        code = EMIT_OK if report.applied else EMIT_FAILED
        cbak_result = execute_hook(
            hook.program,
            ExecutionContext(
                tx=tx,
                hook_account=emitter,
                state_view=ledger.state_store,
                entry="cbak",
                initial_vars={EMIT_RESULT_VAR: code},
            ),
        )
        report.cbak_result = cbak_result
        if cbak_result.accepted:
            # cbak may write state; its emits are dropped (generation cap 1)
            ledger = ledger.with_state_writes(cbak_result.state_writes)
    return ledger, report


def run_scenario(scenario: dict, ledger: LedgerState | None = None) -> SimulationReport:
    """Execute a loaded scenario (see ``scenario.load_scenario``) end to end.

    ``ledger`` seeds the run for session-style use; genesis balances are
    then added on top of it.
    """
    genesis = dict(scenario.get("genesis", {}))
    if ledger is None:
        ledger = LedgerState(accounts=genesis)
    elif genesis:
        merged = dict(ledger.accounts)
        merged.update(genesis)
        ledger = LedgerState(
            accounts=merged,
            hooks=dict(ledger.hooks),
            state_store=dict(ledger.state_store),
            ledger_seq=ledger.ledger_seq,
        )

    for install in scenario.get("installs", []):
        ledger = install_hook(
            ledger, install["account"], install["program"], install["trigger"]
        )

    fee_drops = int(scenario.get("fee_drops", 0))
    report = SimulationReport(genesis=genesis)
    for tx_spec in scenario.get("transactions", []):
        tx = Transaction(
            account=tx_spec["from"],
            destination=tx_spec["to"],
            amount=tx_spec["amount_drops"],
        )
        ledger, tx_report = apply_transaction(ledger, tx, fee_drops=fee_drops)
        report.tx_reports.append(tx_report)
    report.final_ledger = ledger
    return report
