"""Deterministic interpreter for block programs.

Executes one entry chain (hook or cbak) against a transaction context and a
read view of the hook's state. Guard counters are enforced at runtime: each
guard increments a per-g_id counter, counters reset when execution enters
the guard's enclosing repeat, and exceeding maxiter aborts the run with a
GuardViolation.

``steps_executed`` counts completed statement executions (control headers
included). A guard call that trips its bound aborts without counting, which
keeps every run within the static step bound of the guard analysis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..blocks.model import Block, BlockProgram
from .ledger import Transaction

# Diagnostic rollback codes for runtime faults.
CODE_NO_TERMINAL = -1
CODE_OVERFLOW = -2
CODE_DIVIDE_BY_ZERO = -3
CODE_BAD_EMIT = -4
CODE_STATE_KEY_TOO_LONG = -5

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

MAX_STATE_KEY_BYTES = 32


@dataclass(frozen=True)
class Accepted:
    msg: str
    code: int

    kind = "accepted"


@dataclass(frozen=True)
class RolledBack:
    msg: str
    code: int

    kind = "rolled_back"


@dataclass(frozen=True)
class GuardViolation:
    g_id: int

    kind = "guard_violation"


Disposition = Accepted | RolledBack | GuardViolation


@dataclass
class ExecutionResult:
    disposition: Disposition
    trace_log: list[str] = field(default_factory=list)
    emitted: list[Transaction] = field(default_factory=list)
    state_writes: list[tuple[tuple[str, str], int]] = field(default_factory=list)
    steps_executed: int = 0

    @property
    def accepted(self) -> bool:
        return isinstance(self.disposition, Accepted)

    def to_dict(self) -> dict:
        disp: dict = {"kind": self.disposition.kind}
        if isinstance(self.disposition, (Accepted, RolledBack)):
            disp["msg"] = self.disposition.msg
            disp["code"] = self.disposition.code
        else:
            disp["g_id"] = self.disposition.g_id
        return {
            "disposition": disp,
            "trace_log": list(self.trace_log),
            "emitted": [t.to_dict() for t in self.emitted],
            "state_writes": [
                {"account": acct, "key": key, "value": value}
                for (acct, key), value in self.state_writes
            ],
            "steps_executed": self.steps_executed,
        }


@dataclass(frozen=True)
class ExecutionContext:
    tx: Transaction
    hook_account: str
    state_view: dict[tuple[str, str], int]
    entry: str = "hook"  # "hook" | "cbak"
    initial_vars: dict[str, int] = field(default_factory=dict)


class _Halt(Exception):
    def __init__(self, disposition: Disposition):
        self.disposition = disposition


def execute_hook(program: BlockProgram, ctx: ExecutionContext) -> ExecutionResult:
    """Run one entry chain to its disposition; pure given (program, ctx)."""
    interp = _Interp(ctx)
    chain = program.hook_chain() if ctx.entry == "hook" else program.cbak_chain()
    try:
        interp.run_chain(chain)
        disposition: Disposition = RolledBack("no terminal", CODE_NO_TERMINAL)
    except _Halt as halt:
        disposition = halt.disposition

    result = ExecutionResult(
        disposition=disposition,
        trace_log=interp.trace_log,
        emitted=interp.emitted,
        state_writes=interp.state_writes,
        steps_executed=interp.steps,
    )
    if not result.accepted:  # rollback atomicity: side effects are discarded
        result.emitted = []
        result.state_writes = []
    return result


class _Interp:
    def __init__(self, ctx: ExecutionContext):
        self.ctx = ctx
        self.trace_log: list[str] = []
        self.emitted: list[Transaction] = []
        self.state_writes: list[tuple[tuple[str, str], int]] = []
        self.steps = 0
        self.vars: dict[str, int] = dict(ctx.initial_vars)
        self.guard_counts: dict[int, int] = {}
        self.pending_state: dict[tuple[str, str], int] = {}

    # -- statements -------------------------------------------------------

    def run_chain(self, first: Block | None) -> None:
        node = first
        while node is not None:
            self.run_statement(node)
            node = node.next

    def run_statement(self, block: Block) -> None:
        handler = getattr(self, f"_do_{block.kind}", None)
        if handler is None:
            raise _Halt(RolledBack(f"unsupported statement {block.kind!r}", CODE_NO_TERMINAL))
        handler(block)

    def _count_step(self) -> None:
        self.steps += 1

    def _do_guard(self, block: Block) -> None:
        g_id = block.field_int("G_ID")
        maxiter = block.field_int("MAXITER")
        count = self.guard_counts.get(g_id, 0) + 1
        if count > maxiter:
            raise _Halt(GuardViolation(g_id))
        self.guard_counts[g_id] = count
        self._count_step()

    def _do_trace(self, block: Block) -> None:
        msg = block.field_text("MSG")
        value = block.inputs.get("VALUE")
        if value is None:
            self.trace_log.append(msg)
        else:
            self.trace_log.append(f"{msg}: {self.eval_number(value)}")
        self._count_step()

    def _do_accept(self, block: Block) -> None:
        self._count_step()
        raise _Halt(Accepted(block.field_text("MSG"), block.field_int("CODE")))

    def _do_rollback(self, block: Block) -> None:
        self._count_step()
        raise _Halt(RolledBack(block.field_text("MSG"), block.field_int("CODE")))

    def _do_emit_payment(self, block: Block) -> None:
        destination = self.eval_account(block.inputs["DESTINATION"])  # type: ignore[arg-type]
        amount = self.eval_number(block.inputs["AMOUNT"])  # type: ignore[arg-type]
        if amount < 1 or destination == self.ctx.hook_account:
            raise _Halt(RolledBack("invalid emitted payment", CODE_BAD_EMIT))
        self.emitted.append(
            Transaction(
                account=self.ctx.hook_account,
                destination=destination,
                amount=amount,
                emitted_by=(self.ctx.hook_account, 1),
            )
        )
        self._count_step()

    def _do_state_set(self, block: Block) -> None:
        key = self.eval_text(block.inputs["KEY"])  # type: ignore[arg-type]
        value = self.eval_number(block.inputs["VALUE"])  # type: ignore[arg-type]
        if len(key.encode("utf-8")) > MAX_STATE_KEY_BYTES:
            raise _Halt(RolledBack("state key too long", CODE_STATE_KEY_TOO_LONG))
        full_key = (self.ctx.hook_account, key)
        self.state_writes.append((full_key, value))
        self.pending_state[full_key] = value
        self._count_step()

    def _do_var_set(self, block: Block) -> None:
        value = self.eval_number(block.inputs["VALUE"])  # type: ignore[arg-type]
        self.vars[block.field_text("NAME")] = value
        self._count_step()

    def _do_if(self, block: Block) -> None:
        cond = self.eval_bool(block.inputs["COND"])  # type: ignore[arg-type]
        self._count_step()
        if cond:
            self.run_chain(block.statements.get("THEN"))

    def _do_if_else(self, block: Block) -> None:
        cond = self.eval_bool(block.inputs["COND"])  # type: ignore[arg-type]
        self._count_step()
        if cond:
            self.run_chain(block.statements.get("THEN"))
        else:
            self.run_chain(block.statements.get("ELSE"))

    def _do_repeat(self, block: Block) -> None:
        count = block.field_int("COUNT")
        body = block.statements.get("DO")
        # Entering the loop resets its guards' budgets; min(count, maxiter)
        # then bounds the completed iterations, mirroring the static bound.
        if body is not None:
            for guard in body.walk():
                if guard.kind == "guard":
                    self.guard_counts.pop(guard.field_int("G_ID"), None)
        self._count_step()
        for _ in range(count):
            self.run_chain(body)

    # -- expressions ------------------------------------------------------

    def eval_number(self, block: Block) -> int:
        handler = getattr(self, f"_ev_{block.kind}", None)
        if handler is None:
            raise _Halt(RolledBack(f"unsupported expression {block.kind!r}", CODE_NO_TERMINAL))
        return handler(block)

    def eval_bool(self, block: Block) -> bool:
        if block.kind == "compare":
            a = self.eval_number(block.inputs["A"])  # type: ignore[arg-type]
            b = self.eval_number(block.inputs["B"])  # type: ignore[arg-type]
            op = block.field_text("OP")
            return {
                "LT": a < b,
                "LE": a <= b,
                "EQ": a == b,
                "NE": a != b,
                "GE": a >= b,
                "GT": a > b,
            }[op]
        if block.kind == "account_list_contains":
            account = self.eval_account(block.inputs["ACCOUNT"])  # type: ignore[arg-type]
            return account in tuple(block.fields["LIST"].value)  # type: ignore[arg-type]
        raise _Halt(RolledBack(f"unsupported boolean {block.kind!r}", CODE_NO_TERMINAL))

    def eval_text(self, block: Block) -> str:
        if block.kind == "literal_text":
            return block.field_text("TEXT")
        raise _Halt(RolledBack(f"unsupported text {block.kind!r}", CODE_NO_TERMINAL))

    def eval_account(self, block: Block) -> str:
        if block.kind == "literal_account":
            return block.field_text("ADDRESS")
        if block.kind == "otxn_account":
            return self.ctx.tx.account
        if block.kind == "otxn_destination":
            return self.ctx.tx.destination
        if block.kind == "hook_account":
            return self.ctx.hook_account
        raise _Halt(RolledBack(f"unsupported account {block.kind!r}", CODE_NO_TERMINAL))

    def _checked(self, value: int) -> int:
        if not (INT64_MIN <= value <= INT64_MAX):
            raise _Halt(RolledBack("arithmetic overflow", CODE_OVERFLOW))
        return value

    def _ev_literal_number(self, block: Block) -> int:
        return block.field_int("VALUE")

    def _ev_var_get(self, block: Block) -> int:
        return self.vars.get(block.field_text("NAME"), 0)

    def _ev_otxn_amount(self, block: Block) -> int:
        return self.ctx.tx.amount

    def _ev_arith(self, block: Block) -> int:
        a = self.eval_number(block.inputs["A"])  # type: ignore[arg-type]
        b = self.eval_number(block.inputs["B"])  # type: ignore[arg-type]
        op = block.field_text("OP")
        if op == "ADD":
            return self._checked(a + b)
        if op == "SUB":
            return self._checked(a - b)
        if op == "MUL":
            return self._checked(a * b)
        if op == "DIV":
            if b == 0:
                raise _Halt(RolledBack("divide by zero", CODE_DIVIDE_BY_ZERO))
            return self._checked(a // b)  # floor division
        raise _Halt(RolledBack(f"unknown arithmetic op {op!r}", CODE_NO_TERMINAL))

    def _ev_percent_of(self, block: Block) -> int:
        x = self.eval_number(block.inputs["VALUE"])  # type: ignore[arg-type]
        p = block.field_int("PERCENT")
        return self._checked(self._checked(x * p) // 100)

    def _ev_state_get(self, block: Block) -> int:
        key = self.eval_text(block.inputs["KEY"])  # type: ignore[arg-type]
        if len(key.encode("utf-8")) > MAX_STATE_KEY_BYTES:
            raise _Halt(RolledBack("state key too long", CODE_STATE_KEY_TOO_LONG))
        full_key = (self.ctx.hook_account, key)
        if full_key in self.pending_state:  # read-your-writes within a run
            return self.pending_state[full_key]
        return self.ctx.state_view.get(full_key, 0)
