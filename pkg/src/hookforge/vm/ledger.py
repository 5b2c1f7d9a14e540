"""Simulated ledger state: accounts, installed hooks, hook state store.

The simulator is zero-fee, so the total of all balances is invariant across
transaction application; rejected transactions leave the state object
untouched (apply returns the very same instance).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from ..blocks.model import BlockProgram
from ..errors import HookforgeError

TRIGGERS = ("outgoing", "incoming", "both")


class UnknownAccountError(HookforgeError):
    code = "UNKNOWN_ACCOUNT"


class ProgramNotCleanError(HookforgeError):
    code = "PROGRAM_NOT_CLEAN"


@dataclass(frozen=True)
class Transaction:
    account: str  # sender
    destination: str
    amount: int  # drops
    emitted_by: Optional[tuple[str, int]] = None  # (emitting account, generation)

    kind = "Payment"

    def __post_init__(self):
        if self.amount < 1:
            raise ValueError("transaction amount must be at least 1 drop")
        if self.account == self.destination:
            raise ValueError("transaction sender and destination must differ")

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "account": self.account,
            "destination": self.destination,
            "amount": self.amount,
        }
        if self.emitted_by is not None:
            out["emitted_by"] = {"account": self.emitted_by[0], "generation": self.emitted_by[1]}
        return out


@dataclass(frozen=True)
class InstalledHook:
    program: BlockProgram
    trigger: str  # "outgoing" | "incoming" | "both"

    def matches(self, direction: str) -> bool:
        return self.trigger == "both" or self.trigger == direction


@dataclass(frozen=True)
class LedgerState:
    accounts: dict[str, int] = field(default_factory=dict)
    hooks: dict[str, InstalledHook] = field(default_factory=dict)
    state_store: dict[tuple[str, str], int] = field(default_factory=dict)
    ledger_seq: int = 0

    def total_drops(self) -> int:
        return sum(self.accounts.values())

    def with_balances(self, updates: dict[str, int]) -> "LedgerState":
        for addr, balance in updates.items():
            if balance < 0:
                raise HookforgeError(f"balance of {addr} would go negative")
        accounts = dict(self.accounts)
        accounts.update(updates)
        return replace(self, accounts=accounts)

    def with_hook(self, account: str, hook: InstalledHook) -> "LedgerState":
        hooks = dict(self.hooks)
        hooks[account] = hook
        return replace(self, hooks=hooks)

    def with_state_writes(
        self, writes: list[tuple[tuple[str, str], int]]
    ) -> "LedgerState":
        if not writes:
            return self
        store = dict(self.state_store)
        for key, value in writes:
            store[key] = value
        return replace(self, state_store=store)

    def next_seq(self) -> "LedgerState":
        return replace(self, ledger_seq=self.ledger_seq + 1)

    def to_dict(self) -> dict:
        """Canonical JSON form; used both for reports and bit-identity checks."""
        return {
            "accounts": {addr: self.accounts[addr] for addr in sorted(self.accounts)},
            "hooks": {
                addr: {"trigger": self.hooks[addr].trigger}
                for addr in sorted(self.hooks)
            },
            "state": [
                {"account": acct, "key": key, "value": self.state_store[(acct, key)]}
                for acct, key in sorted(self.state_store)
            ],
            "ledger_seq": self.ledger_seq,
        }


def genesis_ledger(balances: dict[str, int]) -> LedgerState:
    for addr, drops in balances.items():
        if drops < 0:
            raise HookforgeError(f"genesis balance of {addr} is negative")
    return LedgerState(accounts=dict(balances))
