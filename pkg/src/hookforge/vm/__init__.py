"""Local deterministic simulator of the hook execution environment."""

from .executor import (
    Accepted,
    ExecutionContext,
    ExecutionResult,
    GuardViolation,
    RolledBack,
    execute_hook,
)
from .engine import (
    EmittedReport,
    SimulationReport,
    TxReport,
    apply_transaction,
    install_hook,
    run_scenario,
)
from .ledger import (
    InstalledHook,
    LedgerState,
    ProgramNotCleanError,
    Transaction,
    UnknownAccountError,
    genesis_ledger,
)
from .scenario import ScenarioError, load_scenario

__all__ = [
    "Accepted",
    "EmittedReport",
    "ExecutionContext",
    "ExecutionResult",
    "GuardViolation",
    "InstalledHook",
    "LedgerState",
    "ProgramNotCleanError",
    "RolledBack",
    "ScenarioError",
    "SimulationReport",
    "Transaction",
    "TxReport",
    "UnknownAccountError",
    "apply_transaction",
    "execute_hook",
    "genesis_ledger",
    "install_hook",
    "load_scenario",
    "run_scenario",
]
