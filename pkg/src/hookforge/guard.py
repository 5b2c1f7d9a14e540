"""Static enforcement of the hook termination discipline.

Every program that passes this analysis provably terminates: loops carry
literal iteration counts, every loop body leads with a guard, and the
worst-case number of executed statements is a finite bound computed here.
The simulator enforces the same limits at runtime, so the static bound is
an upper bound on any execution's step count.

Rules:
    R1 GUARD_ABSENT           entry chain contains no guard block
    R2 LOOP_UNGUARDED         a repeat body does not lead with a guard
    R3 GUARD_BOUND_NONCONST / GUARD_BOUND_NONPOSITIVE
    R4 GUARD_ID_REUSE         two guard blocks share a g_id
    R5 STEP_BOUND_EXCEEDED    static bound above the configured ceiling

Per-loop iterations are bounded by min(repeat count, leading guard maxiter);
nested loops multiply. The cbak chain is held to the same rules as the hook
chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .blocks.model import Block, BlockProgram, Issue

DEFAULT_STEP_CEILING = 65_536


@dataclass
class GuardReport:
    violations: list[Issue] = field(default_factory=list)
    static_step_bound: int = 0
    guard_ids_used: set[int] = field(default_factory=set)
    step_ceiling: int = DEFAULT_STEP_CEILING

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [v.to_dict() for v in self.violations],
            "static_step_bound": self.static_step_bound,
            "guard_ids_used": sorted(self.guard_ids_used),
            "step_ceiling": self.step_ceiling,
        }


def analyze(program: BlockProgram, step_ceiling: int = DEFAULT_STEP_CEILING) -> GuardReport:
    """Apply R1-R5 to the hook and cbak chains of a validated program."""
    report = GuardReport(step_ceiling=step_ceiling)

    chains = [("hook", program.entry_hook, program.hook_chain())]
    if program.entry_cbak is not None:
        chains.append(("cbak", program.entry_cbak, program.cbak_chain()))

    bounds = []
    for label, entry_block, chain in chains:
        guards = _guards_in_chain(chain)
        if not guards:
            report.violations.append(
                Issue(
                    "error",
                    entry_block.id,
                    "GUARD_ABSENT",
                    f"{label} chain contains no guard block",
                )
            )
        for g in guards:
            g_id = _int_field(g, "G_ID")
            maxiter = _int_field(g, "MAXITER")
            if maxiter is None:
                report.violations.append(
                    Issue("error", g.id, "GUARD_BOUND_NONCONST", "guard maxiter is not a literal")
                )
            elif maxiter < 1:
                report.violations.append(
                    Issue("error", g.id, "GUARD_BOUND_NONPOSITIVE", "guard maxiter must be >= 1")
                )
            if g_id is not None:
                report.guard_ids_used.add(g_id)
        _check_loops(chain, report)
        bounds.append(_chain_bound(chain))

    _check_id_reuse(chains, report)

    report.static_step_bound = max(bounds) if bounds else 0
    if report.static_step_bound > step_ceiling:
        report.violations.append(
            Issue(
                "error",
                program.entry_hook.id,
                "STEP_BOUND_EXCEEDED",
                f"static step bound {report.static_step_bound} exceeds ceiling {step_ceiling}",
            )
        )
    return report


def _int_field(block: Block, name: str) -> int | None:
    fv = block.fields.get(name)
    if fv is None or not isinstance(fv.value, int):
        return None
    return int(fv.value)


def _guards_in_chain(chain: Block | None) -> list[Block]:
    out = []
    if chain is None:
        return out
    for block in chain.walk():
        if block.kind == "guard":
            out.append(block)
    return out


def _check_loops(chain: Block | None, report: GuardReport) -> None:
    if chain is None:
        return
    for block in chain.walk():
        if block.kind != "repeat":
            continue
        count = _int_field(block, "COUNT")
        if count is None:
            report.violations.append(
                Issue("error", block.id, "GUARD_BOUND_NONCONST", "repeat count is not a literal")
            )
        elif count < 1:
            report.violations.append(
                Issue("error", block.id, "GUARD_BOUND_NONPOSITIVE", "repeat count must be >= 1")
            )
        body = block.statements.get("DO")
        if body is None or body.kind != "guard":
            report.violations.append(
                Issue(
                    "error",
                    block.id,
                    "LOOP_UNGUARDED",
                    "first statement of a repeat body must be a guard",
                )
            )


def _check_id_reuse(chains, report: GuardReport) -> None:
    seen: dict[int, str] = {}
    for _, _, chain in chains:
        for g in _guards_in_chain(chain):
            g_id = _int_field(g, "G_ID")
            if g_id is None:
                continue
            if g_id in seen:
                report.violations.append(
                    Issue(
                        "error",
                        g.id,
                        "GUARD_ID_REUSE",
                        f"guard id {g_id} already used by block {seen[g_id]!r}",
                    )
                )
            else:
                seen[g_id] = g.id


def loop_iteration_bound(block: Block) -> int:
    """min(repeat count, leading guard maxiter), clamped to >= 0."""
    count = _int_field(block, "COUNT") or 0
    body = block.statements.get("DO")
    maxiter = None
    if body is not None and body.kind == "guard":
        maxiter = _int_field(body, "MAXITER")
    bound = count if maxiter is None else min(count, maxiter)
    return max(bound, 0)


def _chain_bound(chain: Block | None) -> int:
    total = 0
    node = chain
    while node is not None:
        total += _statement_bound(node)
        node = node.next
    return total


def _statement_bound(block: Block) -> int:
    if block.kind == "repeat":
        return 1 + loop_iteration_bound(block) * _chain_bound(block.statements.get("DO"))
    if block.kind == "if":
        return 1 + _chain_bound(block.statements.get("THEN"))
    if block.kind == "if_else":
        return 1 + max(
            _chain_bound(block.statements.get("THEN")),
            _chain_bound(block.statements.get("ELSE")),
        )
    return 1
