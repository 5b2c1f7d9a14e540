"""Semantic validation of block programs.

``validate`` never raises: every rule violation becomes an ``Issue`` so
callers (CLI, HTTP API, editors) can show all problems at once. It accepts
arbitrary in-memory programs, including hand-built ones that bypass the
parser, so it re-checks the structural rules the parser enforces and is
defensive about cyclic connections.
"""

from __future__ import annotations

from .model import Block, BlockProgram, Issue, ValidationReport
from . import catalog as cat
from ..xrpl.addresses import is_classic_address


def validate(program: BlockProgram) -> ValidationReport:
    issues: list[Issue] = []
    blocks = _collect(program, issues)
    if blocks is None:  # cycle found; structure is not a forest, stop here
        return ValidationReport(issues)

    _check_ids(blocks, issues)
    for block in blocks:
        _check_block(block, issues)
    _check_entries(program, issues)
    _check_dead_code(program, issues)
    _check_terminals(program, issues)
    return ValidationReport(issues)


def _collect(program: BlockProgram, issues: list[Issue]) -> list[Block] | None:
    """Cycle-safe traversal; returns None if the graph is not a forest."""
    seen: set[int] = set()
    out: list[Block] = []

    def visit(block: Block) -> bool:
        node: Block | None = block
        while node is not None:
            if id(node) in seen:
                issues.append(
                    Issue("error", node.id, "CYCLE", "connection graph has a cycle")
                )
                return False
            seen.add(id(node))
            out.append(node)
            for child in node.inputs.values():
                if child is not None and not visit(child):
                    return False
            for child in node.statements.values():
                if child is not None and not visit(child):
                    return False
            node = node.next
        return True

    for top in program.blocks:
        if not visit(top):
            return None
    return out


def _check_ids(blocks: list[Block], issues: list[Issue]) -> None:
    seen: dict[str, int] = {}
    for block in blocks:
        if not block.id:
            issues.append(Issue("error", block.id, "EMPTY_ID", "block id is empty"))
            continue
        seen[block.id] = seen.get(block.id, 0) + 1
    for block_id, count in seen.items():
        if count > 1:
            issues.append(
                Issue(
                    "error",
                    block_id,
                    "DUPLICATE_ID",
                    f"block id {block_id!r} used {count} times",
                )
            )


def _check_block(block: Block, issues: list[Issue]) -> None:
    entry = block.entry()
    if entry is None:
        issues.append(
            Issue(
                "error",
                block.id,
                "UNKNOWN_BLOCK_KIND",
                f"kind {block.kind!r} is not in the catalog",
            )
        )
        return

    _check_fields(block, entry, issues)

    declared_inputs = {spec.name for spec in entry.inputs}
    for name, child in block.inputs.items():
        if name not in declared_inputs:
            issues.append(
                Issue(
                    "error",
                    block.id,
                    "BAD_SOCKET",
                    f"kind {block.kind!r} has no input socket {name!r}",
                )
            )
            continue
        spec = entry.input_spec(name)
        assert spec is not None
        if child is None:
            continue
        child_entry = child.entry()
        if child_entry is None:
            continue  # flagged when the child itself is checked
        if child_entry.output != spec.value_type:
            got = child_entry.output or f"statement kind {child.kind!r}"
            issues.append(
                Issue(
                    "error",
                    block.id,
                    "TYPE_MISMATCH",
                    f"socket {name!r} accepts {spec.value_type}, got {got}",
                )
            )

    declared_stmts = set(entry.statements)
    for name, child in block.statements.items():
        if name not in declared_stmts:
            issues.append(
                Issue(
                    "error",
                    block.id,
                    "BAD_SOCKET",
                    f"kind {block.kind!r} has no statement socket {name!r}",
                )
            )
            continue
        if child is None:
            continue
        for stmt in child.chain():
            stmt_entry = stmt.entry()
            if stmt_entry is not None and not cat.is_statement(stmt_entry):
                issues.append(
                    Issue(
                        "error",
                        block.id,
                        "TYPE_MISMATCH",
                        f"statement socket {name!r} holds non-statement {stmt.kind!r}",
                    )
                )

    if block.next is not None:
        if entry.output is not None:
            issues.append(
                Issue(
                    "error",
                    block.id,
                    "TYPE_MISMATCH",
                    f"expression kind {block.kind!r} cannot have a next block",
                )
            )
        else:
            next_entry = block.next.entry()
            if next_entry is not None and not cat.is_statement(next_entry):
                issues.append(
                    Issue(
                        "error",
                        block.id,
                        "TYPE_MISMATCH",
                        f"next must hold a statement, got {block.next.kind!r}",
                    )
                )

    _check_const_overflow(block, entry, issues)


def _check_fields(block: Block, entry: cat.BlockCatalogEntry, issues: list[Issue]) -> None:
    declared = {spec.name for spec in entry.fields}
    for name in block.fields:
        if name not in declared:
            issues.append(
                Issue(
                    "error",
                    block.id,
                    "BAD_FIELD",
                    f"kind {block.kind!r} has no field {name!r}",
                )
            )
    for spec in entry.fields:
        if spec.name not in block.fields:
            issues.append(
                Issue("error", block.id, "BAD_FIELD", f"missing field {spec.name!r}")
            )
            continue
        fv = block.fields[spec.name]
        if fv.value_type != spec.value_type:
            issues.append(
                Issue(
                    "error",
                    block.id,
                    "BAD_FIELD",
                    f"field {spec.name!r} must be {spec.value_type}, got {fv.value_type}",
                )
            )
            continue
        _check_field_value(block, spec, fv.value, issues)

    # Amounts must already be normalized to drops by the parse boundary.
    if entry.kind == "literal_number":
        unit = block.fields.get("UNIT")
        if unit is not None and unit.value == "XRP":
            issues.append(
                Issue(
                    "error",
                    block.id,
                    "UNIT_NOT_NORMALIZED",
                    "number literal still carries the XRP unit; parse normalizes to drops",
                )
            )


def _check_field_value(block: Block, spec: cat.FieldSpec, value, issues: list[Issue]) -> None:
    if spec.value_type == cat.INTEGER:
        if not (cat.INT64_MIN <= int(value) <= cat.INT64_MAX):
            issues.append(
                Issue(
                    "error",
                    block.id,
                    "FIELD_RANGE",
                    f"field {spec.name!r} outside 64-bit range",
                )
            )
        if (block.kind, spec.name) in (("guard", "MAXITER"), ("repeat", "COUNT")):
            if not (1 <= int(value) <= cat.MAX_BOUND):
                issues.append(
                    Issue(
                        "error",
                        block.id,
                        "FIELD_RANGE",
                        f"{block.kind} {spec.name} must be between 1 and {cat.MAX_BOUND}",
                    )
                )
    elif spec.value_type == cat.TEXT:
        if len(str(value).encode("utf-8")) > cat.MAX_TEXT_BYTES:
            issues.append(
                Issue(
                    "error",
                    block.id,
                    "TEXT_TOO_LONG",
                    f"field {spec.name!r} exceeds {cat.MAX_TEXT_BYTES} UTF-8 bytes",
                )
            )
        if spec.choices and str(value) not in spec.choices:
            issues.append(
                Issue(
                    "error",
                    block.id,
                    "BAD_FIELD",
                    f"field {spec.name!r} must be one of {spec.choices}",
                )
            )
    elif spec.value_type == cat.ACCOUNT_ADDRESS:
        if not is_classic_address(str(value)):
            issues.append(
                Issue(
                    "error",
                    block.id,
                    "BAD_ADDRESS",
                    f"field {spec.name!r} is not a valid classic address",
                )
            )
    elif spec.value_type == cat.ACCOUNT_LIST:
        for addr in value:
            if not is_classic_address(str(addr)):
                issues.append(
                    Issue(
                        "error",
                        block.id,
                        "BAD_ADDRESS",
                        f"list entry {addr!r} is not a valid classic address",
                    )
                )


def _const_value(block: Block | None) -> int | None:
    """Fold literal-only number expressions; None when not statically known."""
    if block is None:
        return None
    if block.kind == "literal_number":
        return int(block.fields["VALUE"].value)  # type: ignore[arg-type]
    if block.kind == "arith":
        a = _const_value(block.inputs.get("A"))
        b = _const_value(block.inputs.get("B"))
        op = str(block.fields["OP"].value) if "OP" in block.fields else None
        if a is None or b is None or op is None:
            return None
        if op == "ADD":
            return a + b
        if op == "SUB":
            return a - b
        if op == "MUL":
            return a * b
        if op == "DIV":
            return None if b == 0 else a // b
        return None
    if block.kind == "percent_of":
        x = _const_value(block.inputs.get("VALUE"))
        if x is None or "PERCENT" not in block.fields:
            return None
        return (x * int(block.fields["PERCENT"].value)) // 100  # type: ignore[arg-type]
    return None


def _check_const_overflow(block: Block, entry: cat.BlockCatalogEntry, issues: list[Issue]) -> None:
    if block.kind not in ("arith", "percent_of"):
        return
    folded = _const_value(block)
    if folded is not None and not (cat.INT64_MIN <= folded <= cat.INT64_MAX):
        issues.append(
            Issue(
                "warning",
                block.id,
                "CONST_OVERFLOW",
                "constant arithmetic overflows 64-bit integers; this will roll back at runtime",
            )
        )


def _check_entries(program: BlockProgram, issues: list[Issue]) -> None:
    hooks = [b for b in program.blocks if b.kind == "hook_entry"]
    cbaks = [b for b in program.blocks if b.kind == "cbak_entry"]
    if not hooks:
        issues.append(
            Issue("error", "", "MISSING_ENTRY", "program has no hook_entry block")
        )
    if len(hooks) > 1:
        issues.append(
            Issue(
                "error",
                hooks[1].id,
                "MULTIPLE_ENTRIES",
                "program has multiple hook_entry blocks",
            )
        )
    if len(cbaks) > 1:
        issues.append(
            Issue(
                "error",
                cbaks[1].id,
                "MULTIPLE_ENTRIES",
                "program has multiple cbak_entry blocks",
            )
        )
    if hooks and program.entry_hook is not hooks[0]:
        issues.append(
            Issue(
                "error",
                program.entry_hook.id,
                "ENTRY_MISMATCH",
                "entry_hook does not reference the workspace hook_entry block",
            )
        )
    for nested in _nested_entries(program):
        issues.append(
            Issue(
                "error",
                nested.id,
                "TYPE_MISMATCH",
                f"entry kind {nested.kind!r} cannot be nested",
            )
        )


def _nested_entries(program: BlockProgram) -> list[Block]:
    out = []
    for top in program.blocks:
        for block in top.walk():
            if block is top:
                continue
            entry = block.entry()
            if entry is not None and entry.category == cat.ENTRY:
                out.append(block)
    return out


def _check_dead_code(program: BlockProgram, issues: list[Issue]) -> None:
    for top in program.blocks:
        if top is program.entry_hook or top is program.entry_cbak:
            continue
        issues.append(
            Issue(
                "warning",
                top.id,
                "DEAD_CODE",
                f"top-level {top.kind!r} tree is unreachable",
            )
        )


def always_terminates(first: Block | None) -> bool:
    """True when every execution path through the chain reaches accept/rollback.

    Loop bodies count when they terminate on all paths, since repeat counts
    are validated to be at least 1.
    """
    node = first
    while node is not None:
        entry = node.entry()
        if entry is not None and entry.terminal:
            return True
        if node.kind == "if_else":
            if always_terminates(node.statements.get("THEN")) and always_terminates(
                node.statements.get("ELSE")
            ):
                return True
        elif node.kind == "repeat":
            if always_terminates(node.statements.get("DO")):
                return True
        node = node.next
    return False


def _check_terminals(program: BlockProgram, issues: list[Issue]) -> None:
    for entry_block, label in ((program.entry_hook, "hook"), (program.entry_cbak, "cbak")):
        if entry_block is None or entry_block.entry() is None:
            continue
        if not always_terminates(entry_block.next):
            issues.append(
                Issue(
                    "error",
                    entry_block.id,
                    "NO_TERMINAL_ON_PATH",
                    f"some {label} path ends without accept or rollback",
                )
            )
