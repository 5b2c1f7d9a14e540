"""In-memory model of a block workspace.

A ``BlockProgram`` is a forest of ``Block`` trees; exactly one tree is rooted
at a ``hook_entry`` and at most one at a ``cbak_entry``. Values are plain
frozen-ish dataclasses compared structurally, so round-trip tests can use
``==``. Instances are treated as immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from . import catalog as cat


@dataclass(eq=True)
class FieldValue:
    """Tagged literal stored on a block field."""

    value_type: str  # catalog field value type
    value: object  # int | str | tuple[str, ...]

    @staticmethod
    def integer(v: int) -> "FieldValue":
        return FieldValue(cat.INTEGER, int(v))

    @staticmethod
    def text(v: str) -> "FieldValue":
        return FieldValue(cat.TEXT, str(v))

    @staticmethod
    def account(v: str) -> "FieldValue":
        return FieldValue(cat.ACCOUNT_ADDRESS, str(v))

    @staticmethod
    def account_list(v) -> "FieldValue":
        return FieldValue(cat.ACCOUNT_LIST, tuple(str(a) for a in v))


@dataclass(eq=True)
class Block:
    id: str
    kind: str
    fields: dict[str, FieldValue] = field(default_factory=dict)
    inputs: dict[str, Optional["Block"]] = field(default_factory=dict)
    statements: dict[str, Optional["Block"]] = field(default_factory=dict)
    next: Optional["Block"] = None

    def entry(self) -> cat.BlockCatalogEntry | None:
        return cat.lookup(self.kind)

    def field_int(self, name: str) -> int:
        return int(self.fields[name].value)  # type: ignore[arg-type]

    def field_text(self, name: str) -> str:
        return str(self.fields[name].value)

    def chain(self) -> Iterator["Block"]:
        """This block and its ``next`` successors, in order."""
        node: Block | None = self
        while node is not None:
            yield node
            node = node.next

    def walk(self) -> Iterator["Block"]:
        """Every block in this subtree: chain, inputs and statement bodies."""
        for stmt in self.chain():
            yield stmt
            for child in stmt.inputs.values():
                if child is not None:
                    yield from child.walk()
            for body in stmt.statements.values():
                if body is not None:
                    yield from body.walk()


def new_block(
    kind: str,
    block_id: str,
    fields: dict[str, FieldValue] | None = None,
    inputs: dict[str, Optional[Block]] | None = None,
    statements: dict[str, Optional[Block]] | None = None,
    next: Optional[Block] = None,
) -> Block:
    """Build a block with every declared socket materialized (None = empty).

    Keeps programmatically-built and parsed programs structurally identical,
    which the round-trip equality contract relies on.
    """
    entry = cat.lookup(kind)
    if entry is None:
        raise KeyError(f"unknown block kind: {kind}")
    fields = dict(fields or {})
    inputs = dict(inputs or {})
    statements = dict(statements or {})
    norm_inputs = {spec.name: inputs.get(spec.name) for spec in entry.inputs}
    norm_statements = {name: statements.get(name) for name in entry.statements}
    return Block(
        id=block_id,
        kind=kind,
        fields=fields,
        inputs=norm_inputs,
        statements=norm_statements,
        next=next,
    )


@dataclass(eq=True)
class BlockProgram:
    blocks: list[Block]  # top-level trees, document order
    entry_hook: Block
    entry_cbak: Block | None = None
    metadata: dict[str, str] = field(default_factory=dict)

    def all_blocks(self) -> Iterator[Block]:
        for top in self.blocks:
            yield from top.walk()

    def hook_chain(self) -> Block | None:
        """First statement of the hook entry, or None for an empty hook."""
        return self.entry_hook.next

    def cbak_chain(self) -> Block | None:
        return self.entry_cbak.next if self.entry_cbak else None


@dataclass(eq=True)
class Issue:
    severity: str  # "error" | "warning"
    block_id: str
    rule: str
    message: str

    def to_dict(self) -> dict:
        return {
            "severity": self.severity,
            "block_id": self.block_id,
            "rule": self.rule,
            "message": self.message,
        }


@dataclass(eq=True)
class ValidationReport:
    issues: list[Issue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(i.severity == "error" for i in self.issues)

    def errors(self) -> list[Issue]:
        return [i for i in self.issues if i.severity == "error"]

    def warnings(self) -> list[Issue]:
        return [i for i in self.issues if i.severity == "warning"]

    def to_dict(self) -> dict:
        return {"ok": self.ok, "issues": [i.to_dict() for i in self.issues]}
