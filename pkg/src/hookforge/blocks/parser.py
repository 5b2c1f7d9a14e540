"""Workspace interchange parsing and serialization.

The interchange document is the Blockly workspace save format:

    { "blocks": { "languageVersion": 0, "blocks": [ <block>* ] } }
    <block> := { "type": .., "id": .., "fields": {..}, "inputs": {..},
                 "next": { "block": <block> }? }

Statement sockets ride in "inputs" alongside value sockets, exactly as
Blockly serializes them. Unknown cosmetic keys (x, y, collapsed, ...) are
ignored so documents saved by a real Blockly editor parse unchanged.

Parsing is total: any byte sequence either yields a ``BlockProgram`` or
raises one of the declared error types below. XRP-denominated number
literals are converted to drops here, at the boundary; nothing downstream
ever sees an XRP unit.
"""

from __future__ import annotations

import json
from typing import Any

from ..errors import HookforgeError
from . import catalog as cat
from .model import Block, BlockProgram, FieldValue


class MalformedDocumentError(HookforgeError):
    code = "MALFORMED_DOCUMENT"


class UnknownBlockKindError(HookforgeError):
    code = "UNKNOWN_BLOCK_KIND"


class DuplicateIdError(HookforgeError):
    code = "DUPLICATE_ID"


class TypeMismatchError(HookforgeError):
    code = "TYPE_MISMATCH"


class MissingEntryError(HookforgeError):
    code = "MISSING_ENTRY"


class MultipleEntriesError(HookforgeError):
    code = "MULTIPLE_ENTRIES"


PARSE_ERRORS = (
    MalformedDocumentError,
    UnknownBlockKindError,
    DuplicateIdError,
    TypeMismatchError,
    MissingEntryError,
    MultipleEntriesError,
)

# Cosmetic keys a Blockly editor may attach; irrelevant to program meaning.
_IGNORED_BLOCK_KEYS = {"x", "y", "collapsed", "deletable", "movable", "editable",
                       "disabled", "enabled", "data", "icons", "extraState", "inline"}


def parse_workspace(text: str | bytes) -> BlockProgram:
    """Parse an interchange document into a validated ``BlockProgram``."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedDocumentError(f"document is not UTF-8: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocumentError(
            f"invalid JSON at line {exc.lineno}: {exc.msg}", line=exc.lineno
        ) from exc
    except RecursionError as exc:  # totality: absurd nesting is just malformed
        raise MalformedDocumentError("document nesting too deep") from exc
    if not isinstance(doc, dict):
        raise MalformedDocumentError("top-level value must be an object")
    blocks_section = doc.get("blocks")
    if not isinstance(blocks_section, dict) or not isinstance(
        blocks_section.get("blocks"), list
    ):
        raise MalformedDocumentError('document must contain "blocks": {"blocks": [...]}')

    metadata = doc.get("metadata", {})
    if not isinstance(metadata, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in metadata.items()
    ):
        raise MalformedDocumentError('"metadata" must map strings to strings')

    seen_ids: set[str] = set()
    tops: list[Block] = []
    try:
        for raw in blocks_section["blocks"]:
            tops.append(_decode_block(raw, seen_ids, top_level=True))
    except RecursionError as exc:
        raise MalformedDocumentError("block nesting too deep") from exc

    entries = [b for b in tops if b.kind == "hook_entry"]
    cbaks = [b for b in tops if b.kind == "cbak_entry"]
    if not entries:
        raise MissingEntryError("workspace has no hook_entry block")
    if len(entries) > 1:
        raise MultipleEntriesError(
            "workspace has multiple hook_entry blocks",
            block_ids=[b.id for b in entries],
        )
    if len(cbaks) > 1:
        raise MultipleEntriesError(
            "workspace has multiple cbak_entry blocks",
            block_ids=[b.id for b in cbaks],
        )
    return BlockProgram(
        blocks=tops,
        entry_hook=entries[0],
        entry_cbak=cbaks[0] if cbaks else None,
        metadata=dict(metadata),
    )


def _decode_block(raw: Any, seen_ids: set[str], top_level: bool = False) -> Block:
    if not isinstance(raw, dict):
        raise MalformedDocumentError(f"block must be an object, got {type(raw).__name__}")
    kind = raw.get("type")
    if not isinstance(kind, str):
        raise MalformedDocumentError('block is missing a string "type"')
    entry = cat.lookup(kind)
    if entry is None:
        raise UnknownBlockKindError(f"unknown block kind: {kind!r}", kind=kind)
    block_id = raw.get("id")
    if not isinstance(block_id, str) or not block_id:
        raise MalformedDocumentError(f"block of kind {kind!r} needs a non-empty string id")
    if block_id in seen_ids:
        raise DuplicateIdError(f"duplicate block id: {block_id!r}", block_id=block_id)
    seen_ids.add(block_id)

    for key in raw:
        if key in ("type", "id", "fields", "inputs", "next"):
            continue
        if key in _IGNORED_BLOCK_KEYS:
            continue
        raise MalformedDocumentError(f"block {block_id}: unexpected key {key!r}")

    fields = _decode_fields(entry, raw.get("fields", {}), block_id)
    inputs_raw = raw.get("inputs", {})
    if not isinstance(inputs_raw, dict):
        raise MalformedDocumentError(f"block {block_id}: \"inputs\" must be an object")

    inputs: dict[str, Block | None] = {spec.name: None for spec in entry.inputs}
    statements: dict[str, Block | None] = {name: None for name in entry.statements}
    for socket, payload in inputs_raw.items():
        child = _decode_socket_payload(payload, block_id, socket, seen_ids)
        in_spec = entry.input_spec(socket)
        if in_spec is not None:
            _check_value_child(child, in_spec, block_id)
            inputs[socket] = child
        elif socket in entry.statements:
            _check_statement_chain(child, block_id, socket)
            statements[socket] = child
        else:
            raise MalformedDocumentError(
                f"block {block_id}: kind {kind!r} has no socket named {socket!r}"
            )

    next_block: Block | None = None
    if "next" in raw and raw["next"] is not None:
        next_block = _decode_socket_payload(raw["next"], block_id, "next", seen_ids)
        if entry.output is not None:
            raise TypeMismatchError(
                f"block {block_id}: expression kind {kind!r} cannot have a next block",
                block_id=block_id,
            )
        _require_statement(next_block, block_id, "next")

    if not top_level and entry.category == cat.ENTRY:
        raise TypeMismatchError(
            f"block {block_id}: entry kind {kind!r} cannot be nested", block_id=block_id
        )

    return Block(
        id=block_id,
        kind=kind,
        fields=fields,
        inputs=inputs,
        statements=statements,
        next=next_block,
    )


def _decode_socket_payload(
    payload: Any, parent_id: str, socket: str, seen_ids: set[str]
) -> Block:
    if not isinstance(payload, dict):
        raise MalformedDocumentError(
            f"block {parent_id}: socket {socket!r} must hold an object"
        )
    inner = payload.get("block", payload.get("shadow"))
    if inner is None:
        raise MalformedDocumentError(
            f"block {parent_id}: socket {socket!r} holds neither \"block\" nor \"shadow\""
        )
    return _decode_block(inner, seen_ids)


def _decode_fields(
    entry: cat.BlockCatalogEntry, raw: Any, block_id: str
) -> dict[str, FieldValue]:
    if not isinstance(raw, dict):
        raise MalformedDocumentError(f"block {block_id}: \"fields\" must be an object")
    for name in raw:
        if entry.field_spec(name) is None:
            raise MalformedDocumentError(
                f"block {block_id}: kind {entry.kind!r} has no field named {name!r}"
            )
    fields: dict[str, FieldValue] = {}
    for spec in entry.fields:
        if spec.name not in raw:
            raise MalformedDocumentError(
                f"block {block_id}: missing field {spec.name!r}"
            )
        fields[spec.name] = _decode_field_value(spec, raw[spec.name], block_id)

    # Normalize XRP literals to drops right here, at the boundary.
    if entry.kind == "literal_number" and fields["UNIT"].value == "XRP":
        drops = int(fields["VALUE"].value) * cat.DROPS_PER_XRP  # type: ignore[arg-type]
        if not (cat.INT64_MIN <= drops <= cat.INT64_MAX):
            raise MalformedDocumentError(
                f"block {block_id}: XRP literal overflows 64-bit drops"
            )
        fields["VALUE"] = FieldValue.integer(drops)
        fields["UNIT"] = FieldValue.text("drops")
    return fields


def _decode_field_value(spec: cat.FieldSpec, raw: Any, block_id: str) -> FieldValue:
    if spec.value_type == cat.INTEGER:
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise MalformedDocumentError(
                f"block {block_id}: field {spec.name!r} must be an integer"
            )
        if not (cat.INT64_MIN <= raw <= cat.INT64_MAX):
            raise MalformedDocumentError(
                f"block {block_id}: field {spec.name!r} outside 64-bit range"
            )
        return FieldValue.integer(raw)
    if spec.value_type in (cat.TEXT, cat.ACCOUNT_ADDRESS):
        if not isinstance(raw, str):
            raise MalformedDocumentError(
                f"block {block_id}: field {spec.name!r} must be a string"
            )
        if spec.choices and raw not in spec.choices:
            raise MalformedDocumentError(
                f"block {block_id}: field {spec.name!r} must be one of {spec.choices}"
            )
        if spec.value_type == cat.TEXT:
            return FieldValue.text(raw)
        return FieldValue.account(raw)
    if spec.value_type == cat.ACCOUNT_LIST:
        if not isinstance(raw, list) or not all(isinstance(a, str) for a in raw):
            raise MalformedDocumentError(
                f"block {block_id}: field {spec.name!r} must be a list of strings"
            )
        return FieldValue.account_list(raw)
    raise MalformedDocumentError(
        f"block {block_id}: unhandled field type {spec.value_type!r}"
    )


def _check_value_child(child: Block, spec: cat.InputSpec, parent_id: str) -> None:
    child_entry = child.entry()
    assert child_entry is not None
    if child_entry.output is None:
        raise TypeMismatchError(
            f"block {parent_id}: socket {spec.name!r} needs a value, "
            f"got statement kind {child.kind!r}",
            block_id=parent_id,
            socket=spec.name,
        )
    if child_entry.output != spec.value_type:
        raise TypeMismatchError(
            f"block {parent_id}: socket {spec.name!r} accepts {spec.value_type}, "
            f"got {child_entry.output} from {child.kind!r}",
            block_id=parent_id,
            socket=spec.name,
        )


def _check_statement_chain(child: Block, parent_id: str, socket: str) -> None:
    for stmt in child.chain():
        _require_statement(stmt, parent_id, socket)


def _require_statement(block: Block, parent_id: str, where: str) -> None:
    entry = block.entry()
    assert entry is not None
    if not cat.is_statement(entry):
        raise TypeMismatchError(
            f"block {parent_id}: {where} must hold statements, got {block.kind!r}",
            block_id=parent_id,
            socket=where,
        )


def serialize_workspace(program: BlockProgram) -> str:
    """Serialize to the interchange document; inverse of ``parse_workspace``."""
    doc: dict[str, Any] = {
        "blocks": {
            "languageVersion": 0,
            "blocks": [_encode_block(b) for b in program.blocks],
        }
    }
    if program.metadata:
        doc["metadata"] = dict(program.metadata)
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _encode_block(block: Block) -> dict:
    out: dict[str, Any] = {"type": block.kind, "id": block.id}
    if block.fields:
        out["fields"] = {
            name: _encode_field_value(fv) for name, fv in block.fields.items()
        }
    inputs: dict[str, Any] = {}
    for name, child in block.inputs.items():
        if child is not None:
            inputs[name] = {"block": _encode_block(child)}
    for name, child in block.statements.items():
        if child is not None:
            inputs[name] = {"block": _encode_block(child)}
    if inputs:
        out["inputs"] = inputs
    if block.next is not None:
        out["next"] = {"block": _encode_block(block.next)}
    return out


def _encode_field_value(fv: FieldValue) -> Any:
    if fv.value_type == cat.ACCOUNT_LIST:
        return list(fv.value)  # type: ignore[arg-type]
    return fv.value
