"""Block language: parsing, validation, serialization, catalog."""

from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hookforge.blocks import (
    DuplicateIdError,
    MalformedDocumentError,
    MissingEntryError,
    MultipleEntriesError,
    PARSE_ERRORS,
    TypeMismatchError,
    UnknownBlockKindError,
    catalog,
    new_block,
    parse_workspace,
    serialize_workspace,
    validate,
)
from hookforge.blocks.catalog import (
    ACCOUNT,
    ACCOUNT_ADDRESS,
    ACCOUNT_LIST,
    BOOLEAN,
    DROPS_PER_XRP,
    INTEGER,
    NUMBER,
    TEXT,
    lookup,
)
from hookforge.blocks.model import FieldValue

from .conftest import accept_all_doc
from .oracles import pathwalk
from .oracles.progen import ADDRESS_POOL, ProgramGen


def test_parse_accept_all_minimal_workspace():
    program = parse_workspace(json.dumps(accept_all_doc()))
    blocks = list(program.all_blocks())
    assert len(blocks) == 4
    assert program.entry_hook.kind == "hook_entry"
    chain = [b.kind for b in program.hook_chain().chain()]
    assert chain == ["guard", "trace", "accept"]


def test_parse_empty_workspace_missing_entry():
    doc = {"blocks": {"languageVersion": 0, "blocks": []}}
    with pytest.raises(MissingEntryError):
        parse_workspace(json.dumps(doc))


def test_parse_converts_xrp_literals_to_drops():
    doc = {
        "blocks": {
            "languageVersion": 0,
            "blocks": [
                {
                    "type": "hook_entry",
                    "id": "e",
                    "next": {
                        "block": {
                            "type": "guard",
                            "id": "g",
                            "fields": {"G_ID": 1, "MAXITER": 1},
                            "next": {
                                "block": {
                                    "type": "trace",
                                    "id": "t",
                                    "fields": {"MSG": "amt"},
                                    "inputs": {
                                        "VALUE": {
                                            "block": {
                                                "type": "literal_number",
                                                "id": "n",
                                                "fields": {"VALUE": 20, "UNIT": "XRP"},
                                            }
                                        }
                                    },
                                    "next": {
                                        "block": {
                                            "type": "accept",
                                            "id": "a",
                                            "fields": {"MSG": "ok", "CODE": 0},
                                        }
                                    },
                                }
                            },
                        }
                    },
                }
            ],
        }
    }
    program = parse_workspace(json.dumps(doc))
    literal = next(b for b in program.all_blocks() if b.kind == "literal_number")
    assert literal.fields["VALUE"].value == 20 * DROPS_PER_XRP == 20_000_000
    assert literal.fields["UNIT"].value == "drops"
    # unit soundness: serialized form carries drops too
    reparsed = parse_workspace(serialize_workspace(program))
    lit2 = next(b for b in reparsed.all_blocks() if b.kind == "literal_number")
    assert lit2.fields["VALUE"].value == 20_000_000


def test_parse_duplicate_id():
    doc = accept_all_doc()
    doc["blocks"]["blocks"][0]["next"]["block"]["id"] = "entry"
    with pytest.raises(DuplicateIdError):
        parse_workspace(json.dumps(doc))


def test_parse_unknown_kind():
    doc = accept_all_doc()
    doc["blocks"]["blocks"][0]["next"]["block"]["type"] = "warp_drive"
    with pytest.raises(UnknownBlockKindError):
        parse_workspace(json.dumps(doc))


def test_parse_multiple_entries():
    doc = accept_all_doc()
    doc["blocks"]["blocks"].append({"type": "hook_entry", "id": "e2"})
    with pytest.raises(MultipleEntriesError):
        parse_workspace(json.dumps(doc))


def test_parse_type_mismatch_text_into_number_socket():
    doc = accept_all_doc()
    doc["blocks"]["blocks"][0]["next"]["block"]["next"]["block"]["inputs"] = {
        "VALUE": {"block": {"type": "literal_text", "id": "x", "fields": {"TEXT": "oops"}}}
    }
    with pytest.raises(TypeMismatchError):
        parse_workspace(json.dumps(doc))


def test_parse_malformed_document_bad_json():
    with pytest.raises(MalformedDocumentError) as exc:
        parse_workspace("{not json")
    assert exc.value.details.get("line") == 1


@pytest.mark.parametrize(
    "doc",
    [
        "[]",
        '{"blocks": 3}',
        '{"blocks": {"blocks": {}}}',
        '{"blocks": {"blocks": [{"id": "x"}]}}',
        '{"blocks": {"blocks": [{"type": "guard", "id": "", "fields": {"G_ID": 1, "MAXITER": 1}}]}}',
        '{"blocks": {"blocks": [{"type": "guard", "id": "g", "fields": {"G_ID": "one", "MAXITER": 1}}]}}',
    ],
)
def test_parse_malformed_shapes(doc):
    with pytest.raises(MalformedDocumentError):
        parse_workspace(doc)


def test_parser_totality_deep_nesting():
    # pathological nesting must surface as MALFORMED_DOCUMENT, never a crash
    deep_json = "[" * 100_000 + "]" * 100_000
    with pytest.raises(MalformedDocumentError):
        parse_workspace('{"blocks": {"languageVersion": 0, "blocks": ' + deep_json + "}}")
    block = '{"type": "hook_entry", "id": "e", "next": {"block": '
    nested = block * 20_000 + '{"type": "accept", "id": "a", "fields": {"MSG": "m", "CODE": 1}}' + "}}" * 20_000
    with pytest.raises((MalformedDocumentError, DuplicateIdError)):
        parse_workspace('{"blocks": {"languageVersion": 0, "blocks": [' + nested + "]}}")


@settings(max_examples=300, deadline=None)
@given(st.binary(max_size=400))
def test_parser_totality_random_bytes(data):
    # any byte sequence either parses or raises a declared error, never crashes
    try:
        parse_workspace(data)
    except PARSE_ERRORS:
        pass


@settings(max_examples=200, deadline=None)
@given(st.recursive(
    st.none() | st.booleans() | st.integers() | st.text(max_size=8),
    lambda children: st.lists(children, max_size=4)
    | st.dictionaries(st.text(max_size=8), children, max_size=4),
    max_leaves=20,
))
def test_parser_totality_random_json(value):
    try:
        parse_workspace(json.dumps({"blocks": {"languageVersion": 0, "blocks": [value]}}))
    except PARSE_ERRORS:
        pass


def test_validate_accept_all_clean(accept_all_program):
    report = validate(accept_all_program)
    assert report.ok
    assert report.issues == []


def test_validate_no_terminal_on_path():
    # hook chain: guard -> if(cond){accept} : the false path falls through
    gen = ProgramGen(random.Random(7))
    guard = gen.guard()
    accept = gen.terminal()
    cond_if = new_block("if", "cif", inputs={"COND": gen.bool_expr(0)}, statements={"THEN": accept})
    guard.next = cond_if
    entry = new_block("hook_entry", "e", next=guard)
    from hookforge.blocks.model import BlockProgram

    program = BlockProgram(blocks=[entry], entry_hook=entry)
    report = validate(program)
    assert not report.ok
    assert any(i.rule == "NO_TERMINAL_ON_PATH" for i in report.issues)
    # confirmed by the independent brute-force path walker
    assert pathwalk.has_unterminated_path(program.hook_chain())


def test_validate_terminal_analysis_matches_path_walker_on_random_programs():
    rng = random.Random(20240811)
    gen = ProgramGen(rng)
    from hookforge.blocks.validate import always_terminates

    checked = 0
    for _ in range(300):
        program = gen.clean_program()
        # clean programs always terminate; the oracle must agree
        assert not pathwalk.has_unterminated_path(program.hook_chain())
        assert always_terminates(program.hook_chain())
        checked += 1
    assert checked == 300


def test_validate_dead_tree_is_warning():
    gen = ProgramGen(random.Random(3))
    program = gen.clean_program(dead_tree=True)
    report = validate(program)
    assert report.ok
    assert any(i.rule == "DEAD_CODE" and i.severity == "warning" for i in report.issues)


def test_validate_type_mismatch_in_memory():
    gen = ProgramGen(random.Random(4))
    program = gen.clean_program(with_cbak=False)
    bad = new_block(
        "compare",
        "badcmp",
        fields={"OP": FieldValue.text("LT")},
        inputs={
            "A": new_block("literal_text", "lt", fields={"TEXT": FieldValue.text("oops")}),
            "B": new_block(
                "literal_number",
                "ln",
                fields={"VALUE": FieldValue.integer(1), "UNIT": FieldValue.text("drops")},
            ),
        },
    )
    trace = new_block(
        "trace",
        "trc",
        fields={"MSG": FieldValue.text("x")},
        inputs={"VALUE": bad},
    )
    # compare outputs boolean, trace VALUE accepts number -> two mismatches
    first = program.hook_chain()
    trace.next = first.next
    first.next = trace
    report = validate(program)
    assert not report.ok
    assert any(i.rule == "TYPE_MISMATCH" for i in report.issues)


def test_validate_field_range_rules():
    gen = ProgramGen(random.Random(5))
    program = gen.clean_program(with_cbak=False)
    first = program.hook_chain()
    assert first.kind == "guard"
    first.fields["MAXITER"] = FieldValue.integer(0)
    report = validate(program)
    assert any(i.rule == "FIELD_RANGE" for i in report.issues)


def test_validate_text_too_long():
    program = parse_workspace(json.dumps(accept_all_doc()))
    trace = next(b for b in program.all_blocks() if b.kind == "trace")
    trace.fields["MSG"] = FieldValue.text("x" * 129)
    report = validate(program)
    assert any(i.rule == "TEXT_TOO_LONG" for i in report.issues)


def test_validate_bad_address():
    gen = ProgramGen(random.Random(6))
    program = gen.clean_program(with_cbak=False)
    bad_acct = new_block(
        "literal_account", "acc", fields={"ADDRESS": FieldValue.account("rNotARealAddress")}
    )
    emit = new_block(
        "emit_payment",
        "em",
        inputs={
            "DESTINATION": bad_acct,
            "AMOUNT": new_block(
                "literal_number",
                "amt",
                fields={"VALUE": FieldValue.integer(5), "UNIT": FieldValue.text("drops")},
            ),
        },
    )
    first = program.hook_chain()
    emit.next = first.next
    first.next = emit
    report = validate(program)
    assert any(i.rule == "BAD_ADDRESS" for i in report.issues)


def test_validate_cycle_detected_not_hang():
    gen = ProgramGen(random.Random(8))
    program = gen.clean_program(with_cbak=False)
    first = program.hook_chain()
    # tie the chain into a loop
    node = first
    while node.next is not None:
        node = node.next
    node.next = first
    report = validate(program)
    assert any(i.rule == "CYCLE" for i in report.issues)


def test_roundtrip_accept_all(accept_all_program):
    text = serialize_workspace(accept_all_program)
    assert parse_workspace(text) == accept_all_program


def test_roundtrip_every_catalog_kind_instantiated():
    """One program holding every catalog kind survives the round trip."""
    gen = ProgramGen(random.Random(9))
    used = set()

    guard = gen.guard()
    lit = lambda v: new_block(  # noqa: E731
        "literal_number",
        gen.bid(),
        fields={"VALUE": FieldValue.integer(v), "UNIT": FieldValue.text("drops")},
    )
    text = new_block("literal_text", gen.bid(), fields={"TEXT": FieldValue.text("k")})
    acct = new_block(
        "literal_account", gen.bid(), fields={"ADDRESS": FieldValue.account(ADDRESS_POOL[0])}
    )
    compare = new_block(
        "compare",
        gen.bid(),
        fields={"OP": FieldValue.text("LT")},
        inputs={"A": new_block("otxn_amount", gen.bid()), "B": lit(7)},
    )
    contains = new_block(
        "account_list_contains",
        gen.bid(),
        fields={"LIST": FieldValue.account_list(ADDRESS_POOL[:3])},
        inputs={"ACCOUNT": new_block("otxn_account", gen.bid())},
    )
    arith = new_block(
        "arith",
        gen.bid(),
        fields={"OP": FieldValue.text("MUL")},
        inputs={"A": lit(3), "B": new_block("var_get", gen.bid(), fields={"NAME": FieldValue.text("x")})},
    )
    pct = new_block(
        "percent_of",
        gen.bid(),
        fields={"PERCENT": FieldValue.integer(1)},
        inputs={"VALUE": arith},
    )
    state_get = new_block("state_get", gen.bid(), inputs={"KEY": text})
    trace1 = new_block(
        "trace", gen.bid(), fields={"MSG": FieldValue.text("v")}, inputs={"VALUE": state_get}
    )
    var_set = new_block(
        "var_set", gen.bid(), fields={"NAME": FieldValue.text("x")}, inputs={"VALUE": pct}
    )
    state_set = new_block(
        "state_set",
        gen.bid(),
        inputs={
            "KEY": new_block("literal_text", gen.bid(), fields={"TEXT": FieldValue.text("flag")}),
            "VALUE": lit(1),
        },
    )
    emit = new_block(
        "emit_payment",
        gen.bid(),
        inputs={
            "DESTINATION": acct,
            "AMOUNT": new_block(
                "percent_of",
                gen.bid(),
                fields={"PERCENT": FieldValue.integer(2)},
                inputs={"VALUE": new_block("otxn_amount", gen.bid())},
            ),
        },
    )
    inner_guard = gen.guard()
    inner_trace = new_block("trace", gen.bid(), fields={"MSG": FieldValue.text("loop")})
    inner_guard.next = inner_trace
    loop = new_block(
        "repeat",
        gen.bid(),
        fields={"COUNT": FieldValue.integer(2)},
        statements={"DO": inner_guard},
    )
    cond_if = new_block(
        "if",
        gen.bid(),
        inputs={"COND": compare},
        statements={"THEN": new_block("trace", gen.bid(), fields={"MSG": FieldValue.text("hi")})},
    )
    branch = new_block(
        "if_else",
        gen.bid(),
        inputs={"COND": contains},
        statements={
            "THEN": new_block(
                "rollback", gen.bid(), fields={"MSG": FieldValue.text("no"), "CODE": FieldValue.integer(1)}
            ),
            "ELSE": new_block(
                "trace",
                gen.bid(),
                fields={"MSG": FieldValue.text("dest")},
                inputs={"VALUE": new_block("var_get", gen.bid(), fields={"NAME": FieldValue.text("x")})},
            ),
        },
    )
    dest_probe = new_block(
        "trace",
        gen.bid(),
        fields={"MSG": FieldValue.text("hookacct")},
        inputs={
            "VALUE": new_block(
                "arith",
                gen.bid(),
                fields={"OP": FieldValue.text("ADD")},
                inputs={"A": lit(0), "B": lit(1)},
            )
        },
    )
    accept = new_block(
        "accept", gen.bid(), fields={"MSG": FieldValue.text("ok"), "CODE": FieldValue.integer(0)}
    )
    # reference otxn_destination / hook_account via emit destinations in a dead tree
    dead = new_block(
        "emit_payment",
        gen.bid(),
        inputs={"DESTINATION": new_block("otxn_destination", gen.bid()), "AMOUNT": lit(2)},
    )
    dead2 = new_block(
        "emit_payment",
        gen.bid(),
        inputs={"DESTINATION": new_block("hook_account", gen.bid()), "AMOUNT": lit(2)},
    )
    dead.next = dead2

    for blk, nxt in zip(
        [guard, trace1, var_set, state_set, emit, loop, cond_if, branch, dest_probe],
        [trace1, var_set, state_set, emit, loop, cond_if, branch, dest_probe, accept],
    ):
        blk.next = nxt
    entry = new_block("hook_entry", gen.bid(), next=guard)
    cbak_guard = gen.guard()
    cbak_guard.next = new_block(
        "accept", gen.bid(), fields={"MSG": FieldValue.text("cb"), "CODE": FieldValue.integer(0)}
    )
    cbak = new_block("cbak_entry", gen.bid(), next=cbak_guard)

    from hookforge.blocks.model import BlockProgram

    program = BlockProgram(
        blocks=[entry, cbak, dead], entry_hook=entry, entry_cbak=cbak, metadata={"name": "all-kinds"}
    )
    for block in program.all_blocks():
        used.add(block.kind)
    assert used == {e.kind for e in catalog()}

    report = validate(program)
    assert report.ok, [i.to_dict() for i in report.errors()]
    assert parse_workspace(serialize_workspace(program)) == program


def test_roundtrip_account_list_order_preserved():
    gen = ProgramGen(random.Random(10))
    program = gen.clean_program(with_cbak=False)
    listed = new_block(
        "account_list_contains",
        "lst",
        fields={"LIST": FieldValue.account_list([ADDRESS_POOL[2], ADDRESS_POOL[0], ADDRESS_POOL[1]])},
        inputs={"ACCOUNT": new_block("otxn_account", "oa")},
    )
    probe = new_block(
        "if",
        "probe",
        inputs={"COND": listed},
        statements={"THEN": new_block("trace", "t0", fields={"MSG": FieldValue.text("x")})},
    )
    first = program.hook_chain()
    probe.next = first.next
    first.next = probe
    reparsed = parse_workspace(serialize_workspace(program))
    lst = next(b for b in reparsed.all_blocks() if b.kind == "account_list_contains")
    assert list(lst.fields["LIST"].value) == [ADDRESS_POOL[2], ADDRESS_POOL[0], ADDRESS_POOL[1]]


def test_roundtrip_randomized_500_programs():
    rng = random.Random(0xB10C)
    gen = ProgramGen(rng)
    for i in range(500):
        program = gen.clean_program(dead_tree=(i % 7 == 0))
        text = serialize_workspace(program)
        assert parse_workspace(text) == program, f"round-trip failed for program {i}"


def test_catalog_contents():
    kinds = {e.kind: e for e in catalog()}
    guard = kinds["guard"]
    assert [f.value_type for f in guard.fields] == [INTEGER, INTEGER]
    assert kinds["accept"].terminal and kinds["rollback"].terminal
    value_types = {NUMBER, TEXT, BOOLEAN, ACCOUNT}
    for entry in catalog():
        for spec in entry.inputs:
            assert spec.value_type in value_types
        assert entry.output in (None, *value_types)
        for f in entry.fields:
            assert f.value_type in (INTEGER, TEXT, ACCOUNT_ADDRESS, ACCOUNT_LIST)


def test_catalog_deterministic_order():
    assert [e.kind for e in catalog()] == [e.kind for e in catalog()]
    assert lookup("guard") is not None
    assert lookup("not_a_kind") is None


def test_validate_rejects_unknown_kind_in_memory():
    from hookforge.blocks.model import Block, BlockProgram

    entry = new_block("hook_entry", "e")
    rogue = Block(id="r", kind="mystery", fields={}, inputs={}, statements={})
    entry.next = rogue
    program = BlockProgram(blocks=[entry], entry_hook=entry)
    report = validate(program)
    assert any(i.rule == "UNKNOWN_BLOCK_KIND" for i in report.issues)
