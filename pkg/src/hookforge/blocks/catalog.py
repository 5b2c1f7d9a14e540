"""The closed, versioned catalog of visual block kinds.

Every block a workspace may contain is declared here: its fields (literal
values typed per ``FieldSpec``), its value input sockets, its statement
sockets, and its output type. There are no user-defined kinds; the parser
and validator reject anything not in this table.

Type vocabulary:
    field value types   integer | text | account_address | account_list
    socket/output types number | text | boolean | account
"""

from __future__ import annotations

from dataclasses import dataclass

CATALOG_VERSION = "1"

# Categories
ENTRY = "entry"
ACTION = "action"
VALUE = "value"
CONTROL = "control"
LOGIC = "logic"

# Field value types
INTEGER = "integer"
TEXT = "text"
ACCOUNT_ADDRESS = "account_address"
ACCOUNT_LIST = "account_list"

# Socket / output value types
NUMBER = "number"
BOOLEAN = "boolean"
ACCOUNT = "account"
# TEXT doubles as a socket type.

COMPARE_OPS = ("LT", "LE", "EQ", "NE", "GE", "GT")
ARITH_OPS = ("ADD", "SUB", "MUL", "DIV")
NUMBER_UNITS = ("drops", "XRP")

DROPS_PER_XRP = 1_000_000

MAX_TEXT_BYTES = 128
MAX_BOUND = 2**31 - 1
INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

# Host-provided variable: inside a cbak chain it carries the result code of
# the emitted transaction (0 applied, 1 failed), mirroring the C callback's
# argument. Read it with var_get.
EMIT_RESULT_VAR = "emit_result"


@dataclass(frozen=True)
class FieldSpec:
    name: str
    value_type: str  # INTEGER | TEXT | ACCOUNT_ADDRESS | ACCOUNT_LIST
    choices: tuple[str, ...] = ()  # restricts TEXT fields to an enum when non-empty


@dataclass(frozen=True)
class InputSpec:
    name: str
    value_type: str  # NUMBER | TEXT | BOOLEAN | ACCOUNT
    optional: bool = False


@dataclass(frozen=True)
class BlockCatalogEntry:
    kind: str
    category: str
    fields: tuple[FieldSpec, ...] = ()
    inputs: tuple[InputSpec, ...] = ()
    statements: tuple[str, ...] = ()  # names of statement sockets
    output: str | None = None  # None for statements/entries
    terminal: bool = False  # accept / rollback end execution

    def field_spec(self, name: str) -> FieldSpec | None:
        for spec in self.fields:
            if spec.name == name:
                return spec
        return None

    def input_spec(self, name: str) -> InputSpec | None:
        for spec in self.inputs:
            if spec.name == name:
                return spec
        return None


_ENTRIES: tuple[BlockCatalogEntry, ...] = (
    BlockCatalogEntry("hook_entry", ENTRY),
    BlockCatalogEntry("cbak_entry", ENTRY),
    BlockCatalogEntry(
        "guard",
        ACTION,
        fields=(FieldSpec("G_ID", INTEGER), FieldSpec("MAXITER", INTEGER)),
    ),
    BlockCatalogEntry(
        "accept",
        ACTION,
        fields=(FieldSpec("MSG", TEXT), FieldSpec("CODE", INTEGER)),
        terminal=True,
    ),
    BlockCatalogEntry(
        "rollback",
        ACTION,
        fields=(FieldSpec("MSG", TEXT), FieldSpec("CODE", INTEGER)),
        terminal=True,
    ),
    BlockCatalogEntry(
        "trace",
        ACTION,
        fields=(FieldSpec("MSG", TEXT),),
        inputs=(InputSpec("VALUE", NUMBER, optional=True),),
    ),
    BlockCatalogEntry(
        "emit_payment",
        ACTION,
        inputs=(InputSpec("DESTINATION", ACCOUNT), InputSpec("AMOUNT", NUMBER)),
    ),
    BlockCatalogEntry(
        "state_get",
        VALUE,
        inputs=(InputSpec("KEY", TEXT),),
        output=NUMBER,
    ),
    BlockCatalogEntry(
        "state_set",
        ACTION,
        inputs=(InputSpec("KEY", TEXT), InputSpec("VALUE", NUMBER)),
    ),
    BlockCatalogEntry("otxn_amount", VALUE, output=NUMBER),
    BlockCatalogEntry("otxn_account", VALUE, output=ACCOUNT),
    BlockCatalogEntry("otxn_destination", VALUE, output=ACCOUNT),
    BlockCatalogEntry("hook_account", VALUE, output=ACCOUNT),
    BlockCatalogEntry(
        "if",
        CONTROL,
        inputs=(InputSpec("COND", BOOLEAN),),
        statements=("THEN",),
    ),
    BlockCatalogEntry(
        "if_else",
        CONTROL,
        inputs=(InputSpec("COND", BOOLEAN),),
        statements=("THEN", "ELSE"),
    ),
    BlockCatalogEntry(
        "repeat",
        CONTROL,
        fields=(FieldSpec("COUNT", INTEGER),),
        statements=("DO",),
    ),
    BlockCatalogEntry(
        "compare",
        LOGIC,
        fields=(FieldSpec("OP", TEXT, choices=COMPARE_OPS),),
        inputs=(InputSpec("A", NUMBER), InputSpec("B", NUMBER)),
        output=BOOLEAN,
    ),
    BlockCatalogEntry(
        "arith",
        VALUE,
        fields=(FieldSpec("OP", TEXT, choices=ARITH_OPS),),
        inputs=(InputSpec("A", NUMBER), InputSpec("B", NUMBER)),
        output=NUMBER,
    ),
    BlockCatalogEntry(
        "percent_of",
        VALUE,
        fields=(FieldSpec("PERCENT", INTEGER),),
        inputs=(InputSpec("VALUE", NUMBER),),
        output=NUMBER,
    ),
    BlockCatalogEntry(
        "literal_number",
        VALUE,
        fields=(FieldSpec("VALUE", INTEGER), FieldSpec("UNIT", TEXT, choices=NUMBER_UNITS)),
        output=NUMBER,
    ),
    BlockCatalogEntry(
        "literal_text",
        VALUE,
        fields=(FieldSpec("TEXT", TEXT),),
        output=TEXT,
    ),
    BlockCatalogEntry(
        "literal_account",
        VALUE,
        fields=(FieldSpec("ADDRESS", ACCOUNT_ADDRESS),),
        output=ACCOUNT,
    ),
    BlockCatalogEntry(
        "account_list_contains",
        LOGIC,
        fields=(FieldSpec("LIST", ACCOUNT_LIST),),
        inputs=(InputSpec("ACCOUNT", ACCOUNT),),
        output=BOOLEAN,
    ),
    BlockCatalogEntry(
        "var_get",
        VALUE,
        fields=(FieldSpec("NAME", TEXT),),
        output=NUMBER,
    ),
    BlockCatalogEntry(
        "var_set",
        ACTION,
        fields=(FieldSpec("NAME", TEXT),),
        inputs=(InputSpec("VALUE", NUMBER),),
    ),
)

_BY_KIND = {entry.kind: entry for entry in _ENTRIES}


def catalog() -> tuple[BlockCatalogEntry, ...]:
    """All block kinds, in stable declaration order."""
    return _ENTRIES


def lookup(kind: str) -> BlockCatalogEntry | None:
    return _BY_KIND.get(kind)


def is_statement(entry: BlockCatalogEntry) -> bool:
    """Statement blocks chain via ``next``; expressions plug into sockets."""
    return entry.output is None and entry.category != ENTRY


def catalog_document() -> dict:
    """JSON-ready catalog description served to frontends."""
    kinds = []
    for e in _ENTRIES:
        kinds.append(
            {
                "kind": e.kind,
                "category": e.category,
                "fields": [
                    {"name": f.name, "type": f.value_type, "choices": list(f.choices)}
                    for f in e.fields
                ],
                "inputs": [
                    {"name": i.name, "type": i.value_type, "optional": i.optional}
                    for i in e.inputs
                ],
                "statements": list(e.statements),
                "output": e.output,
                "terminal": e.terminal,
            }
        )
    return {"version": CATALOG_VERSION, "kinds": kinds}
