"""Deterministic translation of guard-clean block programs to Hooks C.

Output is byte-identical across runs for a given program: fixed templates,
4-space indents, LF newlines, ASCII-only text (non-ASCII message bytes are
octal-escaped). Each statement block records the 1-based line range it
produced so compile errors can be mapped back onto blocks.

The generator refuses programs that fail validation or guard analysis;
unguarded C is never emitted.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .blocks.catalog import EMIT_RESULT_VAR
from .blocks.model import Block, BlockProgram
from .blocks.parser import serialize_workspace
from .blocks.validate import validate
from .errors import PreconditionError
from .guard import DEFAULT_STEP_CEILING, analyze

INDENT = "    "


@dataclass(frozen=True)
class BlockSpan:
    start_line: int  # 1-based, inclusive
    end_line: int
    block_id: str

    def to_dict(self) -> dict:
        return {"start_line": self.start_line, "end_line": self.end_line, "block_id": self.block_id}


@dataclass
class CSource:
    text: str
    source_digest: str
    block_map: list[BlockSpan] = field(default_factory=list)

    def block_for_line(self, line: int) -> str | None:
        """Innermost block covering a 1-based line, if any."""
        best: BlockSpan | None = None
        for span in self.block_map:
            if span.start_line <= line <= span.end_line:
                if best is None or (span.end_line - span.start_line) < (
                    best.end_line - best.start_line
                ):
                    best = span
        return best.block_id if best else None

    def to_dict(self) -> dict:
        return {
            "text": self.text,
            "source_digest": self.source_digest,
            "block_map": [s.to_dict() for s in self.block_map],
        }


def generate(program: BlockProgram, step_ceiling: int = DEFAULT_STEP_CEILING) -> CSource:
    """Translate a program to C, refusing dirty input."""
    report = validate(program)
    if not report.ok:
        codes = sorted({i.rule for i in report.errors()})
        raise PreconditionError(f"program fails validation: {', '.join(codes)}")
    guard_report = analyze(program, step_ceiling=step_ceiling)
    if not guard_report.ok:
        codes = sorted({v.rule for v in guard_report.violations})
        raise PreconditionError(f"program fails guard analysis: {', '.join(codes)}")

    emitter = _Emitter(program)
    emitter.file()
    text = "\n".join(emitter.lines) + "\n"
    digest = hashlib.sha256(serialize_workspace(program).encode("utf-8")).hexdigest()
    return CSource(text=text, source_digest=digest, block_map=emitter.block_map)


def _c_escape(text: str) -> str:
    out = []
    for byte in text.encode("utf-8"):
        ch = chr(byte)
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif 0x20 <= byte <= 0x7E:
            out.append(ch)
        else:
            out.append(f"\\{byte:03o}")  # octal: bounded, unlike \x escapes
    return "".join(out)


_ARITH_CODE = {"ADD": "+", "SUB": "-", "MUL": "*", "DIV": "/"}
_COMPARE_CODE = {"LT": "<", "LE": "<=", "EQ": "==", "NE": "!=", "GE": ">=", "GT": ">"}

_ACCOUNT_FILLS = {
    "otxn_account": "otxn_field(SBUF({buf}), sfAccount);",
    "otxn_destination": "otxn_field(SBUF({buf}), sfDestination);",
    "hook_account": "hook_account(SBUF({buf}));",
}


class _Emitter:
    def __init__(self, program: BlockProgram):
        self.program = program
        self.lines: list[str] = []
        self.block_map: list[BlockSpan] = []
        self.var_names: dict[str, str] = {}
        self.depth = 1
        self.in_cbak = False

    # -- file layout ------------------------------------------------------

    def file(self) -> None:
        self.lines.append('#include "hookapi.h"')
        self.lines.append("")
        self.function("hook", self.program.hook_chain())
        self.lines.append("")
        self.function("cbak", self.program.cbak_chain() if self.program.entry_cbak else None)

    def function(self, name: str, chain: Block | None) -> None:
        # The cbak argument carries the emitted transaction's result code.
        self.in_cbak = name == "cbak" and chain is not None
        param = "what" if self.in_cbak else "reserved"
        self.lines.append(f"int64_t {name}(uint32_t {param})")
        self.lines.append("{")
        if chain is None:
            self.lines.append(INDENT + "return 0;")
        else:
            for decl in self._var_decls(chain):
                self.lines.append(INDENT + decl)
            self.chain(chain)
        self.lines.append("}")
        self.in_cbak = False

    def _var_decls(self, chain: Block) -> list[str]:
        names = []
        for block in chain.walk():
            if block.kind in ("var_set", "var_get"):
                ident = self._var_ident(block.field_text("NAME"))
                if ident not in names and ident != "what":
                    names.append(ident)
        return [f"int64_t {n} = 0;" for n in names]

    def _var_ident(self, name: str) -> str:
        if self.in_cbak and name == EMIT_RESULT_VAR:
            return "what"
        if name in self.var_names:
            return self.var_names[name]
        base = "v_" + "".join(c if c.isalnum() or c == "_" else "_" for c in name)
        ident = base
        suffix = 2
        while ident in self.var_names.values():
            ident = f"{base}_{suffix}"
            suffix += 1
        self.var_names[name] = ident
        return ident

    # -- statements -------------------------------------------------------

    def chain(self, first: Block | None) -> None:
        node = first
        while node is not None:
            self.statement(node)
            node = node.next

    def statement(self, block: Block) -> None:
        start = len(self.lines) + 1
        method = getattr(self, f"_stmt_{block.kind}", None)
        if method is None:
            raise PreconditionError(f"no C translation for statement kind {block.kind!r}")
        method(block)
        self.block_map.append(BlockSpan(start, len(self.lines), block.id))

    def put(self, line: str) -> None:
        self.lines.append(INDENT * self.depth + line)

    def _stmt_guard(self, block: Block) -> None:
        self.put(f"_g({block.field_int('G_ID')},{block.field_int('MAXITER')});")

    def _stmt_trace(self, block: Block) -> None:
        msg = _c_escape(block.field_text("MSG"))
        value = block.inputs.get("VALUE")
        if value is None:
            self.put(f'TRACESTR("{msg}");')
        else:
            self.put(f'trace_num(SBUF("{msg}"),{self.expr(value)});')

    def _stmt_accept(self, block: Block) -> None:
        msg = _c_escape(block.field_text("MSG"))
        self.put(f'accept(SBUF("{msg}"),{block.field_int("CODE")});')

    def _stmt_rollback(self, block: Block) -> None:
        msg = _c_escape(block.field_text("MSG"))
        self.put(f'rollback(SBUF("{msg}"),{block.field_int("CODE")});')

    def _stmt_emit_payment(self, block: Block) -> None:
        dest = block.inputs["DESTINATION"]
        amount = block.inputs["AMOUNT"]
        assert dest is not None and amount is not None
        self.put(
            f"// emit payment: destination {self._account_desc(dest)}, amount from {amount.kind}"
        )
        self.put("{")
        self.depth += 1
        self.put(f"int64_t amount_drops = {self.expr(amount)};")
        self.put("uint8_t dest_acc[20];")
        self.put(self._account_fill(dest, "dest_acc"))
        self.put("etxn_reserve(1);")
        self.put("unsigned char tx_buf[PREPARE_PAYMENT_SIMPLE_SIZE];")
        self.put("PREPARE_PAYMENT_SIMPLE(tx_buf, amount_drops, dest_acc, 0, 0);")
        self.put("uint8_t emithash[32];")
        self.put("emit(SBUF(emithash), SBUF(tx_buf));")
        self.depth -= 1
        self.put("}")

    def _stmt_state_set(self, block: Block) -> None:
        key = block.inputs["KEY"]
        value = block.inputs["VALUE"]
        assert key is not None and value is not None
        self.put("{")
        self.depth += 1
        self.put(f"int64_t state_value = {self.expr(value)};")
        self.put(
            "state_set((uint32_t)&state_value, sizeof(state_value), "
            f"SBUF({self.text_expr(key)}));"
        )
        self.depth -= 1
        self.put("}")

    def _stmt_var_set(self, block: Block) -> None:
        value = block.inputs["VALUE"]
        assert value is not None
        ident = self._var_ident(block.field_text("NAME"))
        self.put(f"{ident} = {self.expr(value)};")

    def _stmt_if(self, block: Block) -> None:
        cond = block.inputs["COND"]
        assert cond is not None
        self.put(f"if ({self.expr(cond)}) {{")
        self.depth += 1
        self.chain(block.statements.get("THEN"))
        self.depth -= 1
        self.put("}")

    def _stmt_if_else(self, block: Block) -> None:
        cond = block.inputs["COND"]
        assert cond is not None
        self.put(f"if ({self.expr(cond)}) {{")
        self.depth += 1
        self.chain(block.statements.get("THEN"))
        self.depth -= 1
        self.put("} else {")
        self.depth += 1
        self.chain(block.statements.get("ELSE"))
        self.depth -= 1
        self.put("}")

    def _stmt_repeat(self, block: Block) -> None:
        count = block.field_int("COUNT")
        var = f"i{self.depth - 1}"
        self.put(f"for (int64_t {var} = 0; {var} < {count}; ++{var}) {{")
        self.depth += 1
        self.chain(block.statements.get("DO"))
        self.depth -= 1
        self.put("}")

    # -- expressions ------------------------------------------------------

    def expr(self, block: Block) -> str:
        method = getattr(self, f"_expr_{block.kind}", None)
        if method is None:
            raise PreconditionError(f"no C translation for expression kind {block.kind!r}")
        return method(block)

    def text_expr(self, block: Block) -> str:
        if block.kind == "literal_text":
            return f'"{_c_escape(block.field_text("TEXT"))}"'
        raise PreconditionError(f"no C text translation for kind {block.kind!r}")

    def _expr_literal_number(self, block: Block) -> str:
        value = block.field_int("VALUE")
        return str(value) if value >= 0 else f"({value})"

    def _expr_var_get(self, block: Block) -> str:
        return self._var_ident(block.field_text("NAME"))

    def _expr_arith(self, block: Block) -> str:
        a = self.expr(block.inputs["A"])  # type: ignore[arg-type]
        b = self.expr(block.inputs["B"])  # type: ignore[arg-type]
        return f"(({a}) {_ARITH_CODE[block.field_text('OP')]} ({b}))"

    def _expr_compare(self, block: Block) -> str:
        a = self.expr(block.inputs["A"])  # type: ignore[arg-type]
        b = self.expr(block.inputs["B"])  # type: ignore[arg-type]
        return f"(({a}) {_COMPARE_CODE[block.field_text('OP')]} ({b}))"

    def _expr_percent_of(self, block: Block) -> str:
        x = self.expr(block.inputs["VALUE"])  # type: ignore[arg-type]
        return f"(({x}) * {block.field_int('PERCENT')}) / 100"

    def _expr_otxn_amount(self, block: Block) -> str:
        return (
            "({ unsigned char amt_buf[48]; "
            "int64_t amt_len = otxn_field(SBUF(amt_buf), sfAmount); "
            "(amt_len == 8) ? (int64_t)AMOUNT_TO_DROPS(amt_buf) : 0; })"
        )

    def _expr_state_get(self, block: Block) -> str:
        key = self.text_expr(block.inputs["KEY"])  # type: ignore[arg-type]
        return (
            "({ int64_t state_value = 0; "
            f"state((uint32_t)&state_value, sizeof(state_value), SBUF({key})); "
            "state_value; })"
        )

    def _expr_account_list_contains(self, block: Block) -> str:
        account = block.inputs["ACCOUNT"]
        assert account is not None
        addresses = block.fields["LIST"].value
        parts = ["({ uint8_t target_acc[20]; "]
        parts.append(self._account_fill(account, "target_acc"))
        parts.append(" uint8_t list_acc[20]; int found = 0; ")
        for addr in addresses:  # type: ignore[union-attr]
            parts.append(f'util_accid(SBUF(list_acc), SBUF("{_c_escape(str(addr))}")); ')
            parts.append("found = found || BUFFER_EQUAL_20(target_acc, list_acc); ")
        parts.append("found; })")
        return "".join(parts)

    # -- account helpers ---------------------------------------------------

    def _account_fill(self, block: Block, buf: str) -> str:
        if block.kind == "literal_account":
            addr = _c_escape(block.field_text("ADDRESS"))
            return f'util_accid(SBUF({buf}), SBUF("{addr}"));'
        template = _ACCOUNT_FILLS.get(block.kind)
        if template is None:
            raise PreconditionError(f"no C account translation for kind {block.kind!r}")
        return template.format(buf=buf)

    def _account_desc(self, block: Block) -> str:
        if block.kind == "literal_account":
            return block.field_text("ADDRESS")
        return block.kind
