"""Binary transaction codec for the SetHook / Payment field subset.

Implements the ledger's canonical binary serialization (fields ordered by
type code then field code) for exactly the fields this toolchain emits.
The hook-install field codes follow the Hooks testnet v3 shape and are
pinned in one table so any schema drift is a one-line change here.

Field values in the dict form:
    UInt16/UInt32    int
    Amount           int drops
    Blob / Hash256   bytes or hex str
    AccountID        classic address str
    Hooks            list of {"Hook": {inner fields}}
"""

from __future__ import annotations

import hashlib
from typing import Any

from ..errors import HookforgeError
from .addresses import decode_classic_address, encode_classic_address

TT_PAYMENT = 0
TT_SET_HOOK = 22

SIGNING_PREFIX = b"\x53\x54\x58\x00"  # "STX\0"
TXID_PREFIX = b"\x54\x58\x4e\x00"  # "TXN\0"

_U16, _U32, _H256, _AMOUNT, _BLOB, _ACCOUNT, _ARRAY = range(7)

# name -> (type_code, field_code, value codec)
FIELDS: dict[str, tuple[int, int, int]] = {
    "TransactionType": (1, 2, _U16),
    "HookApiVersion": (1, 20, _U16),
    "Sequence": (2, 4, _U32),
    "HookOn": (5, 20, _H256),
    "HookNamespace": (5, 32, _H256),
    "Amount": (6, 1, _AMOUNT),
    "Fee": (6, 8, _AMOUNT),
    "SigningPubKey": (7, 3, _BLOB),
    "TxnSignature": (7, 4, _BLOB),
    "CreateCode": (7, 11, _BLOB),
    "Account": (8, 1, _ACCOUNT),
    "Destination": (8, 3, _ACCOUNT),
    "Hooks": (15, 11, _ARRAY),
}

_HOOK_OBJECT_HEADER = bytes([(14 << 4) | 14])  # sfHook, STObject field 14
_OBJECT_END = bytes([0xE1])
_ARRAY_END = bytes([0xF1])

_BY_HEADER = {(t, f): (name, kind) for name, (t, f, kind) in FIELDS.items()}

XRP_AMOUNT_FLAG = 0x4000000000000000
MAX_DROPS = 10**17  # 100 billion XRP


class UnsupportedFieldError(HookforgeError):
    code = "UNSUPPORTED_FIELD"


class CodecError(HookforgeError):
    code = "CODEC_ERROR"


def _field_header(type_code: int, field_code: int) -> bytes:
    if type_code < 16 and field_code < 16:
        return bytes([(type_code << 4) | field_code])
    if type_code < 16:
        return bytes([type_code << 4, field_code])
    if field_code < 16:
        return bytes([field_code, type_code])
    return bytes([0, type_code, field_code])


def _vl_encode(data: bytes) -> bytes:
    n = len(data)
    if n <= 192:
        return bytes([n]) + data
    if n <= 12480:
        n -= 193
        return bytes([193 + (n >> 8), n & 0xFF]) + data
    if n <= 918744:
        n -= 12481
        return bytes([241 + (n >> 16), (n >> 8) & 0xFF, n & 0xFF]) + data
    raise CodecError("blob too large for VL encoding")


def _as_bytes(value: Any, name: str) -> bytes:
    if isinstance(value, bytes):
        return value
    if isinstance(value, str):
        try:
            return bytes.fromhex(value)
        except ValueError as exc:
            raise CodecError(f"field {name}: invalid hex") from exc
    raise CodecError(f"field {name}: expected bytes or hex string")


def _encode_value(name: str, kind: int, value: Any) -> bytes:
    if kind == _U16:
        if not (0 <= int(value) < 2**16):
            raise CodecError(f"field {name}: uint16 out of range")
        return int(value).to_bytes(2, "big")
    if kind == _U32:
        if not (0 <= int(value) < 2**32):
            raise CodecError(f"field {name}: uint32 out of range")
        return int(value).to_bytes(4, "big")
    if kind == _H256:
        raw = _as_bytes(value, name)
        if len(raw) != 32:
            raise CodecError(f"field {name}: hash256 must be 32 bytes")
        return raw
    if kind == _AMOUNT:
        drops = int(value)
        if not (0 <= drops <= MAX_DROPS):
            raise CodecError(f"field {name}: drops amount out of range")
        return (drops | XRP_AMOUNT_FLAG).to_bytes(8, "big")
    if kind == _BLOB:
        return _vl_encode(_as_bytes(value, name))
    if kind == _ACCOUNT:
        return _vl_encode(decode_classic_address(str(value)))
    if kind == _ARRAY:
        out = bytearray()
        for element in value:
            if set(element.keys()) != {"Hook"}:
                raise UnsupportedFieldError(
                    f"array element must be a Hook object, got {sorted(element)}"
                )
            out += _HOOK_OBJECT_HEADER
            out += _serialize_fields(element["Hook"])
            out += _OBJECT_END
        out += _ARRAY_END
        return bytes(out)
    raise CodecError(f"field {name}: unhandled codec kind")


def _serialize_fields(fields: dict[str, Any]) -> bytes:
    for name in fields:
        if name not in FIELDS:
            raise UnsupportedFieldError(f"field {name!r} is outside the pinned subset")
    ordered = sorted(fields, key=lambda n: (FIELDS[n][0], FIELDS[n][1]))
    out = bytearray()
    for name in ordered:
        type_code, field_code, kind = FIELDS[name]
        out += _field_header(type_code, field_code)
        out += _encode_value(name, kind, fields[name])
    return bytes(out)


def serialize(fields: dict[str, Any]) -> bytes:
    """Canonical binary form of a transaction field dict."""
    return _serialize_fields(fields)


class _Reader:
    def __init__(self, blob: bytes):
        self.blob = blob
        self.pos = 0

    def eof(self) -> bool:
        return self.pos >= len(self.blob)

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.blob):
            raise CodecError("unexpected end of blob")
        out = self.blob[self.pos : self.pos + n]
        self.pos += n
        return out

    def byte(self) -> int:
        return self.take(1)[0]

    def peek(self) -> int:
        if self.eof():
            raise CodecError("unexpected end of blob")
        return self.blob[self.pos]

    def header(self) -> tuple[int, int]:
        first = self.byte()
        type_code = first >> 4
        field_code = first & 0x0F
        if type_code == 0:
            type_code = self.byte()
        if field_code == 0:
            field_code = self.byte()
        return type_code, field_code

    def vl(self) -> bytes:
        first = self.byte()
        if first <= 192:
            n = first
        elif first <= 240:
            n = 193 + ((first - 193) << 8) + self.byte()
        elif first <= 254:
            n = 12481 + ((first - 241) << 16) + (self.byte() << 8)
            n += self.byte()
        else:
            raise CodecError("invalid VL length prefix")
        return self.take(n)


def deserialize(blob: bytes) -> dict[str, Any]:
    """Inverse of ``serialize`` for the supported subset."""
    reader = _Reader(blob)
    fields = _read_fields(reader, end_marker=None)
    if not reader.eof():
        raise CodecError("trailing bytes after transaction")
    return fields


def _read_fields(reader: _Reader, end_marker: int | None) -> dict[str, Any]:
    fields: dict[str, Any] = {}
    while not reader.eof():
        if end_marker is not None and reader.peek() == end_marker:
            reader.byte()
            return fields
        type_code, field_code = reader.header()
        entry = _BY_HEADER.get((type_code, field_code))
        if entry is None:
            raise CodecError(
                f"unknown field header type={type_code} field={field_code}"
            )
        name, kind = entry
        fields[name] = _decode_value(reader, name, kind)
    if end_marker is not None:
        raise CodecError("unterminated object or array")
    return fields


def _decode_value(reader: _Reader, name: str, kind: int) -> Any:
    if kind == _U16:
        return int.from_bytes(reader.take(2), "big")
    if kind == _U32:
        return int.from_bytes(reader.take(4), "big")
    if kind == _H256:
        return reader.take(32).hex().upper()
    if kind == _AMOUNT:
        raw = int.from_bytes(reader.take(8), "big")
        if not raw & XRP_AMOUNT_FLAG:
            raise CodecError(f"field {name}: issued-currency amounts unsupported")
        return raw & ~XRP_AMOUNT_FLAG
    if kind == _BLOB:
        return reader.vl().hex().upper()
    if kind == _ACCOUNT:
        raw = reader.vl()
        if len(raw) != 20:
            raise CodecError(f"field {name}: account id must be 20 bytes")
        return encode_classic_address(raw)
    if kind == _ARRAY:
        elements = []
        while True:
            if reader.peek() == _ARRAY_END[0]:
                reader.byte()
                return elements
            if reader.take(1) != _HOOK_OBJECT_HEADER:
                raise CodecError("array elements must be Hook objects")
            elements.append({"Hook": _read_fields(reader, end_marker=_OBJECT_END[0])})
    raise CodecError(f"field {name}: unhandled codec kind")


def sha512half(data: bytes) -> bytes:
    return hashlib.sha512(data).digest()[:32]


def signing_payload(fields: dict[str, Any]) -> bytes:
    """Bytes to sign: STX prefix + tx without the signature field."""
    unsigned = {k: v for k, v in fields.items() if k != "TxnSignature"}
    return SIGNING_PREFIX + serialize(unsigned)


def tx_hash(signed_blob: bytes) -> str:
    """Transaction id: SHA512Half over the TXN prefix + signed blob."""
    return sha512half(TXID_PREFIX + signed_blob).hex().upper()
