"""Classic addresses and family seeds: base58-check with the XRPL alphabet.

Classic address = base58check(0x00 || RIPEMD160(SHA256(pubkey))).
Ed25519 family seed = base58check(0x01 0xE1 0x4B || 16 bytes of entropy),
which renders with the familiar "sEd" prefix.
"""

from __future__ import annotations

import hashlib

from ..errors import HookforgeError
from .ripemd160 import ripemd160

ALPHABET = "rpshnaf39wBUDNEGHJKLM4PQRST7VWXYZ2bcdeCg65jkm8oFqi1tuvAxyz"
_ALPHABET_INDEX = {c: i for i, c in enumerate(ALPHABET)}

ACCOUNT_ID_PREFIX = b"\x00"
ED25519_SEED_PREFIX = b"\x01\xe1\x4b"


class AddressError(HookforgeError):
    code = "BAD_ADDRESS"


def _checksum(payload: bytes) -> bytes:
    return hashlib.sha256(hashlib.sha256(payload).digest()).digest()[:4]


def base58check_encode(payload: bytes) -> str:
    data = payload + _checksum(payload)
    num = int.from_bytes(data, "big")
    out = []
    while num > 0:
        num, rem = divmod(num, 58)
        out.append(ALPHABET[rem])
    for byte in data:
        if byte != 0:
            break
        out.append(ALPHABET[0])
    return "".join(reversed(out))


def base58check_decode(text: str) -> bytes:
    if not text:
        raise AddressError("empty base58 string")
    num = 0
    for ch in text:
        idx = _ALPHABET_INDEX.get(ch)
        if idx is None:
            raise AddressError(f"invalid base58 character {ch!r}")
        num = num * 58 + idx
    raw = num.to_bytes((num.bit_length() + 7) // 8, "big")
    pad = 0
    for ch in text:
        if ch != ALPHABET[0]:
            break
        pad += 1
    raw = b"\x00" * pad + raw
    if len(raw) < 5:
        raise AddressError("base58 payload too short")
    payload, check = raw[:-4], raw[-4:]
    if _checksum(payload) != check:
        raise AddressError("base58 checksum mismatch")
    return payload


def encode_classic_address(account_id: bytes) -> str:
    if len(account_id) != 20:
        raise AddressError("account id must be 20 bytes")
    return base58check_encode(ACCOUNT_ID_PREFIX + account_id)


def decode_classic_address(address: str) -> bytes:
    payload = base58check_decode(address)
    if len(payload) != 21 or payload[0:1] != ACCOUNT_ID_PREFIX:
        raise AddressError(f"not a classic address: {address!r}")
    return payload[1:]


def is_classic_address(address: str) -> bool:
    if not (25 <= len(address) <= 35) or not address.startswith("r"):
        return False
    try:
        decode_classic_address(address)
        return True
    except AddressError:
        return False


def account_id_from_public_key(public_key: bytes) -> bytes:
    """20-byte account id for a 33-byte XRPL public key."""
    return ripemd160(hashlib.sha256(public_key).digest())


def encode_ed25519_seed(entropy: bytes) -> str:
    if len(entropy) != 16:
        raise AddressError("seed entropy must be 16 bytes")
    return base58check_encode(ED25519_SEED_PREFIX + entropy)


def decode_ed25519_seed(seed: str) -> bytes:
    payload = base58check_decode(seed)
    if len(payload) != 19 or payload[:3] != ED25519_SEED_PREFIX:
        raise AddressError("not an ed25519 family seed")
    return payload[3:]
