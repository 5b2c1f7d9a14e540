"""Ed25519 key derivation and signing for family seeds.

Derivation follows the ledger's ed25519 scheme: the raw signing key is the
first half of SHA-512 over the 16-byte seed entropy, and the wire public
key is the 32-byte ed25519 point prefixed with 0xED.
"""

from __future__ import annotations

import hashlib

from cryptography.exceptions import InvalidSignature
from cryptography.hazmat.primitives.asymmetric.ed25519 import (
    Ed25519PrivateKey,
    Ed25519PublicKey,
)

from .addresses import (
    account_id_from_public_key,
    decode_ed25519_seed,
    encode_classic_address,
)

ED25519_PREFIX = b"\xed"


def signing_key_from_entropy(entropy: bytes) -> Ed25519PrivateKey:
    raw = hashlib.sha512(entropy).digest()[:32]
    return Ed25519PrivateKey.from_private_bytes(raw)


def public_key_from_seed(seed: str) -> bytes:
    """33-byte wire public key (0xED || point) for a family seed."""
    key = signing_key_from_entropy(decode_ed25519_seed(seed))
    from cryptography.hazmat.primitives.serialization import (
        Encoding,
        PublicFormat,
    )

    point = key.public_key().public_bytes(Encoding.Raw, PublicFormat.Raw)
    return ED25519_PREFIX + point


def address_from_seed(seed: str) -> str:
    return encode_classic_address(account_id_from_public_key(public_key_from_seed(seed)))


def sign(message: bytes, seed: str) -> bytes:
    key = signing_key_from_entropy(decode_ed25519_seed(seed))
    return key.sign(message)


def verify(message: bytes, signature: bytes, public_key: bytes) -> bool:
    if len(public_key) == 33 and public_key[0:1] == ED25519_PREFIX:
        public_key = public_key[1:]
    try:
        Ed25519PublicKey.from_public_bytes(public_key).verify(signature, message)
        return True
    except (InvalidSignature, ValueError):
        return False
