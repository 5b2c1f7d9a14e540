"""Ledger-facing support: addresses, keys, binary codec, testnet client."""

from .addresses import (
    AddressError,
    decode_classic_address,
    decode_ed25519_seed,
    encode_classic_address,
    encode_ed25519_seed,
    is_classic_address,
)
from .client import (
    DEFAULT_NAMESPACE,
    FEE_FLOOR_DROPS,
    HOOK_ON_PAYMENT,
    EmptyArtifactError,
    FaucetRefusedError,
    FaucetUnreachableError,
    MalformedResponseError,
    NodeUnreachableError,
    SubmitResult,
    TestnetAccount,
    UnsignedSetHookTx,
    build_sethook_tx,
    faucet_create_account,
    sign_tx,
    submit,
)
from .codec import UnsupportedFieldError, deserialize, serialize, tx_hash
from .keys import address_from_seed, public_key_from_seed, sign, verify

__all__ = [
    "AddressError",
    "DEFAULT_NAMESPACE",
    "EmptyArtifactError",
    "FEE_FLOOR_DROPS",
    "FaucetRefusedError",
    "FaucetUnreachableError",
    "HOOK_ON_PAYMENT",
    "MalformedResponseError",
    "NodeUnreachableError",
    "SubmitResult",
    "TestnetAccount",
    "UnsignedSetHookTx",
    "UnsupportedFieldError",
    "address_from_seed",
    "build_sethook_tx",
    "decode_classic_address",
    "decode_ed25519_seed",
    "deserialize",
    "encode_classic_address",
    "encode_ed25519_seed",
    "faucet_create_account",
    "is_classic_address",
    "public_key_from_seed",
    "serialize",
    "sign",
    "sign_tx",
    "submit",
    "tx_hash",
    "verify",
]
