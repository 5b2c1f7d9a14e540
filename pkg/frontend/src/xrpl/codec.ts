/**
 * Canonical binary serialization for the SetHook field subset, mirroring
 * the backend's pinned schema byte for byte (the test suite holds both
 * implementations to one frozen vector).
 */

import { decodeClassicAddress } from "./base58";
import { concat, fromHex, u16be, u32be, u64be } from "./bytes";

export const TT_SET_HOOK = 22;

export const SIGNING_PREFIX = new Uint8Array([0x53, 0x54, 0x58, 0x00]); // "STX\0"
export const TXID_PREFIX = new Uint8Array([0x54, 0x58, 0x4e, 0x00]); // "TXN\0"

const XRP_AMOUNT_FLAG = 0x4000000000000000n;

/** Fire on Payment (type 0) only: all bits set except bit 0. */
export const HOOK_ON_PAYMENT = "FF".repeat(31) + "FE";
export const DEFAULT_NAMESPACE = "00".repeat(32);

export interface SetHookTx {
  account: string;
  wasmHex: string;
  sequence: number;
  feeDrops: bigint;
  hookOn?: string;
  namespace?: string;
  apiVersion?: number;
}

function header(typeCode: number, fieldCode: number): Uint8Array {
  if (typeCode < 16 && fieldCode < 16) return new Uint8Array([(typeCode << 4) | fieldCode]);
  if (typeCode < 16) return new Uint8Array([typeCode << 4, fieldCode]);
  if (fieldCode < 16) return new Uint8Array([fieldCode, typeCode]);
  return new Uint8Array([0, typeCode, fieldCode]);
}

function vl(data: Uint8Array): Uint8Array {
  const n = data.length;
  if (n <= 192) return concat(new Uint8Array([n]), data);
  if (n <= 12480) {
    const m = n - 193;
    return concat(new Uint8Array([193 + (m >> 8), m & 0xff]), data);
  }
  if (n <= 918744) {
    const m = n - 12481;
    return concat(new Uint8Array([241 + (m >> 16), (m >> 8) & 0xff, m & 0xff]), data);
  }
  throw new Error("blob too large for VL encoding");
}

function amount(drops: bigint): Uint8Array {
  if (drops < 0n || drops > 10n ** 17n) throw new Error("drops amount out of range");
  return u64be(drops | XRP_AMOUNT_FLAG);
}

function hash256(hex: string): Uint8Array {
  const raw = fromHex(hex);
  if (raw.length !== 32) throw new Error("hash256 must be 32 bytes");
  return raw;
}

/**
 * Serialize in canonical order (type code, then field code):
 * TransactionType(1,2) Sequence(2,4) Fee(6,8) SigningPubKey(7,3)
 * TxnSignature(7,4) Account(8,1) Hooks(15,11).
 */
export function serializeSetHook(
  tx: SetHookTx,
  signingPubKey: Uint8Array,
  txnSignature: Uint8Array | null,
): Uint8Array {
  if (tx.sequence < 1) throw new Error("sequence must be >= 1");
  const wasm = fromHex(tx.wasmHex);
  if (wasm.length === 0) throw new Error("empty wasm payload");

  const hookInner = concat(
    header(1, 20), // HookApiVersion
    u16be(tx.apiVersion ?? 0),
    header(5, 20), // HookOn
    hash256(tx.hookOn ?? HOOK_ON_PAYMENT),
    header(5, 32), // HookNamespace
    hash256(tx.namespace ?? DEFAULT_NAMESPACE),
    header(7, 11), // CreateCode
    vl(wasm),
  );

  const parts: Uint8Array[] = [
    header(1, 2),
    u16be(TT_SET_HOOK),
    header(2, 4),
    u32be(tx.sequence),
    header(6, 8),
    amount(tx.feeDrops),
    header(7, 3),
    vl(signingPubKey),
  ];
  if (txnSignature !== null) {
    parts.push(header(7, 4), vl(txnSignature));
  }
  parts.push(
    header(8, 1),
    vl(decodeClassicAddress(tx.account)),
    header(15, 11), // Hooks array
    header(14, 14), // sfHook object
    hookInner,
    new Uint8Array([0xe1]), // object end
    new Uint8Array([0xf1]), // array end
  );
  return concat(...parts);
}

export function signingPayload(tx: SetHookTx, signingPubKey: Uint8Array): Uint8Array {
  return concat(SIGNING_PREFIX, serializeSetHook(tx, signingPubKey, null));
}
