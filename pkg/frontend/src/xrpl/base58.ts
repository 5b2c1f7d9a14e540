/** Base58-check with the ledger's alphabet: classic addresses, family seeds. */

import { sha256 } from "@noble/hashes/sha2.js";

import { concat } from "./bytes";

export const ALPHABET = "rpshnaf39wBUDNEGHJKLM4PQRST7VWXYZ2bcdeCg65jkm8oFqi1tuvAxyz";
const INDEX = new Map([...ALPHABET].map((c, i) => [c, i]));

const ED25519_SEED_PREFIX = new Uint8Array([0x01, 0xe1, 0x4b]);
const ACCOUNT_PREFIX = new Uint8Array([0x00]);

function checksum(payload: Uint8Array): Uint8Array {
  return sha256(sha256(payload)).slice(0, 4);
}

export function base58checkEncode(payload: Uint8Array): string {
  const data = concat(payload, checksum(payload));
  let num = 0n;
  for (const byte of data) num = (num << 8n) | BigInt(byte);
  const digits: string[] = [];
  while (num > 0n) {
    digits.push(ALPHABET[Number(num % 58n)]);
    num /= 58n;
  }
  for (const byte of data) {
    if (byte !== 0) break;
    digits.push(ALPHABET[0]);
  }
  return digits.reverse().join("");
}

export function base58checkDecode(text: string): Uint8Array {
  if (!text) throw new Error("empty base58 string");
  let num = 0n;
  for (const ch of text) {
    const idx = INDEX.get(ch);
    if (idx === undefined) throw new Error(`invalid base58 character '${ch}'`);
    num = num * 58n + BigInt(idx);
  }
  const bytes: number[] = [];
  while (num > 0n) {
    bytes.push(Number(num & 0xffn));
    num >>= 8n;
  }
  bytes.reverse();
  let pad = 0;
  for (const ch of text) {
    if (ch !== ALPHABET[0]) break;
    pad++;
  }
  const raw = new Uint8Array(pad + bytes.length);
  raw.set(bytes, pad);
  if (raw.length < 5) throw new Error("base58 payload too short");
  const payload = raw.slice(0, -4);
  const check = raw.slice(-4);
  const expected = checksum(payload);
  if (!check.every((b, i) => b === expected[i])) {
    throw new Error("base58 checksum mismatch");
  }
  return payload;
}

export function decodeClassicAddress(address: string): Uint8Array {
  const payload = base58checkDecode(address);
  if (payload.length !== 21 || payload[0] !== ACCOUNT_PREFIX[0]) {
    throw new Error(`not a classic address: ${address}`);
  }
  return payload.slice(1);
}

export function encodeClassicAddress(accountId: Uint8Array): string {
  if (accountId.length !== 20) throw new Error("account id must be 20 bytes");
  return base58checkEncode(concat(ACCOUNT_PREFIX, accountId));
}

export function decodeEd25519Seed(seed: string): Uint8Array {
  const payload = base58checkDecode(seed);
  if (
    payload.length !== 19 ||
    payload[0] !== ED25519_SEED_PREFIX[0] ||
    payload[1] !== ED25519_SEED_PREFIX[1] ||
    payload[2] !== ED25519_SEED_PREFIX[2]
  ) {
    throw new Error("not an ed25519 family seed");
  }
  return payload.slice(3);
}

export function isClassicAddress(address: string): boolean {
  if (address.length < 25 || address.length > 35 || !address.startsWith("r")) return false;
  try {
    decodeClassicAddress(address);
    return true;
  } catch {
    return false;
  }
}
